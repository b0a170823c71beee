//! Closed-form second-order entanglement witnesses.
//!
//! Each function assembles the printed coefficient/amplitude expression for a
//! mode pair. A negative value certifies entanglement for all three criteria:
//!
//! * HZ-1: `<N_x N_y> - |<x y†>|²`
//! * HZ-2: `<N_x><N_y> - |<x y>|²`
//! * Duan: `<(Δu)²> + <(Δv)²> - 2` with `u, v` the joint quadratures of `x + y`
//!
//! The expressions are transcribed term by term; several of them are known
//! not to agree with exact evolution at second order (see the oracle
//! comparison report), and they are intentionally left as printed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficients::{compute_coefficients, CoefficientSet};
use crate::inputs::CoherentInputs;
use crate::modes::ModePair;
use crate::params::RamanParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Criterion {
    Hz1,
    Hz2,
    Duan,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Hz1, Criterion::Hz2, Criterion::Duan];

    pub fn label(self) -> &'static str {
        match self {
            Criterion::Hz1 => "HZ1",
            Criterion::Hz2 => "HZ2",
            Criterion::Duan => "Duan",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "").as_str() {
            "hz1" => Ok(Criterion::Hz1),
            "hz2" => Ok(Criterion::Hz2),
            "duan" => Ok(Criterion::Duan),
            _ => Err(format!("unknown criterion `{s}`")),
        }
    }
}

impl From<Criterion> for String {
    fn from(c: Criterion) -> Self {
        c.label().to_string()
    }
}

impl TryFrom<String> for Criterion {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// How the `|f3|` factor in the Duan expressions for pairs ab, ac and ad is
/// read: as printed (`|f3|`) or squared like its sibling terms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum F3Reading {
    #[default]
    Square,
    Linear,
}

impl FromStr for F3Reading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sq" | "square" => Ok(F3Reading::Square),
            "lin" | "linear" => Ok(F3Reading::Linear),
            _ => Err(format!("unknown f3 reading `{s}` (expected sq or lin)")),
        }
    }
}

impl fmt::Display for F3Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            F3Reading::Square => "sq",
            F3Reading::Linear => "lin",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOptions {
    pub f3_reading: F3Reading,
}

/// `z + z*`
fn cc(z: Complex64) -> Complex64 {
    z + z.conj()
}

fn real(z: Complex64) -> f64 {
    debug_assert!(
        z.im.abs() <= 1e-10 * z.norm().max(f64::MIN_POSITIVE),
        "witness has imaginary residue {z}"
    );
    z.re
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Amps {
    a1: Complex64,
    a2: Complex64,
    a3: Complex64,
    a4: Complex64,
    n1: f64,
    n2: f64,
    n3: f64,
    n4: f64,
}

impl Amps {
    fn new(a: &CoherentInputs) -> Self {
        let [a1, a2, a3, a4] = a.alpha;
        Amps {
            a1,
            a2,
            a3,
            a4,
            n1: a1.norm_sqr(),
            n2: a2.norm_sqr(),
            n3: a3.norm_sqr(),
            n4: a4.norm_sqr(),
        }
    }
}

/// HZ-1 witness `<N_x N_y> - |<x y†>|²` from precomputed coefficients.
pub fn hz1_from(pair: ModePair, c: &CoefficientSet, a: &CoherentInputs) -> f64 {
    let Amps {
        a1,
        a2,
        a3,
        a4,
        n1,
        n2,
        n3,
        n4,
    } = Amps::new(a);
    let (f, g, h, l) = (|i| c.f(i), |i| c.g(i), |i| c.h(i), |i| c.l(i));
    let v = match pair {
        ModePair::AB => re(f(3).norm_sqr() * n2 * n4 + g(2).norm_sqr() * (n1 * n1 - n1 * n2)),
        ModePair::BC => {
            re(g(2).norm_sqr() * (3.0 * n1 * n3 + 3.0 * n1 * n2 + n1 - n2 * n3) + h(3).norm_sqr() * n2 * n4)
                + cc(h(1).conj() * h(2) * a1 * a2.conj() * a3.conj()
                    + 2.0 * g(4).conj() * g(1) * a2 * a3 * a3 * a4.conj()
                    + h(2) * h(3).conj() * a1 * a1 * a2.conj() * a4.conj())
        }
        ModePair::AD => re(f(3).norm_sqr() * (n3 + n4 * n4 + n1 * n3 - n1 * n4) - l(2).norm_sqr() * (n3 + n1 * n3)),
        ModePair::BD => re(g(2).norm_sqr() * n1 * n4) + cc(l(1).conj() * l(3) * a1 * a1 * a2.conj() * a4.conj()),
        ModePair::CD => {
            re(l(2).norm_sqr() * (2.0 * n1 + 2.0 * n1 * n4 - 2.0 * n4 - n4 * n4 - n3 * n4) + h(2).norm_sqr() * n1 * n4)
        }
        ModePair::AC => {
            re(
                f(2).norm_sqr() * (2.0 * n1 + n1 * n1 + n1 * n3 - 4.0 * n2 - 2.0 * n1 * n2 - 2.0 * n2 * n3)
                    + f(3).norm_sqr() * (n4 + 3.0 * n3 * n4 + 3.0 * n1 * n4 - n1 * n3),
            ) + cc(f(1).conj() * f(3) * a1.conj() * a3.conj() * a4
                + h(2).conj() * h(3) * a1.conj() * a1.conj() * a2 * a4
                + f(2).conj() * f(3) * a2.conj() * a3.conj() * a3.conj() * a4)
        }
    };
    real(v)
}

/// HZ-2 witness `<N_x><N_y> - |<x y>|²` from precomputed coefficients.
pub fn hz2_from(pair: ModePair, c: &CoefficientSet, a: &CoherentInputs) -> f64 {
    let Amps {
        a1,
        a2,
        a3,
        a4,
        n1,
        n2,
        n3,
        n4,
    } = Amps::new(a);
    let (f, g, h, l) = (|i| c.f(i), |i| c.g(i), |i| c.h(i), |i| c.l(i));
    let v = match pair {
        ModePair::AB => {
            re(g(2).norm_sqr() * n1 * n1 + f(3).norm_sqr() * n2 * n4)
                - cc((g(1).conj() * g(6) + f(1).conj() * f(2) * g(1).conj() * g(2)) * n1 * n2)
        }
        ModePair::BC => {
            re(g(2).norm_sqr() * n1 * n3 - h(2).norm_sqr() * (1.0 + n2) * n1 + h(3).norm_sqr() * n2 * n4)
                - cc(h(1).conj() * h(2) * a1 * a2.conj() * a3.conj()
                    + (h(1) * h(4).conj() + g(1) * g(2).conj() * h(1) * h(3).conj()) * a2 * a3 * a3 * a4.conj()
                    + h(2).conj() * h(3) * a1.conj() * a1.conj() * a2 * a4
                    + h(1).conj() * h(6) * n2 * n3
                    + g(1) * g(2).conj() * h(1).conj() * h(2) * n1 * n3)
        }
        ModePair::AD => re(f(3).norm_sqr() * n4 * n4) - cc(l(1).conj() * l(6) * n1 * n4),
        ModePair::BD => re(g(2).norm_sqr() * n1 * n4) - cc(l(1).conj() * l(3) * a1 * a1 * a2.conj() * a4.conj()),
        ModePair::CD => re(h(2).norm_sqr() * n1 * n4 + h(3).norm_sqr() * n4 * n4) - cc(l(1).conj() * l(5) * n3 * n4),
        ModePair::AC => {
            re(h(2).norm_sqr() * n1 * n1 - h(3).norm_sqr() * (n4 + n1 * n4) + f(3).norm_sqr() * n3 * n4)
                - cc(h(1).conj() * h(3) * a1.conj() * a3.conj() * a4
                    + h(1).conj() * h(8) * n1 * n3
                    + h(2).conj() * h(3) * a1.conj() * a1.conj() * a2 * a4
                    - h(1).conj() * h(5) * n1 * n3
                    + f(1).conj() * f(2) * h(3).conj() * h(1) * a2 * a3 * a3 * a4.conj()
                    + f(1).conj() * f(3) * h(3).conj() * h(1) * n3 * n4)
        }
    };
    real(v)
}

/// Duan witness `D` from precomputed coefficients.
pub fn duan_from(pair: ModePair, c: &CoefficientSet, a: &CoherentInputs, opts: WitnessOptions) -> f64 {
    let Amps {
        a1, a2, a3, a4, n1, n4, ..
    } = Amps::new(a);
    let (f, g, h, l) = (|i| c.f(i), |i| c.g(i), |i| c.h(i), |i| c.l(i));
    let f3_term = match opts.f3_reading {
        F3Reading::Square => f(3).norm_sqr(),
        F3Reading::Linear => f(3).norm(),
    };
    let inner = match pair {
        ModePair::AB => {
            re(f3_term * n4 + g(2).norm_sqr() * n1)
                + 0.5
                    * cc((f(1) * g(6).conj() + f(5) * g(1).conj()) * a1 * a2.conj()
                        + (2.0 * f(1) * g(3).conj() + f(4) * g(1).conj() + f(3) * g(2).conj()) * a1.conj() * a4)
        }
        ModePair::AC => {
            re(f3_term * n4 + h(2).norm_sqr() * n1 + h(3).norm_sqr() * n4)
                + 0.5
                    * cc((f(1) * h(5).conj()
                        + f(6) * h(1).conj()
                        + f(3) * h(3).conj()
                        + f(7) * h(1).conj()
                        + f(1) * h(8).conj())
                        * a1
                        * a3.conj())
        }
        ModePair::BC => {
            re(g(2).norm_sqr() * n1 + h(2).norm_sqr() * n1 + h(3).norm_sqr() * n4)
                + 0.5 * cc((g(1) * h(6).conj() + g(5) * h(1).conj() + g(2) * h(2).conj()) * a3.conj() * a2)
        }
        ModePair::AD => {
            re(f3_term * n4)
                + 0.5
                    * cc((f(1) * l(2).conj() + f(3) * l(1).conj()) * a3.conj()
                        + (2.0 * f(1) * l(3).conj() + f(4) * l(1).conj() + f(2) * l(2).conj()) * a1.conj() * a2
                        + f(8) * l(1).conj() * a1 * a4.conj())
        }
        ModePair::CD => {
            re(h(2).norm_sqr() * n1 + h(3).norm_sqr() * n4)
                + 0.5
                    * cc(
                        (2.0 * l(4) * h(1).conj() + l(2) * h(2).conj() + l(1) * h(4).conj()) * a2 * a3
                            + (l(5) * h(1).conj() + l(1) * h(7).conj()) * a3.conj() * a4,
                    )
        }
        ModePair::BD => {
            re(g(2).norm_sqr() * n1)
                + 0.5 * cc((l(4) * g(1).conj() + l(2) * g(2).conj() + l(1) * g(4).conj()) * a3 * a3)
        }
    };
    real(2.0 * inner)
}

/// Evaluates `criterion` for `pair` from precomputed coefficients.
pub fn witness_from(
    criterion: Criterion,
    pair: ModePair,
    c: &CoefficientSet,
    a: &CoherentInputs,
    opts: WitnessOptions,
) -> f64 {
    match criterion {
        Criterion::Hz1 => hz1_from(pair, c, a),
        Criterion::Hz2 => hz2_from(pair, c, a),
        Criterion::Duan => duan_from(pair, c, a, opts),
    }
}

pub fn hz1_witness(pair: ModePair, p: &RamanParams, a: &CoherentInputs, t: f64) -> f64 {
    hz1_from(pair, &compute_coefficients(p, t), a)
}

pub fn hz2_witness(pair: ModePair, p: &RamanParams, a: &CoherentInputs, t: f64) -> f64 {
    hz2_from(pair, &compute_coefficients(p, t), a)
}

/// Duan witness with the default (squared) `|f3|` reading.
pub fn duan_witness(pair: ModePair, p: &RamanParams, a: &CoherentInputs, t: f64) -> f64 {
    duan_from(pair, &compute_coefficients(p, t), a, WitnessOptions::default())
}

pub fn witness(
    criterion: Criterion,
    pair: ModePair,
    p: &RamanParams,
    a: &CoherentInputs,
    t: f64,
    opts: WitnessOptions,
) -> f64 {
    witness_from(criterion, pair, &compute_coefficients(p, t), a, opts)
}
