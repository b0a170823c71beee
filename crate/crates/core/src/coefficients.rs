//! Time-dependent coefficients of the second-order operator solution
//!
//! ```text
//! a(t) = f1 a + f2 bc + f3 c†d + f4 a†bd + f5 abb† + f6 ac†c + f7 ac†c + f8 ad†d
//! b(t) = g1 b + g2 ac† + g3 a²d† + g4 c†²d + g5 bcc† + g6 baa†
//! c(t) = h1 c + h2 ab† + h3 a†d + h4 b†c†d + h5 caa† + h6 cbb† + h7 cd†d + h8 ca†a
//! d(t) = l1 d + l2 ac + l3 a²b† + l4 bc² + l5 c†cd + l6 aa†d
//! ```
//!
//! with every operator on the right taken at `t = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modes::Mode;
use crate::params::RamanParams;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The 28 coefficients at one instant. Accessors are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub t: f64,
    pub f: [Complex64; 8],
    pub g: [Complex64; 6],
    pub h: [Complex64; 8],
    pub l: [Complex64; 6],
}

impl CoefficientSet {
    /// Coefficients at `t = 0`: leading terms one, the rest zero.
    pub fn identity() -> Self {
        let mut f = [ZERO; 8];
        let mut g = [ZERO; 6];
        let mut h = [ZERO; 8];
        let mut l = [ZERO; 6];
        f[0] = ONE;
        g[0] = ONE;
        h[0] = ONE;
        l[0] = ONE;
        CoefficientSet { t: 0.0, f, g, h, l }
    }

    pub fn f(&self, i: usize) -> Complex64 {
        self.f[i - 1]
    }

    pub fn g(&self, i: usize) -> Complex64 {
        self.g[i - 1]
    }

    pub fn h(&self, i: usize) -> Complex64 {
        self.h[i - 1]
    }

    pub fn l(&self, i: usize) -> Complex64 {
        self.l[i - 1]
    }

    /// All coefficients belonging to `mode` (f for a, g for b, ...).
    pub fn of_mode(&self, mode: Mode) -> &[Complex64] {
        match mode {
            Mode::A => &self.f,
            Mode::B => &self.g,
            Mode::C => &self.h,
            Mode::D => &self.l,
        }
    }

    fn of_mode_mut(&mut self, mode: Mode) -> &mut [Complex64] {
        match mode {
            Mode::A => &mut self.f,
            Mode::B => &mut self.g,
            Mode::C => &mut self.h,
            Mode::D => &mut self.l,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.f.iter().chain(&self.g).chain(&self.h).chain(&self.l).copied()
    }
}

/// `e^{ix} - 1` without cancellation for small `x`.
fn expm1_i(x: f64) -> Complex64 {
    let s = (0.5 * x).sin();
    Complex64::new(-2.0 * s * s, x.sin())
}

/// Evaluates the appendix coefficient functions at time `t`.
///
/// `p` is assumed validated. In the co-rotating frame the leading factors
/// `e^{-i w_m t}` are one; in the absolute frame they are applied per mode.
pub fn compute_coefficients(p: &RamanParams, t: f64) -> CoefficientSet {
    if t == 0.0 {
        return CoefficientSet::identity();
    }
    let (g, chi, d1, d2) = (p.g, p.chi, p.d_omega1, p.d_omega2);
    let cg = chi * g;

    // Recurring bracket terms.
    let e1p = expm1_i(d1 * t); // e^{i dw1 t} - 1
    let e1m = expm1_i(-d1 * t);
    let e2p = expm1_i(d2 * t);
    let e2m = expm1_i(-d2 * t);
    let e12m_neg = expm1_i(-(d1 - d2) * t); // e^{-i(dw1-dw2)t} - 1
    let e12m_pos = expm1_i((d1 - d2) * t);
    let e12p_pos = expm1_i((d1 + d2) * t);
    let e12p_neg = expm1_i(-(d1 + d2) * t);

    let mut c = CoefficientSet::identity();
    c.t = t;

    // Pump.
    let f5 = g * g / (d1 * d1) * e1m + I * (g * g * t / d1);
    let f7 = chi * chi / (d2 * d2) * e2p - I * (chi * chi * t / d2);
    // In f4 and h4 the constant parts of e^{ix}/dw cancel pairwise between
    // the two brackets; writing them as (e^{ix}-1)/dw keeps t = 0 exact.
    let f4 = -cg / d1 * (e12m_neg / (d1 - d2) + e2p / d2) - cg / d2 * (e12m_neg / (d1 - d2) - e1m / d1);
    c.f = [ONE, g / d1 * e1m, -chi / d2 * e2p, f4, f5, f5, f7, -f7];

    // Stokes.
    let g5 = g * g / (d1 * d1) * e1p - I * (g * g * t / d1);
    c.g = [
        ONE,
        -g / d1 * e1p,
        cg / (d2 * (d1 - d2)) * e12m_pos - cg / (d2 * d1) * e1p,
        cg / (d2 * (d1 + d2)) * e12p_pos - cg / (d2 * d1) * e1p,
        g5,
        -g5,
    ];

    // Phonon.
    let h5 = -g * g / (d1 * d1) * e1p + I * (g * g * t / d1);
    let h7 = -chi * chi / (d2 * d2) * e2p + I * (chi * chi * t / d2);
    let h8 = chi * chi / (d2 * d2) * e2p - I * (chi * chi * t / d2);
    let h4 = cg / d2 * (e12p_pos / (d1 + d2) - e1p / d1) - cg / d1 * (e12p_pos / (d1 + d2) - e2p / d2);
    c.h = [ONE, -g / d1 * e1p, -chi / d2 * e2p, h4, h5, -h5, h7, h8];

    // Anti-Stokes.
    let l5 = I * (chi * chi * t / d2) + chi * chi / (d2 * d2) * e2m;
    c.l = [
        ONE,
        chi / d2 * e2m,
        cg / (d1 * (d1 - d2)) * e12m_pos + cg / (d2 * d1) * e2m,
        cg / (d1 * (d1 + d2)) * e12p_neg - cg / (d2 * d1) * e2m,
        l5,
        l5,
    ];

    for mode in Mode::ALL {
        let w = p.phase_frequency(mode);
        if w != 0.0 {
            let phase = Complex64::from_polar(1.0, -w * t);
            for z in c.of_mode_mut(mode) {
                *z *= phase;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Frame;

    #[test]
    fn identity_at_zero() {
        let c = compute_coefficients(&RamanParams::paper(), 0.0);
        assert_eq!(c, CoefficientSet::identity());
    }

    #[test]
    fn g2_modulus_matches_direct_evaluation() {
        // |g2|^2 = |e^{i dw1 t} - 1|^2 g^2 / dw1^2, evaluated with plain exp.
        let p = RamanParams::paper();
        let t = 1e-6;
        let direct =
            (Complex64::new(0.0, p.d_omega1 * t).exp() - 1.0).norm_sqr() * p.g * p.g / (p.d_omega1 * p.d_omega1);
        let c = compute_coefficients(&p, t);
        assert!((c.g(2).norm_sqr() - direct).abs() < 1e-15);
        assert!((c.g(2).norm_sqr() - 9.9917e-3).abs() < 1e-7);
    }

    #[test]
    fn f4_h4_vanish_smoothly_near_zero() {
        let p = RamanParams::paper();
        for t in [1e-12, 1e-10, 1e-9] {
            let c = compute_coefficients(&p, t);
            // both are second order in t
            assert!(c.f(4).norm() < 1e5 * 1e5 * t * t);
            assert!(c.h(4).norm() < 1e5 * 1e5 * t * t);
        }
    }

    #[test]
    fn absolute_frame_adds_mode_phases() {
        let p = RamanParams::paper();
        let (wa, wc) = (3e6, 1e6);
        let abs = RamanParams {
            frame: Frame::Absolute {
                omega_a: wa,
                omega_b: wa + p.d_omega1 - wc,
                omega_c: wc,
                omega_d: wa + wc - p.d_omega2,
            },
            ..p
        };
        let t = 4e-7;
        let c0 = compute_coefficients(&p, t);
        let c1 = compute_coefficients(&abs, t);
        assert!((c1.f(1) - Complex64::from_polar(1.0, -wa * t)).norm() < 1e-15);
        assert!((c1.h(3) - c0.h(3) * Complex64::from_polar(1.0, -wc * t)).norm() < 1e-15);
    }
}
