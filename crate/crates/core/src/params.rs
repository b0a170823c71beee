//! Physical configuration of the four-mode Raman interaction.
//!
//! All rates are angular frequencies in rad/s with hbar = 1. Only the
//! couplings and the two detunings enter the perturbative coefficients; the
//! absolute mode frequencies matter only for the overall per-mode phases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::Mode;

/// Reference frame in which mode operators are reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Frame {
    /// Free phases `e^{-i w_m t}` removed mode by mode.
    CoRotating,
    /// Laboratory frame with explicit mode frequencies.
    Absolute {
        omega_a: f64,
        omega_b: f64,
        omega_c: f64,
        omega_d: f64,
    },
}

impl Frame {
    pub fn name(&self) -> &'static str {
        match self {
            Frame::CoRotating => "corotating",
            Frame::Absolute { .. } => "absolute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamanParams {
    /// Stokes coupling.
    pub g: f64,
    /// Anti-Stokes coupling.
    pub chi: f64,
    /// `w_b + w_c - w_a`.
    pub d_omega1: f64,
    /// `w_a + w_c - w_d`.
    pub d_omega2: f64,
    pub frame: Frame,
}

impl RamanParams {
    /// `g = chi = 1e5`, `|dw1| = 0.1e6`, `|dw2| = 0.19e6`, positive signs.
    pub fn paper() -> Self {
        RamanParams {
            g: 1e5,
            chi: 1e5,
            d_omega1: 1e5,
            d_omega2: 1.9e5,
            frame: Frame::CoRotating,
        }
    }

    /// Tolerance used for the detuning singularity checks.
    pub fn eps_det(&self) -> f64 {
        1e-6 * self.d_omega1.abs().max(self.d_omega2.abs())
    }

    pub fn max_coupling(&self) -> f64 {
        self.g.abs().max(self.chi.abs())
    }

    /// Mode frequencies used for the free evolution.
    ///
    /// In the co-rotating frame any assignment consistent with the detunings
    /// is equivalent; `w_b = w_c = 0` is used.
    pub fn mode_frequencies(&self) -> [f64; 4] {
        match self.frame {
            Frame::CoRotating => {
                let wa = -self.d_omega1;
                [wa, 0.0, 0.0, wa - self.d_omega2]
            }
            Frame::Absolute {
                omega_a,
                omega_b,
                omega_c,
                omega_d,
            } => [omega_a, omega_b, omega_c, omega_d],
        }
    }

    /// Frequency `w_m` of the phase factor retained in the coefficients, zero
    /// in the co-rotating frame.
    pub fn phase_frequency(&self, mode: Mode) -> f64 {
        match self.frame {
            Frame::CoRotating => 0.0,
            Frame::Absolute { .. } => self.mode_frequencies()[mode.index()],
        }
    }

    pub fn validate(self) -> Result<Self> {
        validate_params(self)
    }
}

impl Default for RamanParams {
    fn default() -> Self {
        Self::paper()
    }
}

/// Returns `p` unchanged when the detuning and frame invariants hold.
pub fn validate_params(p: RamanParams) -> Result<RamanParams> {
    for (name, v) in [
        ("g", p.g),
        ("chi", p.chi),
        ("d_omega1", p.d_omega1),
        ("d_omega2", p.d_omega2),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite(name));
        }
    }
    if p.d_omega1 == 0.0 {
        return Err(Error::ZeroDetuning { name: "d_omega1" });
    }
    if p.d_omega2 == 0.0 {
        return Err(Error::ZeroDetuning { name: "d_omega2" });
    }
    let eps = p.eps_det();
    let diff = (p.d_omega1 - p.d_omega2).abs();
    if diff <= eps {
        return Err(Error::DegenerateDetunings {
            op: '-',
            gap: diff,
            eps,
        });
    }
    let sum = (p.d_omega1 + p.d_omega2).abs();
    if sum <= eps {
        return Err(Error::DegenerateDetunings { op: '+', gap: sum, eps });
    }
    if let Frame::Absolute {
        omega_a,
        omega_b,
        omega_c,
        omega_d,
    } = p.frame
    {
        for (name, v) in [
            ("omega_a", omega_a),
            ("omega_b", omega_b),
            ("omega_c", omega_c),
            ("omega_d", omega_d),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        let dw1 = omega_b + omega_c - omega_a;
        if (dw1 - p.d_omega1).abs() > eps {
            return Err(Error::InconsistentFrequencies {
                name: "d_omega1",
                expected: p.d_omega1,
                actual: dw1,
            });
        }
        let dw2 = omega_a + omega_c - omega_d;
        if (dw2 - p.d_omega2).abs() > eps {
            return Err(Error::InconsistentFrequencies {
                name: "d_omega2",
                expected: p.d_omega2,
                actual: dw2,
            });
        }
    }
    Ok(p)
}
