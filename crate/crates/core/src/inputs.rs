use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::Mode;

/// How the Raman process is seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Process {
    /// Only the pump is populated.
    Spontaneous,
    /// Pump plus exactly one of the Stokes, phonon or anti-Stokes modes.
    PartiallySpontaneous(Mode),
    Stimulated,
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Spontaneous => f.write_str("spontaneous"),
            Process::PartiallySpontaneous(m) => write!(f, "partial-{}", m.letter()),
            Process::Stimulated => f.write_str("stimulated"),
        }
    }
}

/// Eigenvalues of the initial product coherent state `|a1>|a2>|a3>|a4>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentInputs {
    pub alpha: [Complex64; 4],
    /// Pump phase with `alpha1 = |alpha1| e^{-i phi}`.
    pub phi: f64,
}

impl CoherentInputs {
    /// Pump `|alpha1| e^{-i phi}` and real Stokes, phonon, anti-Stokes amplitudes.
    pub fn from_magnitudes(pump: f64, phi: f64, stokes: f64, phonon: f64, anti_stokes: f64) -> Self {
        CoherentInputs {
            alpha: [
                Complex64::from_polar(pump, -phi),
                Complex64::new(stokes, 0.0),
                Complex64::new(phonon, 0.0),
                Complex64::new(anti_stokes, 0.0),
            ],
            phi,
        }
    }

    /// `|alpha| = (10, 8, 0.01, 1)` at pump phase `phi`.
    pub fn paper(phi: f64) -> Self {
        Self::from_magnitudes(10.0, phi, 8.0, 0.01, 1.0)
    }

    pub fn get(&self, mode: Mode) -> Complex64 {
        self.alpha[mode.index()]
    }

    /// Same inputs with the pump rotated to `|alpha1| e^{-i phi}`.
    pub fn with_pump_phase(&self, phi: f64) -> Self {
        let mut out = *self;
        out.alpha[0] = Complex64::from_polar(self.alpha[0].norm(), -phi);
        out.phi = phi;
        out
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        CoherentInputs {
            alpha: self.alpha.map(|a| a * factor),
            phi: self.phi,
        }
    }

    pub fn process(&self) -> Process {
        let nz = |m: Mode| self.get(m).norm_sqr() != 0.0;
        let seeded: Vec<Mode> = [Mode::B, Mode::C, Mode::D].into_iter().filter(|&m| nz(m)).collect();
        match (nz(Mode::A), seeded.as_slice()) {
            (true, []) => Process::Spontaneous,
            (true, [m]) => Process::PartiallySpontaneous(*m),
            _ => Process::Stimulated,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("alpha"));
        }
        if !self.phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        Ok(())
    }
}

/// Zeroes the amplitudes that `process` requires to be empty.
pub fn specialize(a: &CoherentInputs, process: Process) -> Result<CoherentInputs> {
    let keep: &[Mode] = match process {
        Process::Stimulated => return Ok(*a),
        Process::Spontaneous => &[Mode::A],
        Process::PartiallySpontaneous(Mode::A) => {
            return Err(Error::Validation(
                "a partially spontaneous process seeds one of b, c, d".into(),
            ))
        }
        Process::PartiallySpontaneous(m) => &[Mode::A, m],
    };
    if a.get(Mode::A).norm_sqr() == 0.0 {
        return Err(Error::ZeroPump);
    }
    let mut out = *a;
    for m in Mode::ALL {
        if !keep.contains(&m) {
            out.alpha[m.index()] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(out)
}
