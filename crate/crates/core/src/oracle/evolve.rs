//! Unitary propagation `psi(t) = exp(-i H t) psi(0)` by a sub-stepped Taylor
//! series with an a-posteriori bound on the truncated remainder.

use num_complex::Complex64;

use super::operator::SparseOperator;
use super::state::QuantumState;
use crate::error::{Error, Result};

/// Default global error budget in state norm.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const MAX_TERMS: usize = 60;
/// Target `||H|| dt` per sub-step.
const STEP_THETA: f64 = 1.0;

/// Evolves `state` under `h` for time `t` with global error at most `tol`.
pub fn evolve(state: &QuantumState, h: &SparseOperator, t: f64, tol: f64) -> Result<QuantumState> {
    state.check_norm()?;
    assert_eq!(state.space().dim(), h.dim(), "operator and state dimensions differ");
    if t == 0.0 {
        return Ok(state.clone());
    }
    if tol.is_nan() || tol <= 0.0 || !t.is_finite() {
        return Err(Error::ToleranceNotMet(format!("invalid tolerance {tol} or time {t}")));
    }
    let bound = h.norm_inf();
    let steps = ((bound * t.abs()) / STEP_THETA).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let theta = bound * dt.abs();
    let step_tol = tol / steps as f64;

    let dim = h.dim();
    let mut out = state.clone();
    let mut term = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    let minus_i_dt = Complex64::new(0.0, -dt);

    for _ in 0..steps {
        let psi = out.amplitudes_mut();
        term.copy_from_slice(psi);
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            h.apply_into(&term, &mut next);
            let scale = minus_i_dt / k as f64;
            let mut norm_sq = 0.0;
            for (p, (tk, nk)) in psi.iter_mut().zip(term.iter_mut().zip(&next)) {
                *tk = nk * scale;
                *p += *tk;
                norm_sq += tk.norm_sqr();
            }
            // Remaining terms shrink at least geometrically with ratio theta/(k+1).
            let ratio = theta / (k + 1) as f64;
            if ratio < 1.0 {
                let remainder = norm_sq.sqrt() * ratio / (1.0 - ratio);
                if remainder <= step_tol {
                    converged = true;
                    break;
                }
            }
        }
        if !converged {
            return Err(Error::ToleranceNotMet(format!(
                "Taylor series did not reach {step_tol:e} within {MAX_TERMS} terms"
            )));
        }
    }
    out.check_norm()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inputs::CoherentInputs;
    use crate::oracle::operator::build_hamiltonian;
    use crate::oracle::space::FockSpace;
    use crate::oracle::state::coherent_state;
    use crate::params::RamanParams;

    #[test]
    fn zero_time_is_identity() {
        let s = FockSpace::uniform(8).unwrap();
        let h = build_hamiltonian(&RamanParams::paper(), &s);
        let (psi, _) = coherent_state(&CoherentInputs::from_magnitudes(0.3, 0.1, 0.2, 0.1, 0.1), &s).unwrap();
        assert_eq!(evolve(&psi, &h, 0.0, 1e-10).unwrap(), psi);
    }

    #[test]
    fn single_excitation_rabi_oscillation() {
        // |1,0,0,0> <-> |0,1,1,0> with detuning dw1 between them (chi = 0):
        // a two-level system with coupling g and energy splitting dw1.
        let p = RamanParams {
            g: 1e5,
            chi: 0.0,
            ..RamanParams::paper()
        };
        let s = FockSpace::new([1, 1, 1, 0]).unwrap();
        let h = build_hamiltonian(&p, &s);
        let psi0 = QuantumState::basis(s, [1, 0, 0, 0]).unwrap();
        let t = 7e-6;
        let psi = evolve(&psi0, &h, t, 1e-12).unwrap();
        let (g, d) = (p.g, p.d_omega1);
        let omega = (g * g + d * d / 4.0).sqrt();
        let expected = g * g / (omega * omega) * (omega * t).sin().powi(2);
        let got = psi.amplitudes()[s.index([0, 1, 1, 0]).unwrap()].norm_sqr();
        assert!((got - expected).abs() < 1e-11, "{got} vs {expected}");
    }

    #[test]
    fn unnormalized_input_rejected() {
        let s = FockSpace::uniform(1).unwrap();
        let h = build_hamiltonian(&RamanParams::paper(), &s);
        let bad = QuantumState::from_amplitudes(s, vec![Complex64::new(0.5, 0.0); 16]);
        assert!(matches!(evolve(&bad, &h, 1e-7, 1e-10), Err(Error::ToleranceNotMet(_))));
    }
}
