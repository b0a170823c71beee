use num_complex::Complex64;

use super::space::FockSpace;
use crate::error::{Error, Result};
use crate::inputs::CoherentInputs;
use crate::modes::Mode;

/// Default bound on the probability mass a coherent state may lose to truncation.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-10;

/// Allowed deviation of the state norm from one.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    space: FockSpace,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn from_amplitudes(space: FockSpace, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(
            amplitudes.len(),
            space.dim(),
            "amplitude vector does not match the space"
        );
        QuantumState { space, amplitudes }
    }

    /// Basis state `|n_a, n_b, n_c, n_d>`.
    pub fn basis(space: FockSpace, n: [usize; 4]) -> Option<Self> {
        let idx = space.index(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dim()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Some(QuantumState { space, amplitudes })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::ToleranceNotMet(format!(
                "state norm {n} outside 1 +- {NORM_TOLERANCE:e}"
            )));
        }
        Ok(())
    }

    /// Applies `exp(+i t sum_m w_m N_m)`.
    ///
    /// Expectation values in the returned state equal those of the mode
    /// operators rotated by `e^{+i w_m t}`, i.e. the free phases are removed.
    pub fn rotate_free_phases(&self, freqs: [f64; 4], t: f64) -> QuantumState {
        if freqs.iter().all(|&w| w == 0.0) || t == 0.0 {
            return self.clone();
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let n = self.space.occupations(i);
                let energy: f64 = (0..4).map(|m| freqs[m] * n[m] as f64).sum();
                z * Complex64::from_polar(1.0, energy * t)
            })
            .collect();
        QuantumState {
            space: self.space,
            amplitudes,
        }
    }
}

/// Probability mass of a Poisson(`lambda`) distribution above `cutoff`.
fn poisson_tail(lambda: f64, cutoff: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let log_term = |n: usize| -> f64 {
        // ln(e^{-l} l^n / n!)
        -lambda + n as f64 * lambda.ln() - (1..=n).map(|k| (k as f64).ln()).sum::<f64>()
    };
    if (cutoff as f64) > lambda {
        // Terms decrease monotonically past the mode; sum the tail directly.
        let mut n = cutoff + 1;
        let mut term = log_term(n).exp();
        let mut sum = 0.0;
        while term > sum * 1e-18 && term > 0.0 {
            sum += term;
            n += 1;
            term *= lambda / n as f64;
        }
        sum
    } else {
        let head: f64 = (0..=cutoff).map(|n| log_term(n).exp()).sum();
        (1.0 - head).max(0.0)
    }
}

/// Truncated product coherent state `|a1>|a2>|a3>|a4>`, renormalized, with the
/// discarded probability mass.
pub fn coherent_state(a: &CoherentInputs, space: &FockSpace) -> Result<(QuantumState, f64)> {
    coherent_state_with_bound(a, space, DEFAULT_TAIL_BOUND)
}

pub fn coherent_state_with_bound(
    a: &CoherentInputs,
    space: &FockSpace,
    tail_bound: f64,
) -> Result<(QuantumState, f64)> {
    a.validate()?;
    let mut log_kept = 0.0;
    let mut factors = Vec::with_capacity(4);
    for mode in Mode::ALL {
        let alpha = a.get(mode);
        let cutoff = space.cutoff(mode);
        let tail = poisson_tail(alpha.norm_sqr(), cutoff);
        log_kept += (-tail).ln_1p();

        let mut v = Vec::with_capacity(cutoff + 1);
        let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
        for n in 0..=cutoff {
            v.push(c);
            c = c * alpha / ((n + 1) as f64).sqrt();
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::TailMassTooLarge {
                tail: 1.0,
                bound: tail_bound,
            });
        }
        v.iter_mut().for_each(|z| *z /= norm);
        factors.push(v);
    }
    let tail_mass = -log_kept.exp_m1();
    if tail_mass > tail_bound {
        return Err(Error::TailMassTooLarge {
            tail: tail_mass,
            bound: tail_bound,
        });
    }
    let amplitudes = (0..space.dim())
        .map(|i| {
            let n = space.occupations(i);
            factors[0][n[0]] * factors[1][n[1]] * factors[2][n[2]] * factors[3][n[3]]
        })
        .collect();
    Ok((QuantumState::from_amplitudes(*space, amplitudes), tail_mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_basis_vector() {
        let s = FockSpace::uniform(3).unwrap();
        let (psi, tail) = coherent_state(&CoherentInputs::from_magnitudes(0.0, 0.0, 0.0, 0.0, 0.0), &s).unwrap();
        assert_eq!(tail, 0.0);
        assert_eq!(psi, QuantumState::basis(s, [0; 4]).unwrap());
    }

    #[test]
    fn tail_of_unit_amplitude_at_cutoff_15() {
        // Poisson(1) mass above 15: sum_{n>15} e^{-1}/n!
        let oracle: f64 = (16..40)
            .map(|n| (-1.0f64).exp() / (1..=n).map(|k| k as f64).product::<f64>())
            .sum();
        let s = FockSpace::new([15, 0, 0, 0]).unwrap();
        let (_, tail) = coherent_state(&CoherentInputs::from_magnitudes(1.0, 0.0, 0.0, 0.0, 0.0), &s).unwrap();
        assert!(tail < 1e-12);
        assert!((tail - oracle).abs() < 1e-3 * oracle, "{tail} vs {oracle}");
    }

    #[test]
    fn large_pump_does_not_fit() {
        let s = FockSpace::new([15, 0, 0, 0]).unwrap();
        let r = coherent_state(&CoherentInputs::from_magnitudes(10.0, 0.0, 0.0, 0.0, 0.0), &s);
        match r {
            Err(Error::TailMassTooLarge { tail, .. }) => assert!(tail > 0.99),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normalized_after_truncation() {
        let s = FockSpace::new([6, 5, 4, 3]).unwrap();
        let a = CoherentInputs::from_magnitudes(0.9, 0.4, 0.5, 0.3, 0.2);
        let (psi, _) = coherent_state_with_bound(&a, &s, 1e-2).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn poisson_tail_branches_agree() {
        for (l, c) in [(4.0, 3usize), (4.0, 12), (0.25, 1), (9.0, 9)] {
            let direct: f64 = (c + 1..200)
                .map(|n| (-l + n as f64 * f64::ln(l) - (1..=n).map(|k| (k as f64).ln()).sum::<f64>()).exp())
                .sum();
            assert!((poisson_tail(l, c) - direct).abs() < 1e-12 * direct.max(1e-300) + 1e-15);
        }
    }
}
