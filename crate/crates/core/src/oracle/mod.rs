//! Exact reference dynamics in a truncated four-mode Fock space.

pub mod evolve;
pub mod moments;
pub mod operator;
pub mod space;
pub mod state;

pub use evolve::{evolve, DEFAULT_TOLERANCE};
pub use moments::{lower, moment, MomentSpec};
pub use operator::{build_hamiltonian, number_diagonal, SparseOperator};
pub use space::{FockSpace, DEFAULT_MAX_DIM};
pub use state::{coherent_state, coherent_state_with_bound, QuantumState, DEFAULT_TAIL_BOUND};

use crate::error::Result;
use crate::inputs::CoherentInputs;
use crate::modes::ModePair;
use crate::params::RamanParams;
use crate::witness::Criterion;

/// Witness value computed from exact moments of `state`.
pub fn oracle_witness(pair: ModePair, criterion: Criterion, state: &QuantumState) -> f64 {
    let (x, y) = pair.modes();
    match criterion {
        Criterion::Hz1 => {
            moment(state, MomentSpec::NumberProduct(pair)).re - moment(state, MomentSpec::CrossDagger(pair)).norm_sqr()
        }
        Criterion::Hz2 => {
            moment(state, MomentSpec::Number(x)).re * moment(state, MomentSpec::Number(y)).re
                - moment(state, MomentSpec::Pair(pair)).norm_sqr()
        }
        Criterion::Duan => moment(state, MomentSpec::QuadU(pair)).re + moment(state, MomentSpec::QuadV(pair)).re - 2.0,
    }
}

/// Settings of an oracle run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub cutoffs: [usize; 4],
    pub tolerance: f64,
    pub tail_bound: f64,
}

impl OracleSettings {
    pub fn uniform(cutoff: usize) -> Self {
        OracleSettings {
            cutoffs: [cutoff; 4],
            tolerance: DEFAULT_TOLERANCE,
            tail_bound: DEFAULT_TAIL_BOUND,
        }
    }
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings::uniform(12)
    }
}

/// A prepared oracle: Hamiltonian, initial state and the frame rotation that
/// makes its moments comparable with the closed forms.
#[derive(Debug, Clone)]
pub struct Oracle {
    hamiltonian: SparseOperator,
    initial: QuantumState,
    tail_mass: f64,
    frame_freqs: [f64; 4],
    tolerance: f64,
}

impl Oracle {
    pub fn new(p: &RamanParams, a: &CoherentInputs, settings: OracleSettings) -> Result<Self> {
        p.validate()?;
        let space = FockSpace::new(settings.cutoffs)?;
        let (initial, tail_mass) = coherent_state_with_bound(a, &space, settings.tail_bound)?;
        Ok(Oracle {
            hamiltonian: build_hamiltonian(p, &space),
            initial,
            tail_mass,
            frame_freqs: p.mode_frequencies(),
            tolerance: settings.tolerance,
        })
    }

    pub fn hamiltonian(&self) -> &SparseOperator {
        &self.hamiltonian
    }

    pub fn initial(&self) -> &QuantumState {
        &self.initial
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// States at the given times, in the frame of the closed forms.
    ///
    /// Times are visited in increasing order and each state is propagated from
    /// the previous one; the output follows the input order.
    pub fn trajectory(&self, times: &[f64]) -> Result<Vec<QuantumState>> {
        let mut order: Vec<usize> = (0..times.len()).collect();
        order.sort_by(|&i, &j| times[i].total_cmp(&times[j]));
        let mut out = vec![None; times.len()];
        let mut current = self.initial.clone();
        let mut now = 0.0;
        // Split the error budget across the segments actually propagated.
        let tol = self.tolerance / times.len().max(1) as f64;
        for i in order {
            let t = times[i];
            current = evolve(&current, &self.hamiltonian, t - now, tol)?;
            now = t;
            out[i] = Some(current.rotate_free_phases(self.frame_freqs, t));
        }
        Ok(out.into_iter().map(|s| s.expect("every time visited")).collect())
    }

    /// Unrotated (lab-frame) state at `t`.
    pub fn raw_state(&self, t: f64) -> Result<QuantumState> {
        evolve(&self.initial, &self.hamiltonian, t, self.tolerance)
    }

    pub fn state_at(&self, t: f64) -> Result<QuantumState> {
        Ok(self.raw_state(t)?.rotate_free_phases(self.frame_freqs, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::Mode;

    #[test]
    fn witnesses_vanish_on_product_states() {
        let p = RamanParams::paper();
        let a = CoherentInputs::from_magnitudes(0.6, 0.7, 0.5, 0.3, 0.4);
        let oracle = Oracle::new(&p, &a, OracleSettings::uniform(13)).unwrap();
        for pair in ModePair::ALL {
            for c in Criterion::ALL {
                let w = oracle_witness(pair, c, oracle.initial());
                assert!(w.abs() < 1e-10, "{pair} {c}: {w}");
            }
        }
    }

    #[test]
    fn trajectory_matches_direct_evolution() {
        let p = RamanParams::paper();
        let a = CoherentInputs::from_magnitudes(0.5, 1.0, 0.4, 0.3, 0.2);
        let mut settings = OracleSettings::uniform(8);
        settings.tail_bound = 1e-6;
        let oracle = Oracle::new(&p, &a, settings).unwrap();
        let times = [2e-7, 1e-7, 3e-7];
        let traj = oracle.trajectory(&times).unwrap();
        for (t, s) in times.iter().zip(&traj) {
            let direct = oracle.state_at(*t).unwrap();
            let diff: f64 = s
                .amplitudes()
                .iter()
                .zip(direct.amplitudes())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff < 1e-9, "{diff}");
        }
        let n0 = moment(&traj[0], MomentSpec::Number(Mode::A)).re;
        assert!(n0 > 0.0);
    }
}
