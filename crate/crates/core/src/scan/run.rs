//! Closed-form witness scans over time and pump phase.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ScanConfig;
use crate::classify::{classify_samples, is_time_dependent, Classification};
use crate::coefficients::{compute_coefficients, CoefficientSet};
use crate::error::{Error, Result};
use crate::modes::ModePair;
use crate::witness::{witness_from, Criterion};

/// One witness value on the scan grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub pair: ModePair,
    pub criterion: Criterion,
    pub phi: f64,
    pub t: f64,
    pub value: f64,
}

/// Classification of one `(pair, criterion, phi)` trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub pair: ModePair,
    pub criterion: Criterion,
    pub phi: f64,
    pub classification: Classification,
    /// Negative on part, but not all, of the grid.
    pub time_dependent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub frame: String,
    pub config: ScanConfig,
}

impl Provenance {
    pub fn new(cfg: &ScanConfig) -> Self {
        Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            frame: cfg.params.frame.name().to_string(),
            config: cfg.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    /// Sorted by `(pair, criterion, phi, t)`.
    pub rows: Vec<WitnessSample>,
    /// One entry per `(pair, criterion, phi)`, in the same order as `rows`.
    pub summaries: Vec<TraceSummary>,
    pub provenance: Provenance,
}

impl ScanResult {
    pub fn summary(&self, pair: ModePair, criterion: Criterion, phi: f64) -> Option<&TraceSummary> {
        self.summaries
            .iter()
            .find(|s| s.pair == pair && s.criterion == criterion && s.phi.to_bits() == phi.to_bits())
    }

    /// Rows belonging to one trace, in time order.
    pub fn trace(&self, pair: ModePair, criterion: Criterion, phi: f64) -> impl Iterator<Item = &WitnessSample> {
        self.rows
            .iter()
            .filter(move |r| r.pair == pair && r.criterion == criterion && r.phi.to_bits() == phi.to_bits())
    }
}

/// Runs `f` on a rayon pool with `jobs` workers (`0` uses the global default).
pub fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

pub(crate) fn trace_order(cfg: &ScanConfig) -> Vec<(ModePair, Criterion, f64)> {
    let mut pairs = cfg.pairs.clone();
    pairs.sort();
    let mut criteria = cfg.criteria.clone();
    criteria.sort();
    let mut phis = cfg.phi_set.clone();
    phis.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(pairs.len() * criteria.len() * phis.len());
    for &pair in &pairs {
        for &criterion in &criteria {
            for &phi in &phis {
                out.push((pair, criterion, phi));
            }
        }
    }
    out
}

/// Evaluates every configured closed-form witness on the time grid.
pub fn run_scan(cfg: &ScanConfig, jobs: usize) -> Result<ScanResult> {
    cfg.validate()?;
    let grid = cfg.time_grid();
    let coeffs: Vec<CoefficientSet> = grid.iter().map(|&t| compute_coefficients(&cfg.params, t)).collect();
    let traces = trace_order(cfg);
    let opts = cfg.witness;

    let evaluated: Vec<Result<(Vec<WitnessSample>, TraceSummary)>> = with_pool(jobs, || {
        traces
            .par_iter()
            .map(|&(pair, criterion, phi)| {
                let inputs = cfg.inputs_at(phi);
                let rows: Vec<WitnessSample> = coeffs
                    .iter()
                    .map(|c| WitnessSample {
                        pair,
                        criterion,
                        phi,
                        t: c.t,
                        value: witness_from(criterion, pair, c, &inputs, opts),
                    })
                    .collect();
                if let Some(bad) = rows.iter().find(|r| !r.value.is_finite()) {
                    return Err(Error::ToleranceNotMet(format!(
                        "{pair} {criterion} at phi = {phi}, t = {:e} is not finite",
                        bad.t
                    )));
                }
                let samples: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.value)).collect();
                let summary = TraceSummary {
                    pair,
                    criterion,
                    phi,
                    classification: classify_samples(&samples)?,
                    time_dependent: is_time_dependent(&samples),
                };
                Ok((rows, summary))
            })
            .collect()
    })?;

    let mut rows = Vec::with_capacity(traces.len() * grid.len());
    let mut summaries = Vec::with_capacity(traces.len());
    for item in evaluated {
        let (r, s) = item?;
        rows.extend(r);
        summaries.push(s);
    }
    log::info!("scan produced {} rows over {} traces", rows.len(), summaries.len());
    Ok(ScanResult {
        rows,
        summaries,
        provenance: Provenance::new(cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::config::Preset;

    fn small() -> ScanConfig {
        ScanConfig {
            t_steps: 20,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn row_count_matches_arithmetic() {
        let mut cfg = small();
        cfg.pairs = vec![ModePair::AB, ModePair::CD, ModePair::AC];
        cfg.criteria = vec![Criterion::Duan];
        let r = run_scan(&cfg, 2).unwrap();
        assert_eq!(r.rows.len(), 3 * 3 * 20);
        assert_eq!(r.summaries.len(), 9);
    }

    #[test]
    fn rows_are_sorted() {
        let mut cfg = small();
        cfg.pairs = vec![ModePair::CD, ModePair::AB];
        cfg.phi_set = vec![1.0, 0.0];
        let r = run_scan(&cfg, 0).unwrap();
        let key = |s: &WitnessSample| (s.pair, s.criterion, s.phi, s.t);
        for w in r.rows.windows(2) {
            let (a, b) = (key(&w[0]), key(&w[1]));
            assert!(
                (a.0, a.1) < (b.0, b.1) || ((a.0, a.1) == (b.0, b.1) && (a.2, a.3) < (b.2, b.3)),
                "{a:?} !< {b:?}"
            );
        }
    }

    #[test]
    fn job_count_does_not_change_results() {
        let cfg = small();
        assert_eq!(run_scan(&cfg, 1).unwrap(), run_scan(&cfg, 3).unwrap());
    }

    #[test]
    fn tiny_time_window_is_non_conclusive() {
        let mut cfg = small();
        cfg.t_max = 1e-15;
        let r = run_scan(&cfg, 0).unwrap();
        assert!(r.summaries.iter().all(|s| !s.classification.is_entangled()));
    }

    #[test]
    fn spontaneous_stokes_pair_stays_positive() {
        let mut cfg = ScanConfig::preset(Preset::Spontaneous);
        cfg.pairs = vec![ModePair::AB];
        cfg.criteria = vec![Criterion::Hz1];
        let r = run_scan(&cfg, 0).unwrap();
        for s in &r.summaries {
            assert!(!s.classification.is_entangled());
            assert!(s.classification.min_value() >= 0.0);
        }
    }
}
