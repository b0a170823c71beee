//! Closed-form witnesses checked against the exact truncated-Fock-space
//! dynamics.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{OracleConfig, ScanConfig};
use super::emit::fmt_f64;
use super::run::{trace_order, with_pool};
use crate::coefficients::compute_coefficients;
use crate::error::{Error, Result};
use crate::modes::ModePair;
use crate::oracle::{oracle_witness, Oracle, OracleSettings};
use crate::witness::{witness_from, Criterion, F3Reading, WitnessOptions};

/// Accepted range of the error reduction when `t` is halved (third order gives 8).
pub const RATIO_BAND: (f64, f64) = (6.0, 12.0);
/// Accepted closed-form error relative to the largest oracle magnitude on the grid.
pub const AGREEMENT_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub pair: ModePair,
    pub criterion: Criterion,
    pub phi: f64,
    pub t: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_err: f64,
    /// `abs_err / |oracle|`, infinite when the oracle value is exactly zero
    /// and the error is not.
    pub rel_err: f64,
}

/// Error-scaling fit of one `(pair, criterion, phi)` trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub pair: ModePair,
    pub criterion: Criterion,
    pub phi: f64,
    /// Error at `t_max`.
    pub err_full: f64,
    /// Error at `t_max / 2`.
    pub err_half: f64,
    /// `err_full / err_half`.
    pub ratio: f64,
    pub max_abs_err: f64,
    pub max_oracle: f64,
    pub ratio_ok: bool,
    pub agreement_ok: bool,
}

impl ScalingFit {
    pub fn passed(&self) -> bool {
        self.ratio_ok && self.agreement_ok
    }
}

/// Which reading of the `|f3|` factor in the Duan forms tracks the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F3Verdict {
    pub pair: ModePair,
    pub phi: f64,
    /// Largest deviation from the oracle over the grid, per reading.
    pub err_square: f64,
    pub err_linear: f64,
    pub tracks: F3Reading,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub fits: Vec<ScalingFit>,
    pub f3: Vec<F3Verdict>,
    /// Largest coherent-state tail mass over the phases.
    pub tail_mass: f64,
    pub oracle: OracleConfig,
}

impl CompareReport {
    pub fn fit(&self, pair: ModePair, criterion: Criterion, phi: f64) -> Option<&ScalingFit> {
        self.fits
            .iter()
            .find(|f| f.pair == pair && f.criterion == criterion && f.phi.to_bits() == phi.to_bits())
    }
}

/// Oracle witness values of one phase: `(phi, tail mass, per-time values)`.
type PhaseValues = (f64, f64, Vec<Vec<(ModePair, Criterion, f64)>>);

/// Comparison times: `t = 0`, the scan grid, and `t_max / 2`, ascending.
pub fn compare_times(cfg: &ScanConfig) -> Vec<f64> {
    let mut times = vec![0.0, cfg.t_max / 2.0];
    times.extend(cfg.time_grid());
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
}

/// Runs the oracle for every configured phase and compares it with the closed forms.
pub fn compare_report(cfg: &ScanConfig, jobs: usize) -> Result<CompareReport> {
    cfg.validate()?;
    let oracle_cfg = cfg
        .oracle
        .ok_or_else(|| Error::Validation("comparison needs an oracle section".into()))?;
    let times = compare_times(cfg);
    let coeffs: Vec<_> = times.iter().map(|&t| compute_coefficients(&cfg.params, t)).collect();
    let settings = OracleSettings {
        cutoffs: oracle_cfg.cutoffs,
        tolerance: oracle_cfg.tolerance,
        tail_bound: oracle_cfg.tail_bound,
    };
    let mut phis = cfg.phi_set.clone();
    phis.sort_by(f64::total_cmp);

    // One trajectory per phase; witnesses for all pairs and criteria share it.
    let per_phase: Vec<Result<PhaseValues>> = with_pool(jobs, || {
        phis.par_iter()
            .map(|&phi| {
                let inputs = cfg.inputs_at(phi).scaled(oracle_cfg.alpha_scale);
                let oracle = Oracle::new(&cfg.params, &inputs, settings)?;
                let states = oracle.trajectory(&times)?;
                let values = states
                    .iter()
                    .map(|s| {
                        let mut v = Vec::new();
                        for pair in ModePair::ALL {
                            for c in Criterion::ALL {
                                v.push((pair, c, oracle_witness(pair, c, s)));
                            }
                        }
                        v
                    })
                    .collect();
                Ok((phi, oracle.tail_mass(), values))
            })
            .collect()
    })?;

    let mut rows = Vec::new();
    let mut fits = Vec::new();
    let mut f3 = Vec::new();
    let mut tail_mass: f64 = 0.0;
    let wanted = trace_order(cfg);
    for item in per_phase {
        let (phi, tail, values) = item?;
        tail_mass = tail_mass.max(tail);
        log::info!("oracle trajectory at phi = {phi} done (tail mass {tail:e})");
        let inputs = cfg.inputs_at(phi).scaled(oracle_cfg.alpha_scale);
        let oracle_at = |k: usize, pair: ModePair, c: Criterion| {
            values[k]
                .iter()
                .find(|(p, cc, _)| *p == pair && *cc == c)
                .map(|v| v.2)
                .expect("all witnesses evaluated")
        };
        for &(pair, criterion, _) in wanted.iter().filter(|w| w.2.to_bits() == phi.to_bits()) {
            let trace: Vec<CompareRow> = times
                .iter()
                .enumerate()
                .map(|(k, &t)| {
                    let closed_form = witness_from(criterion, pair, &coeffs[k], &inputs, cfg.witness);
                    let oracle = oracle_at(k, pair, criterion);
                    let abs_err = (closed_form - oracle).abs();
                    let rel_err = if abs_err == 0.0 { 0.0 } else { abs_err / oracle.abs() };
                    CompareRow {
                        pair,
                        criterion,
                        phi,
                        t,
                        closed_form,
                        oracle,
                        abs_err,
                        rel_err,
                    }
                })
                .collect();
            fits.push(fit_trace(&trace, cfg.t_max));
            rows.extend(trace);
        }
        for pair in [ModePair::AB, ModePair::AC, ModePair::AD] {
            let err_for = |reading: F3Reading| {
                let opts = WitnessOptions { f3_reading: reading };
                (0..times.len())
                    .map(|k| {
                        (witness_from(Criterion::Duan, pair, &coeffs[k], &inputs, opts)
                            - oracle_at(k, pair, Criterion::Duan))
                        .abs()
                    })
                    .fold(0.0, f64::max)
            };
            let (err_square, err_linear) = (err_for(F3Reading::Square), err_for(F3Reading::Linear));
            f3.push(F3Verdict {
                pair,
                phi,
                err_square,
                err_linear,
                tracks: if err_square <= err_linear {
                    F3Reading::Square
                } else {
                    F3Reading::Linear
                },
            });
        }
    }
    Ok(CompareReport {
        rows,
        fits,
        f3,
        tail_mass,
        oracle: oracle_cfg,
    })
}

fn fit_trace(trace: &[CompareRow], t_max: f64) -> ScalingFit {
    let at = |t: f64| {
        trace
            .iter()
            .find(|r| r.t == t)
            .map(|r| r.abs_err)
            .expect("comparison grid contains t_max and t_max / 2")
    };
    let (err_full, err_half) = (at(t_max), at(t_max / 2.0));
    let ratio = err_full / err_half;
    let max_abs_err = trace.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let max_oracle = trace.iter().map(|r| r.oracle.abs()).fold(0.0, f64::max);
    let first = &trace[0];
    ScalingFit {
        pair: first.pair,
        criterion: first.criterion,
        phi: first.phi,
        err_full,
        err_half,
        ratio,
        max_abs_err,
        max_oracle,
        ratio_ok: ratio >= RATIO_BAND.0 && ratio <= RATIO_BAND.1,
        agreement_ok: max_abs_err <= AGREEMENT_FRACTION * max_oracle,
    }
}

pub const COMPARE_HEADER: &str = "pair,criterion,phi,t,closed_form,oracle,abs_err,rel_err";
pub const FIT_HEADER: &str = "pair,criterion,phi,err_full,err_half,ratio,max_abs_err,max_oracle,ratio_ok,agreement_ok";

pub fn write_compare_csv<W: Write>(report: &CompareReport, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{COMPARE_HEADER}")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.pair,
            r.criterion,
            fmt_f64(r.phi),
            fmt_f64(r.t),
            fmt_f64(r.closed_form),
            fmt_f64(r.oracle),
            fmt_f64(r.abs_err),
            fmt_f64(r.rel_err)
        )?;
    }
    w.flush()
}

pub fn write_fits_csv<W: Write>(report: &CompareReport, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{FIT_HEADER}")?;
    for f in &report.fits {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            f.pair,
            f.criterion,
            fmt_f64(f.phi),
            fmt_f64(f.err_full),
            fmt_f64(f.err_half),
            fmt_f64(f.ratio),
            fmt_f64(f.max_abs_err),
            fmt_f64(f.max_oracle),
            f.ratio_ok,
            f.agreement_ok
        )?;
    }
    w.flush()
}
