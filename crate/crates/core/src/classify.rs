use serde::{Deserialize, Serialize};

use crate::coefficients::compute_coefficients;
use crate::error::{Error, Result};
use crate::inputs::CoherentInputs;
use crate::modes::ModePair;
use crate::params::RamanParams;
use crate::witness::{witness_from, Criterion, WitnessOptions};

/// Relative threshold below which a witness counts as negative.
pub const RELATIVE_DELTA: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    Entangled { min_t: f64, min_value: f64 },
    NonConclusive { min_value: f64 },
}

impl Classification {
    pub fn is_entangled(&self) -> bool {
        matches!(self, Classification::Entangled { .. })
    }

    pub fn min_value(&self) -> f64 {
        match *self {
            Classification::Entangled { min_value, .. } | Classification::NonConclusive { min_value } => min_value,
        }
    }

    pub fn label(&self) -> &'static str {
        if self.is_entangled() {
            "entangled"
        } else {
            "nc"
        }
    }
}

/// `delta = 1e-6 * max(1, max |value|)` over the samples.
pub fn threshold(samples: &[(f64, f64)]) -> f64 {
    let scale = samples.iter().fold(1.0_f64, |m, &(_, v)| m.max(v.abs()));
    RELATIVE_DELTA * scale
}

/// Classifies a sampled witness trace of `(t, value)` points.
pub fn classify_samples(samples: &[(f64, f64)]) -> Result<Classification> {
    let &(mut min_t, mut min_value) = samples.first().ok_or(Error::EmptyGrid)?;
    for &(t, v) in &samples[1..] {
        if v < min_value {
            min_t = t;
            min_value = v;
        }
    }
    Ok(if min_value < -threshold(samples) {
        Classification::Entangled { min_t, min_value }
    } else {
        Classification::NonConclusive { min_value }
    })
}

/// True when the witness is below threshold on part, but not all, of the trace.
pub fn is_time_dependent(samples: &[(f64, f64)]) -> bool {
    let delta = threshold(samples);
    let neg = samples.iter().filter(|&&(_, v)| v < -delta).count();
    neg > 0 && neg < samples.len()
}

pub fn classify(
    pair: ModePair,
    criterion: Criterion,
    p: &RamanParams,
    a: &CoherentInputs,
    t_grid: &[f64],
    opts: WitnessOptions,
) -> Result<Classification> {
    if t_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let samples: Vec<(f64, f64)> = t_grid
        .iter()
        .map(|&t| (t, witness_from(criterion, pair, &compute_coefficients(p, t), a, opts)))
        .collect();
    classify_samples(&samples)
}
