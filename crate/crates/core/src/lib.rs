//! Perturbative intermodal entanglement witnesses for stimulated Raman
//! scattering, with an exact truncated-Fock-space reference simulator and
//! scan/report plumbing.

pub mod classify;
pub mod coefficients;
pub mod error;
pub mod inputs;
pub mod modes;
pub mod oracle;
pub mod params;
pub mod scan;
pub mod witness;

pub use classify::{classify, classify_samples, is_time_dependent, threshold, Classification, RELATIVE_DELTA};
pub use coefficients::{compute_coefficients, CoefficientSet};
pub use error::{Error, Result};
pub use inputs::{specialize, CoherentInputs, Process};
pub use modes::{Mode, ModePair};
pub use oracle::{oracle_witness, FockSpace, Oracle, OracleSettings, QuantumState};
pub use params::{validate_params, Frame, RamanParams};
pub use witness::{
    duan_witness, hz1_witness, hz2_witness, witness, witness_from, Criterion, F3Reading, WitnessOptions,
};
