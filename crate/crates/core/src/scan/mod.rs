//! Configuration, scans, oracle comparison, the classification table and
//! output files.

pub mod compare;
pub mod config;
pub mod emit;
pub mod run;
pub mod table1;

pub use compare::{compare_report, CompareReport, CompareRow, F3Verdict, ScalingFit};
pub use config::{load_config, parse_config, OracleConfig, OutputConfig, OutputFormat, Preset, ScanConfig};
pub use emit::{emit, load_json, read_json, write_csv, write_json};
pub use run::{run_scan, Provenance, ScanResult, TraceSummary, WitnessSample};
pub use table1::{table1, write_table1, CellStatus, Table1Report, TableCell};
