//! Entanglement classification at the reference parameters against the
//! expected sign pattern.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::ScanConfig;
use super::emit::phi_label;
use super::run::run_scan;
use crate::error::Result;
use crate::modes::ModePair;
use crate::witness::Criterion;

/// The three pump phases of the reference table.
pub const TABLE_PHASES: [f64; 3] = [0.0, FRAC_PI_2, PI];
/// Length of the extended time range relative to the default one.
pub const EXTENDED_FACTOR: f64 = 5.0;

/// Reference pattern: entangled phases for each `(criterion, pair)`, as
/// indices into [`TABLE_PHASES`]. Absent combinations are non-conclusive.
const ENTANGLED: &[(Criterion, ModePair, &[usize])] = &[
    (Criterion::Hz1, ModePair::AC, &[0, 1, 2]),
    (Criterion::Hz1, ModePair::AD, &[0, 1, 2]),
    (Criterion::Hz1, ModePair::BC, &[1]),
    (Criterion::Hz1, ModePair::BD, &[0, 2]),
    (Criterion::Hz2, ModePair::BC, &[0, 2]),
    (Criterion::Hz2, ModePair::BD, &[1]),
    (Criterion::Hz2, ModePair::AC, &[1]),
    (Criterion::Duan, ModePair::AD, &[0]),
];

/// Whether the reference table marks `(criterion, pair)` at phase index `k` as entangled.
pub fn expected_entangled(criterion: Criterion, pair: ModePair, k: usize) -> bool {
    ENTANGLED
        .iter()
        .any(|(c, p, ks)| *c == criterion && *p == pair && ks.contains(&k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Match,
    /// Mismatch on the default range that disappears on the extended range.
    RangeSensitive,
    Fail,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Match => "MATCH",
            CellStatus::RangeSensitive => "RANGE-SENSITIVE",
            CellStatus::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub criterion: Criterion,
    pub pair: ModePair,
    pub phi: f64,
    pub expected: bool,
    pub default_entangled: bool,
    pub extended_entangled: bool,
    pub default_min: f64,
    pub extended_min: f64,
    pub time_dependent: bool,
    pub status: CellStatus,
}

impl TableCell {
    /// Classification differs between the default and the extended range.
    pub fn range_differs(&self) -> bool {
        self.default_entangled != self.extended_entangled
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub cells: Vec<TableCell>,
}

impl Table1Report {
    pub fn cell(&self, criterion: Criterion, pair: ModePair, phi: f64) -> Option<&TableCell> {
        self.cells
            .iter()
            .find(|c| c.criterion == criterion && c.pair == pair && c.phi.to_bits() == phi.to_bits())
    }

    pub fn count(&self, status: CellStatus) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
    }
}

/// Classifies every cell of the table with the closed forms on the
/// configured range and on a range [`EXTENDED_FACTOR`] times longer.
///
/// Parameters, amplitudes and process come from `cfg`; pairs, criteria and
/// phases are fixed to the table's.
pub fn table1(cfg: &ScanConfig, jobs: usize) -> Result<Table1Report> {
    let mut base = cfg.clone();
    base.pairs = ModePair::ALL.to_vec();
    base.criteria = Criterion::ALL.to_vec();
    base.phi_set = TABLE_PHASES.to_vec();
    let mut extended = base.clone();
    extended.t_max = base.t_min + EXTENDED_FACTOR * (base.t_max - base.t_min);
    extended.t_steps = (EXTENDED_FACTOR * base.t_steps as f64).round() as usize;

    let short = run_scan(&base, jobs)?;
    let long = run_scan(&extended, jobs)?;

    let mut cells = Vec::new();
    for criterion in Criterion::ALL {
        for pair in ModePair::ALL {
            for (k, &phi) in TABLE_PHASES.iter().enumerate() {
                let s = short.summary(pair, criterion, phi).expect("complete scan");
                let l = long.summary(pair, criterion, phi).expect("complete scan");
                let expected = expected_entangled(criterion, pair, k);
                let (d, e) = (s.classification.is_entangled(), l.classification.is_entangled());
                let status = if d == expected {
                    CellStatus::Match
                } else if e == expected {
                    CellStatus::RangeSensitive
                } else {
                    CellStatus::Fail
                };
                cells.push(TableCell {
                    criterion,
                    pair,
                    phi,
                    expected,
                    default_entangled: d,
                    extended_entangled: e,
                    default_min: s.classification.min_value(),
                    extended_min: l.classification.min_value(),
                    time_dependent: s.time_dependent,
                    status,
                });
            }
        }
    }
    Ok(Table1Report { cells })
}

fn mark(entangled: bool) -> &'static str {
    if entangled {
        "entangled"
    } else {
        "nc"
    }
}

/// Human-readable matrix followed by the per-cell diff.
pub fn write_table1<W: Write>(report: &Table1Report, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{:<6} {:<4} {:>10} {:>10} {:>10}", "crit", "pair", "0", "pi/2", "pi")?;
    for criterion in Criterion::ALL {
        for pair in ModePair::ALL {
            let cells: Vec<String> = TABLE_PHASES
                .iter()
                .map(|&phi| {
                    let c = report.cell(criterion, pair, phi).expect("complete table");
                    let flag = if c.status == CellStatus::Match { "" } else { "*" };
                    format!("{}{flag}", mark(c.default_entangled))
                })
                .collect();
            writeln!(
                w,
                "{:<6} {:<4} {:>10} {:>10} {:>10}",
                criterion.label(),
                pair.label(),
                cells[0],
                cells[1],
                cells[2]
            )?;
        }
    }
    writeln!(w)?;
    writeln!(
        w,
        "criterion,pair,phi,expected,default,extended,default_min,extended_min,time_dependent,range_differs,status"
    )?;
    for c in &report.cells {
        writeln!(
            w,
            "{},{},{},{},{},{},{:.6e},{:.6e},{},{},{}",
            c.criterion,
            c.pair,
            phi_label(c.phi),
            mark(c.expected),
            mark(c.default_entangled),
            mark(c.extended_entangled),
            c.default_min,
            c.extended_min,
            c.time_dependent,
            c.range_differs(),
            c.status
        )?;
    }
    writeln!(
        w,
        "summary: {} match, {} range-sensitive, {} fail",
        report.count(CellStatus::Match),
        report.count(CellStatus::RangeSensitive),
        report.count(CellStatus::Fail)
    )?;
    w.flush()
}
