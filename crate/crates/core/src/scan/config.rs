//! Scan configuration and its flat `key = value` file format.
//!
//! Blank lines and `#` comments are ignored. Unknown keys are errors. Lists
//! are comma separated; phases accept multiples of `pi` such as `pi/2` or
//! `-3pi/4`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inputs::{specialize, CoherentInputs, Process};
use crate::modes::{Mode, ModePair};
use crate::params::{Frame, RamanParams};
use crate::witness::{Criterion, F3Reading, WitnessOptions};

/// Above this `max(g, chi) t_max` the closed forms are outside their
/// declared validity range and a warning is logged.
pub const SOFT_COUPLING_LIMIT: f64 = 0.1;
/// `max(g, chi) t_max` above which a configuration is rejected.
pub const HARD_COUPLING_LIMIT: f64 = 0.5;
/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RAMAN_OUT_DIR";

/// Named starting points for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Paper parameters, all four modes seeded.
    Paper,
    Spontaneous,
    PartialB,
    PartialC,
    PartialD,
}

impl Preset {
    pub fn process(self) -> Process {
        match self {
            Preset::Paper => Process::Stimulated,
            Preset::Spontaneous => Process::Spontaneous,
            Preset::PartialB => Process::PartiallySpontaneous(Mode::B),
            Preset::PartialC => Process::PartiallySpontaneous(Mode::C),
            Preset::PartialD => Process::PartiallySpontaneous(Mode::D),
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" | "stimulated" => Ok(Preset::Paper),
            "spontaneous" => Ok(Preset::Spontaneous),
            "partial-b" => Ok(Preset::PartialB),
            "partial-c" => Ok(Preset::PartialC),
            "partial-d" => Ok(Preset::PartialD),
            _ => Err(format!(
                "unknown preset `{s}` (expected paper, spontaneous, partial-b, partial-c or partial-d)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "both" => Ok(OutputFormat::Both),
            _ => Err(format!("unknown format `{s}` (expected csv, json or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("out"), PathBuf::from),
            format: OutputFormat::Csv,
        }
    }
}

/// Reference-simulator settings for comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub cutoffs: [usize; 4],
    /// Factor applied to every input amplitude before comparison. The default
    /// of 0.1 brings the paper amplitudes within reach of the simulator.
    pub alpha_scale: f64,
    pub tolerance: f64,
    pub tail_bound: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cutoffs: [14; 4],
            alpha_scale: 0.1,
            tolerance: crate::oracle::DEFAULT_TOLERANCE,
            tail_bound: crate::oracle::DEFAULT_TAIL_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub params: RamanParams,
    /// Input amplitudes; the pump phase is replaced by each entry of `phi_set`.
    pub inputs: CoherentInputs,
    pub process: Process,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub phi_set: Vec<f64>,
    pub criteria: Vec<Criterion>,
    pub pairs: Vec<ModePair>,
    pub oracle: Option<OracleConfig>,
    pub witness: WitnessOptions,
    /// Where results go; not part of the echoed configuration, so the same
    /// scan written to two places produces identical files.
    #[serde(skip)]
    pub output: OutputConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig::preset(Preset::Paper)
    }
}

impl ScanConfig {
    /// Paper parameters over `(0, 1e-6]` s in 400 steps at `phi = 0, pi/2, pi`,
    /// specialized to the preset's process.
    pub fn preset(preset: Preset) -> Self {
        let process = preset.process();
        let inputs = specialize(&CoherentInputs::paper(0.0), process).expect("paper pump is non-zero");
        ScanConfig {
            params: RamanParams::paper(),
            inputs,
            process,
            t_min: 0.0,
            t_max: 1e-6,
            t_steps: 400,
            phi_set: vec![0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI],
            criteria: Criterion::ALL.to_vec(),
            pairs: ModePair::ALL.to_vec(),
            oracle: None,
            witness: WitnessOptions::default(),
            output: OutputConfig::default(),
        }
    }

    /// Replaces the process, zeroing the amplitudes it leaves unseeded.
    pub fn set_process(&mut self, process: Process) -> Result<()> {
        self.inputs = specialize(&self.inputs, process)?;
        self.process = process;
        Ok(())
    }

    /// Sample times `t_min + (t_max - t_min) k / t_steps` for `k = 1..=t_steps`.
    pub fn time_grid(&self) -> Vec<f64> {
        let span = self.t_max - self.t_min;
        (1..=self.t_steps)
            .map(|k| self.t_min + span * k as f64 / self.t_steps as f64)
            .collect()
    }

    /// Inputs at pump phase `phi`.
    pub fn inputs_at(&self, phi: f64) -> CoherentInputs {
        self.inputs.with_pump_phase(phi)
    }

    /// `max(g, chi) t_max`.
    pub fn coupling_time(&self) -> f64 {
        self.params.max_coupling() * self.t_max
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.inputs.validate()?;
        let invalid = |msg: String| Err(Error::Validation(msg));
        if !(self.t_min.is_finite() && self.t_max.is_finite()) {
            return invalid("t_min and t_max must be finite".into());
        }
        if self.t_min < 0.0 {
            return invalid(format!("t_min = {} must be >= 0", self.t_min));
        }
        if self.t_max <= self.t_min {
            return invalid(format!("t_max = {} must exceed t_min = {}", self.t_max, self.t_min));
        }
        if self.t_steps < 2 {
            return invalid(format!("t_steps = {} must be >= 2", self.t_steps));
        }
        let gt = self.coupling_time();
        if gt > HARD_COUPLING_LIMIT {
            return invalid(format!(
                "max(g, chi) * t_max = {gt} exceeds {HARD_COUPLING_LIMIT}; the closed forms are perturbative"
            ));
        }
        if gt > SOFT_COUPLING_LIMIT {
            log::warn!("max(g, chi) * t_max = {gt} is above {SOFT_COUPLING_LIMIT}; closed forms may be inaccurate");
        }
        if self.phi_set.is_empty() {
            return invalid("phi list is empty".into());
        }
        if self.phi_set.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("phi"));
        }
        if self.criteria.is_empty() {
            return invalid("criteria list is empty".into());
        }
        if self.pairs.is_empty() {
            return invalid("pairs list is empty".into());
        }
        if has_duplicates(&self.criteria) || has_duplicates(&self.pairs) || has_duplicate_floats(&self.phi_set) {
            return invalid("criteria, pairs and phi lists must not repeat entries".into());
        }
        if let Some(o) = &self.oracle {
            if !(o.alpha_scale.is_finite() && o.alpha_scale >= 0.0) {
                return invalid(format!("oracle alpha scale {} must be finite and >= 0", o.alpha_scale));
            }
            if !(o.tolerance > 0.0 && o.tail_bound > 0.0) {
                return invalid("oracle tolerance and tail bound must be positive".into());
            }
        }
        Ok(())
    }
}

fn has_duplicates<T: PartialEq>(v: &[T]) -> bool {
    v.iter().enumerate().any(|(i, x)| v[..i].contains(x))
}

fn has_duplicate_floats(v: &[f64]) -> bool {
    v.iter()
        .enumerate()
        .any(|(i, x)| v[..i].iter().any(|y| y.to_bits() == x.to_bits()))
}

/// Parses a phase such as `0`, `1.25`, `pi`, `-pi/2`, `3pi/4` or `3*pi/4`.
pub fn parse_phase(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t.as_str()),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let bad = || format!("cannot parse phase `{s}`");
    let numerator = match num.strip_suffix("pi") {
        Some(k) => {
            let k = k.trim().trim_end_matches('*').trim();
            let k = if k.is_empty() {
                1.0
            } else {
                k.parse::<f64>().map_err(|_| bad())?
            };
            k * std::f64::consts::PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            numerator / d
        }
        None => numerator,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(if neg { -value } else { value })
}

pub fn parse_phase_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    split_list(s).map(parse_phase).collect()
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    split_list(s)
        .map(|x| x.parse::<T>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_num<T: FromStr>(s: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    s.trim().parse::<T>().map_err(|e| format!("`{s}`: {e}"))
}

/// Parses the flat configuration text. Defaults come from the paper preset.
pub fn parse_config(text: &str) -> Result<ScanConfig> {
    let mut cfg = ScanConfig::default();
    let mut magnitudes: [f64; 4] = [10.0, 8.0, 0.01, 1.0];
    let mut process = Process::Stimulated;
    let mut omegas: Option<[Option<f64>; 4]> = None;
    let mut frame_name: Option<String> = None;
    let mut oracle: Option<OracleConfig> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |field: &str, message: String| Error::Parse {
            line: line_no,
            field: field.to_string(),
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key = value`".into()))?;
        let key = key.trim();
        let value = value.trim();
        let err = |message: String| parse_err(key, message);

        match key {
            "g" => cfg.params.g = parse_num(value).map_err(err)?,
            "chi" => cfg.params.chi = parse_num(value).map_err(err)?,
            "d_omega1" => cfg.params.d_omega1 = parse_num(value).map_err(err)?,
            "d_omega2" => cfg.params.d_omega2 = parse_num(value).map_err(err)?,
            "frame" => frame_name = Some(value.to_ascii_lowercase()),
            "omega_a" | "omega_b" | "omega_c" | "omega_d" => {
                let idx = (key.as_bytes()[6] - b'a') as usize;
                omegas.get_or_insert([None; 4])[idx] = Some(parse_num(value).map_err(err)?);
            }
            "alpha1" | "alpha2" | "alpha3" | "alpha4" => {
                let idx = (key.as_bytes()[5] - b'1') as usize;
                let v: f64 = parse_num(value).map_err(err)?;
                if v < 0.0 {
                    return Err(err("amplitude magnitudes must be >= 0".into()));
                }
                magnitudes[idx] = v;
            }
            "preset" | "process" => process = value.parse::<Preset>().map_err(err)?.process(),
            "phi" => cfg.phi_set = parse_phase_list(value).map_err(err)?,
            "t_min" => cfg.t_min = parse_num(value).map_err(err)?,
            "t_max" => cfg.t_max = parse_num(value).map_err(err)?,
            "t_steps" => cfg.t_steps = parse_num(value).map_err(err)?,
            "criteria" => cfg.criteria = parse_list(value).map_err(err)?,
            "pairs" => cfg.pairs = parse_list(value).map_err(err)?,
            "f3_reading" => cfg.witness.f3_reading = value.parse::<F3Reading>().map_err(err)?,
            "output_dir" => cfg.output.dir = PathBuf::from(value),
            "output_format" => cfg.output.format = value.parse().map_err(err)?,
            "oracle_cutoff" => {
                let v: Vec<usize> = parse_list(value).map_err(err)?;
                oracle_entry(&mut oracle).cutoffs = match v.as_slice() {
                    [c] => [*c; 4],
                    [a, b, c, d] => [*a, *b, *c, *d],
                    _ => return Err(err("expected one cutoff or four".into())),
                };
            }
            "oracle_alpha_scale" => oracle_entry(&mut oracle).alpha_scale = parse_num(value).map_err(err)?,
            "oracle_tol" => oracle_entry(&mut oracle).tolerance = parse_num(value).map_err(err)?,
            "oracle_tail_bound" => oracle_entry(&mut oracle).tail_bound = parse_num(value).map_err(err)?,
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }

    cfg.params.frame = match (frame_name.as_deref(), omegas) {
        (None | Some("corotating"), None) => Frame::CoRotating,
        (Some("corotating"), Some(_)) => {
            return Err(Error::Validation("omega_* keys require frame = absolute".into()));
        }
        (None | Some("absolute"), Some(w)) => {
            let get = |i: usize, name: &str| {
                w[i].ok_or_else(|| Error::Validation(format!("frame = absolute requires {name}")))
            };
            Frame::Absolute {
                omega_a: get(0, "omega_a")?,
                omega_b: get(1, "omega_b")?,
                omega_c: get(2, "omega_c")?,
                omega_d: get(3, "omega_d")?,
            }
        }
        (Some("absolute"), None) => {
            return Err(Error::Validation("frame = absolute requires omega_a..omega_d".into()));
        }
        (Some(other), _) => {
            return Err(Error::Validation(format!(
                "unknown frame `{other}` (expected corotating or absolute)"
            )));
        }
    };
    cfg.inputs = CoherentInputs::from_magnitudes(magnitudes[0], 0.0, magnitudes[1], magnitudes[2], magnitudes[3]);
    cfg.process = Process::Stimulated;
    cfg.set_process(process)?;
    cfg.oracle = oracle;
    cfg.validate()?;
    Ok(cfg)
}

fn oracle_entry(o: &mut Option<OracleConfig>) -> &mut OracleConfig {
    o.get_or_insert_with(OracleConfig::default)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<ScanConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}
