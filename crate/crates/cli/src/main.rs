use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use raman_core::scan::compare::{write_compare_csv, write_fits_csv};
use raman_core::scan::config::parse_phase;
use raman_core::scan::{
    compare_report, emit, load_config, run_scan, table1, write_table1, OutputFormat, Preset, ScanConfig,
};
use raman_core::{Error, F3Reading, Frame};

#[derive(Parser, Debug)]
#[command(
    name = "raman",
    version,
    about = "Entanglement witnesses for stimulated Raman scattering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate closed-form witnesses over time and pump phase.
    Scan(ScanArgs),
    /// Compare closed-form witnesses with the exact Fock-space simulator.
    Compare(CompareArgs),
    /// Classify every pair, criterion and phase against the reference pattern.
    Table1(ScanArgs),
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Starting point: paper, spontaneous, partial-b, partial-c or partial-d.
    #[arg(long)]
    preset: Option<Preset>,
    /// Comma-separated pump phases, e.g. `0,pi/2,pi`.
    #[arg(long, value_parser = parse_phase, value_delimiter = ',', allow_hyphen_values = true)]
    phi: Vec<f64>,
    /// End of the time window in seconds.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of time samples.
    #[arg(long)]
    t_steps: Option<usize>,
    #[arg(long, value_enum)]
    frame: Option<FrameArg>,
    /// Output directory (default: $RAMAN_OUT_DIR or ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, json or both.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    scan: ScanArgs,
    /// Fock cutoff applied to every mode.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Factor applied to all input amplitudes.
    #[arg(long)]
    alpha_scale: Option<f64>,
    /// Propagator error budget in state norm.
    #[arg(long)]
    tol: Option<f64>,
    /// Reading of the |f3| factor in the Duan forms: sq or lin.
    #[arg(long)]
    f3_reading: Option<F3Reading>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrameArg {
    Corotating,
    Absolute,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ToleranceNotMet(_) | Error::TailMassTooLarge { .. } | Error::DimensionTooLarge { .. } => EXIT_NUMERICAL,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn build_config(args: &ScanArgs) -> Result<ScanConfig, Error> {
    let mut cfg = match (&args.config, args.preset) {
        (Some(path), preset) => {
            let mut cfg = load_config(path)?;
            if let Some(p) = preset {
                cfg.set_process(p.process())?;
            }
            cfg
        }
        (None, preset) => ScanConfig::preset(preset.unwrap_or(Preset::Paper)),
    };
    if !args.phi.is_empty() {
        cfg.phi_set = args.phi.clone();
    }
    if let Some(t) = args.t_max {
        cfg.t_max = t;
    }
    if let Some(n) = args.t_steps {
        cfg.t_steps = n;
    }
    match args.frame {
        Some(FrameArg::Corotating) => cfg.params.frame = Frame::CoRotating,
        Some(FrameArg::Absolute) if !matches!(cfg.params.frame, Frame::Absolute { .. }) => {
            return Err(Error::Validation(
                "--frame absolute needs omega_a..omega_d in a --config file".into(),
            ));
        }
        _ => {}
    }
    if let Some(out) = &args.out {
        cfg.output.dir = out.clone();
    }
    if let Some(format) = args.format {
        cfg.output.format = format;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    std::fs::create_dir_all(path.parent().unwrap_or(Path::new("."))).map_err(|e| io_err(path, e))?;
    File::create(path).map(BufWriter::new).map_err(|e| io_err(path, e))
}

fn io_err(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn cmd_scan(args: &ScanArgs) -> Result<(), Error> {
    let cfg = build_config(args)?;
    let result = run_scan(&cfg, args.jobs)?;
    let mut stdout = io::stdout().lock();
    let stdout_err = |e| io_err(Path::new("<stdout>"), e);
    for s in &result.summaries {
        writeln!(
            stdout,
            "{} {} phi={:.6} {} min={:.6e}{}",
            s.pair,
            s.criterion,
            s.phi,
            s.classification.label(),
            s.classification.min_value(),
            if s.time_dependent { " (time-dependent)" } else { "" }
        )
        .map_err(stdout_err)?;
    }
    for path in emit(&result, &cfg.output.dir, cfg.output.format)? {
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), Error> {
    let mut cfg = build_config(&args.scan)?;
    let mut oracle = cfg.oracle.unwrap_or_default();
    if let Some(c) = args.cutoff {
        oracle.cutoffs = [c; 4];
    }
    if let Some(s) = args.alpha_scale {
        oracle.alpha_scale = s;
    }
    if let Some(t) = args.tol {
        oracle.tolerance = t;
    }
    cfg.oracle = Some(oracle);
    if let Some(r) = args.f3_reading {
        cfg.witness.f3_reading = r;
    }
    let report = compare_report(&cfg, args.scan.jobs)?;

    let dir = &cfg.output.dir;
    let path = dir.join("compare.csv");
    write_compare_csv(&report, create(&path)?).map_err(|e| io_err(&path, e))?;
    let fits_path = dir.join("compare_fits.csv");
    write_fits_csv(&report, create(&fits_path)?).map_err(|e| io_err(&fits_path, e))?;
    info!("wrote {} and {}", path.display(), fits_path.display());

    let mut out = io::stdout().lock();
    let w = |out: &mut io::StdoutLock, s: String| writeln!(out, "{s}").map_err(|e| io_err(Path::new("<stdout>"), e));
    w(&mut out, format!("tail mass {:.3e}", report.tail_mass))?;
    for f in &report.fits {
        w(
            &mut out,
            format!(
                "{} {:<4} phi={:.6} ratio={:>8.3} max_err={:.3e} max_oracle={:.3e} {}",
                f.pair,
                f.criterion,
                f.phi,
                f.ratio,
                f.max_abs_err,
                f.max_oracle,
                if f.passed() { "ok" } else { "MISMATCH" }
            ),
        )?;
    }
    for v in &report.f3 {
        w(
            &mut out,
            format!(
                "f3 reading {} phi={:.6}: sq err {:.3e}, lin err {:.3e} -> {}",
                v.pair, v.phi, v.err_square, v.err_linear, v.tracks
            ),
        )?;
    }
    Ok(())
}

fn cmd_table1(args: &ScanArgs) -> Result<(), Error> {
    let cfg = build_config(args)?;
    let report = table1(&cfg, args.jobs)?;
    write_table1(&report, io::stdout().lock()).map_err(|e| io_err(Path::new("<stdout>"), e))?;
    let path = cfg.output.dir.join("table1.txt");
    write_table1(&report, create(&path)?).map_err(|e| io_err(&path, e))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Table1(args) => cmd_table1(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
