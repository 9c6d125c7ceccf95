//! Command-line front end. Angles are radians throughout.
//!
//! Exit codes: 0 when a result was produced (whatever the verdict), 2 for
//! invalid input, 3 for a numerical failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::protocol::{classify, tag_family, Mode, ProtocolConfig};
use crate::states::{Family, FamilyParams};
use crate::sweep::{phase_scan, run_sweep, write_phase_scan_csv, write_sweep_csv, GridAxis, Quantity, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "correlation-probe",
    version,
    about = "Detect discord and classical correlations from system-only trace distances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one state as QC, CC or F and print the result as JSON.
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Evaluate witnesses of the discordant family over a (lambda, theta) grid.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Local discord witness of one state at several phases.
    #[command(allow_negative_numbers = true)]
    PhaseScan(PhaseScanArgs),
}

#[derive(Args, Debug, Default)]
struct StateArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Only for the QC family.
    #[arg(long)]
    theta: Option<f64>,
}

impl StateArgs {
    fn resolve(&self, base: Option<FamilyParams>) -> Result<FamilyParams> {
        let family = self.family.or(base.map(|b| b.family));
        let lambda = self.lambda.or(base.map(|b| b.lambda));
        let (Some(family), Some(lambda)) = (family, lambda) else {
            return Err(Error::OutOfRange("a state needs --family and --lambda".into()));
        };
        let theta = self.theta.or(base.and_then(|b| b.theta));
        let params = FamilyParams { family, lambda, theta };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    mode: Option<Mode>,
    /// Shots per measurement setting.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Bootstrap replicas per reconstruction.
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long)]
    threshold_sigma: Option<f64>,
    #[arg(long)]
    hwp_angle: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    /// Phases tried in order when stage 1 does not fire.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    retry_phis: Option<Vec<f64>>,
    /// Include the compared marginals in the output.
    #[arg(long)]
    emit_states: bool,
    /// JSON file `{"state": {...}, "protocol": {...}}`; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ClassifyFile {
    state: Option<FamilyParams>,
    protocol: ProtocolConfig,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// `start,stop,count`
    #[arg(long)]
    lambda_grid: Option<GridAxis>,
    /// `start,stop,count`
    #[arg(long)]
    theta_grid: Option<GridAxis>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    hwp_angle: Option<f64>,
    /// Write a single `value` column instead of all three.
    #[arg(long, value_enum)]
    quantity: Option<Quantity>,
    /// JSON file holding a sweep spec; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhaseScanArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    phis: Option<Vec<f64>>,
    /// JSON file `{"state": {...}, "phis": [...]}`; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PhaseScanFile {
    state: Option<FamilyParams>,
    phis: Option<Vec<f64>>,
}

fn read_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    match path {
        Some(p) => Ok(serde_json::from_reader(io::BufReader::new(File::open(p)?))?),
        None => Ok(T::default()),
    }
}

fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut out = BufWriter::new(File::create(p)?);
            body(&mut out)?;
            out.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            body(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn resolve_protocol(args: &ClassifyArgs, mut cfg: ProtocolConfig) -> ProtocolConfig {
    if let Some(m) = args.mode {
        cfg.mode = m;
    }
    if let Some(v) = args.shots {
        cfg.shots = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.bootstrap {
        cfg.bootstrap_samples = v;
    }
    if let Some(v) = args.threshold_sigma {
        cfg.threshold_sigma = v;
    }
    if let Some(v) = args.hwp_angle {
        cfg.hwp_angle = v;
    }
    if let Some(v) = args.phi {
        cfg.phi = v;
    }
    if let Some(v) = &args.retry_phis {
        cfg.retry_phis = v.clone();
    }
    cfg.emit_states |= args.emit_states;
    cfg
}

fn cmd_classify(args: &ClassifyArgs) -> Result<()> {
    let file: ClassifyFile = read_config(args.config.as_deref())?;
    let params = args.state.resolve(file.state)?;
    let config = resolve_protocol(args, file.protocol);
    config.validate()?;

    let rho = params.build()?;
    let mut result = classify(&rho, &config)?;
    tag_family(&mut result, &params);
    let json = serde_json::to_string_pretty(&result)?;
    with_output(args.output.as_deref(), |out| Ok(writeln!(out, "{json}")?))
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let mut spec: SweepSpec = read_config(args.config.as_deref())?;
    if let Some(g) = args.lambda_grid {
        spec.lambda_grid = g;
    }
    if let Some(g) = args.theta_grid {
        spec.theta_grid = g;
    }
    if let Some(v) = args.phi {
        spec.phi = v;
    }
    if let Some(v) = args.hwp_angle {
        spec.hwp_angle = v;
    }
    if args.quantity.is_some() {
        spec.quantity = args.quantity;
    }
    let rows = run_sweep(&spec)?;
    with_output(args.output.as_deref(), |out| write_sweep_csv(out, &spec, &rows))
}

fn cmd_phase_scan(args: &PhaseScanArgs) -> Result<()> {
    let file: PhaseScanFile = read_config(args.config.as_deref())?;
    let params = args.state.resolve(file.state)?;
    let phis = match args.phis.clone().or(file.phis) {
        Some(p) if !p.is_empty() => p,
        _ => {
            use std::f64::consts::PI;
            vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI]
        }
    };
    if phis.iter().any(|p| !p.is_finite()) {
        return Err(Error::OutOfRange("phases must be finite".into()));
    }
    let rows = phase_scan(&params, &phis)?;
    with_output(args.output.as_deref(), |out| write_phase_scan_csv(out, &params, &rows))
}

fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_NUMERICAL
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::PhaseScan(a) => cmd_phase_scan(a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        // downstream reader closed early (e.g. `| head`)
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
