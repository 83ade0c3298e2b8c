//! `stellar`: star computation, sweeps, validation and plots from the
//! command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
//! 3 invalid state.

pub mod files;
pub mod plot;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use stellar_core::validate::{self, Fault, Scope};
use stellar_core::{
    full_representation, run_sweep, Endpoints, Error, Family, SweepSpec, SweepVariable,
};

use files::{StarMetadata, StarRecordFile, StateFile, SweepFile, SweepMetadata, SweepRow};
use plot::View;

/// A failed command: message plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: String) -> Self {
        Failure { code: 1, message }
    }

    pub fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn invalid_state(message: String) -> Self {
        Failure { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroState | Error::NonFinite | Error::NotNormalized(_) => {
                Failure::invalid_state(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stellar",
    version,
    about = "Majorana stars of mixed-spin (s, 1/2) states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "half_half")]
    HalfHalf,
    #[value(name = "one_half")]
    OneHalf,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    T,
    Varphi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Front,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    CorruptCoupling,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Star representation of a state file, written as JSON.
    Stars {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Star trajectories along a parameter sweep.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "var", value_enum)]
        var: VarArg,
        /// Accepts plain numbers or multiples of pi, e.g. `pi/2`, `-3pi/4`.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        stop: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, conflicts_with = "t")]
        varphi: Option<f64>,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        t: Option<f64>,
        /// State file for `--family file`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Exclude both ends of the range.
        #[arg(long)]
        open: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: PathBuf,
    },
    /// Seeded invariant checks; exit 1 if any fails.
    Validate {
        #[arg(long, default_value = "all", value_parser = parse_scope)]
        scope: Scope,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Orthographic SVG of a star file or sweep.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(long)]
        output: PathBuf,
    },
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

/// Parses `1.5`, `pi`, `2pi`, `-pi/4`, `3*pi/2` and the like.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let text = s.trim();
    if let Ok(x) = text.parse::<f64>() {
        return Ok(x);
    }
    let bad = || format!("not a number or multiple of pi: `{s}`");
    let lower = text.to_ascii_lowercase();
    let (sign, body) = match lower.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, lower.as_str()),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let coef = numer.trim().strip_suffix("pi").ok_or_else(bad)?;
    let coef = coef.trim().trim_end_matches('*').trim();
    let coef = if coef.is_empty() {
        1.0
    } else {
        coef.parse::<f64>().map_err(|_| bad())?
    };
    Ok(sign * coef * std::f64::consts::PI / denom)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// Reads and checks a state file, warning on stderr if it was renormalized.
pub fn load_state(path: &Path) -> Result<stellar_core::MixedSpinState, Failure> {
    let (state, renormalized) = StateFile::parse(&read(path)?)?.into_state()?;
    if let Some(norm_sqr) = renormalized {
        eprintln!(
            "warning: {} has squared norm {norm_sqr}; renormalized",
            path.display()
        );
    }
    Ok(state)
}

fn cmd_stars(input: &Path, output: &Path) -> Result<(), Failure> {
    let state = load_state(input)?;
    let rep = full_representation(&state)?;
    let metadata = StarMetadata {
        two_s: state.twice_s(),
        t: None,
        varphi: None,
        delta: None,
    };
    write(
        output,
        &StarRecordFile::from_representation(&rep, metadata).to_json(),
    )
}

/// Builds the sweep specification from command-line values.
#[allow(clippy::too_many_arguments)]
pub fn sweep_spec(
    family: FamilyArg,
    var: VarArg,
    start: f64,
    stop: f64,
    steps: usize,
    delta: f64,
    varphi: Option<f64>,
    t: Option<f64>,
    input: Option<&Path>,
    open: bool,
) -> Result<SweepSpec, Failure> {
    let family = match (family, input) {
        (FamilyArg::HalfHalf, None) => Family::HalfHalf,
        (FamilyArg::OneHalf, None) => Family::OneHalf,
        (FamilyArg::File, Some(path)) => Family::State(load_state(path)?),
        (FamilyArg::File, None) => {
            return Err(Failure::usage("--family file needs --input".into()))
        }
        (_, Some(_)) => {
            return Err(Failure::usage(
                "--input is only used with --family file".into(),
            ))
        }
    };
    let variable = match var {
        VarArg::T => SweepVariable::Time,
        VarArg::Varphi => SweepVariable::Varphi,
    };
    if variable == SweepVariable::Time && t.is_some() {
        return Err(Failure::usage(
            "--t is fixed only when sweeping varphi".into(),
        ));
    }
    let (varphi, t) = match (variable, &family) {
        (SweepVariable::Time, Family::State(_)) => {
            if varphi.is_some() {
                return Err(Failure::usage(
                    "--varphi does not apply to a file state".into(),
                ));
            }
            (0.0, 0.0)
        }
        (SweepVariable::Time, _) => (
            varphi.ok_or_else(|| Failure::usage("--var t needs --varphi".into()))?,
            0.0,
        ),
        (SweepVariable::Varphi, _) => (
            0.0,
            t.ok_or_else(|| Failure::usage("--var varphi needs --t".into()))?,
        ),
    };
    let endpoints = if open {
        Endpoints::Open
    } else {
        Endpoints::Closed
    };
    let spec = SweepSpec {
        family,
        variable,
        start,
        stop,
        steps,
        endpoints,
        varphi,
        t,
        delta,
    };
    spec.validate()?;
    Ok(spec)
}

/// Runs a sweep and renders it in the requested format.
pub fn render_sweep(spec: &SweepSpec, format: Format) -> Result<String, Failure> {
    let records = run_sweep(spec)?;
    let rows: Vec<SweepRow> = records.iter().map(SweepRow::from).collect();
    Ok(match format {
        Format::Csv => files::sweep_to_csv(&rows),
        Format::Json => {
            let time = spec.variable == SweepVariable::Time;
            let is_file = matches!(spec.family, Family::State(_));
            let metadata = SweepMetadata {
                family: spec.family.name().to_string(),
                variable: if time { "t" } else { "varphi" }.to_string(),
                start: spec.start,
                stop: spec.stop,
                steps: spec.steps,
                endpoints: match spec.endpoints {
                    Endpoints::Closed => "closed",
                    Endpoints::Open => "open",
                }
                .to_string(),
                delta: spec.delta,
                varphi: (time && !is_file).then_some(spec.varphi),
                t: (!time).then_some(spec.t),
            };
            SweepFile {
                metadata,
                records: rows,
            }
            .to_json()
        }
    })
}

/// Runs the checks and renders the report table.
pub fn validation_report(scope: Scope, fault: Option<Fault>) -> (bool, String) {
    let results = validate::run(scope, fault);
    let width = results
        .iter()
        .map(|r| r.module.len() + r.name.len() + 2)
        .max()
        .unwrap_or(0);
    let mut report = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let name = format!("{}::{}", r.module, r.name);
        report.push_str(&format!("{status}  {name:<width$}  {}\n", r.detail));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    report.push_str(&format!("{} checks, {failed} failed\n", results.len()));
    (failed == 0, report)
}

fn cmd_plot(input: &Path, view: ViewArg, output: &Path) -> Result<(), Failure> {
    let points = files::plot_points(&read(input)?)?;
    let view = match view {
        ViewArg::Front => View::Front,
        ViewArg::Right => View::Right,
    };
    write(output, &plot::render(&points, view))
}

/// Executes a parsed command.
pub fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Stars { input, output } => cmd_stars(&input, &output),
        Command::Sweep {
            family,
            var,
            start,
            stop,
            steps,
            delta,
            varphi,
            t,
            input,
            open,
            format,
            output,
        } => {
            let spec = sweep_spec(
                family,
                var,
                start,
                stop,
                steps,
                delta,
                varphi,
                t,
                input.as_deref(),
                open,
            )?;
            write(&output, &render_sweep(&spec, format)?)
        }
        Command::Validate {
            scope,
            inject_fault,
        } => {
            let fault = inject_fault.map(|FaultArg::CorruptCoupling| Fault::CorruptCoupling);
            let (ok, report) = validation_report(scope, fault);
            print!("{report}");
            if ok {
                Ok(())
            } else {
                Err(Failure::validation("invariant checks failed".into()))
            }
        }
        Command::Plot {
            input,
            view,
            output,
        } => cmd_plot(&input, view, &output),
    }
}
