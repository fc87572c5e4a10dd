//! `nullflat` command-line interface.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed check, 2 on a
//! mathematical degeneracy. Errors are written to standard error as a JSON
//! object `{code, message, tau}`.

mod error;
pub mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use nullflat::planner::{plan, sample_plan, BoundaryProblem};
use nullflat::verification::{run_suite, Suite};
use nullflat::{
    generate, invert_germ, roundtrip, CurveSpec, FlatInput, FlatInputR21, FlatInputR22, Grid, Orientation, PseudoVec,
    RoundTripReport, Settings, Signature, Space,
};
use serde::Serialize;

pub use error::{CliError, CliResult, ErrorObject};
use io::{load_curve, render_curve, to_json, write_output, Format};

#[derive(Debug, Parser)]
#[command(name = "nullflat", version, about = "Null curves in R^{2,n} from flat outputs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the curve generated by flat outputs on a grid.
    Generate(GenerateArgs),
    /// Recover the flat outputs from a sampled curve.
    Invert(InvertArgs),
    /// Generate, invert and report the recovery error.
    Roundtrip(RoundtripArgs),
    /// Connect two points by a null curve with polynomial flat outputs.
    Plan(PlanArgs),
    /// Run a property suite and write its report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// r21, r22 or r2n.
    #[arg(long, value_parser = parse_space)]
    space: Space,
    /// Flat output f, e.g. "poly:0,0,0,1+sin:1,2".
    #[arg(long, value_parser = parse_spec, allow_hyphen_values = true)]
    f: CurveSpec,
    /// Second flat output (r22 only).
    #[arg(long, value_parser = parse_spec, allow_hyphen_values = true)]
    g: Option<CurveSpec>,
    /// Reparametrization σ; the flat outputs are evaluated at σ(τ).
    #[arg(long, value_parser = parse_spec, allow_hyphen_values = true)]
    sigma: Option<CurveSpec>,
    /// Extra coordinate x₄, x₅, … (r2n only, repeatable).
    #[arg(long = "extra", value_parser = parse_spec, allow_hyphen_values = true)]
    extras: Vec<CurveSpec>,
    /// Grid "t0,t1,count".
    #[arg(long, value_parser = parse_grid, default_value = "0,1,101", allow_hyphen_values = true)]
    grid: Grid<f64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InvertArgs {
    /// Curve file (.json, or .csv with velocities unavailable).
    #[arg(long = "in")]
    input: PathBuf,
    /// Override the space recorded in the file.
    #[arg(long, value_parser = parse_space)]
    space: Option<Space>,
    /// Sign of Δ for r2n curves traversed against their internal parameter.
    #[arg(long, value_enum, default_value = "forward")]
    orientation: OrientationArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Relative tolerance for the recovered values.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlanArgs {
    /// r21 or r22.
    #[arg(long, value_parser = parse_space)]
    space: Space,
    /// Start point, comma-separated.
    #[arg(long, value_parser = parse_floats, allow_hyphen_values = true)]
    from: Floats,
    /// End point, comma-separated.
    #[arg(long, value_parser = parse_floats, allow_hyphen_values = true)]
    to: Floats,
    /// Time interval "t0,t1".
    #[arg(long, value_parser = parse_floats, default_value = "0,1", allow_hyphen_values = true)]
    interval: Floats,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// jets, oracle, null, roundtrip, rank, gauge, planner or all.
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum OrientationArg {
    Forward,
    Reverse,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Forward => Orientation::Forward,
            OrientationArg::Reverse => Orientation::Reverse,
        }
    }
}

#[derive(Debug, Clone)]
struct Floats(Vec<f64>);

fn parse_space(s: &str) -> Result<Space, String> {
    s.parse().map_err(|e: nullflat::Error| e.to_string())
}

fn parse_spec(s: &str) -> Result<CurveSpec, String> {
    s.parse().map_err(|e: nullflat::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: nullflat::Error| e.to_string())
}

fn parse_floats(s: &str) -> Result<Floats, String> {
    s.split(',')
        .map(|p| {
            let v: f64 = p.trim().parse().map_err(|_| format!("not a number: {p:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("not finite: {p:?}"))
            }
        })
        .collect::<Result<_, _>>()
        .map(Floats)
}

fn parse_grid(s: &str) -> Result<Grid<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [t0, t1, count] = parts.as_slice() else {
        return Err("expected t0,t1,count".into());
    };
    let t0: f64 = t0.trim().parse().map_err(|_| format!("t0 is not a number: {t0:?}"))?;
    let t1: f64 = t1.trim().parse().map_err(|_| format!("t1 is not a number: {t1:?}"))?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| format!("count is not an integer: {count:?}"))?;
    Grid::new(t0, t1, count).map_err(|e| e.to_string())
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = stderr.write_all(to_json(&e.object()).as_bytes());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    let settings = Settings::from_env()?;
    match command {
        Command::Generate(a) => {
            let input = build_input(&a.input)?;
            let curve = generate(&input, &a.input.grid, &settings)?;
            write_output(&render_curve(&curve, a.format), a.out.as_deref(), stdout)
        }
        Command::Invert(a) => invert(a, &settings, stdout),
        Command::Roundtrip(a) => {
            let input = build_input(&a.input)?;
            let report = roundtrip(&input, &a.input.grid, &settings)?;
            let passed = report.within(a.tol) && report.max_scaled_residual <= 1e-10;
            let out = RoundtripOutput {
                report,
                tolerance: a.tol,
                passed,
            };
            write_output(&to_json(&out), a.out.as_deref(), stdout)?;
            if passed {
                Ok(())
            } else {
                Err(CliError::CheckFailed("round-trip error exceeds tolerance".into()))
            }
        }
        Command::Plan(a) => {
            let problem = build_problem(&a)?;
            let mut result = plan(&problem)?;
            if a.samples != result.curve.samples.len() {
                result.curve = sample_plan(&result, a.samples)?;
            }
            let text = match a.format {
                Format::Json => to_json(&result),
                Format::Csv => render_curve(&result.curve, Format::Csv),
            };
            write_output(&text, a.out.as_deref(), stdout)
        }
        Command::Verify(a) => {
            let report = run_suite(a.suite, a.seed);
            write_output(&to_json(&report), a.out.as_deref(), stdout)?;
            if report.ok() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(format!(
                    "suite {}: {} of {} cases failed",
                    report.suite, report.failed, report.cases
                )))
            }
        }
    }
}

#[derive(Serialize)]
struct RoundtripOutput {
    #[serde(flatten)]
    report: RoundTripReport,
    tolerance: f64,
    passed: bool,
}

fn build_input(a: &InputArgs) -> CliResult<FlatInput> {
    let usage = |m: &str| Err(CliError::Usage(m.to_string()));
    match a.space {
        Space::R22 => {
            if !a.extras.is_empty() {
                return usage("--extra is only valid with --space r2n");
            }
            let Some(g) = a.g.clone() else {
                return usage("--space r22 requires --g");
            };
            let mut input = FlatInputR22::new(a.f.clone(), g);
            input.sigma = a.sigma.clone();
            Ok(input.into())
        }
        Space::R21 | Space::R2n => {
            if a.g.is_some() {
                return usage("--g is only valid with --space r22");
            }
            if a.space == Space::R21 && !a.extras.is_empty() {
                return usage("--extra is only valid with --space r2n");
            }
            if a.space == Space::R2n && a.extras.is_empty() {
                return usage("--space r2n requires at least one --extra");
            }
            let mut input = FlatInputR21::new(a.f.clone()).with_extras(a.extras.clone());
            input.sigma = a.sigma.clone();
            Ok(input.into())
        }
    }
}

fn build_problem(a: &PlanArgs) -> CliResult<BoundaryProblem> {
    let n = match a.space {
        Space::R21 => 1,
        Space::R22 => 2,
        Space::R2n => return Err(CliError::Usage("plan supports --space r21 and r22".into())),
    };
    let sig = Signature::r2n(n);
    let point = |name: &str, v: &Floats| {
        PseudoVec::new(v.0.clone(), sig)
            .map_err(|_| CliError::Usage(format!("--{name} needs {} components, got {}", sig.dim(), v.0.len())))
    };
    let [t0, t1] = a.interval.0.as_slice() else {
        return Err(CliError::Usage("--interval expects t0,t1".into()));
    };
    Ok(BoundaryProblem::new(
        a.space,
        point("from", &a.from)?,
        point("to", &a.to)?,
        (*t0, *t1),
    )?)
}

#[derive(Serialize)]
struct InvertedSample {
    tau: f64,
    tau_hat: f64,
    f_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_hat: Option<f64>,
}

#[derive(Serialize)]
struct Inverted {
    space: Space,
    samples: Vec<InvertedSample>,
}

fn invert(a: InvertArgs, settings: &Settings, stdout: &mut dyn Write) -> CliResult<()> {
    let mut curve = load_curve(&a.input, a.space)?;
    if let Some(space) = a.space {
        curve.space = space;
        curve.validate()?;
    }
    let mut rows = Vec::with_capacity(curve.samples.len());
    for (i, s) in curve.samples.iter().enumerate() {
        let germ = curve.germ(i)?;
        let inv = invert_germ(curve.space, &germ, a.orientation.into(), settings.eps_den).map_err(|e| {
            nullflat::Error::AtSample {
                index: i,
                tau: s.tau,
                source: Box::new(e),
            }
        })?;
        rows.push(InvertedSample {
            tau: s.tau,
            tau_hat: inv.tau_hat,
            f_hat: inv.f_hat,
            g_hat: inv.g_hat,
        });
    }
    let text = match a.format {
        Format::Json => to_json(&Inverted {
            space: curve.space,
            samples: rows,
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let with_g = curve.space == Space::R22;
            let mut header = vec!["tau", "tau_hat", "f_hat"];
            if with_g {
                header.push("g_hat");
            }
            w.write_record(&header).expect("in-memory csv");
            for r in &rows {
                let mut rec = vec![io::float17(r.tau), io::float17(r.tau_hat), io::float17(r.f_hat)];
                if let Some(g) = r.g_hat {
                    rec.push(io::float17(g));
                }
                w.write_record(&rec).expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv writes UTF-8")
        }
    };
    write_output(&text, a.out.as_deref(), stdout)
}
