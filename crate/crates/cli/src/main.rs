//! Command-line front end for the range library.
//!
//! One verb per computation: `range` (classical numerical range), `crange`
//! (pair range, closed-form at order 2 or sampled bordered region at 3..8),
//! `certify` (equality certificate with verdict-coded exit status), `check`
//! (individual closed-form conditions), `alpha` (product scaling constant)
//! and `reproduce` (frozen preset scenarios for diffable reports).
//!
//! Exit codes: `certify` maps its verdict to 0/1/2 (equal/unequal/
//! inconclusive), `check` and `reproduce` return 0 when everything holds and
//! 1 otherwise (2 for a passing report whose certificate stayed
//! inconclusive). Unreadable or unparsable inputs exit 64; numerical domain
//! errors exit 65.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cnrange::{
    alpha_star, bordered_region, boundary_points, certify_equality, check_c2, check_c3, check_c4,
    check_m0, check_m1, check_m2, check_m3, check_m4, ellipse_2x2, nakasato_cnr_2x2, reproduce,
    AlphaOptions, CMat, CertifyOptions, Exec, ReproCase, SampleBudget, SeedPlan, Verdict,
};

mod output;

use output::{csv_points, emit, region_polygon, Scene};

#[derive(Parser)]
#[command(
    name = "cnrange",
    version,
    about = "Classical and pair numerical ranges of small complex matrices",
    long_about = "Computes classical numerical ranges, closed-form 2x2 pair ranges, sampled \
                  bordered ranges, and equality certificates. Matrices are JSON files of the \
                  form {\"order\": n, \"entries\": [[re, im], ...]} (row-major)."
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Master seed for every sampling stream.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Monte-Carlo cloud samples.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,

    /// Support-function directions (also boundary resolution).
    #[arg(long, global = true, default_value_t = 1024)]
    angles: usize,

    /// Grid points for the compression parameter on [0, 1].
    #[arg(long = "eps-grid", global = true, default_value_t = 17)]
    eps_grid: usize,

    /// Grid points for the radial scale on [0, 1] (orders >= 4).
    #[arg(long = "alpha-grid", global = true, default_value_t = 9)]
    alpha_grid: usize,

    /// Haar samples of the conjugating unitary in the region sweep.
    #[arg(long = "orbit-samples", global = true, default_value_t = 20_000)]
    orbit_samples: usize,

    /// Embedding order for bordered computations (2 means closed form).
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,

    /// Verdict threshold: `equal` iff the worst violation stays within this
    /// (in scale units).
    #[arg(long, global = true, default_value_t = 2e-2)]
    tol: f64,

    /// Witness threshold: `unequal` needs a witness beyond this (in scale
    /// units).
    #[arg(long = "witness-tol", global = true, default_value_t = 5e-2)]
    witness_tol: f64,

    /// Output format (`csv` and `svg` apply to range and crange).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the artifact to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Force the sequential reduction path. Outputs are bit-identical either
    /// way (each sample owns a counter-derived generator); this flag removes
    /// even the scheduling nondeterminism of thread startup.
    #[arg(long = "bit-exact", global = true)]
    bit_exact: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Classical numerical range of one matrix (order 2: exact ellipse;
    /// higher orders: supporting boundary polyline).
    Range { matrix: PathBuf },
    /// Pair range: closed-form ellipse at --n 2, sampled bordered region at
    /// --n 3..8.
    Crange { a: PathBuf, b: PathBuf },
    /// Certificate for bordered-range equality; exit code is the verdict
    /// (0 equal, 1 unequal, 2 inconclusive).
    Certify { a: PathBuf, b: PathBuf },
    /// One closed-form condition; exit 0 when it holds, 1 when it fails.
    Check {
        #[arg(long, value_enum)]
        theorem: Theorem,
        a: PathBuf,
        b: PathBuf,
    },
    /// Largest scaling of the product of the classical ranges that fits in
    /// the pair range, printed with three decimals.
    Alpha { a: PathBuf, b: PathBuf },
    /// Run a frozen preset scenario (fixed seed 42 and default budgets, so
    /// reports can be diffed byte-for-byte).
    Reproduce {
        #[arg(value_enum)]
        case: Case,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    M0,
    M1,
    M2,
    M3,
    M4,
    C2,
    C3,
    C4,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Example1,
    Example2,
    Example3,
    Example4,
    Sharpness,
    #[value(name = "lemma1_oracle")]
    Lemma1Oracle,
}

impl From<Case> for ReproCase {
    fn from(case: Case) -> ReproCase {
        match case {
            Case::Example1 => ReproCase::Example1,
            Case::Example2 => ReproCase::Example2,
            Case::Example3 => ReproCase::Example3,
            Case::Example4 => ReproCase::Example4,
            Case::Sharpness => ReproCase::Sharpness,
            Case::Lemma1Oracle => ReproCase::Lemma1Oracle,
        }
    }
}

/// Failures after successful argument parsing, split by exit code.
enum Failure {
    /// Unreadable/unparsable inputs or an invalid verb–format combination.
    Usage(String),
    /// The computation itself rejected the data.
    Domain(String),
}

impl From<cnrange::Error> for Failure {
    fn from(err: cnrange::Error) -> Self {
        Failure::Domain(err.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::Usage(format!("output serialization failed: {err}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("cnrange: {msg}");
            ExitCode::from(64)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("cnrange: {msg}");
            ExitCode::from(65)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() {
    if let Ok(value) = std::env::var("CNRANGE_THREADS") {
        match value.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                // Ignore the error from a pool that is already initialized.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => eprintln!("cnrange: ignoring CNRANGE_THREADS={value} (want a positive integer)"),
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() {}

fn read_matrix(path: &PathBuf) -> Result<CMat, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|err| Failure::Usage(format!("cannot read {}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| Failure::Usage(format!("{} is not a matrix: {err}", path.display())))
}

fn budget(cli: &Cli) -> SampleBudget {
    SampleBudget {
        orbit_samples: cli.orbit_samples,
        eps_steps: cli.eps_grid,
        alpha_steps: cli.alpha_grid,
        cloud_samples: cli.samples,
        angle_count: cli.angles,
        region_cloud_cap: 4096,
        exec: if cli.bit_exact {
            Exec::Serial
        } else {
            Exec::Parallel
        },
    }
}

fn emit_text(cli: &Cli, text: &str) -> Result<(), Failure> {
    emit(&cli.out, text).map_err(|err| Failure::Usage(format!("cannot write output: {err}")))
}

/// JSON artifacts end with a newline so files and stdout agree byte-for-byte.
fn emit_json<T: serde::Serialize>(cli: &Cli, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(cli, &text)
}

fn require_json(cli: &Cli, verb: &str) -> Result<(), Failure> {
    if cli.format != Format::Json {
        return Err(Failure::Usage(format!(
            "--format csv|svg applies to `range` and `crange` only, not `{verb}`"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.verb {
        Verb::Range { matrix } => {
            let m = read_matrix(matrix)?;
            let boundary = boundary_points(&m, cli.angles.max(8))?;
            match cli.format {
                Format::Json if m.order() == 2 => emit_json(cli, &ellipse_2x2(&m)?)?,
                Format::Json => emit_json(cli, &output::Boundary::new(&boundary))?,
                Format::Csv => emit_text(cli, &csv_points(&boundary))?,
                Format::Svg => {
                    let mut scene = Scene::new();
                    if m.order() == 2 {
                        scene.ellipse = Some(ellipse_2x2(&m)?);
                    } else {
                        scene.polygon = boundary;
                    }
                    emit_text(cli, &scene.render())?;
                }
            }
            Ok(0)
        }
        Verb::Crange { a, b } => {
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            if cli.n == 2 {
                let ell = nakasato_cnr_2x2(&a, &b)?;
                match cli.format {
                    Format::Json => emit_json(cli, &ell)?,
                    Format::Csv => {
                        let boundary = ell.boundary_polyline(cli.angles.max(8));
                        emit_text(cli, &csv_points(&boundary))?;
                    }
                    Format::Svg => {
                        let mut scene = Scene::new();
                        scene.ellipse = Some(ell);
                        emit_text(cli, &scene.render())?;
                    }
                }
                return Ok(0);
            }
            let plan = SeedPlan::new(cli.seed);
            let region = bordered_region(&a, &b, cli.n, &budget(cli), &plan)?;
            match cli.format {
                Format::Json => emit_json(cli, &region)?,
                Format::Csv => emit_text(cli, &csv_points(region.cloud()))?,
                Format::Svg => {
                    let mut scene = Scene::new();
                    scene.polygon = region_polygon(&region);
                    scene.cloud = region.cloud().to_vec();
                    scene.ellipse = Some(nakasato_cnr_2x2(&a, &b)?);
                    emit_text(cli, &scene.render())?;
                }
            }
            Ok(0)
        }
        Verb::Certify { a, b } => {
            require_json(cli, "certify")?;
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            let options = CertifyOptions {
                budget: budget(cli),
                eq_tol: cli.tol,
                witness_tol: cli.witness_tol,
            };
            let plan = SeedPlan::new(cli.seed);
            let cert = certify_equality(&a, &b, cli.n, &options, &plan)?;
            emit_json(cli, &cert)?;
            Ok(match cert.verdict {
                Verdict::Equal => 0,
                Verdict::Unequal => 1,
                Verdict::Inconclusive => 2,
            })
        }
        Verb::Check { theorem, a, b } => {
            require_json(cli, "check")?;
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            let report = match theorem {
                Theorem::M0 => check_m0(&a, &b)?,
                Theorem::M1 => check_m1(&a, &b)?,
                Theorem::M2 => check_m2(&a, &b)?,
                Theorem::M3 => check_m3(&a, &b)?,
                Theorem::M4 => check_m4(&a, &b)?,
                Theorem::C2 => check_c2(&a, &b)?,
                Theorem::C3 => check_c3(&a, &b)?,
                Theorem::C4 => check_c4(&a, &b)?,
            };
            emit_json(cli, &report)?;
            Ok(u8::from(!report.holds))
        }
        Verb::Alpha { a, b } => {
            require_json(cli, "alpha")?;
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            let options = AlphaOptions {
                boundary_count: cli.angles.max(8),
                ..AlphaOptions::default()
            };
            let alpha = alpha_star(&a, &b, &options)?;
            emit_text(cli, &format!("{alpha:.3}\n"))?;
            Ok(0)
        }
        Verb::Reproduce { case } => {
            require_json(cli, "reproduce")?;
            let report = reproduce((*case).into())?;
            emit_json(cli, &report)?;
            if !report.pass {
                return Ok(1);
            }
            let inconclusive = report
                .certificate
                .as_ref()
                .is_some_and(|cert| cert.verdict == Verdict::Inconclusive);
            Ok(if inconclusive { 2 } else { 0 })
        }
    }
}
