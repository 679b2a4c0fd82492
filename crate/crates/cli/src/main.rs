//! `hyperfourier`: transforms, identity suites, Gauss sums, the chirp and
//! Gaussian examples, and convergence sweeps from the command line.
//!
//! Exit codes: 0 success, 1 identity failure, 2 input error, 3 guard exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfourier::dft::{Direction, Strategy};
use hyperfourier::examples::{self, Quantity};
use hyperfourier::gauss::{gauss_sum, Method as GaussMethod};
use hyperfourier::io;
use hyperfourier::level1::{
    chirp_identity_check1, gaussian_constant1, identity_suite1, transform1,
};
use hyperfourier::level2::{self, Method};
use hyperfourier::{
    Error, LatticeSpec, PathSpace, Variant, VerificationReport, C64, DEFAULT_GUARD,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hyperfourier",
    version,
    about = "Finite-lattice Fourier transforms on functions and functionals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform on lattice functions.
    #[command(subcommand)]
    Level1(Level1),
    /// Transform on path-space functionals.
    #[command(subcommand)]
    Level2(Level2),
    /// Quadratic Gauss sum, closed form and brute force.
    Gauss {
        #[arg(long = "N")]
        n: u64,
    },
    /// The chirp and Gaussian functionals.
    #[command(subcommand)]
    Example(Example),
    /// Tabulate a constant over a grid of resolutions.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum Level1 {
    Transform(Level1Transform),
    Verify(Level1Verify),
    /// Chirp identity and Gaussian constants on one lattice.
    Example(Level1Example),
}

#[derive(Subcommand)]
enum Level2 {
    Transform(Level2Transform),
    Verify(Level2Verify),
}

#[derive(Subcommand)]
enum Example {
    Chirp(ExampleArgs),
    Gaussian(ExampleArgs),
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Seeded {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long = "tol-rel", default_value_t = 1e-9)]
    tol_rel: f64,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long = "H")]
    h: u32,
    #[arg(long = "Hp")]
    hp: u32,
    #[arg(long, default_value = "type1")]
    variant: Variant,
    /// Largest path count that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
}

impl SpaceArgs {
    fn space(&self) -> Result<PathSpace, Error> {
        Ok(PathSpace::new(self.variant, self.h, self.hp)?.with_guard(self.guard))
    }
}

#[derive(Args)]
struct Level1Transform {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    inverse: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Level1Verify {
    #[arg(long = "H")]
    h: u32,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    seeded: Seeded,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Level1Example {
    #[arg(long = "H")]
    h: u32,
    #[arg(long = "tol-abs", default_value_t = 1e-10)]
    tol_abs: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
}

#[derive(Args)]
struct Level2Transform {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    inverse: bool,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Space for inputs that do not carry one.
    #[arg(long = "H", requires = "hp")]
    h: Option<u32>,
    #[arg(long = "Hp", requires = "h")]
    hp: Option<u32>,
    #[arg(long, default_value = "type1")]
    variant: Variant,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Level2Verify {
    #[command(flatten)]
    space: SpaceArgs,
    /// Random pairs per identity suite.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[command(flatten)]
    seeded: Seeded,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(long = "H")]
    h: u32,
    #[arg(long = "Hp")]
    hp: u32,
    /// Seeded test paths when the space is too large to check every path.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[command(flatten)]
    seeded: Seeded,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SweepArgs {
    /// One of C1, C2_site, C2_full, c_level1.
    #[arg(long)]
    quantity: Quantity,
    #[arg(long = "H", value_delimiter = ',', required = true)]
    h: Vec<u32>,
    #[arg(long = "Hp", value_delimiter = ',')]
    hp: Vec<u32>,
    /// Constant test direction, or the point p for c_level1.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SpaceTooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = Result<bool, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn pair(c: C64) -> Value {
    json!([c.re, c.im])
}

fn direction(inverse: bool) -> Direction {
    if inverse {
        Direction::Inverse
    } else {
        Direction::Forward
    }
}

fn report_json(report: &VerificationReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

fn level1_transform(a: &Level1Transform) -> Run {
    let phi = io::grid_from_json(&read(&a.input)?)?;
    let out = transform1(&phi, direction(a.inverse), Strategy::Auto)?;
    emit(&a.out, &io::grid_to_json(&out))?;
    Ok(true)
}

fn level1_verify(a: &Level1Verify) -> Run {
    let report = identity_suite1(a.h, a.seeded.seed, a.trials, a.seeded.tol_rel)?;
    emit(&a.out, &report.to_json())?;
    Ok(report.pass)
}

fn level1_example(a: &Level1Example) -> Run {
    let chirp = chirp_identity_check1(a.h, a.tol_abs)?;
    let lattice = LatticeSpec::level1(a.h)?;
    let reach = 2 * i64::from(a.h);
    let constants = lattice
        .indices()
        .filter(|p| p.abs() <= reach)
        .map(|p| {
            let c = gaussian_constant1(a.h, p)?;
            Ok(json!({"p": lattice.point_f64(p), "c": pair(c), "deviation": (c - 1.0).norm()}))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = json!({
        "H": a.h,
        "chirp_constant": pair(chirp.constant),
        "chirp": report_json(&chirp.report),
        "gaussian_constants": constants,
    });
    emit(&a.out, &pretty(&doc))?;
    Ok(chirp.report.pass)
}

fn level2_transform(a: &Level2Transform) -> Run {
    let fallback = match (a.h, a.hp) {
        (Some(h), Some(hp)) => Some(PathSpace::new(a.variant, h, hp)?.with_guard(a.guard)),
        _ => None,
    };
    let f = io::functional_from_json_guarded(&read(&a.input)?, fallback, a.guard)?;
    let method = match a.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::Direct => Method::Direct,
    };
    let out = level2::transform2(&f, direction(a.inverse), method)?;
    emit(&a.out, &io::functional_to_json(&out))?;
    Ok(true)
}

fn level2_verify(a: &Level2Verify) -> Run {
    let space = a.space.space()?;
    let (seed, tol) = (a.seeded.seed, a.seeded.tol_rel);
    space.dense_len()?;
    let mut report = VerificationReport::new(format!(
        "level2 {} H={} Hp={} seed={seed}",
        space.variant(),
        space.h(),
        space.hp()
    ));
    report.extend(level2::transform_identity_suite(
        space, seed, a.trials, tol,
    )?);
    if space.path_count()? <= level2::MIXED_LIMIT {
        report.extend(level2::delta_power_check(
            space,
            &[0.5, 1.0, 2.0, 3.0],
            tol,
        )?);
    }
    report.extend(level2::difference_suite(space, seed, a.trials, tol)?);
    if space.variant() == Variant::TypeII && space.path_count()? <= level2::MIXED_LIMIT {
        report.extend(level2::kernel_identity_check(
            space, seed, a.trials, 8, tol,
        )?);
    }
    if space.path_count()? <= level2::MIXED_LIMIT {
        report.extend(level2::product_vs_dense(space, seed, a.trials, tol)?);
    }
    report.extend(level2::product_parseval(space, seed, a.trials, tol)?);
    emit(&a.out, &report.to_json())?;
    Ok(report.pass)
}

fn gauss(n: u64) -> Run {
    let closed = gauss_sum(n, GaussMethod::ClosedForm)?.value;
    let brute = gauss_sum(n, GaussMethod::BruteForce)?.value;
    let doc = json!({
        "N": n,
        "closed": pair(closed),
        "brute": pair(brute),
        "difference": (closed - brute).norm(),
    });
    println!("{}", pretty(&doc));
    Ok(true)
}

fn example_chirp(a: &ExampleArgs) -> Run {
    let c1 = examples::c1(a.h, a.hp)?;
    let limit = examples::c1_limit(a.h);
    let report =
        examples::chirp_transform_check(a.h, a.hp, a.seeded.seed, a.samples, a.seeded.tol_rel)?;
    let doc = json!({
        "H": a.h,
        "Hp": a.hp,
        "C1": pair(c1),
        "limit": pair(limit),
        "deviation": (c1 - limit).norm(),
        "report": report_json(&report),
    });
    emit(&a.out, &pretty(&doc))?;
    Ok(report.pass)
}

fn example_gaussian(a: &ExampleArgs) -> Run {
    let space = PathSpace::new(Variant::TypeII, a.h, a.hp)?;
    let s0 = examples::c2_site(a.h, a.hp, 0.0)?;
    let c2 = examples::c2_full(&space.zero())?;
    let report =
        examples::gaussian_transform_check(a.h, a.hp, a.seeded.seed, a.samples, a.seeded.tol_rel)?;
    let doc = json!({
        "H": a.h,
        "Hp": a.hp,
        "s0": pair(s0),
        "C2_zero": pair(c2),
        "site_deviation": (s0 - 1.0).norm(),
        "deviation": (c2 - 1.0).norm(),
        "report": report_json(&report),
    });
    emit(&a.out, &pretty(&doc))?;
    Ok(report.pass)
}

fn sweep(a: &SweepArgs) -> Run {
    if a.quantity != Quantity::CLevel1 && a.hp.is_empty() {
        return Err(Failure::Input(format!(
            "--Hp is required for {}",
            a.quantity
        )));
    }
    let rows = examples::convergence_sweep(a.quantity, &a.h, &a.hp, a.beta)?;
    let text = match a.format {
        Format::Csv => examples::sweep_csv(&rows).trim_end().to_string(),
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
    };
    emit(&a.out, &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Level1(Level1::Transform(a)) => level1_transform(a),
        Command::Level1(Level1::Verify(a)) => level1_verify(a),
        Command::Level1(Level1::Example(a)) => level1_example(a),
        Command::Level2(Level2::Transform(a)) => level2_transform(a),
        Command::Level2(Level2::Verify(a)) => level2_verify(a),
        Command::Gauss { n } => gauss(*n),
        Command::Example(Example::Chirp(a)) => example_chirp(a),
        Command::Example(Example::Gaussian(a)) => example_gaussian(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
