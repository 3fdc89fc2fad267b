//! `tcn`: bounds for higher topological complexity from cohomology
//! algebras, and explicit motion plans on odd spheres.
//!
//! Exit codes: 0 success, 2 input error, 3 metadata inconsistency (a
//! certified lower bound exceeding the metadata upper bound).

mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use expr::SpaceExpr;
use tcn_core::algebra::{AlgebraError, ValidationOptions};
use tcn_core::bounds::{bounds_report, gap_demo, BoundReport, BoundsError};
use tcn_core::scalar::FieldSpec;
use tcn_core::sphere_planner::{plan, random_configuration, PlannerError, SpherePoint};
use tcn_core::tensor::TensorElement;

const DEFAULT_MAX_DIM: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "tcn",
    version,
    about = "Certified bounds for higher topological complexity, with an odd-sphere motion planner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower/upper bounds for TC_n of a space expression
    Bounds(BoundsArgs),
    /// Produce a motion plan for a configuration on an odd sphere
    Plan(PlanArgs),
    /// Compare S^2 and T^2 at level n: equal TC_2, diverging TC_n
    Gap(GapArgs),
    /// Check a custom algebra file against the algebra axioms
    Validate(ValidateArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("levels").required(true).args(["n", "n_range"])))]
struct BoundsArgs {
    /// Space expression: S(k), T(m), RP(m), CP(m), load(file.json), products with '*'
    #[arg(long)]
    space: String,
    /// Level n
    #[arg(long)]
    n: Option<usize>,
    /// Inclusive level range, e.g. 2..5
    #[arg(long = "n-range", value_name = "A..B")]
    n_range: Option<String>,
    /// Coefficient field for builder spaces: Q or Fp:P
    #[arg(long, default_value = "Q")]
    field: String,
    /// Attach a zero-divisor product certificate to each report
    #[arg(long)]
    certificate: bool,
    /// Emit one JSON object per line instead of the table
    #[arg(long)]
    json: bool,
    /// Re-run algebra validation before computing
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("config").required(true).args(["points", "random"])))]
struct PlanArgs {
    /// Sphere dimension (odd)
    #[arg(long)]
    k: usize,
    /// Number of configuration points
    #[arg(long)]
    n: usize,
    /// JSON file with the configuration: an array of coordinate arrays
    #[arg(long)]
    points: Option<PathBuf>,
    /// Generate a random configuration from this seed
    #[arg(long)]
    random: Option<u64>,
    /// Sample intervals per path
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Antipode/equality tolerance band
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Write the plan JSON here (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GapArgs {
    /// Level n (at least 3)
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// Custom algebra file (JSON)
    file: PathBuf,
}

enum CliError {
    Input(String),
    Metadata(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Metadata(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Metadata(m) => m,
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(err: BoundsError) -> Self {
        match err {
            BoundsError::MetadataInconsistency { .. } => CliError::Metadata(err.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

macro_rules! input_error_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(err: $ty) -> Self {
                CliError::Input(err.to_string())
            }
        }
    )*};
}

input_error_from!(
    expr::ParseError,
    AlgebraError,
    PlannerError,
    tcn_core::scalar::ScalarError,
    std::io::Error,
    serde_json::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Gap(args) => cmd_gap(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn max_tensor_dim() -> usize {
    std::env::var("TCN_MAX_DIM").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_DIM)
}

fn parse_levels(args: &BoundsArgs) -> Result<Vec<usize>, CliError> {
    if let Some(n) = args.n {
        if n == 0 {
            return Err(CliError::Input("level n must be at least 1".into()));
        }
        return Ok(vec![n]);
    }
    let range = args.n_range.as_deref().expect("clap enforces the group");
    let (a, b) = range
        .split_once("..")
        .ok_or_else(|| CliError::Input(format!("cannot parse {range:?} as A..B")))?;
    let a: usize =
        a.trim().parse().map_err(|_| CliError::Input(format!("cannot parse {range:?} as A..B")))?;
    let b: usize =
        b.trim().parse().map_err(|_| CliError::Input(format!("cannot parse {range:?} as A..B")))?;
    if a == 0 || b < a {
        return Err(CliError::Input(format!("range {range:?} must satisfy 1 <= A <= B")));
    }
    Ok((a..=b).collect())
}

fn element_json(element: &TensorElement) -> serde_json::Value {
    let names = element.algebra().clone();
    serde_json::Value::Array(
        element
            .terms()
            .iter()
            .map(|(i, c)| json!({ "basis": names.name(*i), "coeff": c.to_string() }))
            .collect(),
    )
}

fn report_json(report: &BoundReport) -> serde_json::Value {
    let certificate = report.zcl.certificate.as_ref().map(|cert| {
        json!({
            "factors": cert.factors.iter().map(element_json).collect::<Vec<_>>(),
            "product": element_json(&cert.product),
        })
    });
    json!({
        "space": report.space,
        "n": report.n,
        "field": report.field.to_string(),
        "lower": report.lower,
        "lower_source": report.lower_source.to_string(),
        "zcl": report.zcl.m,
        "upper": report.upper,
        "upper_cat": report.upper_cat,
        "upper_growth": report.upper_growth,
        "exact": report.exact,
        "certificate": certificate,
    })
}

fn print_report_table_header(name_width: usize) {
    println!(
        "{:<name_width$}  {:>3}  {:<6}  {:>5}  {:<22}  {:>3}  {:>5}  {:>5}  {:>6}  {:>5}",
        "space", "n", "field", "lower", "source", "zcl", "upper", "cat", "growth", "exact"
    );
}

fn print_report_row(report: &BoundReport, name_width: usize) {
    let growth = report.upper_growth.map_or_else(|| "-".to_string(), |g| g.to_string());
    let exact = report.exact.map_or_else(|| "-".to_string(), |e| e.to_string());
    println!(
        "{:<name_width$}  {:>3}  {:<6}  {:>5}  {:<22}  {:>3}  {:>5}  {:>5}  {:>6}  {:>5}",
        report.space,
        report.n,
        report.field.to_string(),
        report.lower,
        report.lower_source.to_string(),
        report.zcl.m,
        report.upper,
        report.upper_cat,
        growth,
        exact
    );
    if let Some(cert) = &report.zcl.certificate {
        println!("  certificate ({} factors):", cert.factors.len());
        for (i, factor) in cert.factors.iter().enumerate() {
            println!("    factor {}: {}", i + 1, factor);
        }
        println!("    product: {}", cert.product);
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let field = FieldSpec::parse(&args.field)?;
    let parsed = SpaceExpr::parse(&args.space)?;
    let desc = parsed.build(field)?;
    let levels = parse_levels(&args)?;

    if args.validate {
        let violations = desc.algebra.validate_with_options(ValidationOptions {
            check_associativity: desc.algebra.dim() <= 64,
        });
        if !violations.is_empty() {
            let listing: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(CliError::Input(format!(
                "algebra fails validation: {}",
                listing.join("; ")
            )));
        }
    }

    let cap = max_tensor_dim();
    for &n in &levels {
        let within = desc.algebra.dim().checked_pow(n as u32).is_some_and(|d| d <= cap);
        if !within {
            return Err(CliError::Input(format!(
                "tensor power dimension {}^{} exceeds TCN_MAX_DIM ({}); raise the environment variable to proceed",
                desc.algebra.dim(),
                n,
                cap
            )));
        }
    }

    let name_width = desc.name.len().max("space".len());
    if !args.json {
        print_report_table_header(name_width);
    }
    for &n in &levels {
        let report = bounds_report(&desc, n, args.certificate)?;
        if args.json {
            println!("{}", report_json(&report));
        } else {
            print_report_row(&report, name_width);
        }
    }
    Ok(())
}

fn load_configuration(path: &PathBuf, k: usize, n: usize) -> Result<Vec<SpherePoint>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let raw: Vec<Vec<f64>> = serde_json::from_str(&text)?;
    if raw.len() != n {
        return Err(CliError::Input(format!(
            "configuration has {} points but --n is {n}",
            raw.len()
        )));
    }
    raw.into_iter()
        .map(|coords| {
            if coords.len() != k + 1 {
                return Err(CliError::Input(format!(
                    "a point has {} coordinates; S^{k} needs {}",
                    coords.len(),
                    k + 1
                )));
            }
            SpherePoint::normalized(coords).map_err(CliError::from)
        })
        .collect()
}

fn cmd_plan(args: PlanArgs) -> Result<(), CliError> {
    if args.k.is_multiple_of(2) {
        return Err(CliError::Input(format!(
            "no planner for even spheres (k = {}): the construction rides a nonvanishing tangent field, which exists only on odd spheres; even spheres need n + 1 planning domains",
            args.k
        )));
    }
    if args.n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }

    let config = match (&args.points, args.random) {
        (Some(path), _) => load_configuration(path, args.k, args.n)?,
        (None, Some(seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_configuration(args.k, args.n, &mut rng)?
        }
        (None, None) => unreachable!("clap enforces the group"),
    };

    let answer = plan(&config, args.samples, args.tol)?;
    let residuals: Vec<f64> = answer
        .paths()
        .iter()
        .zip(&config)
        .map(|(path, target)| path.end().distance(target))
        .collect();
    let max_residual = residuals.iter().fold(0.0_f64, |a, b| a.max(*b));

    let value = answer.to_json_value();
    let summary = format!(
        "plan: k={} n={} domain={} samples={}\nendpoint residuals: [{}] (max {:.3e})",
        args.k,
        args.n,
        answer.domain(),
        args.samples,
        residuals.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>().join(", "),
        max_residual
    );
    match &args.out {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            eprintln!("{summary}");
            println!("{value}");
        }
    }
    Ok(())
}

fn cmd_gap(args: GapArgs) -> Result<(), CliError> {
    let record = gap_demo(args.n)?;
    let n = record.n;
    println!("n={n} over Q: TC_2(S^2) = 3 = TC_2(T^2), but the levels diverge");
    println!("S^2: {} (exact) | T^2: >={}", record.sphere_exact(), record.torus_lower());
    println!(
        "  S^2: lower {}, upper {} (cat {}, growth {})",
        record.sphere.lower,
        record.sphere.upper,
        record.sphere.upper_cat,
        record.sphere.upper_growth.map_or_else(|| "-".into(), |g| g.to_string())
    );
    println!(
        "  T^2: lower {}, upper {} (cat {}, growth {})",
        record.torus.lower,
        record.torus.upper,
        record.torus.upper_cat,
        record.torus.upper_growth.map_or_else(|| "-".into(), |g| g.to_string())
    );
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    match tcn_core::SpaceDescriptor::from_json_file(&args.file) {
        Ok(desc) => {
            println!(
                "ok: {:?} ({} basis elements over {}) passes validation",
                desc.name,
                desc.algebra.dim(),
                desc.algebra.field()
            );
            Ok(())
        }
        Err(AlgebraError::Invalid(violations)) => {
            eprintln!("{} violation(s):", violations.len());
            for violation in &violations {
                eprintln!("  - {violation}");
            }
            Err(CliError::Input(format!("{} fails validation", args.file.display())))
        }
        Err(other) => Err(other.into()),
    }
}
