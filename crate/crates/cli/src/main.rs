//! `moduli` — verification driver and emitters for the two quantizations of
//! the moduli space of flat SU(2)-connections on the torus.
//!
//! Exit codes: 0 all checks pass, 1 any suite failure, 2 configuration
//! error (bad flags, malformed expressions, unwritable output paths).

use clap::{Args, Parser, Subcommand, ValueEnum};
use moduli_core::cocycle::CocycleVariant;
use moduli_core::qgroup::{cosine_operator, kauffman_operator, sine_operator, ExactOperator};
use moduli_core::report::VerificationReport;
use moduli_core::star::{parse_poly, ComplexRing, CyclotomicRing, FormalRing};
use moduli_core::suites::{run_cocycle_with_variant, run_suite, run_suites, ParamOverrides, Suite};
use moduli_core::theta::ThetaSpec;
use moduli_core::uq_sl2::verify_relations;
use moduli_core::weyl::{BasisTag, ComplexMatrix};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "moduli",
    version,
    about = "Quantum-group and Weyl quantization of the torus moduli space, with exact and quadrature-backed verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quantum-algebra relations on every irreducible representation at one level.
    UqVerify(UqVerifyArgs),
    /// Exact curve-operator matrices in the ζ basis.
    Qgroup {
        #[command(subcommand)]
        command: QgroupCommand,
    },
    /// Theta-function identity suite at one level.
    Theta {
        #[command(subcommand)]
        command: ThetaCommand,
    },
    /// Line-bundle cocycle checks.
    Cocycle {
        #[command(subcommand)]
        command: CocycleCommand,
    },
    /// Star product of two cosine polynomials.
    Star(StarArgs),
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct UqVerifyArgs {
    /// Level of the quantization (r >= 3).
    #[arg(long)]
    r: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum QgroupCommand {
    /// Emit the matrix of a curve operator.
    Matrix(QgroupMatrixArgs),
}

#[derive(Args)]
struct QgroupMatrixArgs {
    #[arg(long)]
    r: usize,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    q: i64,
    /// Which operator family to build.
    #[arg(long, value_enum, default_value_t = OperatorKind::Cosine)]
    op: OperatorKind,
    /// Emit exact cyclotomic coefficient lists (default).
    #[arg(long, conflicts_with = "complex")]
    exact: bool,
    /// Emit complex double-precision entries instead.
    #[arg(long)]
    complex: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    Cosine,
    Sine,
    Kauffman,
}

#[derive(Subcommand)]
enum ThetaCommand {
    /// Run the theta identity suite at level N = 2r.
    Check(ThetaCheckArgs),
}

#[derive(Args)]
struct ThetaCheckArgs {
    /// Even level N >= 6.
    #[arg(long = "N", visible_alias = "level")]
    level: usize,
    #[arg(long, default_value_t = 400)]
    quad_y: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CocycleCommand {
    /// Run the cocycle-condition, hermitian-compatibility and section
    /// equivariance checks.
    Check(CocycleCheckArgs),
}

#[derive(Args)]
struct CocycleCheckArgs {
    /// Reading of the translation cocycle: the concluded closed form, or
    /// the variant keeping the half-integer character factor (-1)^{m+n}.
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    variant: VariantArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    MuNu,
}

#[derive(Clone, Copy, ValueEnum)]
enum StarMode {
    Exact,
    Formal,
    Complex,
}

#[derive(Args)]
struct StarArgs {
    /// Coefficient ring: exact (cyclotomic at level r), formal (series in
    /// the inverse level), or complex (numeric at level N = 2r).
    #[arg(long, value_enum)]
    mode: StarMode,
    /// Level r; required for exact and complex modes.
    #[arg(long)]
    r: Option<usize>,
    /// Truncation order of the formal mode (max 30).
    #[arg(long, default_value_t = 8)]
    trunc_order: usize,
    #[arg(long, allow_hyphen_values = true)]
    expr_a: String,
    #[arg(long, allow_hyphen_values = true)]
    expr_b: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name (uq-relations, theta-identities, cocycle, toeplitz-lemmas,
    /// equivalence, product-to-sum, kauffman, star-formal) or "all".
    suite: String,
    /// Single level, shorthand for --r-range R:R.
    #[arg(long)]
    r: Option<usize>,
    /// Level range A:B (inclusive).
    #[arg(long)]
    r_range: Option<String>,
    /// Single frequency pair bound, shorthand for --pq-range -P:P.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Frequency range A:B (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pq_range: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    trunc_order: Option<usize>,
    #[arg(long)]
    quad_y: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Omit the timestamp for byte-stable reports.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

/// Validation failure mapped to exit code 2.
struct ConfigError(String);

impl<T: Into<String>> From<T> for ConfigError {
    fn from(msg: T) -> Self {
        ConfigError(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match cli.command {
        Command::UqVerify(args) => uq_verify(args),
        Command::Qgroup {
            command: QgroupCommand::Matrix(args),
        } => qgroup_matrix(args),
        Command::Theta {
            command: ThetaCommand::Check(args),
        } => theta_check(args),
        Command::Cocycle {
            command: CocycleCommand::Check(args),
        } => cocycle_check(args),
        Command::Star(args) => star(args),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `MODULI_THREADS` caps the rayon worker count.
fn configure_threads() {
    if let Ok(value) = std::env::var("MODULI_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn check_level(r: usize) -> Result<(), ConfigError> {
    if r < 3 {
        return Err(format!("level r = {r} is below the minimum 3").into());
    }
    Ok(())
}

fn emit(out: Option<&Path>, payload: &str) -> Result<(), ConfigError> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn uq_verify(args: UqVerifyArgs) -> Result<bool, ConfigError> {
    check_level(args.r)?;
    let reports: Vec<_> = (1..args.r).map(|k| verify_relations(k, args.r)).collect();
    let pass = reports.iter().all(|rep| rep.all_hold());
    let payload = to_json(&serde_json::json!({
        "r": args.r,
        "relations": reports,
        "pass": pass,
    }));
    emit(args.out.as_deref(), &payload)?;
    Ok(pass)
}

fn qgroup_matrix(args: QgroupMatrixArgs) -> Result<bool, ConfigError> {
    check_level(args.r)?;
    let op: ExactOperator = match args.op {
        OperatorKind::Cosine => cosine_operator(args.p, args.q, args.r),
        OperatorKind::Kauffman => kauffman_operator(args.p, args.q, args.r),
        OperatorKind::Sine => {
            if args.p == 0 && args.q == 0 {
                return Err(
                    "the sine operator needs a curve of defined slope: (p, q) != (0, 0)".into(),
                );
            }
            sine_operator(args.p, args.q, args.r)
        }
    };
    let payload = if args.complex {
        let rows = op.to_complex();
        let mut m = ComplexMatrix::zeros(args.r - 1, BasisTag::Zeta);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        to_json(&m)
    } else {
        to_json(&op)
    };
    emit(args.out.as_deref(), &payload)?;
    Ok(true)
}

fn theta_check(args: ThetaCheckArgs) -> Result<bool, ConfigError> {
    if args.level < 6 || !args.level.is_multiple_of(2) {
        return Err(format!("level N = {} must be even and at least 6", args.level).into());
    }
    ThetaSpec::with_params(args.level, 1e-10, args.quad_y, 8)
        .validate()
        .map_err(ConfigError)?;
    let r = args.level / 2;
    let overrides = ParamOverrides {
        r_range: Some((r, r)),
        quad_y: Some(args.quad_y),
        seed: args.seed,
        ..ParamOverrides::default()
    };
    let report = run_suite(
        Suite::ThetaIdentities,
        &overrides.apply(Suite::ThetaIdentities.default_params()),
    );
    let pass = report.pass;
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(pass)
}

fn cocycle_check(args: CocycleCheckArgs) -> Result<bool, ConfigError> {
    let variant = match args.variant {
        VariantArg::Standard => CocycleVariant::Standard,
        VariantArg::MuNu => CocycleVariant::MuNu,
    };
    let overrides = ParamOverrides {
        seed: args.seed,
        ..ParamOverrides::default()
    };
    let report =
        run_cocycle_with_variant(&overrides.apply(Suite::Cocycle.default_params()), variant);
    let pass = report.pass;
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(pass)
}

fn star(args: StarArgs) -> Result<bool, ConfigError> {
    let payload = match args.mode {
        StarMode::Exact => {
            let r = args.r.ok_or("exact mode needs --r")?;
            check_level(r)?;
            let ring = CyclotomicRing { r };
            let a = parse_poly(ring, &args.expr_a).map_err(ConfigError)?;
            let b = parse_poly(ring, &args.expr_b).map_err(ConfigError)?;
            let product = a.star(&b);
            to_json(&serde_json::json!({
                "mode": "exact", "r": r,
                "a": a.to_string(), "b": b.to_string(),
                "result": product.to_string(),
            }))
        }
        StarMode::Complex => {
            let r = args.r.ok_or("complex mode needs --r")?;
            check_level(r)?;
            let ring = ComplexRing { level: 2 * r };
            let a = parse_poly(ring, &args.expr_a).map_err(ConfigError)?;
            let b = parse_poly(ring, &args.expr_b).map_err(ConfigError)?;
            let product = a.star(&b);
            to_json(&serde_json::json!({
                "mode": "complex", "r": r, "level": 2 * r,
                "a": a.to_string(), "b": b.to_string(),
                "result": product.to_string(),
            }))
        }
        StarMode::Formal => {
            if args.trunc_order > 30 {
                return Err("formal truncation order is capped at 30".into());
            }
            let ring = FormalRing {
                trunc: args.trunc_order,
            };
            let a = parse_poly(ring, &args.expr_a).map_err(ConfigError)?;
            let b = parse_poly(ring, &args.expr_b).map_err(ConfigError)?;
            let product = a.star(&b);
            to_json(&serde_json::json!({
                "mode": "formal", "trunc_order": args.trunc_order,
                "a": a.to_string(), "b": b.to_string(),
                "result": product.to_string(),
            }))
        }
    };
    emit(args.out.as_deref(), &payload)?;
    Ok(true)
}

fn parse_range_usize(s: &str) -> Result<(usize, usize), ConfigError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| ConfigError(format!("range must look like A:B, got {s:?}")))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range bound {a:?}")))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range bound {b:?}")))?;
    Ok((lo, hi))
}

fn parse_range_i64(s: &str) -> Result<(i64, i64), ConfigError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| ConfigError(format!("range must look like A:B, got {s:?}")))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range bound {a:?}")))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range bound {b:?}")))?;
    Ok((lo, hi))
}

fn verify(args: VerifyArgs) -> Result<bool, ConfigError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&args.suite).ok_or_else(|| {
            ConfigError(format!(
                "unknown suite {:?}; expected one of {} or \"all\"",
                args.suite,
                Suite::ALL.map(|s| s.name()).join(", ")
            ))
        })?]
    };

    let r_range = match (args.r, &args.r_range) {
        (Some(_), Some(_)) => return Err("--r and --r-range are mutually exclusive".into()),
        (Some(r), None) => Some((r, r)),
        (None, Some(spec)) => Some(parse_range_usize(spec)?),
        (None, None) => None,
    };
    let pq_range = match (args.p, args.q, &args.pq_range) {
        (None, None, Some(spec)) => Some(parse_range_i64(spec)?),
        (p, q, None) => {
            let bound = p.map(i64::abs).into_iter().chain(q.map(i64::abs)).max();
            bound.map(|b| (-b, b))
        }
        _ => return Err("--p/--q and --pq-range are mutually exclusive".into()),
    };
    let overrides = ParamOverrides {
        r_range,
        pq_range,
        tol: args.tol,
        trunc_order: args.trunc_order,
        quad_y: args.quad_y,
        seed: args.seed,
    };
    for &suite in &suites {
        overrides
            .apply(suite.default_params())
            .validate()
            .map_err(ConfigError)?;
    }

    let timestamp = if args.no_timestamp {
        None
    } else {
        Some(unix_timestamp())
    };
    let report: VerificationReport = run_suites(&suites, &overrides, timestamp);

    for s in &report.suites {
        let verdict = if s.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "[{verdict}] {}: {} cases, {} failures, worst residual {:.3e}",
            s.suite, s.cases, s.failures, s.worst_residual
        );
    }

    let payload = match args.format {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Csv => report.csv(),
    };
    emit(args.out.as_deref(), &payload)?;
    Ok(report.overall_pass)
}

fn unix_timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    secs.to_string()
}
