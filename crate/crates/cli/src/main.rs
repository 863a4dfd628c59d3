//! Command-line front end: construct and verify codes, enumerate length
//! catalogs, reproduce the proportion table, dump field tables.
//!
//! Exit status: 0 on success, 2 for invalid parameters, 3 when a requested
//! verification fails, 1 for anything else (I/O, malformed files).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use mds_selfdual::constructions::{self, Branch, CharacterVariant};
use mds_selfdual::enumeration::{self, CatalogFamily, PowerReading, CSV_HEADER};
use mds_selfdual::field::MAX_ORDER;
use mds_selfdual::grs::{self, Construction, GrsCode};
use mds_selfdual::mds::{self, MdsBudget, MdsVerdict, DEFAULT_ENUMERATION_LIMIT};
use mds_selfdual::{arith, serial, ConstructionParams, Error, FiniteField, Sign};

const THREADS_ENV: &str = "MDS_SELFDUAL_THREADS";

#[derive(Parser)]
#[command(name = "mds-selfdual", version, about = "MDS self-dual codes from (extended) GRS codes over GF(r^2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a self-dual code from (a, b, s, t) and verify it.
    Construct {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = TheoremChoice::Auto)]
        theorem: TheoremChoice,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-check a code file: Gram matrix, dimension and MDS property.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Random column subsets to test when exhaustive checking is too large.
        #[arg(long, default_value_t = 1000)]
        mds_budget: usize,
        #[arg(long, default_value_t = MdsBudget::default().seed)]
        seed: u64,
    },
    /// Build an [n, k] self-orthogonal code for 1 <= k <= n/2 - 1.
    SelfOrthogonal {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build an [n+1, n/2] almost self-dual code.
    AlmostSelfDual {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit a length catalog as JSON.
    Enumerate {
        #[arg(long)]
        r: u64,
        /// ours, ours-theorem1, ours-theorem2, ref16, prior-table1 or union.
        #[arg(long, default_value = "ours")]
        family: String,
        #[arg(long, value_enum, default_value_t = Reading::SquareOnly)]
        reading: Reading,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print proportion-table rows as CSV.
    Table2 {
        #[arg(long, required = true)]
        r: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Reading::SquareOnly)]
        reading: Reading,
        /// Also write the CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump p, m, the defining polynomial and θ as JSON.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the code JSON here; otherwise it goes to stdout and the report to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    mds_samples: usize,
    #[arg(long, default_value_t = MdsBudget::default().seed)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremChoice {
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    SquareOnly,
    AllDecompositions,
}

impl From<Reading> for PowerReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::SquareOnly => PowerReading::SquareOnly,
            Reading::AllDecompositions => PowerReading::AllDecompositions,
        }
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    Invalid(String),
    Verification(String),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::Precondition(_)
            | Error::NotPrime(_)
            | Error::EvenCharacteristic(_)
            | Error::ZeroDegree
            | Error::OrderTooLarge { .. } => Failure::Invalid(e.to_string()),
            other => Failure::Other(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid parameters: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Construct { params, theorem, output } => {
            let (r, branch) = check_params(&params)?;
            match (theorem, branch) {
                (TheoremChoice::One, Branch::T) => {
                    return Err(Failure::Invalid(format!("theorem 1 needs r ≡ 1 (mod 4), got r = {r}")));
                }
                (TheoremChoice::Two, Branch::S) => {
                    return Err(Failure::Invalid(format!("theorem 2 needs r ≡ 3 (mod 4), got r = {r}")));
                }
                _ => {}
            }
            let cp = build_params(&params)?;
            let code = constructions::self_dual(&cp)?;
            emit(&code, Some(&cp), &output, Expect::SelfDual)
        }
        Command::SelfOrthogonal { params, k, output } => {
            let (r, _) = check_params(&params)?;
            let q1 = r * r - 1;
            let n = (params.s * q1 / params.a + params.t * q1 / params.b) as usize;
            if k == 0 || k + 1 > n / 2 {
                return Err(Failure::Invalid(format!("k = {k} outside 1..=n/2-1 = {}", n / 2 - 1)));
            }
            let cp = build_params(&params)?;
            let code = constructions::theorem3(&cp, k)?;
            emit(&code, None, &output, Expect::SelfOrthogonal)
        }
        Command::AlmostSelfDual { params, output } => {
            let (r, branch) = check_params(&params)?;
            let plain = constructions::is_plain(branch, r, params.a, params.b, params.s);
            if plain {
                return Err(Failure::Invalid(match branch {
                    Branch::S => format!("s = {} is even; the almost self-dual code needs s odd", params.s),
                    Branch::T => "(r+1)bs^2/(2a) is odd; the almost self-dual code needs it even".into(),
                }));
            }
            let cp = build_params(&params)?;
            let code = constructions::theorem4(&cp)?;
            emit(&code, None, &output, Expect::AlmostSelfDual)
        }
        Command::Verify { input, mds_budget, seed } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let code = serial::code_from_json(&text).map_err(|e| Failure::Other(e.into()))?;
            let budget = MdsBudget { samples: mds_budget, seed, ..MdsBudget::default() };
            let expect = match code.recipe().construction {
                c if c.is_self_dual_family() => Expect::SelfDual,
                Construction::Theorem4S | Construction::Theorem4T => Expect::AlmostSelfDual,
                _ => Expect::SelfOrthogonal,
            };
            let (report, ok) = verify(&code, None, &budget, expect);
            print!("{report}");
            finish(ok)
        }
        Command::Enumerate { r, family, reading, out } => {
            let family = if family == "ours" {
                enumeration::ours_family(r)
            } else {
                family.parse::<CatalogFamily>()?
            };
            let cat = enumeration::catalog(r, family, reading.into())?;
            let json = serde_json::to_string_pretty(&cat).context("serializing catalog")?;
            let summary = format!(
                "{} lengths for r = {r}, q = {}: {} ({:.2}% of q/2)\n",
                family,
                cat.q,
                cat.len(),
                cat.percentage()
            );
            write_or_print(out, &json, &summary)
        }
        Command::Table2 { r, reading, out } => {
            let mut csv = format!("{CSV_HEADER}\n");
            for &rr in &r {
                let row = enumeration::table2_row(rr, reading.into())?;
                let _ = writeln!(csv, "{}", row.csv_line());
            }
            print!("{csv}");
            if let Some(path) = out {
                std::fs::write(&path, &csv).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(())
        }
        Command::FieldInfo { p, m } => {
            check_field(p, m)?;
            let field = FiniteField::new(p, m)?;
            println!("{}", serde_json::to_string_pretty(&field.info()).context("serializing field info")?);
            Ok(())
        }
    }
}

fn check_field(p: u64, m: u32) -> CliResult<u64> {
    if !arith::is_prime(p) {
        return Err(Failure::Invalid(format!("p = {p} is not prime")));
    }
    if p == 2 {
        return Err(Failure::Invalid("p = 2 is even".into()));
    }
    if m == 0 {
        return Err(Failure::Invalid("m must be at least 1".into()));
    }
    match arith::checked_pow(p, m) {
        Some(q) if q <= MAX_ORDER => Ok(q),
        _ => Err(Failure::Invalid(format!("q = {p}^{m} exceeds the ceiling {MAX_ORDER}"))),
    }
}

/// Integer-level checks, done before any field is built.
fn check_params(p: &ParamArgs) -> CliResult<(u64, Branch)> {
    check_field(p.p, p.m)?;
    if !p.m.is_multiple_of(2) {
        return Err(Failure::Invalid(format!("q = {}^{} is not a square (m odd)", p.p, p.m)));
    }
    let r = p.p.pow(p.m / 2);
    constructions::validate(r, p.a, p.b, p.s, p.t)?;
    let branch = constructions::branch_for(r, p.a, p.b)?;
    Ok((r, branch))
}

fn build_params(p: &ParamArgs) -> CliResult<ConstructionParams> {
    let field = Arc::new(FiniteField::new(p.p, p.m)?);
    Ok(ConstructionParams::new(field, p.a, p.b, p.s, p.t)?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Expect {
    SelfDual,
    SelfOrthogonal,
    AlmostSelfDual,
}

fn emit(code: &GrsCode, params: Option<&ConstructionParams>, output: &OutputArgs, expect: Expect) -> CliResult<()> {
    let budget = MdsBudget { samples: output.mds_samples, seed: output.seed, ..MdsBudget::default() };
    let (report, ok) = verify(code, params, &budget, expect);
    let json = serial::code_to_json(code).map_err(|e| Failure::Other(e.into()))?;
    write_or_print(output.out.clone(), &json, &report)?;
    finish(ok)
}

fn finish(ok: bool) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("see report".into()))
    }
}

/// With a path: file gets `data`, stdout gets `report`. Without: stdout gets
/// `data`, stderr gets `report`.
fn write_or_print(out: Option<PathBuf>, data: &str, report: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(&path, format!("{data}\n")).with_context(|| format!("writing {}", path.display()))?;
            print!("{report}");
        }
        None => {
            println!("{data}");
            eprint!("{report}");
        }
    }
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Character condition that the construction relies on, re-derived from the
/// base set by brute force.
fn character_line(params: &ConstructionParams) -> (String, bool) {
    let Ok(branch) = params.branch() else {
        return ("character condition: n/a".into(), true);
    };
    let f = params.field();
    let Ok(set) = constructions::build_set(params) else {
        return ("character condition: FAIL (set construction)".into(), false);
    };
    let d = grs::deltas(f, &set);
    if params.is_plain(branch) {
        match constructions::profile_from_deltas(f, set.points(), &d, CharacterVariant::Delta) {
            Ok(p) => match p.constant() {
                Some(s) => (format!("character condition: PASS (η(δ) = {s} at all {} points)", d.len()), true),
                None => ("character condition: FAIL (η(δ) mixed)".into(), false),
            },
            Err(e) => (format!("character condition: FAIL ({e})"), false),
        }
    } else {
        let prof = constructions::profile_from_deltas(f, set.points(), &d, CharacterVariant::NegPointDelta);
        let prod = f.product(set.points().iter().copied());
        let total = f.quadratic_character(f.neg(prod));
        match (prof, total) {
            (Ok(p), Ok(Sign::Plus)) if p.constant() == Some(Sign::Plus) => (
                format!("character condition: PASS (η(-aδ) = +1 at all {} points, η(-∏a) = +1)", d.len()),
                true,
            ),
            _ => ("character condition: FAIL".into(), false),
        }
    }
}

fn verify(
    code: &GrsCode,
    params: Option<&ConstructionParams>,
    budget: &MdsBudget,
    expect: Expect,
) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    let (n, k) = (code.length(), code.dimension());
    let rec = code.recipe();
    let _ = write!(out, "code: [{n}, {k}] over GF({}) via {}", code.field().order(), rec.construction.label());
    if let (Some(a), Some(b), Some(s), Some(t)) = (rec.a, rec.b, rec.s, rec.t) {
        let _ = write!(out, " (a, b, s, t) = ({a}, {b}, {s}, {t})");
    }
    if let Some(w) = &rec.omega {
        let _ = write!(out, " ω = {w}");
    }
    out.push('\n');

    if let Some(p) = params {
        let (line, good) = character_line(p);
        ok &= good;
        let _ = writeln!(out, "{line}");
    }

    let orth = code.is_self_orthogonal_by_moments();
    ok &= orth;
    let _ = writeln!(out, "gram G·Gᵀ = 0 (exact, via Hankel moments): {}", pass(orth));

    let dims = match expect {
        Expect::SelfDual => 2 * k == n,
        Expect::SelfOrthogonal => 2 * k <= n,
        Expect::AlmostSelfDual => n % 2 == 1 && n - k == k + 1,
    };
    ok &= dims;
    let label = match expect {
        Expect::SelfDual => "2k = n",
        Expect::SelfOrthogonal => "2k <= n",
        Expect::AlmostSelfDual => "dim C⊥ = dim C + 1",
    };
    let _ = writeln!(out, "dimension {label}: {}", pass(dims));

    let verdict = mds::mds_check(code, budget);
    ok &= verdict.passed();
    let tier = match &verdict {
        MdsVerdict::Proven { subsets } => format!("PASS, proven exhaustively over {subsets} column subsets"),
        MdsVerdict::SampledPass { samples } => {
            format!("PASS, sampled {samples} random column subsets (seed {:#x})", budget.seed)
        }
        MdsVerdict::Fail { witness } => format!("FAIL, dependent columns {witness:?}"),
    };
    let _ = writeln!(out, "mds: {tier}");

    if let Some(d) = mds::minimum_distance(code, DEFAULT_ENUMERATION_LIMIT) {
        let good = d == n - k + 1;
        ok &= good;
        let _ = writeln!(out, "minimum distance by enumeration: {d} (n-k+1 = {}): {}", n - k + 1, pass(good));
    }
    let _ = writeln!(out, "overall: {}", pass(ok));
    (out, ok)
}
