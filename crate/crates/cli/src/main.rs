use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hodgeham_core::hochschild::{hodge_table, HochschildError, HodgeCell, TableOptions, DEFAULT_BLOCK_CAP};
use hodgeham_core::monomial::ModuleKind;
use hodgeham_core::report::{AlgebraInfo, Check, HodgeReport};
use hodgeham_core::suites::{run_suite, Suite, SuiteConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

/// Exact blockwise Hochschild, Hodge and Harrison computations for
/// polynomial algebras Q[z1..zk].
#[derive(Parser, Debug)]
#[command(name = "hodgeham", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hodge table of homology cells with its consistency checks.
    Hodge(HodgeArgs),
    /// Run one named verification suite.
    Verify(VerifyArgs),
    /// Compare two JSON reports cell by cell.
    Diff { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads; overrides HODGEHAM_JOBS.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Args, Debug)]
struct HodgeArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    #[arg(long, default_value_t = 4)]
    degmax: u32,
    /// regular, trunc:M or var:I
    #[arg(long, default_value = "regular")]
    module: String,
    /// Largest combined block dimension a single cell may use.
    #[arg(long, default_value_t = DEFAULT_BLOCK_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name (alternatively --suite).
    #[arg(value_parser = parse_suite)]
    name: Option<Suite>,
    #[arg(long, value_parser = parse_suite, conflicts_with = "name")]
    suite: Option<Suite>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    degmax: Option<u32>,
    #[arg(long, default_value = "regular")]
    module: String,
    /// Exponent p of the derivation D(z) = z^p (deriv-growth).
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, default_value_t = DEFAULT_BLOCK_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[command(flatten)]
    output: Output,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// `(k, nmax, degmax)` used when a flag is omitted.
fn suite_defaults(s: Suite) -> (usize, usize, u32) {
    match s {
        Suite::Idempotents => (1, 6, 0),
        Suite::ChainMap => (2, 5, 4),
        Suite::Appendix | Suite::QKernel => (1, 1, 40),
        Suite::HarrisonExact => (1, 4, 10),
        Suite::KunnethOmega => (3, 1, 8),
        Suite::KunnethHarrison => (2, 2, 6),
        Suite::Hh1Iso => (2, 1, 8),
        Suite::ISquared => (2, 1, 6),
        Suite::DerivGrowth => (1, 40, 0),
    }
}

struct Failure(u8, String);

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn setup_pool(jobs: Option<u64>) -> Result<(), Failure> {
    let n = match jobs {
        Some(n) => n as usize,
        None => match std::env::var("HODGEHAM_JOBS") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => n,
                _ => return Err(usage(format!("HODGEHAM_JOBS must be a positive integer, got '{v}'"))),
            },
            Err(_) => 0,
        },
    };
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| usage(e.to_string()))
}

fn parse_module(s: &str, k: usize) -> Result<ModuleKind, Failure> {
    let m = ModuleKind::parse(s, k).map_err(|e| usage(e.to_string()))?;
    m.validate().map_err(|e| usage(e.to_string()))?;
    Ok(m)
}

fn csv_text(cells: &[HodgeCell]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| usage(e.to_string());
    w.write_record(["n", "i", "degree", "dim_chain", "dim_cycle", "dim_boundary", "dim_homology"]).map_err(io)?;
    for c in cells {
        let degree: Vec<String> = c.degree.exponents().iter().map(|e| e.to_string()).collect();
        w.write_record([
            c.n.to_string(),
            c.i.map_or_else(|| "total".to_string(), |i| i.to_string()),
            degree.join(" "),
            c.dim_chain.to_string(),
            c.dim_cycle.to_string(),
            c.dim_boundary.to_string(),
            c.dim_homology.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn check_line(c: &Check) -> String {
    match &c.witness {
        Some(w) if !c.passed() => format!("FAIL {}: {}", c.name, w),
        _ => format!("PASS {}", c.name),
    }
}

/// Writes the report, then one line per check (and any notes) to standard
/// output, or to standard error when the report itself goes to standard
/// output.
fn emit(report: &HodgeReport, notes: &[String], out: &Output) -> Outcome {
    let text = match out.format {
        Format::Json => report.to_json(),
        Format::Csv => csv_text(&report.cells)?,
    };
    let mut lines: Vec<String> = notes.to_vec();
    lines.extend(report.checks.iter().map(check_line));
    match &out.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            let mut stdout = io::stdout().lock();
            for l in &lines {
                let _ = writeln!(stdout, "{l}");
            }
        }
        None => {
            let _ = io::stdout().lock().write_all(text.as_bytes());
            let mut stderr = io::stderr().lock();
            for l in &lines {
                let _ = writeln!(stderr, "{l}");
            }
        }
    }
    Ok(report.all_pass())
}

fn cmd_hodge(a: &HodgeArgs) -> Outcome {
    setup_pool(a.output.jobs)?;
    let k = a.k as usize;
    let module = parse_module(&a.module, k)?;
    let opts = TableOptions { cap: a.cap, cohomology: true };
    let report = hodge_table(k, a.nmax, a.degmax, &module, &opts).map_err(|e| match e {
        HochschildError::CapExceeded { .. } => Failure(EXIT_REFUSED, e.to_string()),
        other => usage(other.to_string()),
    })?;
    emit(&report, &[], &a.output)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let suite = a.name.or(a.suite).ok_or_else(|| usage("verify needs a suite name"))?;
    setup_pool(a.output.jobs)?;
    let (k, nmax, degmax) = suite_defaults(suite);
    let k = a.k.map_or(k, |k| k as usize);
    let cfg = SuiteConfig {
        k,
        n_max: a.nmax.unwrap_or(nmax),
        deg_max: a.degmax.unwrap_or(degmax),
        module: parse_module(&a.module, k)?,
        p: a.p,
        cap: a.cap,
    };
    let outcome = run_suite(suite, &cfg).map_err(|e| {
        let code = if e.is_cap_refusal() { EXIT_REFUSED } else { EXIT_USAGE };
        Failure(code, e.to_string())
    })?;
    let report = HodgeReport {
        algebra: AlgebraInfo { k, module: cfg.module.tag() },
        cells: Vec::new(),
        checks: outcome.checks,
    };
    emit(&report, &outcome.notes, &a.output)
}

fn read_report(path: &Path) -> Result<HodgeReport, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    HodgeReport::from_json(&text).map_err(|e| usage(format!("{}: not a report: {e}", path.display())))
}

/// First difference between two reports, if any.
fn first_difference(a: &HodgeReport, b: &HodgeReport) -> Option<String> {
    if a.algebra != b.algebra {
        return Some(format!("algebra differs: {:?} vs {:?}", a.algebra, b.algebra));
    }
    let index = |r: &HodgeReport| -> BTreeMap<(usize, Option<usize>, Vec<u32>), HodgeCell> {
        r.cells.iter().map(|c| ((c.n, c.i, c.degree.exponents().to_vec()), c.clone())).collect()
    };
    let (ca, cb) = (index(a), index(b));
    for (key, x) in &ca {
        match cb.get(key) {
            None => return Some(format!("cell {} missing from second report", x.id())),
            Some(y) if x != y => {
                return Some(format!(
                    "cell {} differs: chain {}/{}, cycle {}/{}, boundary {}/{}, homology {}/{}",
                    x.id(),
                    x.dim_chain,
                    y.dim_chain,
                    x.dim_cycle,
                    y.dim_cycle,
                    x.dim_boundary,
                    y.dim_boundary,
                    x.dim_homology,
                    y.dim_homology
                ))
            }
            _ => {}
        }
    }
    if let Some((_, y)) = cb.iter().find(|(key, _)| !ca.contains_key(*key)) {
        return Some(format!("cell {} missing from first report", y.id()));
    }
    let checks = |r: &HodgeReport| -> BTreeMap<String, Check> { r.checks.iter().map(|c| (c.name.clone(), c.clone())).collect() };
    let (ka, kb) = (checks(a), checks(b));
    for name in ka.keys().chain(kb.keys()) {
        if ka.get(name) != kb.get(name) {
            let show = |c: Option<&Check>| c.map_or_else(|| "absent".to_string(), check_line);
            return Some(format!("check {name} differs: {} vs {}", show(ka.get(name)), show(kb.get(name))));
        }
    }
    if a != b {
        return Some("reports differ in order".to_string());
    }
    None
}

fn cmd_diff(a: &Path, b: &Path) -> Outcome {
    let (ra, rb) = (read_report(a)?, read_report(b)?);
    match first_difference(&ra, &rb) {
        None => {
            println!("identical");
            Ok(true)
        }
        Some(d) => {
            println!("{d}");
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let outcome = match &cli.command {
        Command::Hodge(a) => cmd_hodge(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Diff { a, b } => cmd_diff(a, b),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure(code, msg)) => {
            eprintln!("hodgeham: {msg}");
            ExitCode::from(code)
        }
    }
}
