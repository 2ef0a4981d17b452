mod local;
mod report;
mod search;
mod suite;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use wittlift::algebra::Fq;
use wittlift::cohomology::{certify, exhaustive_lifts, Verdict};
use wittlift::groups::{named_group, FiniteGroup, RepJson, Representation};

use report::{check, record, Report, Witness};

/// Largest group accepted by `check-lift`.
const CHECK_LIFT_MAX_ORDER: usize = 64;
const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1 << 20;

#[derive(Parser)]
#[command(name = "wittlift", version, about = "Lift mod-p representations to mod-p^2 coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in checks and write a JSON and/or Markdown report.
    VerifyPaper {
        /// Run only the check with this tag.
        #[arg(long)]
        only: Option<String>,
        /// Re-verify the witnesses in an existing JSON report instead of running.
        #[arg(long)]
        recheck: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Omit wall times so reports are byte-identical across runs.
        #[arg(long)]
        deterministic: bool,
        /// List the check tags and exit.
        #[arg(long)]
        list: bool,
    },
    /// Decide whether one representation lifts to W_2(k).
    CheckLift {
        /// Group JSON file or a catalog name such as Z4xZ2, Q8, SL2(3).
        #[arg(long)]
        group: Option<String>,
        /// Representation JSON; the "group" key may be omitted when --group is given.
        #[arg(long)]
        rep: PathBuf,
        /// Also enumerate every candidate lift when the space fits the budget.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a bounded, seeded family of representations of one group.
    Search {
        #[arg(long)]
        group: String,
        /// Field size q = p^m.
        #[arg(long)]
        field: u32,
        #[arg(long)]
        max_dim: usize,
        /// Maximum number of representations to certify.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON array of representations tried first.
        #[arg(long)]
        library: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local Kummer-class model commands.
    #[command(subcommand)]
    Local(local::LocalCommand),
}

/// Failure classes mapped to exit codes 1 and 2.
pub enum CliError {
    Check(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

pub fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes the report to `out` if given, otherwise to stdout.
pub fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match out {
        Some(p) => write_text(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        serde_json::from_value(read_json(path)?).map_err(|e| CliError::Input(format!("{spec}: {e}")))
    } else {
        named_group(spec).map_err(|e| CliError::Input(format!("{e} (and no file named {spec})")))
    }
}

fn load_rep(path: &Path, group: Option<&FiniteGroup>) -> Result<Representation<Fq>, CliError> {
    let mut v = read_json(path)?;
    match (v.get("group").is_some(), group) {
        (false, Some(g)) => {
            v["group"] = serde_json::to_value(g).expect("groups serialize");
        }
        (false, None) => return Err(CliError::Input("representation has no group; pass --group".into())),
        (true, _) => {}
    }
    let j: RepJson = serde_json::from_value(v).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(g) = group {
        if &j.group != g {
            return Err(CliError::Input("representation is for a different group than --group".into()));
        }
    }
    Representation::from_json(j).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn verify_paper(
    only: Option<String>,
    recheck: Option<PathBuf>,
    out: Option<PathBuf>,
    markdown: Option<PathBuf>,
    deterministic: bool,
    list: bool,
) -> Result<(), CliError> {
    if list {
        for (tag, statement, _) in suite::CHECKS {
            println!("{tag}\t{statement}");
        }
        return Ok(());
    }
    if let Some(path) = recheck {
        let report: Report = serde_json::from_value(read_json(&path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if report.schema_version != report::SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema version {}", report.schema_version)));
        }
        let mut failed = Vec::new();
        for r in &report.records {
            for (i, w) in r.witnesses.iter().enumerate() {
                if let Err(e) = w.recheck() {
                    failed.push(format!("{}: witness {i}: {e}", r.tag));
                }
            }
            if r.status == report::Status::Pass && r.checks.iter().any(|c| c.status != report::Status::Pass) {
                failed.push(format!("{}: marked PASS with a failing sub-check", r.tag));
            }
        }
        let n: usize = report.records.iter().map(|r| r.witnesses.len()).sum();
        if failed.is_empty() {
            println!("recheck: {n} witnesses in {} records re-verified", report.records.len());
            return Ok(());
        }
        for f in &failed {
            eprintln!("recheck FAILED {f}");
        }
        return Err(CliError::Check(format!("{} witnesses failed to re-verify", failed.len())));
    }
    if let Some(tag) = &only {
        if !suite::tags().contains(&tag.as_str()) {
            return Err(CliError::Input(format!("unknown tag {tag}; known: {}", suite::tags().join(", "))));
        }
    }
    let records = suite::run(only.as_deref(), !deterministic).map_err(CliError::Check)?;
    let config = json!({ "only": only, "seed": suite::SUITE_SEED, "deterministic": deterministic });
    let report = Report::new("verify-paper", config, records, suite::NOTES.iter().map(|s| s.to_string()).collect());
    for r in &report.records {
        eprintln!("{:<24} {}", r.tag, r.status);
        for c in r.checks.iter().filter(|c| c.status != report::Status::Pass) {
            eprintln!("    FAIL {}: {}", c.name, c.detail);
        }
    }
    if let Some(md) = &markdown {
        write_text(md, &report.to_markdown())?;
    }
    if out.is_some() || markdown.is_none() {
        emit(&report, out.as_deref())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} of {} checks failed", report.summary.fail, report.records.len())))
    }
}

fn check_lift(
    group: Option<String>,
    rep: PathBuf,
    exhaustive: bool,
    budget: u64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let g = group.as_deref().map(load_group).transpose()?;
    let rep = load_rep(&rep, g.as_ref())?;
    let order = rep.group().order();
    if order > CHECK_LIFT_MAX_ORDER {
        return Err(CliError::Input(format!("group of order {order} exceeds the limit {CHECK_LIFT_MAX_ORDER}")));
    }
    let mut cert = certify(&rep).map_err(|e| CliError::Check(e.to_string()))?;
    let mut checks = vec![check("certificate re-verifies", cert.recheck().is_ok(), format!("{:?}", cert.verdict))];
    if exhaustive {
        match exhaustive_lifts(&rep, budget).map_err(|e| CliError::Check(e.to_string()))? {
            Some(res) => {
                let agrees = (res.stamp.solutions > 0) == (cert.verdict == Verdict::Lifts);
                checks.push(check(
                    "exhaustive enumeration agrees",
                    agrees,
                    format!("{} of {} candidates lift", res.stamp.solutions, res.stamp.candidates),
                ));
                cert.exhaustive = Some(res.stamp);
            }
            None => checks.push(check("exhaustive enumeration skipped", true, format!("space exceeds budget {budget}"))),
        }
    }
    let label = rep.group().label();
    let rec = record("check-lift", &format!("Liftability of a {}-dimensional representation of {label}", rep.dim()), checks, vec![
        Witness::Certificate(Box::new(cert.clone())),
    ]);
    let config = json!({ "group": label, "exhaustive": exhaustive, "budget": budget });
    let report = Report::new("check-lift", config, vec![rec], vec![]);
    emit(&report, out.as_deref())?;
    eprintln!("{}", match cert.verdict {
        Verdict::Lifts => "LIFTS",
        Verdict::Obstructed => "OBSTRUCTED",
    });
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Check("certificate failed to re-verify".into()))
    }
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    group: String,
    field: u32,
    max_dim: usize,
    budget: usize,
    seed: u64,
    library: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let g = Arc::new(load_group(&group)?);
    let field = fq_of_order(field)?;
    let library = match &library {
        Some(path) => {
            let v: Vec<Value> = serde_json::from_value(read_json(path)?)
                .map_err(|e| CliError::Input(format!("{}: expected a JSON array: {e}", path.display())))?;
            v.into_iter()
                .enumerate()
                .map(|(i, mut r)| {
                    if r.get("group").is_none() {
                        r["group"] = serde_json::to_value(&*g).expect("groups serialize");
                    }
                    let j: RepJson = serde_json::from_value(r).map_err(|e| CliError::Input(format!("library[{i}]: {e}")))?;
                    Representation::from_json(j).map_err(|e| CliError::Input(format!("library[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        None => Vec::new(),
    };
    let cfg = search::SearchConfig { group: g.clone(), field: field.clone(), max_dim, budget, seed, library: &library };
    let result = search::search(&cfg).map_err(CliError::Input)?;
    let config = json!({
        "group": g.label(),
        "field": field.describe(),
        "max_dim": max_dim,
        "budget": budget,
        "seed": seed,
        "library": library.len(),
    });
    let out_value = json!({
        "schema_version": report::SCHEMA_VERSION,
        "tool": "wittlift",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "search",
        "config": config,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&out_value).expect("search results serialize") + "\n";
    match &out {
        Some(p) => write_text(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{:?}: {} of {} candidates certified, group status {}",
        result.status, result.candidates_examined, result.candidates_available, result.group_status
    );
    Ok(())
}

fn fq_of_order(q: u32) -> Result<Fq, CliError> {
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| CliError::Input(format!("{q} is not a prime power")))?;
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    if r != 1 {
        return Err(CliError::Input(format!("{q} is not a prime power")));
    }
    Fq::new(p, m).map_err(input)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("WITTLIFT_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Input(format!("WITTLIFT_THREADS={v} is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(input)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::VerifyPaper { only, recheck, out, markdown, deterministic, list } => {
            verify_paper(only, recheck, out, markdown, deterministic, list)
        }
        Command::CheckLift { group, rep, exhaustive, budget, out } => check_lift(group, rep, exhaustive, budget, out),
        Command::Search { group, field, max_dim, budget, seed, library, out } => {
            search_cmd(group, field, max_dim, budget, seed, library, out)
        }
        Command::Local(cmd) => local::run(cmd),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Check(msg) | CliError::Input(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
