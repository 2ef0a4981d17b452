use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use wittlift::cohomology::{NonrigidReport, ObstructionCertificate, Verdict};
use wittlift::groups::{is_single_jordan_block, RepJson, Representation};
use wittlift::local::{cup, HeisenbergRep, KummerClass};
use wittlift::witnesses::{LiftWitness, OddPowerWitness, VerdictRow};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Stored evidence that `--recheck` can verify without rerunning the
/// computation that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Lift(LiftWitness),
    Certificate(Box<ObstructionCertificate>),
    OddPower(Box<OddPowerWitness>),
    Table { rows: Vec<VerdictRow> },
    Nonrigid(Box<NonrigidReport>),
    H1Module { group: String, module: RepJson, h1: usize },
    OrthogonalLift { x1: KummerClass, x2: KummerClass, lift1: KummerClass, lift2: KummerClass },
    Heisenberg { rhobar: HeisenbergRep, lift: HeisenbergRep },
    TamePairing { p: u32, q: u32, gram: [[u32; 2]; 2] },
}

impl Witness {
    pub fn recheck(&self) -> Result<(), String> {
        match self {
            Witness::Lift(w) => w.verify(),
            Witness::Certificate(c) => c.recheck(),
            Witness::OddPower(w) => {
                if w.certificate.verdict != Verdict::Obstructed {
                    return Err("odd-power certificate is not OBSTRUCTED".into());
                }
                if w.stamp.as_ref().is_some_and(|s| s.solutions != 0) {
                    return Err("exhaustive stamp records solutions".into());
                }
                w.certificate.recheck()
            }
            Witness::Table { rows } => rows.iter().try_for_each(|r| {
                if r.verdict != r.expected {
                    return Err(format!("{} at p = {}: verdict differs from the classification", r.group, r.p));
                }
                r.recheck().map_err(|e| format!("{} at p = {}: {e}", r.group, r.p))
            }),
            Witness::Nonrigid(r) => r.recheck(),
            Witness::H1Module { module, h1, .. } => {
                let rep = Representation::from_json(module.clone()).map_err(|e| e.to_string())?;
                let n = rep.group().order();
                if !(0..n).any(|x| is_single_jordan_block(rep.field(), rep.image(x))) {
                    return Err("no element acts as a single Jordan block".into());
                }
                let m = wittlift::cohomology::FpModule::from_rep(&rep);
                let computed = wittlift::cohomology::h1_dimension(&m, wittlift::cohomology::H1Mode::Table);
                if computed != *h1 || computed == 0 {
                    return Err(format!("h1 = {computed}, recorded {h1}"));
                }
                Ok(())
            }
            Witness::OrthogonalLift { x1, x2, lift1, lift2 } => {
                if lift1.pi() != *x1 || lift2.pi() != *x2 {
                    return Err("lifts do not reduce to the input classes".into());
                }
                let c = cup(lift1, lift2).map_err(|e| e.to_string())?;
                if c.value != 0 || c.level != 2 {
                    return Err(format!("lifted cup product is {} at level {}", c.value, c.level));
                }
                Ok(())
            }
            Witness::Heisenberg { rhobar, lift } => {
                rhobar.validate().map_err(|e| e.to_string())?;
                lift.validate().map_err(|e| e.to_string())?;
                if lift.level != 2 || lift.reduce() != *rhobar {
                    return Err("lift does not reduce to the input".into());
                }
                Ok(())
            }
            Witness::TamePairing { p, q, gram } => {
                let model = wittlift::local::TameModel::new(*p, *q).map_err(|e| e.to_string())?;
                let basis = [
                    wittlift::local::TameElement { valuation: 1, unit_index: 0 },
                    wittlift::local::TameElement { valuation: 0, unit_index: 1 },
                ];
                for (i, a) in basis.iter().enumerate() {
                    for (j, b) in basis.iter().enumerate() {
                        if wittlift::local::tame_symbol(&model, *a, *b) != gram[i][j] {
                            return Err(format!("symbol on basis ({i}, {j}) differs from the record"));
                        }
                    }
                }
                let g = |i: usize, j: usize| gram[i][j] as i64;
                if (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).rem_euclid(*p as i64) == 0 {
                    return Err("pairing is degenerate".into());
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub tag: String,
    pub statement: String,
    pub status: Status,
    pub checks: Vec<SubCheck>,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: Value, records: Vec<Record>, notes: Vec<String>) -> Report {
        let pass = records.iter().filter(|r| r.status == Status::Pass).count();
        let summary = Summary { pass, fail: records.len() - pass };
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "wittlift".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            records,
            summary,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# wittlift {} report (v{})\n", self.command, self.version);
        let _ = writeln!(s, "{} passed, {} failed.\n", self.summary.pass, self.summary.fail);
        for r in &self.records {
            let _ = writeln!(s, "## {}: {}\n", r.tag, r.status);
            let _ = writeln!(s, "{}\n", r.statement);
            if let Some(ms) = r.wall_ms {
                let _ = writeln!(s, "Wall time: {ms} ms\n");
            }
            let _ = writeln!(s, "| check | status | detail |\n|---|---|---|");
            for c in &r.checks {
                let _ = writeln!(s, "| {} | {} | {} |", c.name, c.status, c.detail.replace('|', "\\|"));
            }
            let _ = writeln!(s);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "## Notes\n");
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        s
    }
}

/// Builds a record from its sub-checks; the record passes iff all do.
pub fn record(tag: &str, statement: &str, checks: Vec<SubCheck>, witnesses: Vec<Witness>) -> Record {
    let status = Status::from_bool(!checks.is_empty() && checks.iter().all(|c| c.status == Status::Pass));
    Record { tag: tag.into(), statement: statement.into(), status, checks, witnesses, wall_ms: None }
}

pub fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> SubCheck {
    SubCheck { name: name.into(), status: Status::from_bool(ok), detail: detail.into() }
}
