use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;
use wittlift::error::LocalError;
use wittlift::local::{
    cup, heisenberg_build, heisenberg_lift, lift_orthogonal_pair, tame_d_map, tame_symbol, HeisenbergRep,
    KummerClass, LocalModel, TameElement, TameModel, TAME_D_NORMALIZATION,
};

use crate::{read_json, write_text, CliError};

#[derive(Subcommand)]
pub enum LocalCommand {
    /// Lift an orthogonal pair of level-1 classes to an orthogonal level-2 pair.
    LiftPair {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated coordinates, e.g. 1,0,0,0.
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a mod-p Heisenberg representation or lift one mod p^2.
    Heisenberg {
        #[arg(long, conflicts_with = "lift", required_unless_present = "lift")]
        build: bool,
        #[arg(long, requires = "input")]
        lift: bool,
        /// Representation JSON to lift.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        model: OptModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        x1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x2: Option<String>,
        /// Corner entries; zero when omitted.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tame symbol of two elements pi^v u, each given as v,u with u a discrete log.
    TameSymbol {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Args)]
pub struct ModelArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    s: u32,
}

#[derive(Args)]
pub struct OptModelArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 2)]
    s: u32,
}

fn local_err(e: LocalError) -> CliError {
    match e {
        LocalError::CupObstruction(_) | LocalError::NotOrthogonal(_) => CliError::Check(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn parse_ints(name: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Input(format!("--{name}: {t:?} is not an integer"))))
        .collect()
}

fn parse_class(model: &LocalModel, name: &str, s: &str) -> Result<KummerClass, CliError> {
    model.class(1, &parse_ints(name, s)?).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

fn print_or_write(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("values serialize") + "\n";
    match out {
        Some(p) => write_text(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cmd: LocalCommand) -> Result<(), CliError> {
    match cmd {
        LocalCommand::LiftPair { model, x1, x2, out } => {
            let m = LocalModel::new(model.p, model.d, model.s).map_err(|e| CliError::Input(e.to_string()))?;
            let x1 = parse_class(&m, "x1", &x1)?;
            let x2 = parse_class(&m, "x2", &x2)?;
            let (l1, l2) = lift_orthogonal_pair(&x1, &x2).map_err(local_err)?;
            let c = cup(&l1, &l2).map_err(local_err)?;
            print_or_write(
                &json!({
                    "model": m,
                    "coordinates": "MODEL",
                    "x1": x1.coords,
                    "x2": x2.coords,
                    "lift1": l1.coords,
                    "lift2": l2.coords,
                    "cup_mod_p2": c.value,
                }),
                out.as_ref(),
            )
        }
        LocalCommand::Heisenberg { build, input, model, x1, x2, twist, out, .. } => {
            let rep = if build {
                let (Some(p), Some(d), Some(x1), Some(x2)) = (model.p, model.d, x1, x2) else {
                    return Err(CliError::Input("--build needs --p, --d, --x1 and --x2".into()));
                };
                let m = LocalModel::new(p, d, model.s).map_err(|e| CliError::Input(e.to_string()))?;
                let a = parse_class(&m, "x1", &x1)?;
                let b = parse_class(&m, "x2", &x2)?;
                let t = match twist {
                    Some(t) => parse_class(&m, "twist", &t)?,
                    None => m.zero(1),
                };
                heisenberg_build(&a, &b, &t).map_err(local_err)?
            } else {
                let path = input.expect("clap requires --in with --lift");
                let rhobar: HeisenbergRep = serde_json::from_value(read_json(&path)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                rhobar.validate().map_err(|e| CliError::Input(e.to_string()))?;
                heisenberg_lift(&rhobar).map_err(local_err)?
            };
            print_or_write(&serde_json::to_value(&rep).expect("reps serialize"), out.as_ref())
        }
        LocalCommand::TameSymbol { p, q, a, b } => {
            let model = TameModel::new(p, q).map_err(|e| CliError::Input(e.to_string()))?;
            let elem = |name: &str, s: &str| -> Result<TameElement, CliError> {
                match parse_ints(name, s)?[..] {
                    [v, u] => Ok(TameElement { valuation: v, unit_index: u }),
                    _ => Err(CliError::Input(format!("--{name} takes two integers v,u"))),
                }
            };
            let (a, b) = (elem("a", &a)?, elem("b", &b)?);
            print_or_write(
                &json!({
                    "p": p,
                    "q": q,
                    "symbol": tame_symbol(&model, a, b),
                    "d_a": tame_d_map(&model, model.class_of(a)),
                    "d_b": tame_d_map(&model, model.class_of(b)),
                    "d_normalization": TAME_D_NORMALIZATION,
                }),
                None,
            )
        }
    }
}
