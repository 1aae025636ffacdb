//! Command-line driver: every subcommand prints a short summary and, with
//! `--output`, writes a CSV or JSON artifact whose header records the
//! command, configuration, seed and library version.

mod commands;
mod family;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use commands::*;
pub use family::parse_family;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for a run whose result failed its own verification.
pub const EXIT_VERIFICATION: i32 = 2;
/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "rdl", version, about = "Ramsey upper density toolkit")]
pub struct Cli {
    /// Seed for every random choice; RDL_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Artifact path (CSV for fig1, JSON otherwise).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds on f(λ) and the sawtooth value.
    FEval(FEvalArgs),
    /// Figure data: lower, upper and exact f on a grid.
    Fig1(Fig1Args),
    /// μ(H, n) for a graph family.
    Mu(MuArgs),
    /// Adversarial coloring and its invariant check.
    Adversary(AdversaryArgs),
    /// Max flow with a matching weighted cover.
    Mfmc(MfmcArgs),
    /// Colored flow-finder on a seeded random total coloring.
    Findflow(FindflowArgs),
    /// Finite a-good shading with sampled verification.
    Shade(ShadeArgs),
    /// Embedding on a planted instance.
    Embed(EmbedArgs),
    /// Bounded-size low-expansion subset of a forest.
    Treecut(TreecutArgs),
}

/// What a command hands back to the driver.
pub struct Outcome {
    pub summary: String,
    pub artifact: Artifact,
    pub verified: bool,
}

pub enum Artifact {
    Csv { columns: Vec<&'static str>, rows: Vec<Vec<String>> },
    Json(Value),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FEval(_) => "f-eval",
            Command::Fig1(_) => "fig1",
            Command::Mu(_) => "mu",
            Command::Adversary(_) => "adversary",
            Command::Mfmc(_) => "mfmc",
            Command::Findflow(_) => "findflow",
            Command::Shade(_) => "shade",
            Command::Embed(_) => "embed",
            Command::Treecut(_) => "treecut",
        }
    }

    fn config(&self) -> Value {
        let v = match self {
            Command::FEval(a) => serde_json::to_value(a),
            Command::Fig1(a) => serde_json::to_value(a),
            Command::Mu(a) => serde_json::to_value(a),
            Command::Adversary(a) => serde_json::to_value(a),
            Command::Mfmc(a) => serde_json::to_value(a),
            Command::Findflow(a) => serde_json::to_value(a),
            Command::Shade(a) => serde_json::to_value(a),
            Command::Embed(a) => serde_json::to_value(a),
            Command::Treecut(a) => serde_json::to_value(a),
        };
        v.expect("argument structs serialize")
    }

    fn execute(&self, seed: u64) -> anyhow::Result<Outcome> {
        match self {
            Command::FEval(a) => f_eval(a),
            Command::Fig1(a) => fig1(a),
            Command::Mu(a) => mu(a),
            Command::Adversary(a) => adversary(a),
            Command::Mfmc(a) => mfmc(a),
            Command::Findflow(a) => findflow(a, seed),
            Command::Shade(a) => shade(a, seed),
            Command::Embed(a) => embed(a, seed),
            Command::Treecut(a) => treecut(a, seed),
        }
    }
}

/// Rounds every non-integral number in a JSON tree to 9 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = format::round9(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(round_json).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Serialized artifact, deterministic for identical command, config and seed.
pub fn render_artifact(cmd: &Command, seed: u64, artifact: &Artifact) -> String {
    let config = cmd.config();
    match artifact {
        Artifact::Csv { columns, rows } => {
            let mut out = format!(
                "# command: {}\n# config: {}\n# seed: {seed}\n# version: {VERSION}\n{}\n",
                cmd.name(),
                config,
                columns.join(",")
            );
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Artifact::Json(result) => {
            let doc = json!({
                "meta": { "command": cmd.name(), "config": config, "seed": seed, "version": VERSION },
                "result": round_json(result.clone()),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            s.push('\n');
            s
        }
    }
}

/// Parses arguments, runs the command and returns the exit status:
/// 0 on success, 1 on usage or input errors, 2 on a failed verification.
pub fn run<I, T>(args: I, seed_override: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let seed = match seed_override.map(str::parse::<u64>) {
        None => cli.seed,
        Some(Ok(s)) => s,
        Some(Err(e)) => {
            let _ = writeln!(err, "error: RDL_SEED is not a natural number: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match cli.command.execute(seed) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let _ = write!(out, "{}", outcome.summary);
    if let Some(path) = &cli.output {
        let text = render_artifact(&cli.command, seed, &outcome.artifact);
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: writing {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if outcome.verified {
        0
    } else {
        let _ = writeln!(err, "verification failed");
        EXIT_VERIFICATION
    }
}
