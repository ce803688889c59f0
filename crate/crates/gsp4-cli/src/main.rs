//! `gsp4`: JSON front end for the gsp4 library.
//!
//! Exit codes: 0 success, 1 parse or schema error, 2 precondition failure,
//! 3 internal invariant breach.

mod commands;

use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gsp4::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "gsp4", version, about = "Affine Weyl group, Serre weight and local model computations for GSp4")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Residue characteristic, an odd prime.
    #[arg(long, global = true, default_value_t = 37)]
    pub p: i64,
    /// Number of embeddings; tuples are separated by '|'.
    #[arg(long, global = true, default_value_t = 1)]
    pub f: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Power series precision for local model checks.
    #[arg(long, global = true, default_value_t = 40)]
    pub precision: i64,
    /// Skip genericity guards; the output is marked as forced.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Admissible set Adm(λ), or its regular part.
    Adm {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        reg: bool,
    },
    /// Bruhat order on W̃, and on the GL4 side after transfer.
    Bruhat {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The ↑ order on W̃.
    Uparrow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Transfer to GL4 of a weight, an element, or of W^? and JH membership.
    Transfer {
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Jordan–Hölder constituents of R_s(μ) ⊗ W(λ), or membership of one weight.
    Jh {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        weight: Option<String>,
    },
    /// W^?(ρ̄).
    Wq {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
    },
    /// W_obv(ρ̄).
    Wobv {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
    },
    /// Defect-maximising types for the weights of W^?(ρ̄).
    Defectmax {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
        /// Only the weight with this index in W^?(ρ̄).
        #[arg(long)]
        index: Option<usize>,
    },
    /// Combinatorial weight elimination for F(λ).
    Weightelim {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
    },
    /// Exponents of τ(s, μ+η) and the elements w̃(τ).
    Taumap {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
    },
    /// Parabolic or cuspidal class of τ(s, μ+η).
    Niveau {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: String,
    },
    /// Dimension of an open Schubert cell meeting the monodromy condition.
    Monodim {
        #[arg(long)]
        x: String,
        /// The triple a = (a1, a2, a3).
        #[arg(long)]
        a: String,
        #[arg(long)]
        h: i64,
    },
    /// Top-dimensional components of the naive local model, as Adm∨_reg(λ).
    Irr {
        /// Dual cocharacter λ per embedding.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        a: String,
    },
    /// Bounds on torus fixed points of C_{(w̃1, ω)}.
    Fixedpoints {
        #[arg(long)]
        w1: String,
        #[arg(long)]
        omega: String,
    },
    /// Determinants of the Springer block matrices.
    Springer {
        #[arg(long)]
        l: u8,
    },
    /// A random matrix in the chart U(z̃), z̃ in the dual group.
    Chart {
        #[arg(long)]
        z: String,
        #[arg(long)]
        h: i64,
    },
    /// Partial Frobenius and change of basis identities on random instances.
    Frobcheck {
        #[arg(long, default_value = "e")]
        s: String,
        #[arg(long, default_value = "6,2;1")]
        mu: String,
    },
    /// Runs a file of JSON-lines queries, one result line per query.
    Batch { file: std::path::PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Dimension { .. } | Error::GroupMismatch(_) => 1,
        Error::Precondition(_) | Error::Precision { .. } => 2,
        Error::Invariant(_) => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        1 => "parse",
        2 => "precondition",
        _ => "invariant",
    }
}

fn error_record(e: &Error) -> Value {
    json!({ "error": error_kind(e), "reason": e.to_string() })
}

/// Turns one JSON query {"command": .., "p": .., "f": .., "payload": {..}} into argv.
fn query_to_argv(line: &str) -> Result<Vec<String>, Error> {
    let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("query must be a JSON object".into()))?;
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("query needs a string \"command\"".into()))?;
    if command == "batch" {
        return Err(Error::Parse("batch queries cannot nest".into()));
    }
    let mut argv = vec!["gsp4".to_string(), command.to_string()];
    let flag = |key: &str, value: &Value, argv: &mut Vec<String>| -> Result<(), Error> {
        match value {
            Value::Bool(true) => argv.push(format!("--{key}")),
            Value::Bool(false) => {}
            Value::Number(n) => argv.extend([format!("--{key}"), n.to_string()]),
            Value::String(s) => argv.extend([format!("--{key}"), s.clone()]),
            Value::Array(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        _ => Err(Error::Parse(format!("field '{key}' must hold strings or numbers"))),
                    })
                    .collect::<Result<_, _>>()?;
                argv.extend([format!("--{key}"), parts.join("|")]);
            }
            _ => return Err(Error::Parse(format!("unsupported value for '{key}'"))),
        }
        Ok(())
    };
    for key in ["p", "f", "seed", "precision", "force"] {
        if let Some(value) = obj.get(key) {
            flag(key, value, &mut argv)?;
        }
    }
    if let Some(payload) = obj.get("payload") {
        let payload = payload.as_object().ok_or_else(|| Error::Parse("\"payload\" must be an object".into()))?;
        for (key, value) in payload {
            flag(key, value, &mut argv)?;
        }
    }
    Ok(argv)
}

fn run_query(line: &str) -> Value {
    let argv = match query_to_argv(line) {
        Ok(a) => a,
        Err(e) => return error_record(&e),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return error_record(&Error::Parse(e.to_string().trim().to_string())),
    };
    match commands::run(&cli.command, &cli.common) {
        Ok(v) => v,
        Err(e) => error_record(&e),
    }
}

fn run_batch(path: &std::path::Path) -> Result<(), Error> {
    let file = std::fs::File::open(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (index, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        log::info!("batch line {index}");
        let mut record = run_query(&line);
        if let Value::Object(map) = &mut record {
            map.insert("line".into(), json!(index));
        }
        writeln!(out, "{record}").map_err(|e| Error::Precondition(format!("cannot write output: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ARTIFACT_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Batch { file } => run_batch(file).map(|_| None),
        cmd => commands::run(cmd, &cli.common).map(Some),
    };
    match result {
        Ok(Some(v)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{v}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_record(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
