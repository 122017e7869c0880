//! Minimal DIMACS solver front end speaking the SAT-competition output
//! format, so the external-solver path can be exercised without a
//! third-party binary.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::Parser;

use cwd_core::encoder::parse_dimacs;
use cwd_core::solver::{Backend, Limits, Verdict};

#[derive(Parser)]
#[command(name = "cwd-sat", version)]
struct Args {
    /// DIMACS CNF file.
    cnf: PathBuf,
    /// Use the small DPLL solver instead of CaDiCaL.
    #[arg(long)]
    embedded: bool,
    /// Give up after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            println!("c error: {e:#}");
            println!("s UNKNOWN");
            ExitCode::from(1)
        }
    }
}

fn run(args: Args) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.cnf).with_context(|| format!("reading {}", args.cnf.display()))?;
    let inst = parse_dimacs(&text)?;
    let backend = if args.embedded { Backend::embedded() } else { Backend::Cadical };
    let limits = Limits { timeout: args.timeout.map(Duration::from_secs_f64), cancel: None };
    let r = backend.solve(&inst, &limits);
    println!("c {} in {:.3}s", r.solver, r.wall.as_secs_f64());
    Ok(match r.verdict {
        Verdict::Sat => {
            println!("s SATISFIABLE");
            let model = r.model.unwrap_or_default();
            let lits: Vec<String> = model
                .iter()
                .enumerate()
                .map(|(i, &v)| if v { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                .chain(std::iter::once("0".to_string()))
                .collect();
            for chunk in lits.chunks(20) {
                println!("v {}", chunk.join(" "));
            }
            ExitCode::from(10)
        }
        Verdict::Unsat => {
            println!("s UNSATISFIABLE");
            ExitCode::from(20)
        }
        _ => {
            if let Some(m) = r.message {
                println!("c {m}");
            }
            println!("s UNKNOWN");
            ExitCode::SUCCESS
        }
    })
}
