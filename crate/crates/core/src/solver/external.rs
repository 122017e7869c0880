//! Runs a DIMACS solver as a child process.
//!
//! The instance is written to a temporary file whose path replaces `{cnf}` in
//! the command template (or is appended when the template has no
//! placeholder). Standard output is parsed for the SAT-competition `s` and
//! `v` lines; exit codes 10 and 20 are only used as corroboration.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{checked, SolveResult, Verdict};
use crate::encoder::{emit_dimacs, CnfInstance};

const POLL: Duration = Duration::from_millis(5);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Whitespace-separated command line; `{cnf}` marks the input path.
    pub command: String,
    pub timeout: Option<Duration>,
    /// Directory for temporary files; the system default when `None`.
    pub workdir: Option<PathBuf>,
}

impl SolverConfig {
    pub fn new(command: impl Into<String>) -> Self {
        SolverConfig { command: command.into(), timeout: None, workdir: None }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }
}

pub fn solve_external(inst: &CnfInstance, cfg: &SolverConfig) -> SolveResult {
    solve_external_cancellable(inst, cfg, None)
}

pub(crate) fn solve_external_cancellable(
    inst: &CnfInstance,
    cfg: &SolverConfig,
    cancel: Option<&AtomicBool>,
) -> SolveResult {
    let started = Instant::now();
    let name = format!("external:{}", cfg.command);
    let fail = |msg: String| SolveResult::new(Verdict::Error, name.clone(), started).with_message(msg);

    if cfg.timeout.is_some_and(|t| t.is_zero()) {
        return fail("timeout must be positive".into());
    }
    let file = match &cfg.workdir {
        Some(dir) => tempfile::Builder::new().suffix(".cnf").tempfile_in(dir),
        None => tempfile::Builder::new().suffix(".cnf").tempfile(),
    };
    let mut file = match file {
        Ok(f) => f,
        Err(e) => return fail(format!("cannot create instance file: {e}")),
    };
    if let Err(e) = file.write_all(emit_dimacs(inst, &[]).as_bytes()).and_then(|_| file.flush()) {
        return fail(format!("cannot write instance: {e}"));
    }
    let path = file.path().to_string_lossy().into_owned();

    let mut words: Vec<String> = cfg.command.split_whitespace().map(str::to_string).collect();
    if words.is_empty() {
        return fail("empty solver command".into());
    }
    if words.iter().any(|w| w.contains("{cnf}")) {
        for w in &mut words {
            *w = w.replace("{cnf}", &path);
        }
    } else {
        words.push(path.clone());
    }

    let mut child = match Command::new(&words[0])
        .args(&words[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return fail(format!("cannot start `{}`: {e}", words[0])),
    };
    let stdout = drain(child.stdout.take());
    let stderr = drain(child.stderr.take());

    let deadline = cfg.timeout.map(|t| started + t);
    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break Some(status),
            Ok(None) => {}
            Err(e) => return fail(format!("waiting for solver: {e}")),
        }
        let expired = deadline.is_some_and(|d| Instant::now() >= d);
        if expired || cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        thread::sleep(POLL);
    };
    drop(file);
    let Some(status) = status else {
        // The reader threads are left to finish on their own: a grandchild
        // may still hold the pipes open.
        return SolveResult::new(Verdict::Timeout, name, started)
            .with_message("solver killed at the time limit or on cancellation");
    };
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();
    let (verdict, model) = match parse_solver_output(&out, inst.num_vars()) {
        Ok(parsed) => parsed,
        Err(msg) => {
            let tail: String = err.chars().rev().take(400).collect::<Vec<_>>().into_iter().rev().collect();
            return fail(format!("{msg} (exit status {status}; stderr: {})", tail.trim()));
        }
    };
    let expected_code = match verdict {
        Verdict::Sat => Some(10),
        Verdict::Unsat => Some(20),
        _ => None,
    };
    if expected_code.is_some() && status.code() != expected_code {
        log::warn!("{name}: status line says {verdict} but exit code is {:?}", status.code());
    }
    let mut result = SolveResult::new(verdict, name, started);
    result.model = model;
    if verdict == Verdict::Timeout {
        result.message = Some("solver reported UNKNOWN".into());
    }
    checked(inst, result)
}

fn drain<R: Read + Send + 'static>(pipe: Option<R>) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        if let Some(mut p) = pipe {
            let _ = p.read_to_end(&mut buf);
        }
        String::from_utf8_lossy(&buf).into_owned()
    })
}

/// Parses SAT-competition output. `s UNKNOWN` maps to [`Verdict::Timeout`].
/// Unassigned variables default to false; the caller checks the model.
pub fn parse_solver_output(out: &str, num_vars: usize) -> Result<(Verdict, Option<Vec<bool>>), String> {
    let mut verdict = None;
    let mut model = vec![false; num_vars];
    let mut saw_values = false;
    for line in out.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            let v = match rest.trim() {
                "SATISFIABLE" => Verdict::Sat,
                "UNSATISFIABLE" => Verdict::Unsat,
                "UNKNOWN" | "INDETERMINATE" => Verdict::Timeout,
                other => return Err(format!("unrecognized status line `s {other}`")),
            };
            if verdict.is_some_and(|prev| prev != v) {
                return Err("conflicting status lines".into());
            }
            verdict = Some(v);
        } else if let Some(rest) = line.strip_prefix('v') {
            saw_values = true;
            for tok in rest.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| format!("bad literal `{tok}` in value line"))?;
                let var = lit.unsigned_abs() as usize;
                if lit == 0 {
                    continue;
                }
                if var > num_vars {
                    log::warn!("solver assigned variable {var} beyond the declared {num_vars}");
                    continue;
                }
                model[var - 1] = lit > 0;
            }
        }
    }
    match verdict {
        None => Err("no status line in solver output".into()),
        Some(Verdict::Sat) if !saw_values && num_vars > 0 => Err("SAT without a value line".into()),
        Some(Verdict::Sat) => Ok((Verdict::Sat, Some(model))),
        Some(v) => Ok((v, None)),
    }
}
