//! SAT backends behind one interface: a small DPLL solver for tiny
//! instances, CaDiCaL linked in-process, and any DIMACS solver run as a
//! child process.
//!
//! Every model handed to a caller has been checked against the instance;
//! a backend claiming SAT with a bad model yields [`Verdict::Error`].

mod dpll;
mod external;
mod inprocess;
mod propagate;

pub use dpll::{solve_embedded, solve_embedded_with_budget, DEFAULT_DECISION_BUDGET};
pub use external::{parse_solver_output, solve_external, SolverConfig};
pub use inprocess::{cadical_signature, solve_cadical};
pub use propagate::{unit_propagate, Propagation};

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::encoder::CnfInstance;

/// Environment variable holding the default external solver command.
pub const SOLVER_ENV: &str = "CWD_SAT_SOLVER";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
    Timeout,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Timeout => "TIMEOUT",
            Verdict::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub verdict: Verdict,
    /// `model[x - 1]` is the value of variable `x`; present iff SAT.
    pub model: Option<Vec<bool>>,
    pub wall: Duration,
    pub solver: String,
    /// Diagnostic text for TIMEOUT and ERROR verdicts.
    pub message: Option<String>,
}

impl SolveResult {
    pub(crate) fn new(verdict: Verdict, solver: impl Into<String>, started: Instant) -> Self {
        SolveResult { verdict, model: None, wall: started.elapsed(), solver: solver.into(), message: None }
    }

    pub(crate) fn with_message(mut self, msg: impl Into<String>) -> Self {
        self.message = Some(msg.into());
        self
    }

    pub fn is_sat(&self) -> bool {
        self.verdict == Verdict::Sat
    }
}

/// Time and cancellation limits for one solve call.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub timeout: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Limits {
    pub fn timeout(d: Duration) -> Self {
        Limits { timeout: Some(d), cancel: None }
    }

    pub(crate) fn deadline(&self, started: Instant) -> Option<Instant> {
        self.timeout.map(|d| started + d)
    }

    pub(crate) fn cancelled(&self) -> bool {
        self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// DPLL with unit propagation and chronological backtracking.
    Embedded { decision_budget: u64 },
    /// CaDiCaL linked into the process.
    Cadical,
    /// A DIMACS solver run as a child process.
    External(SolverConfig),
}

impl Backend {
    /// The external command from `CWD_SAT_SOLVER` if set, else in-process CaDiCaL.
    pub fn from_env() -> Self {
        match std::env::var(SOLVER_ENV) {
            Ok(cmd) if !cmd.trim().is_empty() => Backend::External(SolverConfig::new(cmd)),
            _ => Backend::Cadical,
        }
    }

    pub fn embedded() -> Self {
        Backend::Embedded { decision_budget: DEFAULT_DECISION_BUDGET }
    }

    pub fn identity(&self) -> String {
        match self {
            Backend::Embedded { .. } => "embedded-dpll".into(),
            Backend::Cadical => format!("cadical-{}", cadical_signature()),
            Backend::External(cfg) => format!("external:{}", cfg.command),
        }
    }

    pub fn solve(&self, inst: &CnfInstance, limits: &Limits) -> SolveResult {
        match self {
            Backend::Embedded { decision_budget } => solve_embedded_with_budget(inst, *decision_budget, limits),
            Backend::Cadical => solve_cadical(inst, limits),
            Backend::External(cfg) => {
                let mut cfg = cfg.clone();
                cfg.timeout = match (cfg.timeout, limits.timeout) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                external::solve_external_cancellable(inst, &cfg, limits.cancel.as_deref())
            }
        }
    }
}

/// Whether every clause has a literal made true by `model`.
pub fn check_model(inst: &CnfInstance, model: &[bool]) -> bool {
    model.len() >= inst.num_vars()
        && inst.clauses().all(|clause| {
            clause.iter().any(|&lit| {
                let value = model[lit.unsigned_abs() as usize - 1];
                value == (lit > 0)
            })
        })
}

/// Enforces the model check on a SAT claim.
pub(crate) fn checked(inst: &CnfInstance, mut result: SolveResult) -> SolveResult {
    if result.verdict == Verdict::Sat {
        let ok = result.model.as_deref().is_some_and(|m| check_model(inst, m));
        if !ok {
            log::error!("{} reported SAT with a model that violates the instance", result.solver);
            result.verdict = Verdict::Error;
            result.model = None;
            result.message = Some("solver claimed SAT but its model does not satisfy the instance".into());
        }
    } else {
        result.model = None;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(num_vars: usize, clauses: &[&[i32]]) -> CnfInstance {
        let mut i = CnfInstance::new(num_vars);
        for c in clauses {
            i.try_push(c).unwrap();
        }
        i
    }

    #[test]
    fn model_checking() {
        let f = inst(2, &[&[1], &[1, 2]]);
        assert!(check_model(&f, &[true, false]));
        assert!(!check_model(&f, &[false, true]));
        assert!(!check_model(&inst(2, &[&[1, 2]]), &[false, false]));
        assert!(!check_model(&f, &[true]));
    }

    #[test]
    fn bad_models_become_errors() {
        let f = inst(1, &[&[1]]);
        let mut r = SolveResult::new(Verdict::Sat, "test", Instant::now());
        r.model = Some(vec![false]);
        let r = checked(&f, r);
        assert_eq!(r.verdict, Verdict::Error);
        assert!(r.model.is_none());
    }

    #[test]
    fn backends_agree_on_trivia() {
        for backend in [Backend::embedded(), Backend::Cadical] {
            let sat = backend.solve(&inst(1, &[&[1]]), &Limits::default());
            assert_eq!(sat.verdict, Verdict::Sat);
            assert_eq!(sat.model.as_deref(), Some(&[true][..]));
            let unsat = backend.solve(&inst(1, &[&[1], &[-1]]), &Limits::default());
            assert_eq!(unsat.verdict, Verdict::Unsat);
            let unsat = backend.solve(&inst(2, &[&[1, 2], &[-1], &[-2]]), &Limits::default());
            assert_eq!(unsat.verdict, Verdict::Unsat);
            let empty = backend.solve(&CnfInstance::new(0), &Limits::default());
            assert_eq!(empty.verdict, Verdict::Sat);
            assert_eq!(empty.model.as_deref(), Some(&[][..]));
        }
    }
}
