use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use cadical::{Callbacks, Solver};

use super::{checked, Limits, SolveResult, Verdict};
use crate::encoder::CnfInstance;

struct Stop {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
    fired: bool,
}

impl Callbacks for Stop {
    fn terminate(&mut self) -> bool {
        self.fired = self.fired
            || self.deadline.is_some_and(|d| Instant::now() >= d)
            || self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed));
        self.fired
    }
}

/// Version string reported by the linked CaDiCaL library.
pub fn cadical_signature() -> String {
    Solver::<Stop>::new().signature().to_string()
}

pub fn solve_cadical(inst: &CnfInstance, limits: &Limits) -> SolveResult {
    let started = Instant::now();
    let mut solver: Solver<Stop> = Solver::new();
    let name = format!("cadical-{}", solver.signature());
    if inst.num_vars() > i32::MAX as usize {
        return SolveResult::new(Verdict::Error, name, started).with_message("too many variables");
    }
    solver.reserve(inst.num_vars() as i32);
    for clause in inst.clauses() {
        solver.add_clause(clause.iter().copied());
    }
    solver.set_callbacks(Some(Stop {
        deadline: limits.deadline(started),
        cancel: limits.cancel.clone(),
        fired: false,
    }));
    let result = match solver.solve() {
        Some(true) => {
            let mut r = SolveResult::new(Verdict::Sat, name, started);
            r.model = Some((1..=inst.num_vars() as i32).map(|x| solver.value(x).unwrap_or(false)).collect());
            r
        }
        Some(false) => SolveResult::new(Verdict::Unsat, name, started),
        None => {
            let fired = solver.get_callbacks().is_some_and(|c| c.fired);
            let r = SolveResult::new(if fired { Verdict::Timeout } else { Verdict::Error }, name, started);
            r.with_message(if fired { "time limit reached or cancelled" } else { "solver gave up" })
        }
    };
    checked(inst, result)
}
