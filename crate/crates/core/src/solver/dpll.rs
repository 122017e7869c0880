//! Small DPLL solver: two watched literals, static occurrence-count branching
//! order, chronological backtracking. Meant for instances with at most a few
//! hundred variables and as an independent cross-check of the other backends.

use std::time::Instant;

use super::{checked, Limits, SolveResult, Verdict};
use crate::encoder::CnfInstance;

pub const DEFAULT_DECISION_BUDGET: u64 = 5_000_000;

const NAME: &str = "embedded-dpll";

pub fn solve_embedded(inst: &CnfInstance) -> SolveResult {
    solve_embedded_with_budget(inst, DEFAULT_DECISION_BUDGET, &Limits::default())
}

pub fn solve_embedded_with_budget(inst: &CnfInstance, budget: u64, limits: &Limits) -> SolveResult {
    let started = Instant::now();
    let deadline = limits.deadline(started);
    let mut s = match Dpll::load(inst) {
        Some(s) => s,
        None => return SolveResult::new(Verdict::Unsat, NAME, started),
    };
    let outcome = s.run(budget, || deadline.is_some_and(|d| Instant::now() >= d) || limits.cancelled());
    let result = match outcome {
        Outcome::Sat => {
            let mut r = SolveResult::new(Verdict::Sat, NAME, started);
            r.model = Some(s.value.iter().skip(1).map(|&v| v > 0).collect());
            r
        }
        Outcome::Unsat => SolveResult::new(Verdict::Unsat, NAME, started),
        Outcome::Budget => SolveResult::new(Verdict::Error, NAME, started)
            .with_message(format!("decision budget of {budget} exhausted")),
        Outcome::Stopped => {
            SolveResult::new(Verdict::Timeout, NAME, started).with_message("time limit reached or cancelled")
        }
    };
    checked(inst, result)
}

enum Outcome {
    Sat,
    Unsat,
    Budget,
    Stopped,
}

#[inline]
fn code(lit: i32) -> usize {
    2 * lit.unsigned_abs() as usize + (lit < 0) as usize
}

struct Dpll {
    clauses: Vec<Vec<i32>>,
    /// `watches[code(l)]`: clauses currently watching literal `l`.
    watches: Vec<Vec<usize>>,
    /// Per variable: 1 true, -1 false, 0 unassigned.
    value: Vec<i8>,
    trail: Vec<i32>,
    /// Trail position of each decision, with whether it is already flipped.
    decisions: Vec<(usize, bool)>,
    order: Vec<u32>,
    head: usize,
}

impl Dpll {
    /// `None` when the formula is trivially unsatisfiable.
    fn load(inst: &CnfInstance) -> Option<Self> {
        let n = inst.num_vars();
        let mut s = Dpll {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n + 2],
            value: vec![0; n + 1],
            trail: Vec::new(),
            decisions: Vec::new(),
            order: Vec::new(),
            head: 0,
        };
        let mut occurrences = vec![0usize; n + 1];
        let mut units = Vec::new();
        'clauses: for clause in inst.clauses() {
            let mut c: Vec<i32> = clause.to_vec();
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&l| c.binary_search(&-l).is_ok()) {
                continue 'clauses;
            }
            for &l in &c {
                occurrences[l.unsigned_abs() as usize] += 1;
            }
            match c.len() {
                0 => return None,
                1 => units.push(c[0]),
                _ => {
                    let idx = s.clauses.len();
                    s.watches[code(c[0])].push(idx);
                    s.watches[code(c[1])].push(idx);
                    s.clauses.push(c);
                }
            }
        }
        for u in units {
            match s.lit_value(u) {
                1 => {}
                -1 => return None,
                _ => s.assign(u),
            }
        }
        let mut order: Vec<u32> = (1..=n as u32).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(occurrences[v as usize]));
        s.order = order;
        Some(s)
    }

    #[inline]
    fn lit_value(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: i32) {
        self.value[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
        self.trail.push(lit);
    }

    /// Returns `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = -self.trail[self.head];
            self.head += 1;
            let mut watchers = std::mem::take(&mut self.watches[code(falsified)]);
            let mut i = 0;
            let mut conflict = false;
            while i < watchers.len() {
                let ci = watchers[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value = {
                    let v = self.value[other.unsigned_abs() as usize];
                    if other > 0 {
                        v
                    } else {
                        -v
                    }
                };
                if other_value == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for j in 2..clause.len() {
                    let l = clause[j];
                    let v = self.value[l.unsigned_abs() as usize];
                    let lv = if l > 0 { v } else { -v };
                    if lv != -1 {
                        clause.swap(1, j);
                        self.watches[code(clause[1])].push(ci);
                        watchers.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if other_value == -1 {
                    conflict = true;
                    break;
                }
                self.assign(other);
                i += 1;
            }
            self.watches[code(falsified)].extend(watchers);
            if conflict {
                return false;
            }
        }
        true
    }

    fn backtrack_to(&mut self, len: usize) {
        for lit in self.trail.drain(len..) {
            self.value[lit.unsigned_abs() as usize] = 0;
        }
        self.head = len;
    }

    fn run(&mut self, budget: u64, mut stop: impl FnMut() -> bool) -> Outcome {
        let mut decisions = 0u64;
        let mut cursor = 0usize;
        loop {
            if self.propagate() {
                while cursor < self.order.len() && self.value[self.order[cursor] as usize] != 0 {
                    cursor += 1;
                }
                let Some(&var) = self.order.get(cursor) else {
                    return Outcome::Sat;
                };
                decisions += 1;
                if decisions > budget {
                    return Outcome::Budget;
                }
                if decisions % 1024 == 0 && stop() {
                    return Outcome::Stopped;
                }
                self.decisions.push((self.trail.len(), false));
                self.assign(-(var as i32));
            } else {
                loop {
                    let Some((pos, flipped)) = self.decisions.pop() else {
                        return Outcome::Unsat;
                    };
                    if flipped {
                        continue;
                    }
                    let lit = self.trail[pos];
                    self.backtrack_to(pos);
                    self.decisions.push((pos, true));
                    self.assign(-lit);
                    break;
                }
                cursor = 0;
            }
        }
    }
}
