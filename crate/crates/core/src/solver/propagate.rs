use crate::encoder::CnfInstance;

/// Fixed point of unit propagation under a set of assumed literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagation {
    /// `assignment[x - 1]` for every variable `x`; `None` if still free.
    pub assignment: Vec<Option<bool>>,
    /// Index of a clause falsified at the fixed point, if any.
    pub conflict: Option<usize>,
}

impl Propagation {
    pub fn value(&self, lit: i32) -> Option<bool> {
        self.assignment[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
    }
}

/// Repeatedly assigns the last free literal of clauses whose other literals
/// are all false. Contradictory assumptions count as a conflict on no clause;
/// they are reported with `conflict = Some(usize::MAX)`.
pub fn unit_propagate(inst: &CnfInstance, assumptions: &[i32]) -> Propagation {
    let mut assignment: Vec<Option<bool>> = vec![None; inst.num_vars()];
    for &lit in assumptions {
        let slot = &mut assignment[lit.unsigned_abs() as usize - 1];
        match *slot {
            Some(v) if v != (lit > 0) => return Propagation { assignment, conflict: Some(usize::MAX) },
            _ => *slot = Some(lit > 0),
        }
    }
    loop {
        let mut changed = false;
        for (idx, clause) in inst.clauses().enumerate() {
            let mut free = None;
            let mut free_count = 0;
            let mut satisfied = false;
            for &lit in clause {
                match assignment[lit.unsigned_abs() as usize - 1] {
                    Some(v) if v == (lit > 0) => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        free_count += 1;
                        free = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (free_count, free) {
                (0, _) => return Propagation { assignment, conflict: Some(idx) },
                (1, Some(lit)) => {
                    assignment[lit.unsigned_abs() as usize - 1] = Some(lit > 0);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Propagation { assignment, conflict: None };
        }
    }
}
