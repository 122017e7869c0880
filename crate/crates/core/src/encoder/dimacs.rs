use std::fmt::Write;

use super::CnfInstance;
use crate::error::{Error, Result};

/// DIMACS text: comment lines, the `p cnf` header, then one clause per line
/// in build order.
pub fn emit_dimacs(inst: &CnfInstance, comments: &[String]) -> String {
    let mut out = String::with_capacity(inst.num_clauses() * 16 + 64);
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p cnf {} {}", inst.num_vars(), inst.num_clauses());
    for clause in inst.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Reads DIMACS CNF. Clauses may span lines; `c` and `%` lines are skipped.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut inst: Option<CnfInstance> = None;
    let mut declared = 0usize;
    let mut current = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" || inst.is_some() {
                return Err(parse_err("malformed problem line".into()));
            }
            let vars = fields[1].parse().map_err(|_| parse_err("bad variable count".into()))?;
            declared = fields[2].parse().map_err(|_| parse_err("bad clause count".into()))?;
            inst = Some(CnfInstance::new(vars));
            continue;
        }
        let inst = inst.as_mut().ok_or_else(|| parse_err("clause before problem line".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| parse_err(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                inst.try_push(&current).map_err(|e| parse_err(e.to_string()))?;
                current.clear();
            } else {
                current.push(lit);
            }
        }
    }
    let inst = inst.ok_or_else(|| Error::Parse { line: 0, msg: "missing problem line".into() })?;
    if !current.is_empty() {
        return Err(Error::Parse { line: 0, msg: "last clause is not terminated by 0".into() });
    }
    if inst.num_clauses() != declared {
        log::warn!("DIMACS header declares {declared} clauses, found {}", inst.num_clauses());
    }
    Ok(inst)
}
