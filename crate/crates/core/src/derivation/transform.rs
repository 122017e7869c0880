use super::{check_models, validate_derivation, Derivation, Template};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn require_models(d: &Derivation, g: &Graph) -> Result<()> {
    if let Some(v) = validate_derivation(d).violations.into_iter().next() {
        return Err(Error::precondition(format!("not a derivation: {v}")));
    }
    if let Some(v) = check_models(d, g)?.violations.into_iter().next() {
        return Err(Error::precondition(format!("derivation does not model the graph: {v}")));
    }
    Ok(())
}

/// Drops templates until component counts strictly decrease.
///
/// Whenever `cmp(T_{i-1}) = cmp(T_i)`: an exact duplicate is removed; a
/// differing final template is removed; otherwise `T_i` is removed, which
/// leaves every property intact because the next step only looks at the
/// components of its predecessor, and those are unchanged.
pub fn make_strict(d: &Derivation, g: &Graph) -> Result<Derivation> {
    require_models(d, g)?;
    let mut ts: Vec<Template> = d.templates().to_vec();
    while let Some(i) = (1..ts.len()).find(|&i| ts[i - 1].cmp == ts[i].cmp) {
        let last = ts.len() - 1;
        if ts[i - 1] == ts[i] || i != last {
            ts.remove(i);
        } else {
            ts.remove(last);
        }
    }
    Derivation::new(ts)
}

/// Number of templates with at least one component larger than `k`.
pub fn k_length(d: &Derivation, k: usize) -> usize {
    d.templates().iter().filter(|t| t.cmp.blocks().iter().any(|b| b.len() > k)).count()
}

/// Shortens a strict `k`-derivation to length at most `n - k + 1`.
///
/// With `l` the k-length and `j = t - l`, the result is
/// `(T_0, T'_j, T_{j+1}, ..., T_t)` where `T'_j` keeps the components of
/// `T_j` but has singleton groups. When `j = 0` the input is returned as is.
pub fn shorten(d: &Derivation, g: &Graph, k: usize) -> Result<Derivation> {
    require_models(d, g)?;
    if !d.is_strict() {
        return Err(Error::precondition("shorten needs a strict derivation"));
    }
    if k == 0 || d.width() > k {
        return Err(Error::precondition(format!("derivation has width {} which exceeds k = {k}", d.width())));
    }
    let n = d.universe();
    let t = d.len();
    let ell = k_length(d, k);
    if ell > n.saturating_sub(k) {
        return Err(Error::internal(format!(
            "k-length {ell} exceeds n - k = {} for a strict derivation",
            n.saturating_sub(k)
        )));
    }
    let ts = d.templates();
    debug_assert!(ts[..=t - ell].iter().all(|tpl| tpl.cmp.blocks().iter().all(|b| b.len() <= k)));
    let j = t - ell;
    if j == 0 {
        return Ok(d.clone());
    }
    let mut out = vec![ts[0].clone(), Template { cmp: ts[j].cmp.clone(), grp: ts[0].grp.clone() }];
    out.extend_from_slice(&ts[j + 1..]);
    Derivation::new(out)
}
