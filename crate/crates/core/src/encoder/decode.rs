use super::{Encoding, VarMap};
use crate::derivation::{check_models, validate_derivation, Derivation, Partition, Template};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reads the derivation encoded by a satisfying assignment.
///
/// `model[x - 1]` is the value of variable `x`. Components and groups of
/// template `i` are the classes of the true `c_{.,.,i}` and `g_{.,.,i}`
/// pairs. The result is checked against the graph; any inconsistency is an
/// encoder bug and reported as an internal error.
pub fn decode_model(model: &[bool], g: &Graph, k: usize, t: usize) -> Result<Derivation> {
    let n = g.n();
    let m = VarMap::new(n, k, t, Encoding::Direct);
    if model.len() < 2 * (t + 1) * m.pairs() {
        return Err(Error::InvalidArgument("model shorter than the variable range".into()));
    }
    let value = |x: u32| model[x as usize - 1];
    let mut templates = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let cmp = classes(n, |u, v| value(m.c(u, v, i)))
            .ok_or_else(|| Error::internal(format!("component relation of layer {i} is not transitive")))?;
        let grp = classes(n, |u, v| value(m.g(u, v, i)))
            .ok_or_else(|| Error::internal(format!("group relation of layer {i} is not transitive")))?;
        templates.push(Template::new(cmp, grp)?);
    }
    let d = Derivation::new(templates)?;
    if let Some(v) = validate_derivation(&d).violations.first() {
        return Err(Error::internal(format!("decoded sequence is not a derivation: {v}")));
    }
    if let Some(v) = check_models(&d, g)?.violations.first() {
        return Err(Error::internal(format!("decoded derivation does not model the graph: {v}")));
    }
    if d.width() > k {
        return Err(Error::internal(format!("decoded derivation has width {} > {k}", d.width())));
    }
    Ok(d)
}

/// Equivalence classes of `related`, or `None` if it is not an equivalence.
fn classes(n: usize, related: impl Fn(usize, usize) -> bool) -> Option<Partition> {
    let mut class = vec![usize::MAX; n];
    for v in 0..n {
        if class[v] == usize::MAX {
            class[v] = v;
            for (w, cw) in class.iter_mut().enumerate().skip(v + 1) {
                if related(v, w) {
                    if *cw != usize::MAX {
                        return None;
                    }
                    *cw = v;
                }
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if related(u, v) != (class[u] == class[v]) {
                return None;
            }
        }
    }
    Some(Partition::from_key(&class))
}
