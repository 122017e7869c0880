use std::collections::{BTreeSet, HashMap};

use super::KExpr;
use crate::derivation::{check_models, make_strict, validate_derivation, Derivation};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Builds a `k`-expression of `g` from a `k`-derivation of `g`.
///
/// The derivation is made strict first. Each component `c` of `T_i` becomes
/// a union over the components of `T_{i-1}` inside it. Labels are assigned
/// top-down: a child's groups that merge into the same group `y` of `T_i`
/// are relabeled to `y`'s label, with the group holding the smallest vertex
/// of `y` labeled directly and the others given spare labels and then
/// relabeled. Every edge is inserted right above the union where its
/// endpoints first meet.
pub fn derivation_to_expr(d: &Derivation, g: &Graph) -> Result<KExpr> {
    if let Some(v) = validate_derivation(d).violations.into_iter().next() {
        return Err(Error::precondition(format!("not a derivation: {v}")));
    }
    if let Some(v) = check_models(d, g)?.violations.into_iter().next() {
        return Err(Error::precondition(format!("derivation does not model the graph: {v}")));
    }
    let d = make_strict(d, g)?;
    let builder = Builder { d: &d, g, k: d.width() };
    let t = d.len();
    let root_labels: HashMap<usize, usize> = (0..d.templates()[t].grp.len()).map(|y| (y, y + 1)).collect();
    builder.node(t, 0, &root_labels)
}

struct Builder<'a> {
    d: &'a Derivation,
    g: &'a Graph,
    k: usize,
}

impl Builder<'_> {
    /// Expression for component `comp` of `T_i`, where `labels` maps the
    /// group indices of `T_i` inside it to labels.
    fn node(&self, i: usize, comp: usize, labels: &HashMap<usize, usize>) -> Result<KExpr> {
        let ts = self.d.templates();
        let cur = &ts[i];
        if i == 0 {
            let v = cur.cmp.blocks()[comp][0];
            return Ok(KExpr::leaf(labels[&cur.grp.block_of(v)], v.to_string()));
        }
        let prev = &ts[i - 1];
        let children: Vec<usize> =
            (0..prev.cmp.len()).filter(|&c| cur.cmp.block_of(prev.cmp.blocks()[c][0]) == comp).collect();

        let mut parts = Vec::with_capacity(children.len());
        for &child in &children {
            let child_groups: Vec<usize> =
                (0..prev.grp.len()).filter(|&h| prev.cmp.block_of(prev.grp.blocks()[h][0]) == child).collect();
            // Groups are ordered by smallest vertex, so the first child group
            // seen for each target is the one holding the target's smallest
            // vertex inside this child.
            let mut representative: HashMap<usize, usize> = HashMap::new();
            for &h in &child_groups {
                representative.entry(cur.grp.block_of(prev.grp.blocks()[h][0])).or_insert(h);
            }
            let taken: BTreeSet<usize> = representative.keys().map(|y| labels[y]).collect();
            let mut spare = (1..=self.k).filter(|l| !taken.contains(l));
            let mut child_labels = HashMap::new();
            let mut relabels = Vec::new();
            for &h in &child_groups {
                let y = cur.grp.block_of(prev.grp.blocks()[h][0]);
                if representative[&y] == h {
                    child_labels.insert(h, labels[&y]);
                } else {
                    let fresh = spare.next().ok_or_else(|| Error::internal("ran out of labels while relabeling"))?;
                    child_labels.insert(h, fresh);
                    relabels.push((fresh, labels[&y]));
                }
            }
            let mut e = self.node(i - 1, child, &child_labels)?;
            for (from, to) in relabels {
                e = KExpr::relabel(from, to, e);
            }
            parts.push(e);
        }

        let mut e = if parts.len() == 1 { parts.pop().expect("one part") } else { KExpr::Union(parts) };
        if children.len() > 1 {
            e = self.insert_edges(i, comp, labels, e)?;
        }
        Ok(e)
    }

    fn insert_edges(&self, i: usize, comp: usize, labels: &HashMap<usize, usize>, mut e: KExpr) -> Result<KExpr> {
        let ts = self.d.templates();
        let (cur, prev) = (&ts[i], &ts[i - 1]);
        let members = &cur.cmp.blocks()[comp];
        let label_of = |v: usize| labels[&cur.grp.block_of(v)];
        let mut inserted = BTreeSet::new();
        for &u in members {
            for &v in self.g.neighbors(u) {
                if v < u || prev.cmp.same_block(u, v) || !cur.cmp.same_block(u, v) {
                    continue;
                }
                let (a, b) = (label_of(u), label_of(v));
                if a == b {
                    return Err(Error::internal(format!("edge {u}-{v} joins one group")));
                }
                let pair = (a.min(b), a.max(b));
                if !inserted.insert(pair) {
                    continue;
                }
                for &x in members.iter().filter(|&&x| label_of(x) == pair.0) {
                    for &y in members.iter().filter(|&&y| label_of(y) == pair.1) {
                        if !self.g.has_edge(x, y) {
                            return Err(Error::internal(format!(
                                "eta_{{{},{}}} would add non-edge {x}-{y}",
                                pair.0, pair.1
                            )));
                        }
                    }
                }
                e = KExpr::insert(pair.0, pair.1, e);
            }
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::derivation::fixtures::{abcd_derivation, abcd_graph};
    use crate::graph::{cycle, edgeless};
    use crate::kexpr::{evaluate, expr_to_derivation, fixtures::P4_EXPR, parse_expr, verify_expression};

    #[test]
    fn four_vertex_example() {
        let e = derivation_to_expr(&abcd_derivation(), &abcd_graph()).unwrap();
        assert!(verify_expression(&e, &abcd_graph(), 3), "{e}");
    }

    #[test]
    fn edgeless_needs_no_insertions() {
        let g = edgeless(4);
        let e = derivation_to_expr(&Derivation::trivial(4), &g).unwrap();
        assert!(verify_expression(&e, &g, 4));
        assert!(!e.to_string().contains("eta"));
    }

    #[test]
    fn rejects_non_model() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let err = derivation_to_expr(&abcd_derivation(), &g).unwrap_err();
        assert!(err.to_string().contains("neighborhood"), "{err}");
    }

    #[test]
    fn single_vertex() {
        let e = derivation_to_expr(&Derivation::trivial(1), &Graph::new(1)).unwrap();
        assert_eq!(e, KExpr::leaf(1, "0"));
    }

    #[test]
    fn path_round_trip() {
        let e = parse_expr(P4_EXPR).unwrap();
        let g = evaluate(&e).unwrap().graph;
        let back = derivation_to_expr(&expr_to_derivation(&e).unwrap(), &g).unwrap();
        assert!(verify_expression(&back, &g, 3));
    }

    #[test]
    fn trivial_derivation_gives_n_expression() {
        // Singleton groups inside one component model every graph.
        let g = cycle(5);
        let e = derivation_to_expr(&Derivation::trivial(5), &g).unwrap();
        assert!(verify_expression(&e, &g, 5));
    }

    /// Random expression over vertices `0..n` with labels `1..=k`.
    fn random_expr(rng: &mut ChaCha8Rng, vertices: &[usize], k: usize) -> KExpr {
        let mut e = if vertices.len() == 1 {
            KExpr::leaf(rng.gen_range(1..=k), vertices[0].to_string())
        } else {
            let split = rng.gen_range(1..vertices.len());
            let (l, r) = vertices.split_at(split);
            KExpr::Union(vec![random_expr(rng, l, k), random_expr(rng, r, k)])
        };
        for _ in 0..rng.gen_range(0..3) {
            let a = rng.gen_range(1..=k);
            let b = rng.gen_range(1..=k);
            e = match rng.gen_range(0..2) {
                0 if a != b => KExpr::insert(a, b, e),
                _ => KExpr::relabel(a, b, e),
            };
        }
        e
    }

    #[test]
    fn random_expressions_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(2..=4);
            let mut vs: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                vs.swap(i, rng.gen_range(0..=i));
            }
            let e = random_expr(&mut rng, &vs, k);
            let lg = evaluate(&e).unwrap();
            let d = expr_to_derivation(&e).unwrap();
            assert!(validate_derivation(&d).ok, "{e}");
            assert!(check_models(&d, &lg.graph).unwrap().ok, "{e}");
            assert!(d.width() <= e.max_labels());
            let back = derivation_to_expr(&d, &lg.graph).unwrap();
            assert!(verify_expression(&back, &lg.graph, e.max_labels()), "{e} -> {back}");
        }
    }
}
