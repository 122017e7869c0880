//! Twin and universal-vertex removal, and the matching expression lifting.
//!
//! Deleting one of two twins or a universal vertex never changes the
//! clique-width of a graph with an edge, except that the result may drop to 1;
//! the search applies the floor of 2 by lifting the reduced graph's
//! expression, which needs two labels for any edge.

use serde::{Deserialize, Serialize};

use crate::graph::{find_twins, find_universal, Graph};
use crate::kexpr::KExpr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionStep {
    /// `removed` had the same neighbors as `kept` (apart from each other).
    Twin { removed: usize, kept: usize, adjacent: bool },
    /// `removed` was adjacent to every other remaining vertex.
    Universal { removed: usize },
}

/// Steps in application order; vertex ids refer to the input graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// `kept[i]` is the input vertex that became vertex `i` of the reduced graph.
    pub kept: Vec<usize>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Removes twins and universal vertices until neither remains or two
/// vertices are left.
pub fn preprocess(g: &Graph) -> (Graph, ReductionTrace) {
    let mut kept: Vec<usize> = (0..g.n()).collect();
    let mut current = g.clone();
    let mut steps = Vec::new();
    while current.n() > 2 {
        let step = if let Some(&(u, v)) = find_twins(&current).first() {
            (v, ReductionStep::Twin { removed: kept[v], kept: kept[u], adjacent: current.has_edge(u, v) })
        } else if let Some(&w) = find_universal(&current).first() {
            (w, ReductionStep::Universal { removed: kept[w] })
        } else {
            break;
        };
        steps.push(step.1);
        kept.remove(step.0);
        current = g.induced_subgraph(&kept);
    }
    if let Some(name) = g.name() {
        current.set_name(Some(format!("{name}/reduced")));
    }
    (current, ReductionTrace { steps, kept })
}

/// Turns an expression of the reduced graph, with vertices named by reduced
/// index, into one of the input graph named by input index. Uses at most
/// `max(labels, 2)` labels.
pub fn lift_expression(e: &KExpr, trace: &ReductionTrace) -> KExpr {
    let mut lifted = rename(e, &|name: &str| {
        name.parse::<usize>().ok().and_then(|i| trace.kept.get(i)).map_or(name.to_string(), |v| v.to_string())
    });
    for step in trace.steps.iter().rev() {
        lifted = match *step {
            ReductionStep::Twin { removed, kept, adjacent } => add_twin(lifted, kept, removed, adjacent),
            ReductionStep::Universal { removed } => {
                let top = lifted.max_labels().max(1);
                let mut inner = lifted;
                for a in 2..=top {
                    inner = KExpr::relabel(a, 1, inner);
                }
                KExpr::insert(1, 2, KExpr::Union(vec![inner, KExpr::leaf(2, removed.to_string())]))
            }
        };
    }
    lifted
}

fn rename(e: &KExpr, f: &dyn Fn(&str) -> String) -> KExpr {
    match e {
        KExpr::Leaf { label, vertex } => KExpr::leaf(*label, f(vertex)),
        KExpr::Union(cs) => KExpr::Union(cs.iter().map(|c| rename(c, f)).collect()),
        KExpr::Relabel { from, to, child } => KExpr::relabel(*from, *to, rename(child, f)),
        KExpr::Insert { a, b, child } => KExpr::insert(*a, *b, rename(child, f)),
    }
}

/// Replaces the leaf of `kept` with a subexpression creating both twins
/// under the same final label.
fn add_twin(e: KExpr, kept: usize, removed: usize, adjacent: bool) -> KExpr {
    let name = kept.to_string();
    match e {
        KExpr::Leaf { label, vertex } if vertex == name => {
            if adjacent {
                let spare = if label == 1 { 2 } else { 1 };
                KExpr::relabel(
                    spare,
                    label,
                    KExpr::insert(
                        label,
                        spare,
                        KExpr::Union(vec![KExpr::leaf(label, vertex), KExpr::leaf(spare, removed.to_string())]),
                    ),
                )
            } else {
                KExpr::Union(vec![KExpr::leaf(label, vertex), KExpr::leaf(label, removed.to_string())])
            }
        }
        KExpr::Leaf { .. } => e,
        KExpr::Union(cs) => KExpr::Union(cs.into_iter().map(|c| add_twin(c, kept, removed, adjacent)).collect()),
        KExpr::Relabel { from, to, child } => KExpr::relabel(from, to, add_twin(*child, kept, removed, adjacent)),
        KExpr::Insert { a, b, child } => KExpr::insert(a, b, add_twin(*child, kept, removed, adjacent)),
    }
}
