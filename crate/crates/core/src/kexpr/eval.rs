use std::collections::HashMap;

use super::{compare_names, KExpr};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph whose vertices carry labels `1..=k`. Vertex `i` is named
/// `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
    pub names: Vec<String>,
}

/// Bottom-up evaluation. Vertices are indexed by the name order of
/// [`compare_names`](super::compare_names), so names `0..n` map to themselves.
pub fn evaluate(e: &KExpr) -> Result<LabeledGraph> {
    let mut names: Vec<String> = e.vertex_names().into_iter().map(str::to_string).collect();
    names.sort_by(|a, b| compare_names(a, b));
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Expression(format!("vertex `{}` occurs more than once", w[0])));
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut graph = Graph::new(names.len());
    let mut labels = vec![0; names.len()];
    eval_node(e, &index, &mut graph, &mut labels)?;
    Ok(LabeledGraph { graph, labels, names })
}

fn eval_node(e: &KExpr, index: &HashMap<&str, usize>, graph: &mut Graph, labels: &mut [usize]) -> Result<Vec<usize>> {
    match e {
        KExpr::Leaf { label, vertex } => {
            if *label == 0 {
                return Err(Error::Expression("labels start at 1".into()));
            }
            let v = index[vertex.as_str()];
            labels[v] = *label;
            Ok(vec![v])
        }
        KExpr::Union(children) => {
            if children.is_empty() {
                return Err(Error::Expression("union without children".into()));
            }
            let mut all = Vec::new();
            for c in children {
                all.extend(eval_node(c, index, graph, labels)?);
            }
            Ok(all)
        }
        KExpr::Relabel { from, to, child } => {
            if *to == 0 || *from == 0 {
                return Err(Error::Expression("labels start at 1".into()));
            }
            let vs = eval_node(child, index, graph, labels)?;
            for &v in &vs {
                if labels[v] == *from {
                    labels[v] = *to;
                }
            }
            Ok(vs)
        }
        KExpr::Insert { a, b, child } => {
            if a == b {
                return Err(Error::Expression(format!("eta_{{{a},{b}}} needs distinct labels")));
            }
            let vs = eval_node(child, index, graph, labels)?;
            for &u in vs.iter().filter(|&&u| labels[u] == *a) {
                for &v in vs.iter().filter(|&&v| labels[v] == *b) {
                    graph.add_edge(u, v)?;
                }
            }
            Ok(vs)
        }
    }
}

/// Why `e` is not a `k`-expression of `g`, if it is not.
///
/// Decimal vertex names must equal their index, so an expression over
/// `0..n` is compared vertex by vertex; other names are matched by position
/// in name order.
pub fn expression_mismatch(e: &KExpr, g: &Graph, k: usize) -> Option<String> {
    let used = e.max_labels();
    if used > k {
        return Some(format!("expression uses label {used}, more than k = {k}"));
    }
    let lg = match evaluate(e) {
        Ok(lg) => lg,
        Err(err) => return Some(err.to_string()),
    };
    if lg.graph.n() != g.n() {
        return Some(format!("expression has {} vertices, graph has {}", lg.graph.n(), g.n()));
    }
    for (i, name) in lg.names.iter().enumerate() {
        if let Ok(x) = name.parse::<usize>() {
            if x != i {
                return Some(format!("vertex name `{name}` does not match any vertex id"));
            }
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if lg.graph.has_edge(u, v) != g.has_edge(u, v) {
                let state = if g.has_edge(u, v) { "missing" } else { "extra" };
                return Some(format!("edge {}-{} is {state}", lg.names[u], lg.names[v]));
            }
        }
    }
    None
}

pub fn verify_expression(e: &KExpr, g: &Graph, k: usize) -> bool {
    expression_mismatch(e, g, k).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use crate::kexpr::{fixtures::P4_EXPR, parse_expr};

    #[test]
    fn path_expression() {
        let e = parse_expr(P4_EXPR).unwrap();
        let lg = evaluate(&e).unwrap();
        assert_eq!(lg.names, vec!["a", "b", "c", "d"]);
        assert_eq!(lg.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(lg.labels, vec![1, 1, 3, 2]);
        assert!(verify_expression(&e, &path(4), 3));
        assert!(!verify_expression(&e, &path(4), 2));
        assert!(!verify_expression(&e, &crate::graph::cycle(4), 3));
    }

    #[test]
    fn small_cases() {
        let lg = evaluate(&parse_expr("1(v)").unwrap()).unwrap();
        assert_eq!((lg.graph.n(), lg.labels[0]), (1, 1));
        let lg = evaluate(&parse_expr("eta_{1,2}(1(u)+2(v))").unwrap()).unwrap();
        assert_eq!(lg.graph.edge_count(), 1);
    }

    #[test]
    fn insert_is_idempotent() {
        let once = evaluate(&parse_expr("eta_{1,2}(1(0)+2(1)+2(2))").unwrap()).unwrap();
        let twice = evaluate(&parse_expr("eta_{1,2}(eta_{1,2}(1(0)+2(1)+2(2)))").unwrap()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once.graph.edge_count(), 2);
    }

    #[test]
    fn numeric_names_must_be_ids() {
        let e = parse_expr("eta_{1,2}(1(0)+2(2))").unwrap();
        assert!(!verify_expression(&e, &path(2), 2));
        let e = parse_expr("eta_{1,2}(1(0)+2(1))").unwrap();
        assert!(verify_expression(&e, &path(2), 2));
    }
}
