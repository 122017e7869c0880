//! k-expressions: leaves `i(v)`, disjoint union, relabeling `rho_{i->j}`
//! and edge insertion `eta_{i,j}`, plus the conversions to and from
//! derivations.

mod construct;
mod eval;
mod parse;
mod tree;

pub use construct::derivation_to_expr;
pub use eval::{evaluate, expression_mismatch, verify_expression, LabeledGraph};
pub use parse::{parse_expr, print_expr};
pub use tree::{expr_to_derivation, to_succinct_tree, ExpressionTree, NodeKind, TreeNode};

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KExpr {
    /// `label(vertex)`.
    Leaf { label: usize, vertex: String },
    /// Disjoint union of one or more subexpressions.
    Union(Vec<KExpr>),
    /// `rho_{from->to}`: every vertex labeled `from` gets label `to`.
    Relabel { from: usize, to: usize, child: Box<KExpr> },
    /// `eta_{a,b}`: joins every `a`-labeled vertex to every `b`-labeled one.
    Insert { a: usize, b: usize, child: Box<KExpr> },
}

impl KExpr {
    pub fn leaf(label: usize, vertex: impl Into<String>) -> Self {
        KExpr::Leaf { label, vertex: vertex.into() }
    }

    pub fn relabel(from: usize, to: usize, child: KExpr) -> Self {
        KExpr::Relabel { from, to, child: Box::new(child) }
    }

    pub fn insert(a: usize, b: usize, child: KExpr) -> Self {
        KExpr::Insert { a, b, child: Box::new(child) }
    }

    /// Largest label mentioned anywhere in the expression.
    pub fn max_labels(&self) -> usize {
        match self {
            KExpr::Leaf { label, .. } => *label,
            KExpr::Union(cs) => cs.iter().map(KExpr::max_labels).max().unwrap_or(0),
            KExpr::Relabel { from, to, child } => (*from).max(*to).max(child.max_labels()),
            KExpr::Insert { a, b, child } => (*a).max(*b).max(child.max_labels()),
        }
    }

    /// Leaf vertex names in left-to-right order.
    pub fn vertex_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            KExpr::Leaf { vertex, .. } => out.push(vertex),
            KExpr::Union(cs) => cs.iter().for_each(|c| c.collect_names(out)),
            KExpr::Relabel { child, .. } | KExpr::Insert { child, .. } => child.collect_names(out),
        }
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        match self {
            KExpr::Leaf { .. } => 1,
            KExpr::Union(cs) => 1 + cs.iter().map(KExpr::size).sum::<usize>(),
            KExpr::Relabel { child, .. } | KExpr::Insert { child, .. } => 1 + child.size(),
        }
    }
}

pub fn max_labels(e: &KExpr) -> usize {
    e.max_labels()
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_expr(self))
    }
}

/// Orders vertex names: decimal integers by value first, then the rest
/// lexicographically. A vertex's index is its position in this order.
pub(crate) fn compare_names(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_counts() {
        assert_eq!(parse_expr(fixtures::P4_EXPR).unwrap().max_labels(), 3);
        assert_eq!(parse_expr("1(v)").unwrap().max_labels(), 1);
        assert_eq!(max_labels(&parse_expr("eta_{1,2}(1(u)+2(v))").unwrap()), 2);
    }

    #[test]
    fn name_order() {
        let mut names = vec!["b", "10", "2", "a", "0"];
        names.sort_by(|a, b| compare_names(a, b));
        assert_eq!(names, vec!["0", "2", "10", "a", "b"]);
    }
}
