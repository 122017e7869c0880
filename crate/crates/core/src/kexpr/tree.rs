use std::collections::BTreeMap;

use super::{evaluate, KExpr};
use crate::derivation::{Derivation, Partition, Template};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf { label: usize, vertex: usize },
    Union,
    Relabel { from: usize, to: usize },
    Insert { a: usize, b: usize },
}

/// A parse-tree node annotated with the labeled graph its subexpression
/// builds: vertex set, the label of each vertex, and the edges present.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub kind: NodeKind,
    pub children: Vec<usize>,
    /// Sorted vertex ids of the subgraph.
    pub vertices: Vec<usize>,
    /// `labels[i]` is the label of `vertices[i]`.
    pub labels: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeNode {
    /// Vertices grouped by label, groups ordered by label.
    pub fn label_classes(&self) -> Vec<Vec<usize>> {
        let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&v, &l) in self.vertices.iter().zip(&self.labels) {
            by_label.entry(l).or_default().push(v);
        }
        by_label.into_values().collect()
    }
}

/// Parse tree in which no union node has a union child.
#[derive(Clone, Debug)]
pub struct ExpressionTree {
    pub nodes: Vec<TreeNode>,
    pub root: usize,
    /// Vertex names by id.
    pub names: Vec<String>,
}

impl ExpressionTree {
    pub fn is_succinct(&self) -> bool {
        self.nodes
            .iter()
            .all(|q| q.kind != NodeKind::Union || q.children.iter().all(|&c| self.nodes[c].kind != NodeKind::Union))
    }

    pub fn union_count(&self) -> usize {
        self.nodes.iter().filter(|q| q.kind == NodeKind::Union).count()
    }
}

pub fn to_succinct_tree(e: &KExpr) -> Result<ExpressionTree> {
    let names = evaluate(e)?.names;
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut nodes = Vec::new();
    let root = build(&flatten(e), &index, &mut nodes);
    Ok(ExpressionTree { nodes, root, names })
}

/// Splices union children of unions into their parent.
fn flatten(e: &KExpr) -> KExpr {
    match e {
        KExpr::Leaf { .. } => e.clone(),
        KExpr::Union(cs) => {
            let mut out = Vec::new();
            for c in cs {
                match flatten(c) {
                    KExpr::Union(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            KExpr::Union(out)
        }
        KExpr::Relabel { from, to, child } => KExpr::relabel(*from, *to, flatten(child)),
        KExpr::Insert { a, b, child } => KExpr::insert(*a, *b, flatten(child)),
    }
}

fn build(e: &KExpr, index: &BTreeMap<&str, usize>, nodes: &mut Vec<TreeNode>) -> usize {
    let node = match e {
        KExpr::Leaf { label, vertex } => {
            let v = index[vertex.as_str()];
            TreeNode {
                kind: NodeKind::Leaf { label: *label, vertex: v },
                children: vec![],
                vertices: vec![v],
                labels: vec![*label],
                edges: vec![],
            }
        }
        KExpr::Union(cs) => {
            let children: Vec<usize> = cs.iter().map(|c| build(c, index, nodes)).collect();
            let mut pairs: Vec<(usize, usize)> = children
                .iter()
                .flat_map(|&c| nodes[c].vertices.iter().copied().zip(nodes[c].labels.iter().copied()))
                .collect();
            pairs.sort_unstable();
            let mut edges: Vec<(usize, usize)> = children.iter().flat_map(|&c| nodes[c].edges.clone()).collect();
            edges.sort_unstable();
            TreeNode {
                kind: NodeKind::Union,
                children,
                vertices: pairs.iter().map(|p| p.0).collect(),
                labels: pairs.iter().map(|p| p.1).collect(),
                edges,
            }
        }
        KExpr::Relabel { from, to, child } => {
            let c = build(child, index, nodes);
            let mut node = nodes[c].clone();
            for l in &mut node.labels {
                if *l == *from {
                    *l = *to;
                }
            }
            TreeNode { kind: NodeKind::Relabel { from: *from, to: *to }, children: vec![c], ..node }
        }
        KExpr::Insert { a, b, child } => {
            let c = build(child, index, nodes);
            let mut node = nodes[c].clone();
            for (i, &u) in node.vertices.iter().enumerate() {
                for (j, &v) in node.vertices.iter().enumerate() {
                    if u < v
                        && ((node.labels[i], node.labels[j]) == (*a, *b)
                            || (node.labels[i], node.labels[j]) == (*b, *a))
                    {
                        node.edges.push((u, v));
                    }
                }
            }
            node.edges.sort_unstable();
            node.edges.dedup();
            TreeNode { kind: NodeKind::Insert { a: *a, b: *b }, children: vec![c], ..node }
        }
    };
    nodes.push(node);
    nodes.len() - 1
}

/// Derivation read off the succinct parse tree.
///
/// `R(q)` counts union nodes on the path from the root to `q`, including
/// `q`, and `t` is the largest `R` over leaves. Template `i` takes one
/// component per union node with `R = t - i + 1` and per leaf with smaller
/// `R`; groups are the label classes of those nodes' graphs.
pub fn expr_to_derivation(e: &KExpr) -> Result<Derivation> {
    let tree = to_succinct_tree(e)?;
    let n = tree.names.len();
    let mut depth = vec![0usize; tree.nodes.len()];
    let mut stack = vec![tree.root];
    depth[tree.root] = (tree.nodes[tree.root].kind == NodeKind::Union) as usize;
    while let Some(q) = stack.pop() {
        for &c in &tree.nodes[q].children {
            depth[c] = depth[q] + (tree.nodes[c].kind == NodeKind::Union) as usize;
            stack.push(c);
        }
    }
    let is_leaf = |q: usize| matches!(tree.nodes[q].kind, NodeKind::Leaf { .. });
    let t = (0..tree.nodes.len()).filter(|&q| is_leaf(q)).map(|q| depth[q]).max().unwrap_or(0);

    let mut templates = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let level = t - i + 1;
        let layer: Vec<usize> = (0..tree.nodes.len())
            .filter(|&q| {
                (tree.nodes[q].kind == NodeKind::Union && depth[q] == level) || (is_leaf(q) && depth[q] < level)
            })
            .collect();
        let cmp: Vec<Vec<usize>> = layer.iter().map(|&q| tree.nodes[q].vertices.clone()).collect();
        let grp: Vec<Vec<usize>> = layer.iter().flat_map(|&q| tree.nodes[q].label_classes()).collect();
        let cmp = Partition::new(n, cmp).map_err(|e| Error::internal(format!("layer {i}: {e}")))?;
        let grp = Partition::new(n, grp).map_err(|e| Error::internal(format!("layer {i}: {e}")))?;
        templates.push(Template::new(cmp, grp)?);
    }
    Derivation::new(templates)
}
