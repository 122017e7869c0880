//! Connectivity, twins, universal vertices and modules.

use super::Graph;

/// A connected component together with its induced subgraph; `graph` vertex
/// `i` is `vertices[i]` in the parent.
#[derive(Clone, Debug)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// Components ordered by their smallest vertex, vertices ascending.
pub fn connected_components(g: &Graph) -> Vec<Component> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut vertices = Vec::new();
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        let graph = g.induced_subgraph(&vertices);
        out.push(Component { vertices, graph });
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || connected_components(g).len() == 1
}

/// All pairs `u < v` with `N(u) \ {v} = N(v) \ {u}`, adjacent or not.
pub fn find_twins(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (0..n).all(|x| x == u || x == v || g.has_edge(u, x) == g.has_edge(v, x)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Vertices adjacent to every other vertex.
pub fn find_universal(g: &Graph) -> Vec<usize> {
    if g.n() < 2 {
        return Vec::new();
    }
    (0..g.n()).filter(|&v| g.degree(v) == g.n() - 1).collect()
}

/// Every vertex outside `set` sees either all of `set` or none of it.
pub fn is_module(g: &Graph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let Some(&first) = set.first() else {
        return true;
    };
    (0..g.n()).filter(|&x| !inside[x]).all(|x| set.iter().all(|&v| g.has_edge(v, x) == g.has_edge(first, x)))
}

/// A module with `2 <= |M| < n`, if one exists.
///
/// Every such module contains some pair `{u, v}`, and the smallest module
/// containing a pair is obtained by repeatedly absorbing outside vertices
/// that distinguish two members.
pub fn find_nontrivial_module(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let m = module_closure(g, u, v);
            if m.len() < n {
                return Some(m);
            }
        }
    }
    None
}

fn module_closure(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let n = g.n();
    let mut inside = vec![false; n];
    inside[u] = true;
    inside[v] = true;
    let mut members = vec![u, v];
    loop {
        let splitter = (0..n).find(|&x| !inside[x] && members.iter().any(|&m| g.has_edge(m, x) != g.has_edge(u, x)));
        match splitter {
            Some(x) => {
                inside[x] = true;
                members.push(x);
            }
            None => break,
        }
    }
    members.sort_unstable();
    members
}

/// No module of size between 2 and `n - 1`. Graphs on at most two vertices
/// are prime by this definition.
pub fn is_prime(g: &Graph) -> bool {
    find_nontrivial_module(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen};

    #[test]
    fn components_of_disjoint_union() {
        let g = path(3).disjoint_union(&complete(2)).disjoint_union(&Graph::new(1));
        let cs = connected_components(&g);
        let sets: Vec<_> = cs.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(cs[0].graph, path(3));
        assert!(!is_connected(&g));
        assert!(is_connected(&petersen()));
    }

    #[test]
    fn twins_and_universal() {
        assert_eq!(find_twins(&cycle(4)), vec![(0, 2), (1, 3)]);
        assert_eq!(find_twins(&complete(3)), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(find_twins(&path(4)).is_empty());
        assert_eq!(find_universal(&complete(4)), vec![0, 1, 2, 3]);
        assert_eq!(find_universal(&crate::graph::complete_bipartite(1, 3)), vec![0]);
        assert!(find_universal(&path(4)).is_empty());
        assert!(find_universal(&Graph::new(1)).is_empty());
    }

    #[test]
    fn modules() {
        assert!(is_prime(&path(4)));
        assert!(is_prime(&petersen()));
        assert!(is_prime(&cycle(5)));
        assert!(!is_prime(&cycle(4)));
        let m = find_nontrivial_module(&path(3)).unwrap();
        assert!(is_module(&path(3), &m));
        assert!(is_module(&cycle(4), &[0, 2]));
        assert_eq!(find_nontrivial_module(&cycle(4)), Some(vec![0, 2]));
        assert_eq!(find_nontrivial_module(&complete(3)), Some(vec![0, 1]));
        assert!(!is_module(&path(4), &[0, 1]));
    }

    #[test]
    fn twins_match_brute_force() {
        for seed in 0..40 {
            let g = crate::graph::random_gnp(7, 0.5, seed).unwrap();
            let twins = find_twins(&g);
            for u in 0..7 {
                for v in u + 1..7 {
                    let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| x != v).collect();
                    let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| x != u).collect();
                    assert_eq!(nu == nv, twins.contains(&(u, v)));
                }
            }
        }
    }

    #[test]
    fn p4_has_no_module_among_all_subsets() {
        let g = path(4);
        for mask in 0u32..16 {
            let set: Vec<usize> = (0..4).filter(|v| mask >> v & 1 == 1).collect();
            if set.len() >= 2 && set.len() < 4 {
                assert!(!is_module(&g, &set), "{set:?}");
            }
        }
    }

    #[test]
    fn closure_finds_modules_not_made_of_twins() {
        // P4 whose end vertex 0 is substituted by another P4 on {0, 4, 5, 6}.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (4, 1), (5, 1), (6, 1)]).unwrap();
        assert!(find_twins(&g).is_empty());
        let m = find_nontrivial_module(&g).unwrap();
        assert_eq!(m, vec![0, 4, 5, 6]);
    }
}
