//! Canonical labeling for small graphs and isomorphism-class enumeration.
//!
//! The canonical form is the relabeling whose graph6 adjacency bits are
//! lexicographically smallest. It is built one position at a time: a
//! partial order survives only if its newest column is minimal among all
//! extensions, so ties are the only source of branching.

use std::collections::BTreeMap;

use super::{structure::is_connected, to_graph6, Graph};
use crate::error::{Error, Result};

pub const MAX_CANONICAL_N: usize = 8;

/// Largest order accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_N: usize = 7;

/// graph6 text of the canonical relabeling; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<String> {
    Ok(to_graph6(&canonical_graph(g)?))
}

/// The canonical relabeling itself.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::Unsupported(format!("canonical form is limited to {MAX_CANONICAL_N} vertices, got {n}")));
    }
    let mut partials: Vec<Vec<usize>> = vec![Vec::new()];
    for pos in 0..n {
        let mut best: Option<u64> = None;
        let mut next = Vec::new();
        for order in &partials {
            for x in (0..n).filter(|x| !order.contains(x)) {
                let column = order.iter().fold(0u64, |acc, &u| (acc << 1) | g.has_edge(u, x) as u64);
                match best {
                    Some(b) if column > b => continue,
                    Some(b) if column < b => next.clear(),
                    _ => {}
                }
                best = Some(column);
                let mut extended = order.clone();
                extended.push(x);
                next.push(extended);
            }
        }
        debug_assert!(next.iter().all(|o| o.len() == pos + 1));
        partials = next;
    }
    let order = &partials[0];
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    let mut c = g.permuted(&perm)?;
    c.set_name(g.name().map(str::to_string));
    Ok(c)
}

/// One representative per isomorphism class on `n` vertices, in canonical
/// form, sorted by graph6 string.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_CANONICAL_N {
        return Err(Error::Unsupported(format!("enumeration beyond {MAX_CANONICAL_N} vertices")));
    }
    let mut classes = vec![Graph::new(0)];
    for size in 1..=n {
        let mut found: BTreeMap<String, Graph> = BTreeMap::new();
        for base in &classes {
            for mask in 0u32..(1 << (size - 1)) {
                let mut g = Graph::new(size);
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for u in (0..size - 1).filter(|u| mask & (1 << u) != 0) {
                    g.add_edge(u, size - 1)?;
                }
                let c = canonical_graph(&g)?;
                found.entry(to_graph6(&c)).or_insert(c);
            }
        }
        classes = found.into_values().collect();
    }
    Ok(classes)
}

pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Unsupported(format!("enumeration beyond {MAX_ENUMERATION_N} vertices")));
    }
    Ok(enumerate_all(n)?.into_iter().filter(is_connected).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, random_gnp};

    #[test]
    fn class_counts_match_known_sequence() {
        // Unlabeled graphs (OEIS A000088) and connected ones (A001349).
        let all = [1, 1, 2, 4, 11, 34, 156, 1044];
        let connected = [1, 1, 1, 2, 6, 21, 112, 853];
        for n in 0..=7 {
            assert_eq!(enumerate_all(n).unwrap().len(), all[n], "n={n}");
            assert_eq!(enumerate_connected(n).unwrap().len(), connected[n], "n={n}");
        }
    }

    #[test]
    fn prime_class_counts() {
        for (n, want) in [(4, 1), (5, 4), (6, 26), (7, 260)] {
            let primes = enumerate_connected(n).unwrap().iter().filter(|g| crate::graph::is_prime(g)).count();
            assert_eq!(primes, want, "n={n}");
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        for seed in 0..30 {
            let g = random_gnp(8, 0.4, seed).unwrap();
            let c = canonical_graph(&g).unwrap();
            let perm: Vec<usize> = (0..8).map(|v| (v * 3 + seed as usize) % 8).collect();
            let h = g.permuted(&perm).unwrap();
            assert_eq!(canonical_graph(&h).unwrap(), c);
            assert_eq!(canonical_form(&h).unwrap(), to_graph6(&c));
            assert_eq!(c.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let a = canonical_form(&path(5)).unwrap();
        let b = canonical_form(&cycle(5)).unwrap();
        assert_ne!(a, b);
        assert!(canonical_form(&Graph::new(9)).is_err());
        assert!(enumerate_connected(8).is_err());
        let p = path(4);
        let q = p.permuted(&[2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
    }
}
