use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{catalog_entry, Graph};
use crate::error::{Error, Result};

/// Identifier of the pseudo-random stream behind [`random_gnp`]; recorded in
/// experiment output so sweeps can be reproduced.
pub const RNG_ID: &str = "chacha8-seed_from_u64/u53-threshold/v1";

/// Erdős–Rényi G(n, p): every pair `u < v` (lexicographic order) is kept
/// with probability `p`, one 64-bit draw per pair.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (1u64 << 53) as f64;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let x = (rng.next_u64() >> 11) as f64 * scale;
            if x < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Graph {
    Graph::new(n)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid")
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0).expect("valid");
    }
    g
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid")
}

/// `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1).expect("valid");
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols).expect("valid");
            }
        }
    }
    g
}

/// Outer 5-cycle `0..5`, spokes `i-i+5`, inner pentagram `5+i-5+(i+2)%5`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).expect("valid");
        g.add_edge(i, i + 5).expect("valid");
        g.add_edge(5 + i, 5 + (i + 2) % 5).expect("valid");
    }
    g.with_name("petersen")
}

/// Paley graph on `Z_q`: `uv` is an edge iff `u - v` is a nonzero square mod `q`.
pub fn paley(q: usize) -> Result<Graph> {
    if q < 5 || q % 4 != 1 || !is_prime_number(q) {
        return Err(Error::InvalidArgument(format!("paley requires a prime q ≡ 1 (mod 4), got {q}")));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut g = Graph::new(q);
    for u in 0..q {
        for v in u + 1..q {
            if residue[(v - u) % q] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g.with_name(format!("paley-{q}")))
}

/// `C_n × K_2`: outer cycle `0..n`, inner cycle `n..2n`, spokes `i-n+i`.
pub fn prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("prism needs n >= 3, got {n}")));
    }
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
        g.add_edge(n + i, n + (i + 1) % n)?;
        g.add_edge(i, n + i)?;
    }
    Ok(g.with_name(format!("{n}-prism")))
}

fn is_prime_number(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Resolves a generator name with integer parameters, falling back to the
/// embedded catalog for parameterless names.
pub fn generate_named(name: &str, params: &[usize]) -> Result<Graph> {
    let lower = name.to_ascii_lowercase();
    let arity = |want: usize| -> Result<()> {
        if params.len() == want {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("`{lower}` takes {want} parameter(s), got {}", params.len())))
        }
    };
    let g = match lower.as_str() {
        "path" => {
            arity(1)?;
            path(params[0])
        }
        "cycle" => {
            arity(1)?;
            cycle(params[0])
        }
        "complete" => {
            arity(1)?;
            complete(params[0])
        }
        "edgeless" | "empty" => {
            arity(1)?;
            edgeless(params[0])
        }
        "complete-bipartite" => {
            arity(2)?;
            complete_bipartite(params[0], params[1])
        }
        "grid" => match params {
            [k] => grid(*k, *k),
            [r, c] => grid(*r, *c),
            _ => return Err(Error::InvalidArgument("grid takes 1 or 2 parameters".into())),
        },
        "petersen" => {
            arity(0)?;
            return Ok(petersen());
        }
        "paley" => {
            arity(1)?;
            return paley(params[0]);
        }
        "prism" => {
            let n = match params {
                [] => 3,
                [n] => *n,
                _ => return Err(Error::InvalidArgument("prism takes 0 or 1 parameters".into())),
            };
            return prism(n);
        }
        _ => {
            if let Some(rest) = lower.strip_prefix("paley-") {
                if let Ok(q) = rest.parse() {
                    arity(0)?;
                    return paley(q);
                }
            }
            let entry = catalog_entry(&lower).ok_or_else(|| Error::UnknownGraph(name.into()))?;
            arity(0)?;
            return entry.graph();
        }
    };
    let label = params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("x");
    Ok(g.with_name(format!("{lower}-{label}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_endpoints() {
        assert!(random_gnp(10, 0.0, 7).unwrap().is_edgeless());
        assert_eq!(random_gnp(10, 1.0, 7).unwrap(), complete(10));
        assert!(random_gnp(10, 1.5, 7).is_err());
        assert!(random_gnp(10, -0.1, 7).is_err());
        assert!(random_gnp(10, f64::NAN, 7).is_err());
    }

    #[test]
    fn gnp_is_deterministic() {
        assert_eq!(random_gnp(15, 0.3, 99).unwrap(), random_gnp(15, 0.3, 99).unwrap());
        assert_ne!(random_gnp(15, 0.5, 1).unwrap(), random_gnp(15, 0.5, 2).unwrap());
    }

    #[test]
    fn gnp_mean_edge_count() {
        // Binomial mean: C(20, 2) * 0.5 = 95.
        let total: usize = (0..1000).map(|s| random_gnp(20, 0.5, s).unwrap().edge_count()).sum();
        let mean = total as f64 / 1000.0;
        assert!((mean - 95.0).abs() <= 5.0, "mean {mean}");
    }

    #[test]
    fn named_sizes() {
        let p = generate_named("petersen", &[]).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        let q = generate_named("paley", &[13]).unwrap();
        assert_eq!((q.n(), q.edge_count()), (13, 39));
        let g = generate_named("grid", &[3, 3]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 12));
        let pr = generate_named("prism", &[]).unwrap();
        assert_eq!((pr.n(), pr.edge_count()), (6, 9));
        assert_eq!(generate_named("paley-17", &[]).unwrap().edge_count(), 68);
        assert_eq!(generate_named("complete-bipartite", &[1, 3]).unwrap().edge_count(), 3);
    }

    #[test]
    fn named_errors() {
        assert!(matches!(generate_named("nope", &[]), Err(Error::UnknownGraph(_))));
        assert!(paley(7).is_err());
        assert!(paley(9).is_err());
        assert!(generate_named("path", &[]).is_err());
    }

    #[test]
    fn paley_is_self_complementary_in_size() {
        let g = paley(13).unwrap();
        assert!((0..13).all(|v| g.degree(v) == 6));
    }
}
