use super::{CnfInstance, Encoding, Family, VarMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn lit(var: u32) -> i32 {
    var as i32
}

fn neg(var: u32) -> i32 {
    -(var as i32)
}

/// Clauses stating that the `c`/`g` variables describe a derivation of
/// length `t` that models `g`. Width is unconstrained.
pub fn build_base(g: &Graph, t: usize) -> Result<CnfInstance> {
    let n = g.n();
    if t < 1 {
        return Err(Error::InvalidArgument("derivation length t must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("encoding needs at least two vertices".into()));
    }
    // c and g numbering does not depend on k or the width encoding.
    let m = VarMap::new(n, 1, t, Encoding::Direct);
    let mut inst = CnfInstance::new(2 * (t + 1) * m.pairs());

    inst.family(Family::Structure, |inst| {
        for u in 0..n {
            for v in u + 1..n {
                inst.push(&[neg(m.c(u, v, 0))]);
                inst.push(&[lit(m.c(u, v, t))]);
                for i in 0..=t {
                    inst.push(&[lit(m.c(u, v, i)), neg(m.g(u, v, i))]);
                }
                for i in 1..=t {
                    inst.push(&[neg(m.c(u, v, i - 1)), lit(m.c(u, v, i))]);
                    inst.push(&[neg(m.g(u, v, i - 1)), lit(m.g(u, v, i))]);
                }
            }
        }
    });

    inst.family(Family::Transitivity, |inst| {
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    for i in 0..=t {
                        for x in [VarMap::c as fn(&VarMap, usize, usize, usize) -> u32, VarMap::g] {
                            let (uv, vw, uw) = (x(&m, u, v, i), x(&m, v, w, i), x(&m, u, w, i));
                            inst.push(&[neg(uv), neg(vw), lit(uw)]);
                            inst.push(&[neg(uv), neg(uw), lit(vw)]);
                            inst.push(&[neg(uw), neg(vw), lit(uv)]);
                        }
                    }
                }
            }
        }
    });

    inst.family(Family::Edge, |inst| {
        for (u, v) in g.edges() {
            for i in 1..=t {
                inst.push(&[lit(m.c(u, v, i - 1)), neg(m.g(u, v, i))]);
            }
        }
    });

    // Ordered triples: the clause determines (u, v, w) uniquely because v is
    // the vertex shared by its two pairs, so no literal set repeats.
    inst.family(Family::Neighborhood, |inst| {
        for u in 0..n {
            for &v in g.neighbors(u) {
                for w in (0..n).filter(|&w| w != u && w != v && !g.has_edge(u, w)) {
                    for i in 1..=t {
                        inst.push(&[lit(m.c(u, v, i - 1)), neg(m.g(v, w, i))]);
                    }
                }
            }
        }
    });

    // u < v suffices: swapping (u, w) with (v, x) yields the same clause.
    inst.family(Family::Path, |inst| {
        for (u, v) in g.edges() {
            for &w in g.neighbors(u) {
                if w == v {
                    continue;
                }
                for &x in g.neighbors(v) {
                    if x == u || x == w || g.has_edge(w, x) {
                        continue;
                    }
                    for i in 1..=t {
                        inst.push(&[lit(m.c(u, v, i - 1)), neg(m.g(u, x, i)), neg(m.g(v, w, i))]);
                    }
                }
            }
        }
    });
    Ok(inst)
}

/// Width bound through group numbers `l_{v,a,i}`: every vertex has exactly
/// one number, vertices of one group share it, and two vertices of one
/// component with the same number are in one group.
pub fn add_direct(inst: &mut CnfInstance, g: &Graph, k: usize, t: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = g.n();
    let m = VarMap::new(n, k, t, Encoding::Direct);
    inst.grow_vars(m.total());
    inst.family(Family::AtLeastOne, |inst| {
        for i in 0..=t {
            for v in 0..n {
                let clause: Vec<i32> = (1..=k).map(|a| lit(m.l(v, a, i))).collect();
                inst.push(&clause);
            }
        }
    });
    inst.family(Family::AtMostOne, |inst| {
        for i in 0..=t {
            for v in 0..n {
                for a in 1..=k {
                    for b in a + 1..=k {
                        inst.push(&[neg(m.l(v, a, i)), neg(m.l(v, b, i))]);
                    }
                }
            }
        }
    });
    inst.family(Family::Linking, |inst| {
        for i in 0..=t {
            for u in 0..n {
                for v in u + 1..n {
                    let (c, gv) = (m.c(u, v, i), m.g(u, v, i));
                    for a in 1..=k {
                        let (lu, lv) = (m.l(u, a, i), m.l(v, a, i));
                        inst.push(&[neg(lu), lit(lv), neg(gv)]);
                        inst.push(&[neg(lv), lit(lu), neg(gv)]);
                        inst.push(&[neg(lu), neg(lv), neg(c), lit(gv)]);
                    }
                }
            }
        }
    });
    Ok(())
}

/// Width bound through group representatives: `r_{v,i}` holds iff `v` is the
/// smallest vertex of its group, and the representatives of one component
/// receive strictly increasing numbers in `1..=k` via the order variables
/// `o_{v,a,i}` ("the number of `v` exceeds `a`").
pub fn add_representative(inst: &mut CnfInstance, g: &Graph, k: usize, t: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument("the representative encoding needs k >= 2".into()));
    }
    let n = g.n();
    let m = VarMap::new(n, k, t, Encoding::Representative);
    inst.grow_vars(m.total());
    inst.family(Family::Representative, |inst| {
        for i in 0..=t {
            for v in 0..n {
                let mut clause = vec![lit(m.r(v, i))];
                clause.extend((0..v).map(|u| lit(m.g(u, v, i))));
                inst.push(&clause);
                for u in 0..v {
                    inst.push(&[neg(m.r(v, i)), neg(m.g(u, v, i))]);
                }
            }
        }
    });
    inst.family(Family::Width, |inst| {
        for i in 0..=t {
            for u in 0..n {
                for v in u + 1..n {
                    let head = [neg(m.c(u, v, i)), neg(m.r(u, i)), neg(m.r(v, i))];
                    let with = |tail: &[i32]| [&head[..], tail].concat();
                    inst.push(&with(&[neg(m.o(u, k - 1, i))]));
                    inst.push(&with(&[lit(m.o(v, 1, i))]));
                    for a in 1..k - 1 {
                        inst.push(&with(&[neg(m.o(u, a, i)), lit(m.o(v, a + 1, i))]));
                    }
                }
            }
        }
    });
    Ok(())
}

/// Full instance: satisfiable iff `g` has a derivation of length `t` and
/// width at most `k`.
pub fn encode(g: &Graph, k: usize, t: usize, encoding: Encoding) -> Result<CnfInstance> {
    let mut inst = build_base(g, t)?;
    match encoding {
        Encoding::Direct => add_direct(&mut inst, g, k, t)?,
        Encoding::Representative => add_representative(&mut inst, g, k, t)?,
    }
    debug_assert_eq!(inst.num_vars(), VarMap::new(g.n(), k, t, encoding).total());
    Ok(inst)
}
