use cwd_core::encoder::{decode_model, encode, Encoding, VarMap};
use cwd_core::graph::{edgeless, enumerate_connected, path};
use cwd_core::solver::{solve_cadical, solve_embedded, unit_propagate, Backend, Limits, Verdict};

#[test]
fn p4_verdicts() {
    let p4 = path(4);
    for enc in [Encoding::Direct, Encoding::Representative] {
        let sat = Backend::Cadical.solve(&encode(&p4, 3, 2, enc).unwrap(), &Limits::default());
        assert_eq!(sat.verdict, Verdict::Sat);
        let d = decode_model(sat.model.as_deref().unwrap(), &p4, 3, 2).unwrap();
        assert!(d.width() <= 3);
        let unsat = Backend::Cadical.solve(&encode(&p4, 2, 3, enc).unwrap(), &Limits::default());
        assert_eq!(unsat.verdict, Verdict::Unsat);
    }
}

#[test]
fn embedded_agrees_with_cadical_up_to_four_vertices() {
    for n in 2..=4 {
        for g in enumerate_connected(n).unwrap() {
            for k in 2..=n.min(4) {
                for enc in [Encoding::Direct, Encoding::Representative] {
                    let inst = encode(&g, k, n - k + 1, enc).unwrap();
                    let a = solve_embedded(&inst);
                    let b = solve_cadical(&inst, &Limits::default());
                    assert!(matches!(a.verdict, Verdict::Sat | Verdict::Unsat));
                    assert_eq!(a.verdict, b.verdict, "n={n} k={k} {enc} edges={:?}", g.edges().collect::<Vec<_>>());
                    if let Some(m) = &a.model {
                        decode_model(m, &g, k, n - k + 1).unwrap();
                    }
                }
            }
        }
    }
}

/// Three vertices forced into one component with pairwise distinct groups,
/// two labels available.
#[test]
fn direct_encoding_misses_the_pigeonhole_conflict() {
    let g = edgeless(3);
    let (k, t, i) = (2, 2, 1);
    let inst = encode(&g, k, t, Encoding::Direct).unwrap();
    let m = VarMap::new(3, k, t, Encoding::Direct);
    let mut assume = Vec::new();
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        assume.push(m.c(u, v, i) as i32);
        assume.push(-(m.g(u, v, i) as i32));
    }
    assert_eq!(unit_propagate(&inst, &assume).conflict, None);

    let mut forced = inst.clone();
    for &lit in &assume {
        forced.push(&[lit]);
    }
    assert_eq!(solve_embedded(&forced).verdict, Verdict::Unsat);
}

#[test]
fn representative_encoding_propagates_to_conflict() {
    let g = edgeless(4);
    let (k, t, i) = (3, 2, 1);
    let inst = encode(&g, k, t, Encoding::Representative).unwrap();
    let m = VarMap::new(4, k, t, Encoding::Representative);
    let mut assume = Vec::new();
    for u in 0..4 {
        assume.push(m.r(u, i) as i32);
        for v in u + 1..4 {
            assume.push(m.c(u, v, i) as i32);
        }
    }
    assert!(unit_propagate(&inst, &assume).conflict.is_some());

    // Three representatives fit into three group numbers.
    assume.retain(|&lit| lit != m.r(3, i) as i32);
    assert_eq!(unit_propagate(&inst, &assume).conflict, None);
}
