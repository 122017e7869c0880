use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Derivation, Template};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    D1,
    D2,
    D3,
    D4,
    Edge,
    Neighborhood,
    Path,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::D1 => "D1",
            Property::D2 => "D2",
            Property::D3 => "D3",
            Property::D4 => "D4",
            Property::Edge => "edge",
            Property::Neighborhood => "neighborhood",
            Property::Path => "path",
        };
        f.write_str(s)
    }
}

/// One failed condition: which property, at which template index, and the
/// vertices that witness it.
///
/// Witness order follows the property statement: `(u, v)` for the edge
/// property, `(u, v, w)` for the neighborhood property and `(u, v, w, x)`
/// for the path property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub property: Property,
    pub index: usize,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at template {} by {:?}", self.property, self.index, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        PropertyReport { ok: violations.is_empty(), violations }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::Verification(v.to_string())),
        }
    }
}

/// Checks the four structural conditions, reporting the first witness per
/// condition and template.
pub fn validate_derivation(d: &Derivation) -> PropertyReport {
    let ts = d.templates();
    let t = ts.len() - 1;
    let mut out = Vec::new();

    if let Some(b) = ts[0].cmp.blocks().iter().find(|b| b.len() > 1) {
        out.push(Violation { property: Property::D1, index: 0, witness: b[..2].to_vec() });
    }
    if ts[t].cmp.len() > 1 {
        let blocks = ts[t].cmp.blocks();
        out.push(Violation { property: Property::D1, index: t, witness: vec![blocks[0][0], blocks[1][0]] });
    }
    for (i, tpl) in ts.iter().enumerate() {
        if let Some((u, v)) = tpl.grp.refinement_witness(&tpl.cmp).expect("same universe") {
            out.push(Violation { property: Property::D2, index: i, witness: vec![u, v] });
        }
    }
    for i in 1..=t {
        if let Some((u, v)) = ts[i - 1].cmp.refinement_witness(&ts[i].cmp).expect("same universe") {
            out.push(Violation { property: Property::D3, index: i, witness: vec![u, v] });
        }
        if let Some((u, v)) = ts[i - 1].grp.refinement_witness(&ts[i].grp).expect("same universe") {
            out.push(Violation { property: Property::D4, index: i, witness: vec![u, v] });
        }
    }
    PropertyReport::from_violations(out)
}

/// Checks the edge, neighborhood and path properties for every step
/// `1..=t`, over ordered tuples of distinct vertices. At most one witness
/// per property and step is reported.
pub fn check_models(d: &Derivation, g: &Graph) -> Result<PropertyReport> {
    if d.universe() != g.n() {
        return Err(Error::UniverseMismatch { left: d.universe(), right: g.n() });
    }
    let mut out = Vec::new();
    for (i, pair) in d.templates().windows(2).enumerate() {
        check_step(g, &pair[0], &pair[1], i + 1, &mut out);
    }
    Ok(PropertyReport::from_violations(out))
}

fn check_step(g: &Graph, prev: &Template, cur: &Template, i: usize, out: &mut Vec<Violation>) {
    let n = g.n();
    let grp = &cur.grp;
    let mut edge = None;
    let mut nbhd = None;
    let mut path = None;
    // All three properties conclude "u, v share a component of T_{i-1}", so
    // only edges uv split in the previous template can be witnesses.
    for u in 0..n {
        for &v in g.neighbors(u) {
            if prev.cmp.same_block(u, v) {
                continue;
            }
            if edge.is_none() && u < v && grp.same_block(u, v) {
                edge = Some(vec![u, v]);
            }
            if nbhd.is_none() {
                if let Some(&w) = grp.block_containing(v).iter().find(|&&w| w != u && w != v && !g.has_edge(u, w)) {
                    nbhd = Some(vec![u, v, w]);
                }
            }
            if path.is_none() {
                'search: for &w in grp.block_containing(v) {
                    if w == u || w == v || !g.has_edge(u, w) {
                        continue;
                    }
                    for &x in grp.block_containing(u) {
                        if x != u && x != v && x != w && g.has_edge(v, x) && !g.has_edge(w, x) {
                            path = Some(vec![u, v, w, x]);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    for (property, witness) in [(Property::Edge, edge), (Property::Neighborhood, nbhd), (Property::Path, path)] {
        if let Some(witness) = witness {
            out.push(Violation { property, index: i, witness });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::fixtures::*;
    use crate::derivation::Partition;
    use crate::graph::random_gnp;

    #[test]
    fn valid_example() {
        assert!(validate_derivation(&abcd_derivation()).ok);
        assert!(check_models(&abcd_derivation(), &abcd_graph()).unwrap().ok);
    }

    #[test]
    fn reversed_violates_d3() {
        let mut ts = abcd_derivation().into_templates();
        ts.reverse();
        let r = validate_derivation(&Derivation::new(ts).unwrap());
        assert!(!r.ok);
        assert!(r.violations.iter().any(|v| v.property == Property::D3));
    }

    #[test]
    fn truncated_violates_d1() {
        let mut ts = abcd_derivation().into_templates();
        ts.pop();
        let r = validate_derivation(&Derivation::new(ts).unwrap());
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].property, r.violations[0].index), (Property::D1, 2));
    }

    #[test]
    fn groups_outside_components_violate_d2() {
        let t = Template::new(Partition::singletons(2), Partition::single_block(2)).unwrap();
        let d = Derivation::new(vec![Template::singletons(2), t]).unwrap();
        let r = validate_derivation(&d);
        assert!(r.violations.iter().any(|v| v.property == Property::D2 && v.index == 1));
    }

    #[test]
    fn neighborhood_violation_witness() {
        // ab, ac, bd, cd: d sees b but not a, and {a, b} is a group in T_3.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let r = check_models(&abcd_derivation(), &g).unwrap();
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert_eq!((v.property, v.index), (Property::Neighborhood, 3));
        let mut w = v.witness.clone();
        w.sort_unstable();
        assert_eq!(w, vec![0, 1, 3]);
    }

    #[test]
    fn singleton_groups_model_edgeless() {
        let d = Derivation::trivial(6);
        assert!(check_models(&d, &Graph::new(6)).unwrap().ok);
        assert!(check_models(&d, &random_gnp(6, 0.5, 3).unwrap()).unwrap().ok);
    }

    #[test]
    fn universe_mismatch() {
        assert!(check_models(&abcd_derivation(), &Graph::new(5)).is_err());
    }

    /// Literal transcription of the three properties over all ordered tuples.
    fn brute_force_ok(d: &Derivation, g: &Graph) -> bool {
        let n = g.n();
        let e = |a: usize, b: usize| g.has_edge(a, b);
        for w in d.templates().windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            let sc = |a, b| prev.cmp.same_block(a, b);
            let sg = |a, b| cur.grp.same_block(a, b);
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    if e(u, v) && sg(u, v) && !sc(u, v) {
                        return false;
                    }
                    for w in 0..n {
                        if w == u || w == v {
                            continue;
                        }
                        if e(u, v) && !e(u, w) && sg(v, w) && !sc(u, v) {
                            return false;
                        }
                        for x in 0..n {
                            if x == u || x == v || x == w {
                                continue;
                            }
                            if e(u, v) && e(u, w) && e(v, x) && !e(w, x) && sg(u, x) && sg(v, w) && !sc(u, v) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn agrees_with_literal_definition() {
        let d = abcd_derivation();
        for seed in 0..64 {
            let g = random_gnp(4, 0.5, seed).unwrap();
            assert_eq!(check_models(&d, &g).unwrap().ok, brute_force_ok(&d, &g), "seed {seed}");
        }
        // Every graph on four labeled vertices against a wide derivation.
        let wide = Derivation::new(vec![
            Template::singletons(4),
            Template::new(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap(), Partition::singletons(4)).unwrap(),
            Template::new(Partition::single_block(4), Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap())
                .unwrap(),
        ])
        .unwrap();
        for mask in 0u32..64 {
            let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let g = Graph::from_edges(4, edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            assert_eq!(check_models(&wide, &g).unwrap().ok, brute_force_ok(&wide, &g), "mask {mask}");
        }
    }
}
