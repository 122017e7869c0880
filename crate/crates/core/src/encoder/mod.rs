//! CNF encoding of "G has a derivation of length t and width at most k".
//!
//! Variables `c_{u,v,i}` and `g_{u,v,i}` (for `u < v`) state that `u` and `v`
//! share a component or a group in template `i`. The width bound is added
//! either with explicit group numbers per vertex (direct encoding) or with
//! group representatives and a sequential counter over them
//! (representative encoding).

mod build;
mod decode;
mod dimacs;

pub use build::{add_direct, add_representative, build_base, encode};
pub use decode::decode_model;
pub use dimacs::{emit_dimacs, parse_dimacs};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Direct,
    #[serde(rename = "rep")]
    Representative,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::Direct => "direct",
            Encoding::Representative => "rep",
        })
    }
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Encoding::Direct),
            "rep" | "representative" => Ok(Encoding::Representative),
            other => Err(Error::InvalidArgument(format!("unknown encoding `{other}`"))),
        }
    }
}

/// Deterministic variable numbering (1-based, DIMACS style).
///
/// Pairs `u < v` are indexed row by row; per layer `i` the blocks are laid
/// out as all `c`, then all `g`, then the width variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub encoding: Encoding,
}

impl VarMap {
    pub fn new(n: usize, k: usize, t: usize, encoding: Encoding) -> Self {
        VarMap { n, k, t, encoding }
    }

    /// Number of pairs `u < v`.
    pub fn pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    #[inline]
    pub fn pair(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < v && v < self.n);
        u * self.n - u * (u + 1) / 2 + (v - u - 1)
    }

    #[inline]
    pub fn c(&self, u: usize, v: usize, i: usize) -> u32 {
        let (u, v) = (u.min(v), u.max(v));
        (1 + i * self.pairs() + self.pair(u, v)) as u32
    }

    #[inline]
    pub fn g(&self, u: usize, v: usize, i: usize) -> u32 {
        let (u, v) = (u.min(v), u.max(v));
        (1 + (self.t + 1) * self.pairs() + i * self.pairs() + self.pair(u, v)) as u32
    }

    fn width_base(&self) -> usize {
        1 + 2 * (self.t + 1) * self.pairs()
    }

    /// Representative flag for `v` in layer `i`.
    #[inline]
    pub fn r(&self, v: usize, i: usize) -> u32 {
        debug_assert_eq!(self.encoding, Encoding::Representative);
        (self.width_base() + i * self.n + v) as u32
    }

    /// Order variable: the group number of representative `v` exceeds `a`,
    /// for `1 <= a <= k - 1`.
    #[inline]
    pub fn o(&self, v: usize, a: usize, i: usize) -> u32 {
        debug_assert_eq!(self.encoding, Encoding::Representative);
        debug_assert!(a >= 1 && a < self.k);
        let k1 = self.k - 1;
        (self.width_base() + (self.t + 1) * self.n + i * self.n * k1 + v * k1 + (a - 1)) as u32
    }

    /// Direct encoding: vertex `v` has group number `a` in layer `i`, `1 <= a <= k`.
    #[inline]
    pub fn l(&self, v: usize, a: usize, i: usize) -> u32 {
        debug_assert_eq!(self.encoding, Encoding::Direct);
        debug_assert!(a >= 1 && a <= self.k);
        (self.width_base() + i * self.n * self.k + v * self.k + (a - 1)) as u32
    }

    /// `n (n + k - 1) (t + 1)` for either encoding.
    pub fn total(&self) -> usize {
        self.n * (self.n + self.k - 1) * (self.t + 1)
    }
}

/// Clause groups, in emission order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Structure,
    Transitivity,
    Edge,
    Neighborhood,
    Path,
    AtLeastOne,
    AtMostOne,
    Linking,
    Representative,
    Width,
}

/// A CNF formula stored as one flat literal array.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    lits: Vec<i32>,
    starts: Vec<usize>,
    families: Vec<(Family, Range<usize>)>,
}

impl CnfInstance {
    pub fn new(num_vars: usize) -> Self {
        CnfInstance { num_vars, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub(crate) fn grow_vars(&mut self, num_vars: usize) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn num_clauses(&self) -> usize {
        self.starts.len()
    }

    pub fn clause(&self, idx: usize) -> &[i32] {
        let end = self.starts.get(idx + 1).copied().unwrap_or(self.lits.len());
        &self.lits[self.starts[idx]..end]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> + '_ {
        (0..self.num_clauses()).map(move |i| self.clause(i))
    }

    /// Appends a clause. Panics on an empty clause, an unmapped variable, or a
    /// repeated or complementary literal: any of these is an encoder bug.
    pub fn push(&mut self, clause: &[i32]) {
        assert!(!clause.is_empty(), "empty clause");
        for (i, &lit) in clause.iter().enumerate() {
            assert!(lit != 0 && lit.unsigned_abs() as usize <= self.num_vars, "literal {lit} out of range");
            assert!(
                clause[..i].iter().all(|&x| x.unsigned_abs() != lit.unsigned_abs()),
                "repeated variable in clause {clause:?}"
            );
        }
        self.starts.push(self.lits.len());
        self.lits.extend_from_slice(clause);
    }

    /// Appends a clause parsed from external input, reporting problems
    /// instead of panicking.
    pub fn try_push(&mut self, clause: &[i32]) -> Result<()> {
        if let Some(&lit) = clause.iter().find(|l| l.unsigned_abs() as usize > self.num_vars || **l == 0) {
            return Err(Error::InvalidArgument(format!("literal {lit} out of range")));
        }
        self.starts.push(self.lits.len());
        self.lits.extend_from_slice(clause);
        Ok(())
    }

    /// Runs `emit` and tags every clause it adds with `family`.
    pub(crate) fn family(&mut self, family: Family, emit: impl FnOnce(&mut Self)) {
        let start = self.num_clauses();
        emit(self);
        let end = self.num_clauses();
        if end > start {
            self.families.push((family, start..end));
        }
    }

    pub fn family_counts(&self) -> BTreeMap<Family, usize> {
        let mut out = BTreeMap::new();
        for (f, r) in &self.families {
            *out.entry(*f).or_insert(0) += r.len();
        }
        out
    }

    /// Family of clause `idx`, if tagged.
    pub fn family_of(&self, idx: usize) -> Option<Family> {
        self.families.iter().find(|(_, r)| r.contains(&idx)).map(|(f, _)| *f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering_is_a_bijection() {
        for enc in [Encoding::Direct, Encoding::Representative] {
            let m = VarMap::new(5, 3, 2, enc);
            let mut seen = vec![false; m.total() + 1];
            let mut mark = |x: u32| {
                assert!(!seen[x as usize], "{x} twice");
                seen[x as usize] = true;
            };
            for i in 0..=m.t {
                for u in 0..m.n {
                    for v in u + 1..m.n {
                        mark(m.c(u, v, i));
                        mark(m.g(u, v, i));
                    }
                    match enc {
                        Encoding::Direct => (1..=m.k).for_each(|a| mark(m.l(u, a, i))),
                        Encoding::Representative => {
                            mark(m.r(u, i));
                            (1..m.k).for_each(|a| mark(m.o(u, a, i)));
                        }
                    }
                }
            }
            assert!(seen[1..].iter().all(|&s| s), "{enc}");
        }
    }

    #[test]
    fn published_variable_totals() {
        // n (n + k - 1) (n - k + 2) with k one below the clique-width.
        assert_eq!(VarMap::new(12, 4, 9, Encoding::Direct).total(), 1800);
        assert_eq!(VarMap::new(10, 4, 7, Encoding::Representative).total(), 1040);
        assert_eq!(VarMap::new(13, 8, 6, Encoding::Representative).total(), 1820);
    }

    #[test]
    fn pair_index_matches_row_order() {
        let m = VarMap::new(4, 2, 1, Encoding::Direct);
        let order: Vec<usize> =
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().map(|&(u, v)| m.pair(u, v)).collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    #[should_panic(expected = "repeated variable")]
    fn complementary_literals_rejected() {
        let mut inst = CnfInstance::new(2);
        inst.push(&[1, -1]);
    }

    #[test]
    fn encoding_names() {
        assert_eq!("rep".parse::<Encoding>().unwrap(), Encoding::Representative);
        assert_eq!(Encoding::Direct.to_string(), "direct");
        assert!("order".parse::<Encoding>().is_err());
    }
}
