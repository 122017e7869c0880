use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `0..n` into nonempty blocks.
///
/// Blocks are kept sorted internally and ordered by their smallest element,
/// so two equal partitions have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b.first().copied());
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} outside 0..{n}")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(Partition { blocks, block_of })
    }

    /// Builds the partition whose blocks are the classes of `key`.
    pub fn from_key<K: Ord + Copy>(key: &[K]) -> Self {
        let mut classes: std::collections::BTreeMap<K, Vec<usize>> = Default::default();
        for (v, &k) in key.iter().enumerate() {
            classes.entry(k).or_default().push(v);
        }
        Partition::new(key.len(), classes.into_values().collect()).expect("classes partition")
    }

    pub fn singletons(n: usize) -> Self {
        Partition { blocks: (0..n).map(|v| vec![v]).collect(), block_of: (0..n).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        if n == 0 {
            return Partition { blocks: vec![], block_of: vec![] };
        }
        Partition { blocks: vec![(0..n).collect()], block_of: vec![0; n] }
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn block_containing(&self, v: usize) -> &[usize] {
        &self.blocks[self.block_of[v]]
    }

    #[inline]
    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    /// Whether every block of `self` lies inside one block of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> Result<bool> {
        Ok(self.refinement_witness(coarse)?.is_none())
    }

    /// Two vertices sharing a block of `self` but split by `coarse`.
    pub fn refinement_witness(&self, coarse: &Partition) -> Result<Option<(usize, usize)>> {
        if self.universe() != coarse.universe() {
            return Err(Error::UniverseMismatch { left: self.universe(), right: coarse.universe() });
        }
        for b in &self.blocks {
            if let Some(&v) = b.iter().find(|&&v| !coarse.same_block(b[0], v)) {
                return Ok(Some((b[0], v)));
            }
        }
        Ok(None)
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks
    }
}

pub fn is_refinement(fine: &Partition, coarse: &Partition) -> Result<bool> {
    fine.refines(coarse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(blocks: &[&[usize]]) -> Partition {
        let n = blocks.iter().map(|b| b.len()).sum();
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn normalizes_block_order() {
        let a = p(&[&[3, 2], &[0], &[1]]);
        assert_eq!(a.blocks(), &[vec![0], vec![1], vec![2, 3]]);
        assert_eq!(a, p(&[&[1], &[2, 3], &[0]]));
        assert_eq!(a, Partition::from_key(&[5, 1, 0, 0]));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn refinement() {
        let single = Partition::singletons(4);
        let ab = p(&[&[0, 1], &[2], &[3]]);
        assert!(is_refinement(&single, &ab).unwrap());
        assert!(is_refinement(&ab, &ab).unwrap());
        assert!(!is_refinement(&p(&[&[0, 1]]), &p(&[&[0], &[1]])).unwrap());
        assert_eq!(ab.refinement_witness(&single).unwrap(), Some((0, 1)));
        assert!(matches!(is_refinement(&single, &Partition::singletons(3)), Err(Error::UniverseMismatch { .. })));
    }

    #[test]
    fn json_shape() {
        let a = p(&[&[0, 2], &[1]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[0,2],[1]]");
        assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Partition>("[[0,0]]").is_err());
    }
}
