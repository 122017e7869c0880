//! Brute-force clique-width for tiny graphs by depth-first search over
//! template states.
//!
//! Nothing here reuses the property checker or the SAT pipeline: vertex sets
//! are bitmasks and the modeling conditions are re-implemented from their
//! definitions, so the two computations can be compared.
//!
//! The search only visits strict derivations of length at most `n - k + 1`.
//! Both restrictions are sound: removing a repeated template keeps a
//! derivation valid, and a graph of clique-width `k` has a `k`-derivation of
//! that length.

use std::collections::HashMap;

use crate::derivation::{Derivation, Partition, Template};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the oracle accepts. Seven vertices are best-effort.
pub const ORACLE_MAX_N: usize = 7;

type Mask = u16;

/// A template as sorted block masks: components and groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemplateState {
    cmp: Vec<Mask>,
    grp: Vec<Mask>,
}

impl TemplateState {
    fn new(mut cmp: Vec<Mask>, mut grp: Vec<Mask>) -> Self {
        cmp.sort_unstable();
        grp.sort_unstable();
        TemplateState { cmp, grp }
    }

    fn singletons(n: usize) -> Self {
        let all: Vec<Mask> = (0..n).map(|v| 1 << v).collect();
        TemplateState::new(all.clone(), all)
    }

    /// Maximum number of groups inside one component.
    pub fn width(&self) -> usize {
        self.cmp.iter().map(|&c| self.grp.iter().filter(|&&g| g & c != 0).count()).max().unwrap_or(0)
    }

    fn to_template(&self, n: usize) -> Template {
        let blocks = |masks: &[Mask]| -> Vec<Vec<usize>> {
            masks.iter().map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
        };
        let cmp = Partition::new(n, blocks(&self.cmp)).expect("oracle components partition the universe");
        let grp = Partition::new(n, blocks(&self.grp)).expect("oracle groups partition the universe");
        Template::new(cmp, grp).expect("same universe")
    }
}

/// Smallest `k` such that `g` has a `k`-derivation.
pub fn oracle_cwd(g: &Graph) -> Result<usize> {
    check_size(g)?;
    for k in 1..=g.n().max(1) {
        if oracle_min_derivation(g, k)?.is_some() {
            return Ok(k);
        }
    }
    Err(Error::internal("no derivation of width n found"))
}

/// A `k`-derivation of `g`, if one exists.
pub fn oracle_min_derivation(g: &Graph, k: usize) -> Result<Option<Derivation>> {
    check_size(g)?;
    let n = g.n();
    if k == 0 {
        return Ok(None);
    }
    if n <= 1 {
        return Ok(Some(Derivation::trivial(n)));
    }
    let max_len = n.saturating_sub(k) + 1;
    let mut search = Search { ctx: Context::new(g), k, failed: HashMap::new() };
    let start = TemplateState::singletons(n);
    let mut path = vec![start.clone()];
    if search.dfs(&start, max_len, &mut path) {
        let templates = path.iter().map(|s| s.to_template(n)).collect();
        Ok(Some(Derivation::new(templates)?))
    } else {
        Ok(None)
    }
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > ORACLE_MAX_N {
        return Err(Error::Unsupported(format!("the oracle handles at most {ORACLE_MAX_N} vertices, got {}", g.n())));
    }
    Ok(())
}

struct Context {
    n: usize,
    adj: Vec<Mask>,
}

impl Context {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
        Context { n: g.n(), adj }
    }

    fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edge and neighborhood conditions for `v, w` placed in one new group,
    /// given the previous components.
    fn pair_ok(&self, prev_comp: &[usize], v: usize, w: usize) -> bool {
        if self.edge(v, w) && prev_comp[v] != prev_comp[w] {
            return false;
        }
        for u in 0..self.n {
            if u == v || u == w {
                continue;
            }
            // u sees exactly one of v, w: it must share a component with that one.
            let (sv, sw) = (self.edge(u, v), self.edge(u, w));
            if sv && !sw && prev_comp[u] != prev_comp[v] {
                return false;
            }
            if sw && !sv && prev_comp[u] != prev_comp[w] {
                return false;
            }
        }
        true
    }

    fn group_ok(&self, prev_comp: &[usize], group: Mask) -> bool {
        let members: Vec<usize> = (0..self.n).filter(|&v| group >> v & 1 == 1).collect();
        members.iter().enumerate().all(|(i, &v)| members[i + 1..].iter().all(|&w| self.pair_ok(prev_comp, v, w)))
    }

    /// Path condition over all four-vertex configurations.
    fn path_ok(&self, prev_comp: &[usize], next_grp: &[usize]) -> bool {
        for u in 0..self.n {
            for v in 0..self.n {
                if !self.edge(u, v) || prev_comp[u] == prev_comp[v] {
                    continue;
                }
                for w in 0..self.n {
                    if !self.edge(u, w) || next_grp[v] != next_grp[w] {
                        continue;
                    }
                    for x in 0..self.n {
                        if self.edge(v, x) && !self.edge(w, x) && w != x && next_grp[u] == next_grp[x] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

struct Search {
    ctx: Context,
    k: usize,
    /// States known to have no completion within the recorded number of steps.
    failed: HashMap<TemplateState, usize>,
}

impl Search {
    fn dfs(&mut self, state: &TemplateState, budget: usize, path: &mut Vec<TemplateState>) -> bool {
        if state.cmp.len() == 1 {
            return true;
        }
        if budget == 0 || self.failed.get(state).is_some_and(|&b| b >= budget) {
            return false;
        }
        for next in successors(&self.ctx, state, self.k) {
            path.push(next.clone());
            if self.dfs(&next, budget - 1, path) {
                return true;
            }
            path.pop();
        }
        self.failed.insert(state.clone(), budget);
        false
    }
}

fn index_of(n: usize, blocks: &[Mask]) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, &b) in blocks.iter().enumerate() {
        for (v, slot) in idx.iter_mut().enumerate() {
            if b >> v & 1 == 1 {
                *slot = i;
            }
        }
    }
    idx
}

/// Every template strictly coarser in components, coarser in groups, of
/// width at most `k`, that satisfies the modeling conditions after `state`.
fn successors(ctx: &Context, state: &TemplateState, k: usize) -> Vec<TemplateState> {
    let n = ctx.n;
    let prev_comp = index_of(n, &state.cmp);
    let mut out = Vec::new();
    for merged in set_partitions(&state.cmp) {
        if merged.len() == state.cmp.len() {
            continue;
        }
        // Admissible group partitions per new component.
        let mut options: Vec<Vec<Vec<Mask>>> = Vec::with_capacity(merged.len());
        for comp_blocks in &merged {
            let comp: Mask = comp_blocks.iter().fold(0, |a, &b| a | b);
            let groups: Vec<Mask> = state.grp.iter().copied().filter(|&g| g & comp != 0).collect();
            let choices: Vec<Vec<Mask>> = set_partitions(&groups)
                .into_iter()
                .filter(|p| p.len() <= k)
                .map(|p| p.iter().map(|blocks| blocks.iter().fold(0, |a, &b| a | b)).collect::<Vec<Mask>>())
                .filter(|gs| gs.iter().all(|&g| ctx.group_ok(&prev_comp, g)))
                .collect();
            if choices.is_empty() {
                break;
            }
            options.push(choices);
        }
        if options.len() < merged.len() {
            continue;
        }
        let cmp: Vec<Mask> = merged.iter().map(|bs| bs.iter().fold(0, |a, &b| a | b)).collect();
        let mut pick = vec![0usize; options.len()];
        loop {
            let grp: Vec<Mask> = pick.iter().zip(&options).flat_map(|(&i, o)| o[i].iter().copied()).collect();
            if ctx.path_ok(&prev_comp, &index_of(n, &grp)) {
                out.push(TemplateState::new(cmp.clone(), grp));
            }
            // Odometer over the per-component choices.
            let mut pos = 0;
            while pos < pick.len() {
                pick[pos] += 1;
                if pick[pos] < options[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
    }
    out
}

/// All set partitions of `items`, each as a list of blocks.
fn set_partitions<T: Copy>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<T>> = Vec::new();
    fn rec<T: Copy>(items: &[T], blocks: &mut Vec<Vec<T>>, out: &mut Vec<Vec<Vec<T>>>) {
        let Some((&first, rest)) = items.split_first() else {
            out.push(blocks.clone());
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].push(first);
            rec(rest, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![first]);
        rec(rest, blocks, out);
        blocks.pop();
    }
    rec(items, &mut blocks, &mut out);
    out
}
