//! Exhaustive ground-truth search.
//!
//! `Full` mode branches, at every step, over all maximal sets of vulnerable
//! vertices and memoizes on `(step, burned, protected)` bitmasks.
//!
//! `Restricted` mode only protects vertices adjacent to the fire. The state
//! at a step is then just the set of untouched subtrees hanging off the burning
//! region, so the memo is keyed on the multiset of their isomorphism classes
//! (weights included). Isomorphic siblings collapse, which keeps complete
//! trees and gadget copies tractable well past the full-mode size.

use std::collections::HashMap;

use super::{finish, Algorithm, SolveError, SolveResult};
use crate::instance::{Step, TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Full,
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub full_cap: usize,
    pub restricted_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            full_cap: 14,
            restricted_cap: 20,
        }
    }
}

impl OracleConfig {
    pub fn with_caps(full_cap: usize, restricted_cap: usize) -> Self {
        OracleConfig {
            full_cap,
            restricted_cap,
        }
    }
}

/// Bitmask search is limited to this many vertices.
const MASK_BITS: usize = 128;

pub fn solve_exact_oracle(
    inst: &TreeInstance,
    mode: OracleMode,
) -> Result<SolveResult, SolveError> {
    solve_exact_oracle_with(inst, mode, OracleConfig::default())
}

pub fn solve_exact_oracle_with(
    inst: &TreeInstance,
    mode: OracleMode,
    config: OracleConfig,
) -> Result<SolveResult, SolveError> {
    let n = inst.vertex_count();
    let cap = match mode {
        OracleMode::Full => config.full_cap,
        OracleMode::Restricted => config.restricted_cap,
    };
    if n > cap {
        return Err(SolveError::InstanceTooLarge { n, cap });
    }
    // Adjacent-to-fire protection is only without loss of generality when
    // every placement is allowed; otherwise fall back to the full search.
    if mode == OracleMode::Full || !inst.forbidden().is_empty() {
        if n > MASK_BITS {
            return Err(SolveError::InstanceTooLarge { n, cap: MASK_BITS });
        }
        let strategy = FullSearch::new(inst).run();
        return Ok(finish(inst, strategy, Algorithm::OracleFull));
    }
    let strategy = RestrictedSearch::new(inst).run();
    Ok(finish(inst, strategy, Algorithm::OracleRestricted))
}

type Mask = u128;

fn bit(v: Vertex) -> Mask {
    1u128 << v
}

fn members(mut m: Mask) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

struct FullSearch<'a> {
    inst: &'a TreeInstance,
    neighbors: Vec<Mask>,
    subtree: Vec<Mask>,
    level: Vec<Mask>,
    all: Mask,
    memo: HashMap<(Step, Mask, Mask), (u64, Mask)>,
}

impl<'a> FullSearch<'a> {
    fn new(inst: &'a TreeInstance) -> Self {
        let n = inst.vertex_count();
        let neighbors = (0..n)
            .map(|v| inst.neighbors(v).iter().fold(0, |m, &u| m | bit(u)))
            .collect();
        let mut subtree: Vec<Mask> = (0..n).map(bit).collect();
        for &v in inst.bfs_order().iter().rev() {
            if let Some(p) = inst.parent(v) {
                subtree[p] |= subtree[v];
            }
        }
        let mut level = vec![0; inst.height() + 1];
        for v in 0..n {
            level[inst.depth(v)] |= bit(v);
        }
        let all = if n == MASK_BITS {
            Mask::MAX
        } else {
            (1u128 << n) - 1
        };
        FullSearch {
            inst,
            neighbors,
            subtree,
            level,
            all,
            memo: HashMap::new(),
        }
    }

    fn covered(&self, protected: Mask) -> Mask {
        members(protected).fold(0, |m, v| m | self.subtree[v])
    }

    fn weight(&self, m: Mask) -> u64 {
        members(m).map(|v| self.inst.weight(v)).sum()
    }

    fn front(&self, t: Step, burned: Mask) -> Mask {
        burned & self.level.get(t - 1).copied().unwrap_or(0)
    }

    /// Minimum target weight that still burns from step `t` on.
    fn solve(&mut self, t: Step, burned: Mask, protected: Mask) -> u64 {
        if let Some(&(cost, _)) = self.memo.get(&(t, burned, protected)) {
            return cost;
        }
        let front = self.front(t, burned);
        let reach = members(front).fold(0, |m, v| m | self.neighbors[v]);
        let covered = self.covered(protected);
        let vulnerable = self.all & !burned & !covered;
        if reach & vulnerable == 0 {
            self.memo.insert((t, burned, protected), (0, 0));
            return 0;
        }
        let candidates: Vec<Vertex> = members(vulnerable)
            .filter(|&v| !self.inst.is_forbidden(v, t))
            .collect();
        let k = self.inst.budget_at(t).min(candidates.len());
        let mut best = (u64::MAX, 0);
        let mut pick = Vec::with_capacity(k);
        self.each_subset(&candidates, k, 0, &mut pick, &mut |this, chosen| {
            let p = protected | chosen;
            let newly = reach & this.all & !burned & !this.covered(p);
            let cost = this.weight(newly)
                + if newly == 0 {
                    0
                } else {
                    this.solve(t + 1, burned | newly, p)
                };
            if cost < best.0 {
                best = (cost, chosen);
            }
        });
        self.memo.insert((t, burned, protected), best);
        best.0
    }

    fn each_subset(
        &mut self,
        items: &[Vertex],
        k: usize,
        start: usize,
        pick: &mut Vec<Vertex>,
        f: &mut dyn FnMut(&mut Self, Mask),
    ) {
        if pick.len() == k {
            let m = pick.iter().fold(0, |m, &v| m | bit(v));
            f(self, m);
            return;
        }
        let need = k - pick.len();
        for i in start..=items.len() - need {
            pick.push(items[i]);
            self.each_subset(items, k, i + 1, pick, f);
            pick.pop();
        }
    }

    fn run(mut self) -> Strategy {
        let root = self.inst.root();
        self.solve(1, bit(root), 0);
        let mut moves = Vec::new();
        let (mut t, mut burned, mut protected) = (1, bit(root), 0);
        while let Some(&(_, chosen)) = self.memo.get(&(t, burned, protected)) {
            let front = self.front(t, burned);
            let reach = members(front).fold(0, |m, v| m | self.neighbors[v]);
            if reach & self.all & !burned & !self.covered(protected) == 0 {
                break;
            }
            moves.extend(members(chosen).map(|v| Move::new(v, t)));
            protected |= chosen;
            let newly = reach & self.all & !burned & !self.covered(protected);
            if newly == 0 {
                break;
            }
            burned |= newly;
            t += 1;
        }
        Strategy::new(moves).expect("search never protects a vertex twice")
    }
}

/// Clipped step and sorted frontier classes.
type StateKey = (usize, Vec<u32>);
/// Best value and how many frontier members of each class to protect.
type Choice = (u64, Vec<(u32, usize)>);

struct RestrictedSearch<'a> {
    inst: &'a TreeInstance,
    class: Vec<u32>,
    time_span: usize,
    memo: HashMap<StateKey, Choice>,
}

impl<'a> RestrictedSearch<'a> {
    fn new(inst: &'a TreeInstance) -> Self {
        let n = inst.vertex_count();
        let mut interner: HashMap<(u64, Vec<u32>), u32> = HashMap::new();
        let mut class = vec![0u32; n];
        for &v in inst.bfs_order().iter().rev() {
            let mut kids: Vec<u32> = inst.children(v).iter().map(|&c| class[c]).collect();
            kids.sort_unstable();
            let next = interner.len() as u32;
            class[v] = *interner.entry((inst.weight(v), kids)).or_insert(next);
        }
        RestrictedSearch {
            inst,
            class,
            time_span: inst.budgets().distinct_prefix(),
            memo: HashMap::new(),
        }
    }

    fn relevant_children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inst
            .children(v)
            .iter()
            .copied()
            .filter(|&c| self.inst.subtree_weight(c) > 0)
    }

    /// Frontier vertices grouped by class, each group sorted by id.
    fn grouped(&self, frontier: &[Vertex]) -> Vec<(u32, Vec<Vertex>)> {
        let mut sorted: Vec<Vertex> = frontier.to_vec();
        sorted.sort_unstable_by_key(|&v| (self.class[v], v));
        let mut groups: Vec<(u32, Vec<Vertex>)> = Vec::new();
        for v in sorted {
            match groups.last_mut() {
                Some((c, vs)) if *c == self.class[v] => vs.push(v),
                _ => groups.push((self.class[v], vec![v])),
            }
        }
        groups
    }

    fn key(&self, t: Step, groups: &[(u32, Vec<Vertex>)]) -> StateKey {
        let classes = groups
            .iter()
            .flat_map(|(c, vs)| std::iter::repeat_n(*c, vs.len()))
            .collect();
        (t.min(self.time_span), classes)
    }

    fn next_frontier(&self, groups: &[(u32, Vec<Vertex>)], take: &[usize]) -> Vec<Vertex> {
        groups
            .iter()
            .zip(take)
            .flat_map(|((_, vs), &x)| vs[x..].iter().copied())
            .flat_map(|v| self.relevant_children(v))
            .collect()
    }

    /// Maximum target weight saved inside the frontier subtrees.
    fn solve(&mut self, t: Step, frontier: &[Vertex]) -> u64 {
        if frontier.is_empty() {
            return 0;
        }
        let groups = self.grouped(frontier);
        let key = self.key(t, &groups);
        if let Some((value, _)) = self.memo.get(&key) {
            return *value;
        }
        let k = self.inst.budget_at(t).min(frontier.len());
        let mut take = vec![0usize; groups.len()];
        let mut best = (0u64, Vec::new());
        let mut first = true;
        self.each_split(&groups, k, 0, &mut take, t, &mut best, &mut first);
        self.memo.insert(key, best.clone());
        best.0
    }

    #[allow(clippy::too_many_arguments)]
    fn each_split(
        &mut self,
        groups: &[(u32, Vec<Vertex>)],
        left: usize,
        idx: usize,
        take: &mut Vec<usize>,
        t: Step,
        best: &mut Choice,
        first: &mut bool,
    ) {
        if idx == groups.len() {
            if left > 0 {
                return;
            }
            let protected: u64 = groups
                .iter()
                .zip(take.iter())
                .map(|((_, vs), &x)| x as u64 * self.inst.subtree_weight(vs[0]))
                .sum();
            let next = self.next_frontier(groups, take);
            let value = protected + self.solve(t + 1, &next);
            if *first || value > best.0 {
                *first = false;
                let choice = groups
                    .iter()
                    .zip(take.iter())
                    .filter(|(_, &x)| x > 0)
                    .map(|((c, _), &x)| (*c, x))
                    .collect();
                *best = (value, choice);
            }
            return;
        }
        let room: usize = groups[idx..].iter().map(|(_, vs)| vs.len()).sum();
        if room < left {
            return;
        }
        let max_here = groups[idx].1.len().min(left);
        for x in (0..=max_here).rev() {
            take[idx] = x;
            self.each_split(groups, left - x, idx + 1, take, t, best, first);
        }
        take[idx] = 0;
    }

    fn run(mut self) -> Strategy {
        let root = self.inst.root();
        let start: Vec<Vertex> = self.relevant_children(root).collect();
        self.solve(1, &start);
        let mut moves = Vec::new();
        let mut frontier = start;
        let mut t = 1;
        while !frontier.is_empty() {
            let groups = self.grouped(&frontier);
            let key = self.key(t, &groups);
            let choice = self.memo[&key].1.clone();
            let take: Vec<usize> = groups
                .iter()
                .map(|(c, _)| choice.iter().find(|(cc, _)| cc == c).map_or(0, |&(_, x)| x))
                .collect();
            for ((_, vs), &x) in groups.iter().zip(&take) {
                moves.extend(vs[..x].iter().map(|&v| Move::new(v, t)));
            }
            frontier = self.next_frontier(&groups, &take);
            t += 1;
        }
        Strategy::new(moves).expect("search never protects a vertex twice")
    }
}
