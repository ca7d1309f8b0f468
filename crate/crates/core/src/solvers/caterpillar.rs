use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::spider;
use super::star::walk_path;
use super::{finish, Algorithm, SolveError, SolveResult};
use crate::instance::{TreeInstance, Vertex};

/// A spine path with path legs attached to its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarDecomposition {
    pub spine: Vec<Vertex>,
    /// `legs_at[i]` holds the legs at `spine[i]`, each from the spine outward.
    pub legs_at: Vec<Vec<Vec<Vertex>>>,
    /// Longest leg.
    pub k: usize,
}

fn distances(inst: &TreeInstance, from: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; inst.vertex_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in inst.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn path(inst: &TreeInstance, from: Vertex, to: Vertex) -> Vec<Vertex> {
    let dist = distances(inst, to);
    let mut out = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *inst
            .neighbors(cur)
            .iter()
            .find(|&&u| dist[u] + 1 == dist[cur])
            .unwrap();
        out.push(cur);
    }
    out
}

/// Off-spine branches at `v`, longest first, ties by smaller first vertex.
/// `None` if some branch is not a path ending in a leaf.
fn branches(inst: &TreeInstance, v: Vertex, on_spine: &[bool]) -> Option<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    for &u in inst.neighbors(v) {
        if on_spine[u] {
            continue;
        }
        let leg = walk_path(inst, v, u);
        if inst.degree(*leg.last().unwrap()) != 1 {
            return None;
        }
        out.push(leg);
    }
    out.sort_by_key(|leg| (std::cmp::Reverse(leg.len()), leg[0]));
    Some(out)
}

/// Canonical spine and legs, or `None` if the tree is not a caterpillar with
/// path legs.
///
/// The spine joins the two outermost vertices of degree three or more and
/// continues at both ends into the longest remaining branch, which keeps the
/// legs as short as any spine allows.
pub fn recognize_spine(inst: &TreeInstance) -> Option<CaterpillarDecomposition> {
    let n = inst.vertex_count();
    let branching: Vec<Vertex> = (0..n).filter(|&v| inst.degree(v) >= 3).collect();
    let mut spine = match branching.first() {
        None => {
            let end = (0..n).find(|&v| inst.degree(v) <= 1).unwrap();
            let mut p = vec![end];
            if let Some(&next) = inst.neighbors(end).first() {
                p.extend(walk_path(inst, end, next));
            }
            p
        }
        Some(&x) => {
            let farthest = |from: Vertex| {
                let d = distances(inst, from);
                *branching
                    .iter()
                    .max_by_key(|&&v| (d[v], std::cmp::Reverse(v)))
                    .unwrap()
            };
            let u = farthest(x);
            let w = farthest(u);
            let mut core = path(inst, u, w);
            let mut on_spine = vec![false; n];
            for &v in &core {
                on_spine[v] = true;
            }
            let head = branches(inst, u, &on_spine)?.into_iter().next()?;
            for &v in &head {
                on_spine[v] = true;
            }
            let tail = branches(inst, w, &on_spine)?.into_iter().next();
            let mut spine: Vec<Vertex> = head.into_iter().rev().collect();
            spine.append(&mut core);
            spine.extend(tail.into_iter().flatten());
            spine
        }
    };
    if spine.last() < spine.first() {
        spine.reverse();
    }

    let mut on_spine = vec![false; n];
    for &v in &spine {
        on_spine[v] = true;
    }
    let mut legs_at = Vec::with_capacity(spine.len());
    for &v in &spine {
        let mut legs = branches(inst, v, &on_spine)?;
        legs.sort_by_key(|leg| leg[0]);
        legs_at.push(legs);
    }
    let k = legs_at.iter().flatten().map(Vec::len).max().unwrap_or(0);
    Some(CaterpillarDecomposition { spine, legs_at, k })
}

pub fn is_kcaterpillar(inst: &TreeInstance, k: usize) -> bool {
    recognize_spine(inst).is_some_and(|d| d.k <= k)
}

fn check(inst: &TreeInstance, decomp: &CaterpillarDecomposition) -> Result<(), SolveError> {
    let n = inst.vertex_count();
    let mismatch = |msg: String| Err(SolveError::DecompositionMismatch(msg));
    if decomp.spine.is_empty() || decomp.legs_at.len() != decomp.spine.len() {
        return mismatch("spine and leg lists disagree".into());
    }
    let mut seen = vec![false; n];
    let mut visit = |v: Vertex, prev: Option<Vertex>| -> Result<(), SolveError> {
        if v >= n || seen[v] {
            return Err(SolveError::DecompositionMismatch(format!(
                "vertex {v} is repeated or out of range"
            )));
        }
        if let Some(p) = prev {
            if !inst.neighbors(p).contains(&v) {
                return Err(SolveError::DecompositionMismatch(format!(
                    "{p} and {v} are not adjacent"
                )));
            }
        }
        seen[v] = true;
        Ok(())
    };
    for (i, &v) in decomp.spine.iter().enumerate() {
        visit(v, i.checked_sub(1).map(|j| decomp.spine[j]))?;
    }
    for (&s, legs) in decomp.spine.iter().zip(&decomp.legs_at) {
        for leg in legs {
            let mut prev = s;
            for &v in leg {
                visit(v, Some(prev))?;
                prev = v;
            }
        }
    }
    // Every vertex used once with all consecutive pairs adjacent accounts for
    // all n - 1 edges, so the pieces are exactly the spine and path legs.
    if let Some(v) = seen.iter().position(|&s| !s) {
        return mismatch(format!("vertex {v} is not covered"));
    }
    let longest = decomp
        .legs_at
        .iter()
        .flatten()
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    if longest > decomp.k {
        return mismatch(format!(
            "a leg has {longest} vertices, more than k = {}",
            decomp.k
        ));
    }
    Ok(())
}

pub fn solve_kcaterpillar(
    inst: &TreeInstance,
    decomp: &CaterpillarDecomposition,
) -> Result<SolveResult, SolveError> {
    if recognize_spine(inst).is_none() {
        return Err(SolveError::NotACaterpillar);
    }
    check(inst, decomp)?;
    let (value, strategy) = spider::solve_on_spine(inst, &decomp.spine, &decomp.legs_at)?;
    let res = finish(inst, strategy, Algorithm::KCaterpillar);
    assert_eq!(
        res.saved_target_weight, value,
        "flow value disagrees with simulation"
    );
    Ok(res)
}
