use serde::{Deserialize, Serialize};

use super::spider::{self, Arm};
use super::{finish, Algorithm, SolveError, SolveResult};
use crate::instance::{TreeInstance, Vertex};

pub use super::spider::KStarNetwork;

/// A center with vertex-disjoint paths hanging off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDecomposition {
    pub center: Vertex,
    /// Each leg from the center's neighbor out to a leaf.
    pub legs: Vec<Vec<Vertex>>,
    pub leg_lengths: Vec<usize>,
    pub max_leg: usize,
}

impl StarDecomposition {
    fn from_legs(center: Vertex, legs: Vec<Vec<Vertex>>) -> Self {
        let leg_lengths: Vec<usize> = legs.iter().map(Vec::len).collect();
        let max_leg = leg_lengths.iter().copied().max().unwrap_or(0);
        StarDecomposition {
            center,
            legs,
            leg_lengths,
            max_leg,
        }
    }
}

/// Walks from `from` through `next` until a vertex of degree other than 2.
pub(crate) fn walk_path(inst: &TreeInstance, from: Vertex, next: Vertex) -> Vec<Vertex> {
    let mut path = vec![next];
    let (mut prev, mut cur) = (from, next);
    while inst.degree(cur) == 2 {
        let step = inst
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| u != prev)
            .unwrap();
        path.push(step);
        prev = cur;
        cur = step;
    }
    path
}

/// Star decomposition when at most one vertex has degree three or more.
/// Paths get their middle vertex as the center.
pub fn recognize_kstar(inst: &TreeInstance) -> Option<StarDecomposition> {
    let n = inst.vertex_count();
    let mut branching = (0..n).filter(|&v| inst.degree(v) >= 3);
    let center = match (branching.next(), branching.next()) {
        (Some(_), Some(_)) => return None,
        (Some(c), None) => c,
        (None, _) => {
            let end = (0..n).find(|&v| inst.degree(v) <= 1).unwrap();
            let mut order = vec![end];
            if let Some(&first) = inst.neighbors(end).first() {
                order.extend(walk_path(inst, end, first));
            }
            order[(n - 1) / 2]
        }
    };
    let legs = inst
        .neighbors(center)
        .iter()
        .map(|&u| walk_path(inst, center, u))
        .collect();
    Some(StarDecomposition::from_legs(center, legs))
}

pub fn is_kstar(inst: &TreeInstance, k: usize) -> bool {
    recognize_kstar(inst).is_some_and(|d| d.max_leg <= k)
}

fn check(inst: &TreeInstance, decomp: &StarDecomposition) -> Result<(), SolveError> {
    let n = inst.vertex_count();
    let mismatch = |msg: String| Err(SolveError::DecompositionMismatch(msg));
    if decomp.center >= n {
        return mismatch(format!("center {} out of range", decomp.center));
    }
    let mut seen = vec![false; n];
    seen[decomp.center] = true;
    for leg in &decomp.legs {
        let mut prev = decomp.center;
        for &v in leg {
            if v >= n || seen[v] {
                return mismatch(format!("vertex {v} is repeated or out of range"));
            }
            if !inst.neighbors(prev).contains(&v) {
                return mismatch(format!("{prev} and {v} are not adjacent"));
            }
            seen[v] = true;
            prev = v;
        }
        if leg.is_empty() || inst.degree(prev) != 1 {
            return mismatch("a leg does not end at a leaf".into());
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return mismatch(format!("vertex {v} lies on no leg"));
    }
    let lengths: Vec<usize> = decomp.legs.iter().map(Vec::len).collect();
    if lengths != decomp.leg_lengths || decomp.max_leg != lengths.iter().copied().max().unwrap_or(0)
    {
        return mismatch("leg lengths disagree with the legs".into());
    }
    Ok(())
}

/// Flow network of the center-rooted case.
pub fn kstar_network(
    inst: &TreeInstance,
    decomp: &StarDecomposition,
) -> Result<KStarNetwork, SolveError> {
    check(inst, decomp)?;
    if inst.root() != decomp.center {
        return Err(SolveError::PreconditionViolated(format!(
            "root {} is not the center {}",
            inst.root(),
            decomp.center
        )));
    }
    let arms: Vec<Arm> = decomp.legs.iter().cloned().map(Arm::free).collect();
    Ok(spider::build(inst, &arms))
}

pub fn solve_kstar(
    inst: &TreeInstance,
    decomp: &StarDecomposition,
) -> Result<SolveResult, SolveError> {
    if recognize_kstar(inst).is_none() {
        return Err(SolveError::NotAStar);
    }
    check(inst, decomp)?;
    let (value, strategy) =
        spider::solve_on_spine(inst, &[decomp.center], std::slice::from_ref(&decomp.legs))?;
    let res = finish(inst, strategy, Algorithm::KStar);
    assert_eq!(
        res.saved_target_weight, value,
        "flow value disagrees with simulation"
    );
    Ok(res)
}
