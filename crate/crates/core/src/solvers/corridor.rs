//! Bounded-degree case: when every vertex has degree at most `b + 2` and the
//! root at most `b + 1`, the fire can be led down a single path and stopped at
//! any vertex with at most `b` children. The cheapest such path is optimal.

use super::{finish, Algorithm, SolveError, SolveResult};
use crate::instance::{TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

fn precondition(inst: &TreeInstance) -> Result<usize, String> {
    let b = inst
        .budgets()
        .constant()
        .ok_or_else(|| "budget varies between steps".to_string())?;
    if !inst.forbidden().is_empty() {
        return Err("forbidden placements are present".into());
    }
    if inst.max_degree() > b + 2 {
        return Err(format!(
            "max degree {} exceeds b + 2 = {}",
            inst.max_degree(),
            b + 2
        ));
    }
    let root_deg = inst.degree(inst.root());
    if root_deg > b + 1 {
        return Err(format!("root degree {root_deg} exceeds b + 1 = {}", b + 1));
    }
    Ok(b)
}

pub fn corridor_applies(inst: &TreeInstance) -> bool {
    precondition(inst).is_ok()
}

/// True when every non-leaf vertex, rooted at the ignition vertex, has the
/// same number of children.
pub fn is_complete_tree(inst: &TreeInstance) -> bool {
    let mut counts = (0..inst.vertex_count())
        .map(|v| inst.children(v).len())
        .filter(|&c| c > 0);
    match counts.next() {
        None => true,
        Some(first) => counts.all(|c| c == first),
    }
}

pub fn solve_corridor(inst: &TreeInstance) -> Result<SolveResult, SolveError> {
    let b = precondition(inst).map_err(SolveError::PreconditionViolated)?;

    let mut path_weight = vec![0u64; inst.vertex_count()];
    let mut best: Option<(u64, usize, Vertex)> = None;
    for &v in inst.bfs_order() {
        path_weight[v] = inst.weight(v) + inst.parent(v).map_or(0, |p| path_weight[p]);
        if inst.children(v).len() <= b {
            let key = (path_weight[v], inst.depth(v), v);
            if best.is_none_or(|cur| key < cur) {
                best = Some(key);
            }
        }
    }
    let (_, _, stop) = best.expect("a leaf always qualifies");

    let path = inst.path_between(inst.root(), stop);
    let mut moves = Vec::new();
    for (t, pair) in path.windows(2).enumerate() {
        let (from, next) = (pair[0], pair[1]);
        moves.extend(
            inst.children(from)
                .iter()
                .filter(|&&c| c != next)
                .map(|&c| Move::new(c, t + 1)),
        );
    }
    let last_step = path.len();
    moves.extend(inst.children(stop).iter().map(|&c| Move::new(c, last_step)));
    let strategy = Strategy::new(moves).expect("children of distinct path vertices are distinct");
    Ok(finish(inst, strategy, Algorithm::Corridor))
}
