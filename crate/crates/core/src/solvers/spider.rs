//! Flow engine shared by the k-star and k-caterpillar solvers.
//!
//! Once the spine choices are fixed, what is left for the fire is a set of
//! disjoint arms: vertex paths leading away from the root, where protecting a
//! vertex saves everything below it. At most one vertex per arm is worth
//! protecting, and each step has its own budget, so the best selection is a
//! min-cost flow through one node per step and one node per arm.

use super::SolveError;
use crate::instance::{Step, TreeInstance, Vertex};
use crate::mincostflow::{solve_min_cost_flow, ArcId, FlowNetwork};
use crate::strategy::{Move, Strategy};

/// Path of vertices at consecutive depths, listed from the root side.
#[derive(Debug, Clone)]
pub(crate) struct Arm {
    pub vertices: Vec<Vertex>,
    /// The arm must receive a protection for the case to be feasible.
    pub forced: bool,
}

impl Arm {
    pub fn free(vertices: Vec<Vertex>) -> Self {
        Arm {
            vertices,
            forced: false,
        }
    }

    pub fn forced(v: Vertex) -> Self {
        Arm {
            vertices: vec![v],
            forced: true,
        }
    }
}

/// Network with the protection each middle arc stands for.
#[derive(Debug, Clone)]
pub struct KStarNetwork {
    pub network: FlowNetwork,
    /// Arcs `L_t -> C_j`; one unit of flow protects the paired vertex.
    pub arc_moves: Vec<(ArcId, Move)>,
    forced: usize,
    bonus: i64,
}

/// Best vertex of `arm` to protect at step `t`: the shallowest one that has
/// not burned yet and is allowed at `t`.
fn pick(inst: &TreeInstance, arm: &Arm, t: Step) -> Option<Vertex> {
    arm.vertices
        .iter()
        .copied()
        .filter(|&v| inst.depth(v) >= t)
        .find(|&v| !inst.is_forbidden(v, t))
}

pub(crate) fn build(inst: &TreeInstance, arms: &[Arm]) -> KStarNetwork {
    let horizon = arms
        .iter()
        .filter_map(|a| a.vertices.last())
        .map(|&v| inst.depth(v))
        .max()
        .unwrap_or(0);
    let forced = arms.iter().filter(|a| a.forced).count();
    let bonus = inst.total_target_weight() as i64 + 1;
    let d = arms.len();
    let (ell, r) = (0, 1);
    let level = |t: Step| 1 + t;
    let leg = |j: usize| 2 + horizon + j;

    let mut network = FlowNetwork::new(2 + horizon + d);
    network.set_supply(ell, d as i64);
    network.set_supply(r, -(d as i64));
    for t in 1..=horizon {
        network.add_arc(ell, level(t), inst.budget_at(t) as i64, 0);
    }
    let mut arc_moves = Vec::new();
    for t in 1..=horizon {
        for (j, arm) in arms.iter().enumerate() {
            let Some(v) = pick(inst, arm, t) else {
                continue;
            };
            let value = inst.subtree_weight(v) as i64 + if arm.forced { bonus } else { 0 };
            if value == 0 {
                continue;
            }
            let id = network.add_arc(level(t), leg(j), 1, -value);
            arc_moves.push((id, Move::new(v, t)));
        }
    }
    for j in 0..d {
        network.add_arc(leg(j), r, 1, 0);
    }
    network.add_arc(ell, r, d as i64, 0);
    KStarNetwork {
        network,
        arc_moves,
        forced,
        bonus,
    }
}

/// Optimal saved weight inside the arms with its moves, or `None` when some
/// forced arm cannot be protected.
pub(crate) fn solve(
    inst: &TreeInstance,
    arms: &[Arm],
) -> Result<Option<(u64, Vec<Move>)>, SolveError> {
    let net = build(inst, arms);
    solve_network(&net)
}

pub(crate) fn solve_network(net: &KStarNetwork) -> Result<Option<(u64, Vec<Move>)>, SolveError> {
    let sol = solve_min_cost_flow(&net.network)?;
    debug_assert!(sol.feasible, "the bypass arc keeps every network feasible");
    let gained = -sol.total_cost - net.forced as i64 * net.bonus;
    if gained < 0 {
        return Ok(None);
    }
    let moves = net
        .arc_moves
        .iter()
        .filter(|&&(id, _)| sol.arc_flows[id] > 0)
        .map(|&(_, m)| m)
        .collect();
    Ok(Some((gained as u64, moves)))
}

/// Exact optimum on a tree made of a spine with path legs hanging off it.
///
/// `legs_at[i]` lists the legs at `spine[i]`, each from the spine outward.
/// The root may sit on the spine or inside a leg.
pub(crate) fn solve_on_spine(
    inst: &TreeInstance,
    spine: &[Vertex],
    legs_at: &[Vec<Vec<Vertex>>],
) -> Result<(u64, Strategy), SolveError> {
    let root = inst.root();
    let (hub, root_leg) = match spine.iter().position(|&v| v == root) {
        Some(a) => (a, None),
        None => locate_in_legs(legs_at, root).ok_or_else(|| {
            SolveError::DecompositionMismatch(format!("root {root} is not covered"))
        })?,
    };

    let mut best: Option<(u64, Vec<Move>)> = None;
    let mut consider = |found: Option<(u64, Vec<Move>)>| {
        if let Some((value, moves)) = found {
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, moves));
            }
        }
    };

    let mut outer = None;
    if let Some((l, x)) = root_leg {
        let leg = &legs_at[hub][l];
        outer = (x + 1 < leg.len()).then(|| Arm::free(leg[x + 1..].to_vec()));
        // Stopping the fire between the root and the spine.
        let mut inner: Vec<Vertex> = leg[..x].iter().rev().copied().collect();
        inner.push(spine[hub]);
        let arms: Vec<Arm> = [Arm::free(inner)]
            .into_iter()
            .chain(outer.clone())
            .collect();
        consider(solve(inst, &arms)?);
    }

    let left: Vec<Option<usize>> = std::iter::once(None).chain((0..hub).map(Some)).collect();
    let right: Vec<Option<usize>> = std::iter::once(None)
        .chain((hub + 1..spine.len()).map(Some))
        .collect();
    for &j in &left {
        for &q in &right {
            let mut arms: Vec<Arm> = outer.iter().cloned().collect();
            for (l, leg) in legs_at[hub].iter().enumerate() {
                if root_leg.is_some_and(|(rl, _)| rl == l) {
                    continue;
                }
                arms.push(Arm::free(leg.clone()));
            }
            let lo = j.map_or(0, |j| j + 1);
            let hi = q.unwrap_or(spine.len());
            for i in (lo..hi).filter(|&i| i != hub) {
                arms.extend(legs_at[i].iter().cloned().map(Arm::free));
            }
            arms.extend(j.into_iter().chain(q).map(|i| Arm::forced(spine[i])));
            consider(solve(inst, &arms)?);
        }
    }

    let (value, moves) = best.expect("the case without spine protections is always feasible");
    let strategy = Strategy::new(moves).expect("arms are vertex-disjoint");
    Ok((value, strategy))
}

fn locate_in_legs(
    legs_at: &[Vec<Vec<Vertex>>],
    v: Vertex,
) -> Option<(usize, Option<(usize, usize)>)> {
    for (i, legs) in legs_at.iter().enumerate() {
        for (l, leg) in legs.iter().enumerate() {
            if let Some(x) = leg.iter().position(|&u| u == v) {
                return Some((i, Some((l, x))));
            }
        }
    }
    None
}
