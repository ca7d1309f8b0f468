//! Strategy rewrites that never shrink the saved set on trees.

use thiserror::Error;

use crate::instance::{TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("move ({}, {}) is not part of the strategy", .0.vertex, .0.time)]
    MoveNotInStrategy(Move),
    #[error("vertex {target} is not a strict, non-root ancestor of {vertex}")]
    NotAnAncestor { target: Vertex, vertex: Vertex },
    #[error("ancestor {0} is already protected")]
    AncestorProtected(Vertex),
    #[error("no residual budget at step {0}")]
    NoSlackAtTargetLevel(usize),
    #[error("vertex {vertex} may not be protected at step {step}")]
    Forbidden { vertex: Vertex, step: usize },
}

/// Replaces `moved` by a protection of its ancestor `target` at the step
/// equal to the ancestor's level.
///
/// Everything below `target` ends up saved, so the new saved set contains the
/// old one.
pub fn move_up_firefighter(
    inst: &TreeInstance,
    strat: &Strategy,
    moved: Move,
    target: Vertex,
) -> Result<Strategy, TransformError> {
    if !strat.contains(moved) {
        return Err(TransformError::MoveNotInStrategy(moved));
    }
    if target == inst.root() || !inst.is_strict_ancestor(target, moved.vertex) {
        return Err(TransformError::NotAnAncestor {
            target,
            vertex: moved.vertex,
        });
    }
    if strat.time_of(target).is_some() {
        return Err(TransformError::AncestorProtected(target));
    }
    let level = inst.depth(target);
    if inst.is_forbidden(target, level) {
        return Err(TransformError::Forbidden {
            vertex: target,
            step: level,
        });
    }
    let remaining = strat.without(moved.vertex);
    let used = remaining.at(level).len();
    if used >= inst.budget_at(level) {
        return Err(TransformError::NoSlackAtTargetLevel(level));
    }
    let mut out = remaining;
    out.insert(Move::new(target, level))
        .expect("target is not yet in the strategy");
    Ok(out)
}

/// Drops every move whose vertex has a protected strict ancestor.
pub fn drop_shadowed_moves(inst: &TreeInstance, strat: &Strategy) -> Strategy {
    let kept = strat.moves().into_iter().filter(|m| {
        let mut cur = inst.parent(m.vertex);
        while let Some(u) = cur {
            if strat.time_of(u).is_some() {
                return false;
            }
            cur = inst.parent(u);
        }
        true
    });
    Strategy::new(kept).expect("subset of a valid strategy")
}
