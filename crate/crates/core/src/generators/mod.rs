//! Instance families: complete trees, the degree-greedy trap, the reduction
//! gadgets, seeded random trees and exhaustive enumeration of small trees.

mod complete;
mod enumerate;
mod pathology;
mod random;
mod reductions;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::instance::{InstanceError, TreeInstance, Vertex};

pub use complete::gen_complete_tree;
pub use enumerate::enumerate_rooted_trees;
pub use pathology::{gen_greedy_pathology, Pathology};
pub use random::{gen_random_tree, RandomOptions, Shape, TargetMode};
pub use reductions::{
    gen_maxsave_reduction, gen_minsave_reduction, gen_npc_reduction, maxsave_height,
};

/// Upper bound on generated instance sizes.
pub const MAX_GENERATED_VERTICES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} has degree {degree}, above the allowed {max}")]
    DegreeTooHigh {
        vertex: Vertex,
        degree: usize,
        max: usize,
    },
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(f64),
    #[error("target set of the inner instance must be its leaves")]
    TargetsNotLeaves,
    #[error(
        "instance would have {0} vertices or more, above the limit of {MAX_GENERATED_VERTICES}"
    )]
    TooLarge(u128),
    #[error("cannot build that shape: {0}")]
    ShapeInfeasible(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// A generated instance with construction metadata (thresholds, exponents,
/// sizes) for the `meta` field of the instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub instance: TreeInstance,
    pub meta: Map<String, Value>,
}

fn guard_size(n: u128) -> Result<usize, GenError> {
    if n > MAX_GENERATED_VERTICES as u128 {
        Err(GenError::TooLarge(n))
    } else {
        Ok(n as usize)
    }
}

fn targets_are_leaves(inst: &TreeInstance) -> bool {
    inst.targets() == inst.leaves().as_slice()
}

/// Appends a complete tree of height `h` with `d` children per inner vertex,
/// its root attached to `parent`. Returns the new vertices in BFS order.
fn attach_complete(
    edges: &mut Vec<(Vertex, Vertex)>,
    next_id: &mut Vertex,
    parent: Option<Vertex>,
    h: usize,
    d: usize,
) -> Vec<Vertex> {
    let root = *next_id;
    *next_id += 1;
    if let Some(p) = parent {
        edges.push((p, root));
    }
    let mut all = vec![root];
    let mut level = vec![root];
    for _ in 0..h {
        let mut next = Vec::with_capacity(level.len() * d);
        for &p in &level {
            for _ in 0..d {
                edges.push((p, *next_id));
                next.push(*next_id);
                *next_id += 1;
            }
        }
        all.extend(&next);
        level = next;
    }
    all
}

/// `sum_{i=0}^{h} d^i`, or `None` on overflow.
fn complete_size(h: usize, d: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=h {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(d as u128)?;
    }
    Some(total)
}
