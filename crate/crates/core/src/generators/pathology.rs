use serde_json::{json, Map, Value};

use super::{attach_complete, complete_size, guard_size, GenError};
use crate::instance::{Budgets, RawInstance, TreeInstance, Vertex};

/// Instance on which the degree-greedy heuristic is arbitrarily bad.
///
/// The root `s` is joined to the root `r` of a complete tree of height
/// `h - 1` with `b + 1` children per vertex, to `v_1`, and to paths
/// `u_i ... v_i` with `i` vertices for `i = 2..h-1`. Every `v_i` carries
/// `b + 2` pendant leaves. All vertices are targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Pathology {
    pub instance: TreeInstance,
    /// `v_1, ..., v_{h-1}`.
    pub tips: Vec<Vertex>,
    /// Pendant leaves, grouped per tip.
    pub pendants: Vec<Vec<Vertex>>,
    /// Vertices of the complete tree, its root first.
    pub tree: Vec<Vertex>,
}

impl Pathology {
    pub fn meta(&self) -> Map<String, Value> {
        let mut meta = Map::new();
        meta.insert("family".into(), json!("greedy-pathology"));
        meta.insert("tips".into(), json!(self.tips));
        meta.insert("pendants".into(), json!(self.pendants));
        meta.insert("tree_root".into(), json!(self.tree[0]));
        meta.insert("tree_size".into(), json!(self.tree.len()));
        meta
    }
}

pub fn gen_greedy_pathology(h: usize, b: usize) -> Result<Pathology, GenError> {
    if h < 2 {
        return Err(GenError::InvalidParameter("h must be at least 2".into()));
    }
    if b == 0 {
        return Err(GenError::InvalidParameter("b must be at least 1".into()));
    }
    let tree_size = complete_size(h - 1, b + 1).unwrap_or(u128::MAX);
    let paths: u128 = (1..h as u128).sum();
    guard_size(tree_size.saturating_add(1 + paths + (h as u128 - 1) * (b as u128 + 2)))?;

    let s = 0;
    let mut next_id = 1;
    let mut edges = Vec::new();
    let tree = attach_complete(&mut edges, &mut next_id, Some(s), h - 1, b + 1);
    let mut tips = Vec::with_capacity(h - 1);
    for i in 1..h {
        let mut prev = s;
        for _ in 0..i {
            edges.push((prev, next_id));
            prev = next_id;
            next_id += 1;
        }
        tips.push(prev);
    }
    let mut pendants = Vec::with_capacity(h - 1);
    for &v in &tips {
        let group: Vec<Vertex> = (next_id..next_id + b + 2).collect();
        next_id += b + 2;
        edges.extend(group.iter().map(|&p| (v, p)));
        pendants.push(group);
    }
    let instance = TreeInstance::new(RawInstance {
        budgets: Budgets::Constant(b),
        ..RawInstance::new(next_id, edges, s)
    })?;
    Ok(Pathology {
        instance,
        tips,
        pendants,
        tree,
    })
}
