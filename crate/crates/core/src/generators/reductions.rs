use serde_json::{json, Map, Value};

use super::{attach_complete, complete_size, guard_size, targets_are_leaves, GenError, Generated};
use crate::instance::{Budgets, RawInstance, TreeInstance, Vertex};

/// Gadget turning a `b`-firefighter instance of maximum degree `b + 2` into
/// a `(b + 1)`-firefighter instance of maximum degree `b + 3` such that all
/// targets can be saved in one iff they can in the other.
///
/// Inner vertices keep their ids; the new root `s'` gets id `n`.
pub fn gen_npc_reduction(inner: &TreeInstance, b: usize) -> Result<Generated, GenError> {
    if b == 0 {
        return Err(GenError::InvalidParameter("b must be at least 1".into()));
    }
    if !targets_are_leaves(inner) {
        return Err(GenError::TargetsNotLeaves);
    }
    let n = inner.vertex_count();
    if let Some(v) = (0..n).find(|&v| inner.degree(v) > b + 2) {
        return Err(GenError::DegreeTooHigh {
            vertex: v,
            degree: inner.degree(v),
            max: b + 2,
        });
    }
    let h = inner.height();
    let mut edges = inner.edges().to_vec();
    let mut targets = inner.targets().to_vec();
    let mut next_id = n;
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };
    let root = fresh();

    let ys: Vec<Vertex> = (1..h).map(|_| fresh()).collect();
    let mut prev = root;
    for &y in &ys {
        edges.push((prev, y));
        prev = y;
    }
    edges.push((prev, inner.root()));

    let xs: Vec<Vertex> = (0..h).map(|_| fresh()).collect();
    let mut prev = root;
    for &x in &xs {
        edges.push((prev, x));
        prev = x;
    }

    for _ in 0..=b {
        let v = fresh();
        edges.push((root, v));
        targets.push(v);
    }
    for &y in &ys {
        for _ in 0..=b {
            let v = fresh();
            edges.push((y, v));
            targets.push(v);
        }
    }
    for &x in &xs {
        let mut prev = x;
        for _ in 0..h {
            let w = fresh();
            edges.push((prev, w));
            prev = w;
        }
        targets.push(prev);
    }

    let total = next_id;
    let instance = TreeInstance::new(RawInstance {
        n: total,
        edges,
        root,
        target_set: targets,
        weights: None,
        budgets: Budgets::Constant(b + 1),
        forbidden: Vec::new(),
    })?;
    let mut meta = Map::new();
    meta.insert("family".into(), json!("npc-reduction"));
    meta.insert("inner_budget".into(), json!(b));
    meta.insert("inner_height".into(), json!(h));
    meta.insert("inner_vertices".into(), json!(n));
    Ok(Generated { instance, meta })
}

/// Height of the complete trees hung below each leaf: `ceil(log_{b+1} n) + 1`.
pub fn maxsave_height(n: usize, b: usize) -> usize {
    let base = (b + 1) as u128;
    let mut ceil_log = 0;
    let mut power: u128 = 1;
    while power < n as u128 {
        power *= base;
        ceil_log += 1;
    }
    ceil_log + 1
}

/// Gadget for the maximization version: `b + 2` copies of a complete
/// `(b + 1)`-ary tree below every leaf, every vertex a target, and the
/// threshold `k = (b + 2) |S| |T|` in the metadata.
pub fn gen_maxsave_reduction(inner: &TreeInstance, b: usize) -> Result<Generated, GenError> {
    if b == 0 {
        return Err(GenError::InvalidParameter("b must be at least 1".into()));
    }
    if !targets_are_leaves(inner) {
        return Err(GenError::TargetsNotLeaves);
    }
    let n = inner.vertex_count();
    let height = maxsave_height(n, b);
    let copy_size = complete_size(height, b + 1).unwrap_or(u128::MAX);
    let leaves = inner.targets().to_vec();
    let added = copy_size.saturating_mul(((b + 2) * leaves.len()) as u128);
    let total = guard_size(added.saturating_add(n as u128))?;

    let mut edges = inner.edges().to_vec();
    edges.reserve(total - n);
    let mut next_id = n;
    for &leaf in &leaves {
        for _ in 0..b + 2 {
            attach_complete(&mut edges, &mut next_id, Some(leaf), height, b + 1);
        }
    }
    let instance = TreeInstance::new(RawInstance {
        budgets: Budgets::Constant(b),
        ..RawInstance::new(total, edges, inner.root())
    })?;
    let copy_size = copy_size as usize;
    let mut meta = Map::new();
    meta.insert("family".into(), json!("maxsave-reduction"));
    meta.insert("copy_height".into(), json!(height));
    meta.insert("copy_size".into(), json!(copy_size));
    meta.insert("copies_per_leaf".into(), json!(b + 2));
    meta.insert(
        "threshold_k".into(),
        json!((b + 2) * leaves.len() * copy_size),
    );
    Ok(Generated { instance, meta })
}

/// Gadget for the minimization version: `floor(n1^beta + b)` pendant leaves
/// on every leaf, where `beta = 4 / epsilon - 3` and `n1` is the inner size.
pub fn gen_minsave_reduction(inner: &TreeInstance, epsilon: f64) -> Result<Generated, GenError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GenError::EpsilonOutOfRange(epsilon));
    }
    if !targets_are_leaves(inner) {
        return Err(GenError::TargetsNotLeaves);
    }
    let b = inner
        .budgets()
        .constant()
        .ok_or_else(|| GenError::InvalidParameter("inner budget must be constant".into()))?;
    let n1 = inner.vertex_count();
    let beta = 4.0 / epsilon - 3.0;
    let raw = (n1 as f64).powf(beta) + b as f64;
    // Guard against float noise on exact powers.
    let per_leaf = (raw + 1e-9).floor();
    let leaves = inner.targets().to_vec();
    let added = per_leaf * leaves.len() as f64;
    if !added.is_finite() || added + n1 as f64 > super::MAX_GENERATED_VERTICES as f64 {
        return Err(GenError::TooLarge(if added.is_finite() {
            added as u128
        } else {
            u128::MAX
        }));
    }
    let per_leaf = per_leaf as usize;
    let total = n1 + per_leaf * leaves.len();

    let mut edges = inner.edges().to_vec();
    let mut next_id = n1;
    for &leaf in &leaves {
        for _ in 0..per_leaf {
            edges.push((leaf, next_id));
            next_id += 1;
        }
    }
    let instance = TreeInstance::new(RawInstance {
        budgets: Budgets::Constant(b),
        ..RawInstance::new(total, edges, inner.root())
    })?;
    let mut meta = Map::new();
    meta.insert("family".into(), json!("minsave-reduction"));
    meta.insert("epsilon".into(), json!(epsilon));
    meta.insert("beta".into(), json!(beta));
    meta.insert("inner_vertices".into(), json!(n1));
    meta.insert("pendants_per_leaf".into(), json!(per_leaf));
    meta.insert(
        "size_bound".into(),
        Value::from((n1 as f64).powf(beta + 3.0)),
    );
    Ok(Generated { instance, meta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> TreeInstance {
        TreeInstance::new(RawInstance::new(3, vec![(0, 1), (1, 2)], 0))
            .unwrap()
            .with_targets([2])
            .unwrap()
    }

    #[test]
    fn npc_gadget_on_a_path() {
        let g = gen_npc_reduction(&path3(), 1).unwrap();
        let t = &g.instance;
        assert_eq!(t.vertex_count(), 15);
        assert_eq!(t.root(), 3);
        assert_eq!(t.degree(t.root()), 1 + 3);
        assert!(t.max_degree() <= 4);
        assert_eq!(t.budget_at(1), 2);
        assert_eq!(t.targets(), t.leaves().as_slice());
    }

    #[test]
    fn npc_gadget_rejects_high_degree() {
        let star =
            TreeInstance::new(RawInstance::new(5, (1..5).map(|i| (0, i)).collect(), 0)).unwrap();
        let star = star.with_targets([1, 2, 3, 4]).unwrap();
        assert!(matches!(
            gen_npc_reduction(&star, 1),
            Err(GenError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn maxsave_arithmetic() {
        assert_eq!(maxsave_height(3, 1), 3);
        assert_eq!(maxsave_height(1, 1), 1);
        let g = gen_maxsave_reduction(&path3(), 1).unwrap();
        assert_eq!(g.meta["copy_size"], json!(15));
        assert_eq!(g.meta["threshold_k"], json!(45));
        assert_eq!(g.instance.vertex_count(), 3 + 45);
        assert_eq!(g.instance.targets().len(), 48);
    }

    #[test]
    fn maxsave_copies_are_large_enough() {
        for b in 1..=3 {
            for n in 1..=100 {
                let size = complete_size(maxsave_height(n, b), b + 1).unwrap();
                assert!(size >= n as u128, "n={n} b={b}");
            }
        }
    }

    #[test]
    fn minsave_arithmetic() {
        let g = gen_minsave_reduction(&path3(), 0.8).unwrap();
        assert_eq!(g.meta["beta"], json!(2.0));
        assert_eq!(g.meta["pendants_per_leaf"], json!(10));
        assert_eq!(g.instance.vertex_count(), 13);
        assert!((g.instance.vertex_count() as f64) < g.meta["size_bound"].as_f64().unwrap());
        assert!(matches!(
            gen_minsave_reduction(&path3(), 1.0),
            Err(GenError::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            gen_minsave_reduction(&path3(), 0.01),
            Err(GenError::TooLarge(_))
        ));
    }
}
