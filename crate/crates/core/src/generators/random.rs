use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;
use crate::instance::{Budgets, RawInstance, TreeInstance, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Any,
    /// At most one vertex of degree three or more, legs of at most `k` vertices.
    KStar(usize),
    /// A spine with legs of at most `k` vertices.
    KCaterpillar(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetMode {
    All,
    /// Leaves of the rooted tree.
    Leaves,
    /// Each vertex independently with this probability.
    Sample(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomOptions {
    pub targets: TargetMode,
    /// Weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: u64,
    pub budgets: Budgets,
    /// Fixed root; drawn uniformly when `None`.
    pub root: Option<Vertex>,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions {
            targets: TargetMode::All,
            max_weight: 1,
            budgets: Budgets::Constant(1),
            root: None,
        }
    }
}

/// Uniform labeled tree from a random Prüfer sequence.
fn any_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    if n <= 2 {
        return (1..n).map(|v| (0, v)).collect();
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<Vertex> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().unwrap();
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let u = leaves.pop_first().unwrap();
    let v = leaves.pop_first().unwrap();
    edges.push((u, v));
    edges
}

/// Splits `total` into random parts of size `1..=k`.
fn random_parts(total: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let len = rng.gen_range(1..=k.min(left));
        parts.push(len);
        left -= len;
    }
    parts
}

fn hang_path(edges: &mut Vec<(Vertex, Vertex)>, next_id: &mut Vertex, at: Vertex, len: usize) {
    let mut prev = at;
    for _ in 0..len {
        edges.push((prev, *next_id));
        prev = *next_id;
        *next_id += 1;
    }
}

fn star_tree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::with_capacity(n - 1);
    let mut next_id = 1;
    for len in random_parts(n - 1, k, rng) {
        hang_path(&mut edges, &mut next_id, 0, len);
    }
    edges
}

fn caterpillar_tree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let spine = if k == 0 { n } else { rng.gen_range(1..=n) };
    let mut edges: Vec<(Vertex, Vertex)> = (1..spine).map(|v| (v - 1, v)).collect();
    let mut next_id = spine;
    for len in random_parts(n - spine, k.max(1), rng) {
        let at = rng.gen_range(0..spine);
        hang_path(&mut edges, &mut next_id, at, len);
    }
    edges
}

/// Seeded random tree of the requested shape. Identical arguments give
/// identical instances.
pub fn gen_random_tree(
    n: usize,
    shape: Shape,
    seed: u64,
    options: &RandomOptions,
) -> Result<TreeInstance, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("n must be at least 1".into()));
    }
    if options.max_weight == 0 {
        return Err(GenError::InvalidParameter(
            "max_weight must be at least 1".into(),
        ));
    }
    if let Some(r) = options.root.filter(|&r| r >= n) {
        return Err(GenError::InvalidParameter(format!(
            "root {r} is not below n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match shape {
        Shape::Any => any_tree(n, &mut rng),
        Shape::KStar(0) if n > 1 => {
            return Err(GenError::ShapeInfeasible(format!(
                "a 0-star has one vertex, not {n}"
            )));
        }
        Shape::KStar(k) => star_tree(n, k, &mut rng),
        Shape::KCaterpillar(k) => caterpillar_tree(n, k, &mut rng),
    };

    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut edges: Vec<(Vertex, Vertex)> = edges
        .into_iter()
        .map(|(u, v)| (label[u], label[v]))
        .collect();
    edges.sort_unstable();
    let root = options.root.unwrap_or_else(|| rng.gen_range(0..n));

    let skeleton = TreeInstance::new(RawInstance::new(n, edges.clone(), root))?;
    let targets: Vec<Vertex> = match options.targets {
        TargetMode::All => (0..n).collect(),
        TargetMode::Leaves => skeleton.leaves(),
        TargetMode::Sample(p) => (0..n).filter(|_| rng.gen_bool(p.clamp(0.0, 1.0))).collect(),
    };
    let weights = (options.max_weight > 1).then(|| {
        targets
            .iter()
            .map(|&v| (v, rng.gen_range(1..=options.max_weight)))
            .collect()
    });
    Ok(TreeInstance::new(RawInstance {
        n,
        edges,
        root,
        target_set: targets,
        weights,
        budgets: options.budgets.clone(),
        forbidden: Vec::new(),
    })?)
}
