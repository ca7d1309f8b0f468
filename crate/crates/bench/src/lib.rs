//! Fixed, seeded inputs for the criterion benches.

use firefighter::generators::{
    gen_complete_tree, gen_greedy_pathology, gen_random_tree, RandomOptions, Shape, TargetMode,
};
use firefighter::{Budgets, FlowNetwork, TreeInstance};

fn options(b: usize, targets: TargetMode) -> RandomOptions {
    RandomOptions {
        targets,
        max_weight: 5,
        budgets: Budgets::Constant(b),
        root: None,
    }
}

pub fn kstar(n: usize, k: usize, b: usize, seed: u64) -> TreeInstance {
    gen_random_tree(n, Shape::KStar(k), seed, &options(b, TargetMode::All)).expect("k-star fixture")
}

pub fn caterpillar(n: usize, k: usize, b: usize, seed: u64) -> TreeInstance {
    gen_random_tree(
        n,
        Shape::KCaterpillar(k),
        seed,
        &options(b, TargetMode::Sample(0.5)),
    )
    .expect("caterpillar fixture")
}

pub fn random_tree(n: usize, b: usize, seed: u64) -> TreeInstance {
    gen_random_tree(n, Shape::Any, seed, &options(b, TargetMode::Leaves)).expect("random fixture")
}

/// `T(r, h, b + 1)` with one firefighter short of saving every leaf.
pub fn complete(h: usize, b: usize) -> TreeInstance {
    gen_complete_tree(h, b + 1, b).expect("complete fixture")
}

pub fn pathology(h: usize) -> TreeInstance {
    gen_greedy_pathology(h, 1)
        .expect("pathology fixture")
        .instance
}

/// Layered network with `width` nodes per layer and all arcs between
/// consecutive layers; the first layer supplies what the last one absorbs.
pub fn layered_network(layers: usize, width: usize) -> FlowNetwork {
    let mut net = FlowNetwork::new(layers * width);
    let node = |l: usize, i: usize| l * width + i;
    for l in 0..layers - 1 {
        for i in 0..width {
            for j in 0..width {
                let cost = ((i * 7 + j * 13 + l * 3) % 11) as i64 - 5;
                net.add_arc(node(l, i), node(l + 1, j), 1 + ((i + j) % 3) as i64, cost);
            }
        }
    }
    for i in 0..width {
        net.set_supply(node(0, i), 1);
        net.set_supply(node(layers - 1, i), -1);
    }
    net
}
