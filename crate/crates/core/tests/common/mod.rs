#![allow(dead_code)]

use firefighter::mincostflow::FlowNetwork;
use firefighter::{simulate, validate_strategy, SolveResult, TreeInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum cost over every integral flow meeting the supplies, by
/// enumerating arc flows with a balance check once a node's arcs are all set.
pub fn brute_force_min_cost(net: &FlowNetwork) -> Option<i64> {
    let arcs = net.arcs();
    let n = net.node_count();
    let mut last_touch = vec![None; n];
    for (i, a) in arcs.iter().enumerate() {
        last_touch[a.tail] = Some(i);
        last_touch[a.head] = Some(i);
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); arcs.len()];
    let mut best = None;
    for (v, touch) in last_touch.iter().enumerate() {
        match *touch {
            Some(i) => closes[i].push(v),
            None if net.supply(v) != 0 => return None,
            None => {}
        }
    }
    let mut balance = vec![0i64; n];
    fn go(
        i: usize,
        net: &FlowNetwork,
        closes: &[Vec<usize>],
        balance: &mut [i64],
        cost: i64,
        best: &mut Option<i64>,
    ) {
        let arcs = net.arcs();
        if i == arcs.len() {
            if best.is_none_or(|b| cost < b) {
                *best = Some(cost);
            }
            return;
        }
        let a = arcs[i];
        for f in 0..=a.capacity {
            balance[a.tail] += f;
            balance[a.head] -= f;
            if closes[i].iter().all(|&v| balance[v] == net.supply(v)) {
                go(i + 1, net, closes, balance, cost + f * a.cost, best);
            }
            balance[a.tail] -= f;
            balance[a.head] += f;
        }
    }
    if arcs.is_empty() {
        return (0..n).all(|v| net.supply(v) == 0).then_some(0);
    }
    go(0, net, &closes, &mut balance, 0, &mut best);
    best
}

/// Random acyclic network: up to 8 nodes and 12 arcs, capacities in 0..=2,
/// costs in -5..=5. Supplies come from a random flow, so most networks are
/// feasible; every fifth one gets arbitrary balanced supplies instead.
pub fn random_network(seed: u64) -> FlowNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let mut net = FlowNetwork::new(n);
    let m = rng.gen_range(1..=12);
    let mut flow = Vec::new();
    for _ in 0..m {
        let u = rng.gen_range(0..n - 1);
        let v = rng.gen_range(u + 1..n);
        let cap = rng.gen_range(0..=2);
        net.add_arc(u, v, cap, rng.gen_range(-5..=5));
        flow.push(rng.gen_range(0..=cap));
    }
    let mut supply = vec![0i64; n];
    if seed % 5 == 4 {
        for _ in 0..2 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let d = rng.gen_range(1..=2);
            supply[a] += d;
            supply[b] -= d;
        }
    } else {
        for (a, &f) in net.arcs().iter().zip(&flow) {
            supply[a.tail] += f;
            supply[a.head] -= f;
        }
    }
    for (v, &d) in supply.iter().enumerate() {
        net.set_supply(v, d);
    }
    net
}

/// The strategy re-simulates to the reported value and is valid.
pub fn witness_ok(inst: &TreeInstance, res: &SolveResult) -> bool {
    validate_strategy(inst, &res.strategy).is_valid()
        && simulate(inst, &res.strategy)
            .map(|o| firefighter::saved_target_weight(inst, &o) == res.saved_target_weight)
            .unwrap_or(false)
}

/// Adds random forbidden pairs and, sometimes, per-step budgets.
pub fn perturb(inst: &TreeInstance, seed: u64, max_budget: usize) -> TreeInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = inst.vertex_count();
    let count = rng.gen_range(0..=3);
    let pairs: Vec<(usize, usize)> = (0..count)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(1..=3)))
        .collect();
    let mut out = inst.with_forbidden(pairs).unwrap();
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(1..=3);
        let list = (0..len).map(|_| rng.gen_range(1..=max_budget)).collect();
        out = out
            .with_budgets(firefighter::Budgets::PerStep(list))
            .unwrap();
    }
    out
}
