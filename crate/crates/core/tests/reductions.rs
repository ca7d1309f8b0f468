mod common;

use firefighter::generators::{
    enumerate_rooted_trees, gen_complete_tree, gen_greedy_pathology, gen_maxsave_reduction,
    gen_minsave_reduction, gen_npc_reduction, maxsave_height, GenError,
};
use firefighter::solvers::{
    is_complete_tree, min_burned, solve_exact_oracle_with, solve_greedy_degree, OracleConfig,
    OracleMode,
};
use firefighter::{simulate, SolveResult, TreeInstance};

use common::witness_ok;

fn oracle(inst: &TreeInstance, cap: usize) -> SolveResult {
    let res = solve_exact_oracle_with(
        inst,
        OracleMode::Restricted,
        OracleConfig::with_caps(14, cap),
    )
    .unwrap();
    assert!(witness_ok(inst, &res));
    res
}

fn saves_all(inst: &TreeInstance, cap: usize) -> bool {
    oracle(inst, cap).saved_target_weight == inst.total_target_weight()
}

/// Rooted trees with `S` = leaves, budget `b`, maximum degree at most `max_deg`.
fn inner_trees(max_n: usize, b: usize, max_deg: usize) -> Vec<TreeInstance> {
    (1..=max_n)
        .flat_map(enumerate_rooted_trees)
        .filter(|t| t.max_degree() <= max_deg)
        .map(|t| {
            let leaves = t.leaves();
            t.with_budget(b).unwrap().with_targets(leaves).unwrap()
        })
        .collect()
}

#[test]
fn npc_gadget_size_and_degree() {
    for inner in inner_trees(7, 1, 3) {
        let g = gen_npc_reduction(&inner, 1).unwrap();
        let t = &g.instance;
        let (n, h, b) = (inner.vertex_count(), inner.height(), 1);
        assert_eq!(
            t.vertex_count(),
            n + 1 + (h.max(1) - 1) + h + (b + 1) + (h.max(1) - 1) * (b + 1) + h * h
        );
        assert!(t.max_degree() <= b + 3);
        assert_eq!(t.degree(t.root()), if h == 0 { b + 2 } else { b + 3 });
        assert_eq!(t.budget_at(1), b + 1);
        assert_eq!(t.targets(), t.leaves().as_slice());
    }
}

#[test]
fn npc_gadget_preserves_answers_for_b1() {
    let mut no = 0;
    for inner in inner_trees(7, 1, 3) {
        let gadget = gen_npc_reduction(&inner, 1).unwrap().instance;
        let inner_yes = saves_all(&inner, 20);
        assert_eq!(inner_yes, saves_all(&gadget, 128), "{:?}", inner.edges());
        no += usize::from(!inner_yes);
    }
    assert!(no > 0, "the sweep needs no-instances too");
}

#[test]
fn npc_gadget_preserves_answers_for_b2() {
    for inner in inner_trees(6, 2, 4) {
        let gadget = gen_npc_reduction(&inner, 2).unwrap().instance;
        assert_eq!(
            saves_all(&inner, 20),
            saves_all(&gadget, 128),
            "{:?}",
            inner.edges()
        );
    }
}

#[test]
fn npc_gadget_rejects_wide_trees() {
    let wide = inner_trees(6, 1, 5)
        .into_iter()
        .find(|t| t.max_degree() == 4)
        .unwrap();
    assert!(matches!(
        gen_npc_reduction(&wide, 1),
        Err(GenError::DegreeTooHigh { max: 3, .. })
    ));
}

#[test]
fn maxsave_threshold_matches_inner_answer() {
    for inner in inner_trees(5, 1, 3) {
        let g = gen_maxsave_reduction(&inner, 1).unwrap();
        let k = g.meta["threshold_k"].as_u64().unwrap();
        let copy = g.meta["copy_size"].as_u64().unwrap();
        assert!(copy >= inner.vertex_count() as u64);
        assert_eq!(g.instance.targets().len(), g.instance.vertex_count());
        let best = oracle(&g.instance, 1000).saved_target_weight;
        assert_eq!(best >= k, saves_all(&inner, 20), "{:?}", inner.edges());
    }
}

#[test]
fn maxsave_height_is_the_rounded_log_plus_one() {
    assert_eq!(maxsave_height(3, 1), 3);
    assert_eq!(maxsave_height(4, 1), 3);
    assert_eq!(maxsave_height(5, 1), 4);
    assert_eq!(maxsave_height(9, 2), 3);
    assert_eq!(maxsave_height(10, 2), 4);
}

#[test]
fn minsave_gap_on_tiny_inner_trees() {
    let epsilon = 0.8;
    for inner in inner_trees(5, 1, 3) {
        let n1 = inner.vertex_count() as u64;
        let g = gen_minsave_reduction(&inner, epsilon).unwrap();
        assert_eq!(g.meta["pendants_per_leaf"].as_u64().unwrap(), n1 * n1 + 1);
        let bound = g.meta["size_bound"].as_f64().unwrap();
        if n1 > 1 {
            assert!((g.instance.vertex_count() as f64) < bound);
        }
        let burned = min_burned(&g.instance, &oracle(&g.instance, 200));
        if saves_all(&inner, 20) {
            assert!(burned <= n1, "{:?}: {burned} burned", inner.edges());
        } else {
            assert!(burned >= n1 * n1, "{:?}: {burned} burned", inner.edges());
        }
    }
}

#[test]
fn minsave_beta_follows_epsilon() {
    let inner = inner_trees(3, 1, 3).pop().unwrap();
    let g = gen_minsave_reduction(&inner, 0.5).unwrap();
    assert_eq!(g.meta["beta"].as_f64().unwrap(), 5.0);
    assert!(matches!(
        gen_minsave_reduction(&inner, 0.0),
        Err(GenError::EpsilonOutOfRange(_))
    ));
}

#[test]
fn complete_trees_are_complete_and_lose_a_leaf() {
    for b in 1..=2 {
        for h in 1..=3 {
            let t = gen_complete_tree(h, b + 1, b).unwrap();
            assert!(is_complete_tree(&t));
            assert_eq!(t.targets(), t.leaves().as_slice());
            let best = oracle(&t, 40).saved_target_weight;
            assert_eq!(best, ((b + 1) as u64).pow(h as u32) - 1);
        }
    }
}

#[test]
fn greedy_pathology_counts() {
    for (h, b) in [(3, 1), (4, 1), (5, 1), (6, 1)] {
        let p = gen_greedy_pathology(h, b).unwrap();
        let inst = &p.instance;
        assert_eq!(p.tips.len(), h - 1);
        assert!(p.pendants.iter().all(|g| g.len() == b + 2));

        let greedy = solve_greedy_degree(inst);
        assert!(witness_ok(inst, &greedy));
        let mut protected: Vec<_> = greedy.strategy.moves().iter().map(|m| m.vertex).collect();
        protected.sort_unstable();
        let mut tips = p.tips.clone();
        tips.sort_unstable();
        assert!(
            tips.iter().all(|v| protected.contains(v)),
            "greedy protects every tip"
        );

        let out = simulate(inst, &greedy.strategy).unwrap();
        let pendants_saved = p
            .pendants
            .iter()
            .flatten()
            .filter(|&&v| !out.is_burned(v))
            .count();
        assert_eq!(pendants_saved, (h - 1) * (b + 2));

        let best = oracle(inst, 200);
        let out = simulate(inst, &best.strategy).unwrap();
        let counted = p
            .pendants
            .iter()
            .flatten()
            .chain(&p.tree)
            .filter(|&&v| !out.is_burned(v))
            .count();
        let opt_h = (h - 2) * (b + 2) + (0..h).map(|i| (b + 1).pow(i as u32)).sum::<usize>();
        assert!(counted >= opt_h, "h={h} b={b}: {counted} < {opt_h}");
    }
}

#[test]
fn greedy_pathology_with_spare_firefighters() {
    // With b >= 2 the spare firefighters of step 1 go to the tree root,
    // which already saves the whole complete tree.
    for h in 3..=4 {
        let p = gen_greedy_pathology(h, 2).unwrap();
        let greedy = solve_greedy_degree(&p.instance);
        assert!(greedy.strategy.at(1).contains(&p.tree[0]));
        assert!(greedy.saved_target_weight <= oracle(&p.instance, 200).saved_target_weight);
    }
}

#[test]
fn greedy_pathology_h4_b1_shape() {
    let p = gen_greedy_pathology(4, 1).unwrap();
    assert_eq!(p.instance.vertex_count(), 31);
    assert_eq!(p.tree.len(), 15);
    let greedy = solve_greedy_degree(&p.instance);
    // Tips and their pendants, plus one leaf of the complete tree at the last step.
    assert_eq!(greedy.saved_target_weight, 13);
}
