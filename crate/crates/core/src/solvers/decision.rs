use super::{
    recognize_kstar, recognize_spine, solve_corridor, solve_exact_oracle_with, solve_kcaterpillar,
    solve_kstar, Algorithm, OracleConfig, OracleMode, SolveError, SolveResult,
};
use crate::instance::{RawInstance, TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

/// Answer to "can every target be saved?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    /// A strategy saving all targets, in the ids of the input instance.
    pub witness: Option<Strategy>,
    /// Solver that settled the question; `None` when it was trivial.
    pub algorithm: Option<Algorithm>,
}

/// Deletes everything strictly below a target vertex.
///
/// Returns the reduced instance and, for each of its vertices, the id it had
/// in `inst`.
pub fn normalize_targets_to_leaves(inst: &TreeInstance) -> (TreeInstance, Vec<Vertex>) {
    let n = inst.vertex_count();
    let mut kept = vec![true; n];
    for &v in inst.bfs_order() {
        if let Some(p) = inst.parent(v) {
            kept[v] = kept[p] && !inst.is_target(p);
        }
    }
    let old_ids: Vec<Vertex> = (0..n).filter(|&v| kept[v]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in old_ids.iter().enumerate() {
        new_id[v] = i;
    }
    let raw = RawInstance {
        n: old_ids.len(),
        edges: inst
            .edges()
            .iter()
            .filter(|&&(u, v)| kept[u] && kept[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect(),
        root: new_id[inst.root()],
        target_set: inst
            .targets()
            .iter()
            .filter(|&&v| kept[v])
            .map(|&v| new_id[v])
            .collect(),
        weights: Some(
            inst.targets()
                .iter()
                .filter(|&&v| kept[v])
                .map(|&v| (new_id[v], inst.weight(v)))
                .collect(),
        ),
        budgets: inst.budgets().clone(),
        forbidden: inst
            .forbidden()
            .iter()
            .filter(|&&(v, _)| kept[v])
            .map(|&(v, t)| (new_id[v], t))
            .collect(),
    };
    let reduced = TreeInstance::new(raw).expect("a rooted subtree of a valid instance is valid");
    (reduced, old_ids)
}

fn dispatch(inst: &TreeInstance, config: OracleConfig) -> Result<SolveResult, SolveError> {
    if let Ok(res) = solve_corridor(inst) {
        return Ok(res);
    }
    if let Some(d) = recognize_kstar(inst) {
        return solve_kstar(inst, &d);
    }
    if let Some(d) = recognize_spine(inst) {
        return solve_kcaterpillar(inst, &d);
    }
    match solve_exact_oracle_with(inst, OracleMode::Restricted, config) {
        Err(SolveError::InstanceTooLarge { .. }) => Err(SolveError::NoApplicableSolver),
        other => other,
    }
}

/// Optimal saved weight using the first applicable solver among corridor,
/// k-star, k-caterpillar and the oracle.
pub fn solve_auto(inst: &TreeInstance) -> Result<SolveResult, SolveError> {
    dispatch(inst, OracleConfig::default())
}

pub fn solve_auto_with(
    inst: &TreeInstance,
    config: OracleConfig,
) -> Result<SolveResult, SolveError> {
    dispatch(inst, config)
}

pub fn solve_bsave_decision(inst: &TreeInstance) -> Result<Decision, SolveError> {
    solve_bsave_decision_with(inst, OracleConfig::default())
}

/// Decides whether every target can be saved. Weights are ignored.
pub fn solve_bsave_decision_with(
    inst: &TreeInstance,
    config: OracleConfig,
) -> Result<Decision, SolveError> {
    if inst.is_target(inst.root()) {
        return Ok(Decision {
            yes: false,
            witness: None,
            algorithm: None,
        });
    }
    if inst.targets().is_empty() {
        return Ok(Decision {
            yes: true,
            witness: Some(Strategy::empty()),
            algorithm: None,
        });
    }
    let (reduced, old_ids) = normalize_targets_to_leaves(inst);
    let targets = reduced.targets().to_vec();
    let reduced = reduced.with_targets(targets)?;
    let res = dispatch(&reduced, config)?;
    let yes = res.saved_target_weight == reduced.total_target_weight();
    let witness = yes.then(|| {
        Strategy::new(
            res.strategy
                .moves()
                .into_iter()
                .map(|m| Move::new(old_ids[m.vertex], m.time)),
        )
        .expect("renaming keeps vertices distinct")
    });
    Ok(Decision {
        yes,
        witness,
        algorithm: Some(res.algorithm),
    })
}

/// Target weight that burns under an optimal strategy.
pub fn min_burned(inst: &TreeInstance, result: &SolveResult) -> u64 {
    inst.total_target_weight() - result.saved_target_weight
}
