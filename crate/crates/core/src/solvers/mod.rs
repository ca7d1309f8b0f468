//! Strategy-producing algorithms.

mod caterpillar;
mod corridor;
mod decision;
mod greedy;
mod oracle;
mod spider;
mod star;

use std::fmt;

use thiserror::Error;

use crate::instance::{InstanceError, TreeInstance};
use crate::mincostflow::FlowError;
use crate::simulate::{saved_target_weight, simulate};
use crate::strategy::Strategy;

pub use caterpillar::{
    is_kcaterpillar, recognize_spine, solve_kcaterpillar, CaterpillarDecomposition,
};
pub use corridor::{corridor_applies, is_complete_tree, solve_corridor};
pub use decision::{
    min_burned, normalize_targets_to_leaves, solve_auto, solve_auto_with, solve_bsave_decision,
    solve_bsave_decision_with, Decision,
};
pub use greedy::solve_greedy_degree;
pub use oracle::{solve_exact_oracle, solve_exact_oracle_with, OracleConfig, OracleMode};
pub use star::{
    is_kstar, kstar_network, recognize_kstar, solve_kstar, KStarNetwork, StarDecomposition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    OracleFull,
    OracleRestricted,
    GreedyDegree,
    Corridor,
    KStar,
    KCaterpillar,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::OracleFull => "oracle-full",
            Algorithm::OracleRestricted => "oracle-restricted",
            Algorithm::GreedyDegree => "greedy-degree",
            Algorithm::Corridor => "corridor",
            Algorithm::KStar => "kstar",
            Algorithm::KCaterpillar => "kcaterpillar",
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Algorithm::GreedyDegree)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance has {n} vertices, above the oracle cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("tree is not a k-star")]
    NotAStar,
    #[error("tree is not a k-caterpillar")]
    NotACaterpillar,
    #[error("decomposition does not match the instance: {0}")]
    DecompositionMismatch(String),
    #[error("no polynomial case applies and the instance exceeds the oracle cap")]
    NoApplicableSolver,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Optimal (or heuristic) saved target weight with a witnessing strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub saved_target_weight: u64,
    pub strategy: Strategy,
    pub algorithm: Algorithm,
}

/// Simulates `strategy` to fill in the saved weight.
pub(crate) fn finish(inst: &TreeInstance, strategy: Strategy, algorithm: Algorithm) -> SolveResult {
    let outcome = simulate(inst, &strategy)
        .unwrap_or_else(|v| panic!("{algorithm} produced an invalid strategy: {v}"));
    SolveResult {
        saved_target_weight: saved_target_weight(inst, &outcome),
        strategy,
        algorithm,
    }
}
