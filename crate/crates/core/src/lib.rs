//! Firefighting on trees with `b` firefighters per step.
//!
//! A fire starts at the root. At every step up to `b_t` not-yet-burning
//! vertices are protected, then the fire spreads to every unprotected
//! neighbour of a burning vertex. The goal is to save as much target weight
//! as possible, or to decide whether every target can be saved.
//!
//! The crate provides the spread simulator, exact solvers for the tractable
//! tree classes (bounded degree, k-stars via min-cost flow, k-caterpillars),
//! an exhaustive oracle for small trees, the degree-greedy heuristic and
//! generators for the classic gadget families.
//!
//! ```
//! use firefighter::solvers::{recognize_kstar, solve_kstar};
//! use firefighter::{simulate, RawInstance, TreeInstance};
//!
//! // Three legs of two vertices each, fire at the center, one firefighter.
//! let inst = TreeInstance::new(RawInstance {
//!     target_set: vec![4, 5, 6],
//!     ..RawInstance::new(7, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)], 0)
//! })?;
//! let star = recognize_kstar(&inst).expect("a 2-star");
//! let best = solve_kstar(&inst, &star)?;
//! assert_eq!(best.saved_target_weight, 2);
//!
//! let outcome = simulate(&inst, &best.strategy)?;
//! assert_eq!(outcome.burned.len() + outcome.saved.len(), 7);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod format;
pub mod generators;
pub mod instance;
pub mod mincostflow;
pub mod simulate;
pub mod solvers;
pub mod strategy;
pub mod transform;

pub use instance::{Budgets, InstanceError, RawInstance, Step, TreeInstance, Vertex};
pub use mincostflow::{solve_min_cost_flow, FlowError, FlowNetwork, FlowSolution};
pub use simulate::{
    saved_target_weight, simulate, validate_strategy, SimulationOutcome, StepRecord, Validity,
    Violation,
};
pub use solvers::{Algorithm, SolveError, SolveResult};
pub use strategy::{Move, Strategy, StrategyError};
pub use transform::{drop_shadowed_moves, move_up_firefighter, TransformError};
