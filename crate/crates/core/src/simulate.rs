//! Discrete-time fire spread and strategy validation.
//!
//! At step `t` the moves scheduled for `t` are applied first (each target must
//! not be burning yet), then every unprotected vertex adjacent to a burning
//! vertex catches fire. The process stops at the first step that burns nothing
//! new. Moves scheduled after that are not applied, but are still checked.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Step, TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

/// The first reason a strategy is not valid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    /// Validity condition 1: the protected vertex is already burning.
    #[error("condition 1 violated: vertex {vertex} is burned at time {time}")]
    ProtectBurnedVertex { vertex: Vertex, time: Step },
    /// Validity condition 2: more moves than the step's budget.
    #[error("condition 2 violated: {used} moves at time {time}, budget is {budget}")]
    BudgetExceeded {
        time: Step,
        used: usize,
        budget: usize,
    },
    #[error("vertex {vertex} may not be protected at time {time}")]
    ForbiddenMove { vertex: Vertex, time: Step },
    #[error("move targets vertex {vertex}, but the instance has {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("move on vertex {vertex} at time {time} is outside 1..={n}")]
    TimeOutOfRange {
        vertex: Vertex,
        time: Step,
        n: usize,
    },
}

impl Violation {
    pub fn time(&self) -> Option<Step> {
        match *self {
            Violation::ProtectBurnedVertex { time, .. }
            | Violation::BudgetExceeded { time, .. }
            | Violation::ForbiddenMove { time, .. }
            | Violation::TimeOutOfRange { time, .. } => Some(time),
            Violation::VertexOutOfRange { .. } => None,
        }
    }
}

/// Result of [`validate_strategy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Violation),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Valid => f.write_str("valid"),
            Validity::Invalid(v) => write!(f, "invalid: {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub step: Step,
    pub protected: Vec<Vertex>,
    pub burned: Vec<Vertex>,
}

/// Final partition of the vertices plus the per-step trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationOutcome {
    pub burned: BTreeSet<Vertex>,
    pub saved: BTreeSet<Vertex>,
    pub protected_applied: Vec<Move>,
    pub trace: Vec<StepRecord>,
    /// Last step that burned at least one vertex; 0 if only the root burns.
    pub end_time: Step,
    burn_time: Vec<Option<Step>>,
}

impl SimulationOutcome {
    /// Step at which `v` caught fire (0 for the root), if it burned.
    pub fn burn_time(&self, v: Vertex) -> Option<Step> {
        self.burn_time[v]
    }

    pub fn is_burned(&self, v: Vertex) -> bool {
        self.burn_time[v].is_some()
    }
}

/// Runs the fire-spread process under `strat`.
pub fn simulate(inst: &TreeInstance, strat: &Strategy) -> Result<SimulationOutcome, Violation> {
    let n = inst.vertex_count();
    for m in strat.moves() {
        if m.vertex >= n {
            return Err(Violation::VertexOutOfRange {
                vertex: m.vertex,
                n,
            });
        }
        if m.time > n {
            return Err(Violation::TimeOutOfRange {
                vertex: m.vertex,
                time: m.time,
                n,
            });
        }
    }

    let moves = strat.moves();
    let mut next_move = 0;
    let mut burn_time: Vec<Option<Step>> = vec![None; n];
    let mut protected = vec![false; n];
    let mut applied = Vec::new();
    let mut trace = Vec::new();
    let mut end_time = 0;

    burn_time[inst.root()] = Some(0);
    let mut front = vec![inst.root()];
    let mut t = 0;
    loop {
        t += 1;
        let start = next_move;
        while next_move < moves.len() && moves[next_move].time == t {
            next_move += 1;
        }
        let step_moves = &moves[start..next_move];
        check_step(inst, t, step_moves, &burn_time)?;
        for m in step_moves {
            protected[m.vertex] = true;
            applied.push(*m);
        }

        let mut newly = Vec::new();
        for &u in &front {
            for &v in inst.neighbors(u) {
                if burn_time[v].is_none() && !protected[v] {
                    burn_time[v] = Some(t);
                    newly.push(v);
                }
            }
        }
        newly.sort_unstable();

        if newly.is_empty() {
            if !step_moves.is_empty() {
                trace.push(StepRecord {
                    step: t,
                    protected: step_moves.iter().map(|m| m.vertex).collect(),
                    burned: Vec::new(),
                });
            }
            break;
        }
        end_time = t;
        trace.push(StepRecord {
            step: t,
            protected: step_moves.iter().map(|m| m.vertex).collect(),
            burned: newly.clone(),
        });
        front = newly;
    }

    // Moves after the fire stopped have no effect but must still be legal.
    while next_move < moves.len() {
        let t = moves[next_move].time;
        let start = next_move;
        while next_move < moves.len() && moves[next_move].time == t {
            next_move += 1;
        }
        check_step(inst, t, &moves[start..next_move], &burn_time)?;
    }

    let burned = (0..n).filter(|&v| burn_time[v].is_some()).collect();
    let saved = (0..n).filter(|&v| burn_time[v].is_none()).collect();
    Ok(SimulationOutcome {
        burned,
        saved,
        protected_applied: applied,
        trace,
        end_time,
        burn_time,
    })
}

fn check_step(
    inst: &TreeInstance,
    t: Step,
    step_moves: &[Move],
    burn_time: &[Option<Step>],
) -> Result<(), Violation> {
    let budget = inst.budget_at(t);
    if step_moves.len() > budget {
        return Err(Violation::BudgetExceeded {
            time: t,
            used: step_moves.len(),
            budget,
        });
    }
    for m in step_moves {
        if inst.is_forbidden(m.vertex, t) {
            return Err(Violation::ForbiddenMove {
                vertex: m.vertex,
                time: t,
            });
        }
        if burn_time[m.vertex].is_some() {
            return Err(Violation::ProtectBurnedVertex {
                vertex: m.vertex,
                time: t,
            });
        }
    }
    Ok(())
}

/// Checks both validity conditions and the forbidden placements.
pub fn validate_strategy(inst: &TreeInstance, strat: &Strategy) -> Validity {
    match simulate(inst, strat) {
        Ok(_) => Validity::Valid,
        Err(v) => Validity::Invalid(v),
    }
}

/// Total weight of the saved target vertices.
pub fn saved_target_weight(inst: &TreeInstance, outcome: &SimulationOutcome) -> u64 {
    inst.targets()
        .iter()
        .filter(|&&v| !outcome.is_burned(v))
        .map(|&v| inst.weight(v))
        .sum()
}
