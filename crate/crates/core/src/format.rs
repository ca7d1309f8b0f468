//! JSON file formats for instances, strategies, simulation outcomes and
//! solver results. Unknown keys are rejected everywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::instance::{Budgets, InstanceError, RawInstance, Step, TreeInstance, Vertex};
use crate::simulate::{saved_target_weight, SimulationOutcome, StepRecord};
use crate::strategy::{Move, Strategy, StrategyError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("give either `budget` or `budgets`, not both")]
    BothBudgets,
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    pub root: Vertex,
    pub target_set: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<Vertex, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbidden: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Map<String, Value>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &TreeInstance, meta: Option<Map<String, Value>>) -> Self {
        let raw = inst.to_raw();
        let (budget, budgets) = match raw.budgets {
            Budgets::Constant(b) => (Some(b), None),
            Budgets::PerStep(list) => (None, Some(list)),
        };
        InstanceFile {
            n: raw.n,
            edges: raw.edges.iter().map(|&(u, v)| [u, v]).collect(),
            root: raw.root,
            target_set: raw.target_set,
            weights: raw.weights,
            budget,
            budgets,
            forbidden: raw.forbidden.iter().map(|&(v, t)| [v, t]).collect(),
            meta,
        }
    }

    /// Missing budgets default to a single firefighter per step.
    pub fn to_instance(&self) -> Result<TreeInstance, FormatError> {
        let budgets = match (self.budget, &self.budgets) {
            (Some(_), Some(_)) => return Err(FormatError::BothBudgets),
            (Some(b), None) => Budgets::Constant(b),
            (None, Some(list)) => Budgets::PerStep(list.clone()),
            (None, None) => Budgets::Constant(1),
        };
        Ok(TreeInstance::new(RawInstance {
            n: self.n,
            edges: self.edges.iter().map(|&[u, v]| (u, v)).collect(),
            root: self.root,
            target_set: self.target_set.clone(),
            weights: self.weights.clone(),
            budgets,
            forbidden: self.forbidden.iter().map(|&[v, t]| (v, t)).collect(),
        })?)
    }
}

pub fn parse_instance(
    text: &str,
) -> Result<(TreeInstance, Option<Map<String, Value>>), FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let inst = file.to_instance()?;
    Ok((inst, file.meta))
}

pub fn instance_to_json(inst: &TreeInstance, meta: Option<Map<String, Value>>) -> String {
    to_json(&InstanceFile::from_instance(inst, meta))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub moves: Vec<Move>,
}

impl From<&Strategy> for StrategyFile {
    fn from(s: &Strategy) -> Self {
        StrategyFile { moves: s.moves() }
    }
}

impl StrategyFile {
    pub fn to_strategy(&self) -> Result<Strategy, StrategyError> {
        Strategy::new(self.moves.iter().copied())
    }
}

pub fn parse_strategy(text: &str) -> Result<Strategy, FormatError> {
    let file: StrategyFile = serde_json::from_str(text)?;
    Ok(file.to_strategy()?)
}

pub fn strategy_to_json(strategy: &Strategy) -> String {
    to_json(&StrategyFile::from(strategy))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeFile {
    pub burned: Vec<Vertex>,
    pub saved: Vec<Vertex>,
    pub protected_applied: Vec<Move>,
    pub end_time: Step,
    pub saved_target_weight: u64,
    pub burned_target_weight: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<StepRecord>>,
}

impl OutcomeFile {
    pub fn new(inst: &TreeInstance, outcome: &SimulationOutcome, with_trace: bool) -> Self {
        let saved = saved_target_weight(inst, outcome);
        OutcomeFile {
            burned: outcome.burned.iter().copied().collect(),
            saved: outcome.saved.iter().copied().collect(),
            protected_applied: outcome.protected_applied.clone(),
            end_time: outcome.end_time,
            saved_target_weight: saved,
            burned_target_weight: inst.total_target_weight() - saved,
            trace: with_trace.then(|| outcome.trace.clone()),
        }
    }
}

/// What `solve` writes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub objective: String,
    pub algorithm_tag: Option<String>,
    pub saved_target_weight: Option<u64>,
    pub burned_target_weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<bool>,
    pub strategy: Option<StrategyFile>,
}

/// Pretty JSON with a trailing newline. Map keys come out sorted, so equal
/// values always give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types always serialize");
    s.push('\n');
    s
}
