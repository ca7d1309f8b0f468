use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Step, Vertex};

/// One protection: place a firefighter on `vertex` during step `time`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    pub vertex: Vertex,
    pub time: Step,
}

impl Move {
    pub fn new(vertex: Vertex, time: Step) -> Self {
        Move { vertex, time }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("vertex {0} is protected more than once")]
    DuplicateVertex(Vertex),
    #[error("move on vertex {0} has time 0; steps start at 1")]
    ZeroTime(Vertex),
}

/// A protection strategy: a set of moves, at most one per vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Strategy {
    by_vertex: BTreeMap<Vertex, Step>,
}

impl Strategy {
    pub fn empty() -> Self {
        Strategy::default()
    }

    pub fn new(moves: impl IntoIterator<Item = Move>) -> Result<Self, StrategyError> {
        let mut by_vertex = BTreeMap::new();
        for m in moves {
            if m.time == 0 {
                return Err(StrategyError::ZeroTime(m.vertex));
            }
            if by_vertex.insert(m.vertex, m.time).is_some() {
                return Err(StrategyError::DuplicateVertex(m.vertex));
            }
        }
        Ok(Strategy { by_vertex })
    }

    /// Builds from `(vertex, time)` pairs.
    pub fn from_pairs(pairs: &[(Vertex, Step)]) -> Result<Self, StrategyError> {
        Strategy::new(pairs.iter().map(|&(v, t)| Move::new(v, t)))
    }

    pub fn len(&self) -> usize {
        self.by_vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_vertex.is_empty()
    }

    pub fn time_of(&self, v: Vertex) -> Option<Step> {
        self.by_vertex.get(&v).copied()
    }

    pub fn contains(&self, m: Move) -> bool {
        self.time_of(m.vertex) == Some(m.time)
    }

    /// Moves ordered by time, then vertex.
    pub fn moves(&self) -> Vec<Move> {
        let mut moves: Vec<Move> = self
            .by_vertex
            .iter()
            .map(|(&vertex, &time)| Move { vertex, time })
            .collect();
        moves.sort_by_key(|m| (m.time, m.vertex));
        moves
    }

    /// Moves scheduled at `step`, ordered by vertex.
    pub fn at(&self, step: Step) -> Vec<Vertex> {
        self.by_vertex
            .iter()
            .filter(|&(_, &t)| t == step)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn last_time(&self) -> Step {
        self.by_vertex.values().copied().max().unwrap_or(0)
    }

    /// Number of moves per step, indexed by step.
    pub fn counts_by_step(&self) -> BTreeMap<Step, usize> {
        let mut counts = BTreeMap::new();
        for &t in self.by_vertex.values() {
            *counts.entry(t).or_insert(0) += 1;
        }
        counts
    }

    pub(crate) fn without(&self, v: Vertex) -> Strategy {
        let mut by_vertex = self.by_vertex.clone();
        by_vertex.remove(&v);
        Strategy { by_vertex }
    }

    /// Adds a move, rejecting a second move on the same vertex.
    pub fn insert(&mut self, m: Move) -> Result<(), StrategyError> {
        if m.time == 0 {
            return Err(StrategyError::ZeroTime(m.vertex));
        }
        if self.by_vertex.contains_key(&m.vertex) {
            return Err(StrategyError::DuplicateVertex(m.vertex));
        }
        self.by_vertex.insert(m.vertex, m.time);
        Ok(())
    }
}
