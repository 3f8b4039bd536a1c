use std::sync::Arc;

use super::{extract_witness, ConsistencySet};
use crate::cat::StrategyError;
use crate::graph::{Graph, Vertex};
use crate::rules::{MouseAgent, MouseKind, MouseReply, MouseView, Observation, RuleSet};
use crate::solver::{InfoState, Level, SolvedGame};

#[derive(Clone, Debug)]
pub enum PhantomMode {
    /// Keep the largest non-capture class.
    Greedy,
    /// Keep the class whose solver level is highest.
    Exact(Arc<SolvedGame>),
}

/// Lazy adversary: never commits to a position, only to signals, and keeps
/// every trajectory that is consistent with them.
#[derive(Clone, Debug)]
pub struct PhantomAdversary {
    graph: Graph,
    rules: RuleSet,
    mode: PhantomMode,
    set: ConsistencySet,
}

pub fn phantom_adversary(g: &Graph, rules: RuleSet, mode: PhantomMode) -> PhantomAdversary {
    PhantomAdversary {
        graph: g.clone(),
        rules,
        mode,
        set: ConsistencySet::new(g.vertex_count()),
    }
}

impl PhantomAdversary {
    pub fn consistency(&self) -> &ConsistencySet {
        &self.set
    }

    /// Picks the signal for cat vertex `c` and advances the consistency set.
    /// `None` when the mouse has no legal move.
    pub fn choose(&mut self, c: Vertex) -> Result<Option<Observation>, StrategyError> {
        let parts = self.set.successors_by_observation(&self.graph, self.rules, c);
        let mut choice: Option<(Observation, ConsistencySet)> = None;
        let mut best_key = None;
        for (obs, part) in &parts {
            if obs.is_capture() {
                continue;
            }
            let key: u64 = match &self.mode {
                PhantomMode::Greedy => part.len() as u64,
                PhantomMode::Exact(game) => {
                    match game.level(&InfoState::from_consistency(part, self.rules)) {
                        Some(Level::Win(k)) => u64::from(k),
                        Some(Level::Lose) => u64::MAX,
                        None => {
                            return Err(StrategyError::InvariantViolation(format!(
                                "signal {obs} leads to a state the solver never reached"
                            )))
                        }
                    }
                }
            };
            // Strictly greater keeps the first class in observation order.
            if best_key.is_none_or(|b| key > b) {
                best_key = Some(key);
                choice = Some((*obs, part.clone()));
            }
        }
        let choice = choice.or_else(|| parts.into_iter().next());
        Ok(choice.map(|(obs, part)| {
            self.set = part;
            obs
        }))
    }
}

impl MouseAgent for PhantomAdversary {
    fn kind(&self) -> MouseKind {
        MouseKind::Phantom
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        match self.choose(view.cat())? {
            Some(obs) => Ok(MouseReply::Signal(obs)),
            None => Err(StrategyError::InvariantViolation(
                "phantom asked to move with no legal move".into(),
            )),
        }
    }

    fn witness(&mut self) -> Option<Vec<Vertex>> {
        extract_witness(&self.set, &self.graph, self.rules).ok()
    }
}
