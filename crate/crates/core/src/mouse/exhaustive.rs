use thiserror::Error;

use super::{extract_witness, ConsistencySet};
use crate::cat::{StrategyError, TransitionEvent};
use crate::graph::{Graph, Vertex};
use crate::rules::{CatMove, CatStrategy, Observation, RuleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafKind {
    Captured,
    NoLegalMove,
    Resigned,
    Horizon,
}

impl LeafKind {
    pub fn cat_succeeded(self) -> bool {
        matches!(self, LeafKind::Captured | LeafKind::NoLegalMove)
    }
}

/// One observation branch, handed to the caller's check.
pub struct Node<'a, C> {
    pub round: usize,
    /// The cat after choosing this round's vertex.
    pub cat: &'a C,
    pub cat_vertex: Vertex,
    pub observation: Observation,
    /// Consistent positions at the end of the previous round.
    pub before: &'a ConsistencySet,
    /// Consistent positions after this round's observation.
    pub after: &'a ConsistencySet,
    /// Events the cat emitted while choosing `cat_vertex`.
    pub events: &'a [TransitionEvent],
}

/// A branch on which the mouse was not caught.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    pub kind: LeafKind,
    pub rounds: usize,
    pub history: Vec<(Vertex, Observation)>,
    pub witness: Vec<Vertex>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExploreReport {
    pub leaves: usize,
    pub captures: usize,
    pub no_legal_move: usize,
    /// Latest round at which some branch ended in a cat success.
    pub worst_round: usize,
    pub escapes: usize,
    pub first_escape: Option<Escape>,
}

impl ExploreReport {
    pub fn cat_always_wins(&self) -> bool {
        self.escapes == 0
    }
}

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error("round {round}: {source}")]
    Strategy {
        round: usize,
        history: Vec<(Vertex, Observation)>,
        #[source]
        source: StrategyError,
    },
    #[error("round {round}: {message}")]
    Check {
        round: usize,
        history: Vec<(Vertex, Observation)>,
        message: String,
    },
    #[error("more than {cap} branches")]
    LeafCap { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_rounds: usize,
    pub max_leaves: usize,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits {
            max_rounds: 1000,
            max_leaves: 50_000_000,
        }
    }
}

/// Plays a deterministic cat against every mouse at once: every feasible
/// observation sequence is followed, so the result covers every mouse
/// behavior, adaptive or not. `check` runs on every branch, including the
/// capture ones.
pub fn explore_all_branches<C, F>(
    g: &Graph,
    rules: RuleSet,
    cat: C,
    limits: ExploreLimits,
    mut check: F,
) -> Result<ExploreReport, ExploreError>
where
    C: CatStrategy + Clone,
    F: FnMut(&Node<'_, C>) -> Result<(), String>,
{
    let mut ctx = Ctx {
        g,
        rules,
        limits,
        report: ExploreReport::default(),
        check: &mut check,
    };
    ctx.dfs(cat, ConsistencySet::new(g.vertex_count()), None, 1)?;
    Ok(ctx.report)
}

struct Ctx<'a, F> {
    g: &'a Graph,
    rules: RuleSet,
    limits: ExploreLimits,
    report: ExploreReport,
    check: &'a mut F,
}

impl<F> Ctx<'_, F> {
    fn leaf(&mut self, kind: LeafKind, rounds: usize, set: &ConsistencySet) -> Result<(), ExploreError> {
        let r = &mut self.report;
        r.leaves += 1;
        if r.leaves > self.limits.max_leaves {
            return Err(ExploreError::LeafCap {
                cap: self.limits.max_leaves,
            });
        }
        match kind {
            LeafKind::Captured => r.captures += 1,
            LeafKind::NoLegalMove => r.no_legal_move += 1,
            _ => r.escapes += 1,
        }
        if kind.cat_succeeded() {
            r.worst_round = r.worst_round.max(rounds);
        } else if r.first_escape.is_none() {
            r.first_escape = Some(Escape {
                kind,
                rounds,
                history: set.history().to_vec(),
                witness: extract_witness(set, self.g, self.rules).unwrap_or_default(),
            });
        }
        Ok(())
    }

    fn dfs<C>(
        &mut self,
        mut cat: C,
        set: ConsistencySet,
        last: Option<Observation>,
        round: usize,
    ) -> Result<(), ExploreError>
    where
        C: CatStrategy + Clone,
        F: FnMut(&Node<'_, C>) -> Result<(), String>,
    {
        if round > self.limits.max_rounds {
            return self.leaf(LeafKind::Horizon, round - 1, &set);
        }
        let mv = cat.next_move(last.as_ref()).map_err(|source| ExploreError::Strategy {
            round,
            history: set.history().to_vec(),
            source,
        })?;
        let events = cat.drain_events();
        let c = match mv {
            CatMove::Play(c) => c,
            CatMove::Resign => return self.leaf(LeafKind::Resigned, round - 1, &set),
        };
        let parts = set.successors_by_observation(self.g, self.rules, c);
        if parts.is_empty() {
            return self.leaf(LeafKind::NoLegalMove, round, &set);
        }
        let mut open = Vec::new();
        for (obs, part) in parts {
            let node = Node {
                round,
                cat: &cat,
                cat_vertex: c,
                observation: obs,
                before: &set,
                after: &part,
                events: &events,
            };
            (self.check)(&node).map_err(|message| ExploreError::Check {
                round,
                history: part.history().to_vec(),
                message,
            })?;
            if obs.is_capture() {
                self.leaf(LeafKind::Captured, round, &part)?;
            } else {
                open.push((obs, part));
            }
        }
        let last_index = open.len().saturating_sub(1);
        let mut cat = Some(cat);
        for (i, (obs, part)) in open.into_iter().enumerate() {
            let branch = if i == last_index {
                cat.take().expect("cat moved once")
            } else {
                cat.as_ref().expect("cat still here").clone()
            };
            self.dfs(branch, part, Some(obs), round + 1)?;
        }
        Ok(())
    }
}
