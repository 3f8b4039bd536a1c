//! Exact solver for the information-state game.
//!
//! A node is the set of positions the mouse could occupy given every signal
//! so far. Each trajectory's previous exact distance is a function of its
//! position and the cat's previous vertex, so a node stores the position set
//! plus (only when the rules need it) that previous vertex. The cat picks a
//! vertex; the successors of every position are split by the observation
//! they would produce; the adversary picks any nonempty non-capture class.
//! The cat's winning region and optimal capture times come from a backward
//! fixpoint over the reachable node graph.

mod table;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{DistanceTable, Graph, Vertex};
use crate::mouse::ConsistencySet;
use crate::rules::{feedback, DistClass, Observation, RuleSet};

pub use table::{variant_table, TableRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_vertices: usize,
    pub max_states: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_vertices: 12,
            max_states: 1 << 21,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices, solver cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("state cap of {cap} exceeded")]
    StateCap { cap: usize },
    #[error("state is outside the cat's winning region")]
    NotWinning,
    #[error("state was never reached during exploration")]
    UnknownState,
}

/// Solver node: consistent mouse positions, plus the cat's previous vertex
/// when the rules depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoState {
    positions: u64,
    last_cat: Option<u8>,
    initial: bool,
}

impl InfoState {
    /// Before round 1: every vertex possible, nothing observed.
    pub fn initial(n: usize) -> InfoState {
        InfoState {
            positions: full_mask(n),
            last_cat: None,
            initial: true,
        }
    }

    pub fn from_consistency(set: &ConsistencySet, rules: RuleSet) -> InfoState {
        let mut positions = 0u64;
        for &(v, _) in set.elements() {
            positions |= 1 << v;
        }
        InfoState {
            positions,
            last_cat: set
                .last_cat()
                .filter(|_| rules.tracks_previous_cat())
                .map(|c| c as u8),
            initial: set.history().is_empty(),
        }
    }

    pub fn is_initial(&self) -> bool {
        self.initial
    }

    pub fn positions(&self) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.positions)
    }

    pub fn position_count(&self) -> usize {
        self.positions.count_ones() as usize
    }

    pub fn last_cat(&self) -> Option<Vertex> {
        self.last_cat.map(usize::from)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Attractor level: rounds the cat needs to force capture, or `Lose`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Win(u32),
    Lose,
}

impl Level {
    pub fn rounds(self) -> Option<u32> {
        match self {
            Level::Win(k) => Some(k),
            Level::Lose => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    CatWins { optimal_rounds: u32 },
    MouseWins,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: SolveOutcome,
    pub states_explored: usize,
}

impl SolveResult {
    pub fn cat_wins(&self) -> bool {
        matches!(self.outcome, SolveOutcome::CatWins { .. })
    }

    pub fn optimal_rounds(&self) -> Option<u32> {
        match self.outcome {
            SolveOutcome::CatWins { optimal_rounds } => Some(optimal_rounds),
            SolveOutcome::MouseWins => None,
        }
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            SolveOutcome::CatWins { optimal_rounds } => write!(
                f,
                "outcome=cat rounds={optimal_rounds} states={}",
                self.states_explored
            ),
            SolveOutcome::MouseWins => {
                write!(f, "outcome=mouse rounds=- states={}", self.states_explored)
            }
        }
    }
}

const LOSE: u32 = u32::MAX;

/// The explored node graph with its attractor levels.
#[derive(Clone, Debug)]
pub struct SolvedGame {
    graph: Graph,
    rules: RuleSet,
    dist: DistanceTable,
    move_masks: Vec<u64>,
    states: Vec<InfoState>,
    index: HashMap<InfoState, u32>,
    /// `offsets[s * n + c] .. offsets[s * n + c + 1]` indexes `successors`.
    offsets: Vec<u32>,
    successors: Vec<u32>,
    levels: Vec<u32>,
}

/// Winner and optimal capture time of `(g, rules)`.
pub fn solve(g: &Graph, rules: RuleSet, limits: SolverLimits) -> Result<SolveResult, SolveError> {
    Ok(SolvedGame::new(g, rules, limits)?.result())
}

impl SolvedGame {
    pub fn new(g: &Graph, rules: RuleSet, limits: SolverLimits) -> Result<SolvedGame, SolveError> {
        let n = g.vertex_count();
        let cap = limits.max_vertices.min(64);
        if n > cap {
            return Err(SolveError::TooManyVertices { n, cap });
        }
        let move_masks = (0..n)
            .map(|m| g.neighbors(m).iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        let mut game = SolvedGame {
            graph: g.clone(),
            rules,
            dist: g.all_pairs(),
            move_masks,
            states: Vec::new(),
            index: HashMap::new(),
            offsets: vec![0],
            successors: Vec::new(),
            levels: Vec::new(),
        };
        game.explore(limits.max_states)?;
        game.assign_levels();
        Ok(game)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn result(&self) -> SolveResult {
        let outcome = match self.levels[0] {
            LOSE => SolveOutcome::MouseWins,
            k => SolveOutcome::CatWins { optimal_rounds: k },
        };
        SolveResult {
            outcome,
            states_explored: self.states.len(),
        }
    }

    pub fn initial_state(&self) -> InfoState {
        self.states[0]
    }

    pub fn states(&self) -> &[InfoState] {
        &self.states
    }

    pub fn level(&self, state: &InfoState) -> Option<Level> {
        self.index.get(state).map(|&id| to_level(self.levels[id as usize]))
    }

    /// Splits the successors of `state` under cat vertex `c` by observation,
    /// in ascending observation order. The capture class is included.
    pub fn partition(&self, state: &InfoState, c: Vertex) -> Vec<(Observation, InfoState)> {
        let n = self.graph.vertex_count();
        let mut buckets: Vec<(Observation, u64)> = Vec::with_capacity(4);
        let mut add = |obs: Observation, m: Vertex| match buckets.iter_mut().find(|b| b.0 == obs) {
            Some(b) => b.1 |= 1 << m,
            None => buckets.push((obs, 1 << m)),
        };
        let track = self.rules.tracks_previous_cat();
        if state.initial {
            for m in 0..n {
                add(feedback(self.rules, self.dist.get(c, m), None), m);
            }
        } else {
            let last = state.last_cat();
            if !self.rules.channel.has_comparison() {
                let mut reach = 0u64;
                for m in state.positions() {
                    reach |= self.move_mask(m, last);
                }
                for m2 in bits(reach) {
                    add(feedback(self.rules, self.dist.get(c, m2), None), m2);
                }
            } else {
                let last = last.expect("comparison channels track the previous cat vertex");
                for m in state.positions() {
                    let d_prev = self.dist.get(last, m);
                    for m2 in bits(self.move_mask(m, Some(last))) {
                        add(feedback(self.rules, self.dist.get(c, m2), Some(d_prev)), m2);
                    }
                }
            }
        }
        buckets.sort_unstable_by_key(|b| b.0);
        buckets
            .into_iter()
            .map(|(obs, positions)| {
                (
                    obs,
                    InfoState {
                        positions,
                        last_cat: track.then_some(c as u8),
                        initial: false,
                    },
                )
            })
            .collect()
    }

    fn move_mask(&self, m: Vertex, last: Option<Vertex>) -> u64 {
        let mut mask = self.move_masks[m];
        if self.rules.movement.may_stay() {
            mask |= 1 << m;
        }
        if self.rules.movement.avoids_cat() {
            if let Some(c) = last {
                mask &= !(1u64 << c);
            }
        }
        mask
    }

    /// The node reached from `state` when the cat plays `c` and hears `obs`.
    pub fn successor(&self, state: &InfoState, c: Vertex, obs: &Observation) -> Option<InfoState> {
        self.partition(state, c)
            .into_iter()
            .find(|(o, _)| o == obs)
            .map(|(_, s)| s)
    }

    /// The cat's optimal vertex: the smallest one whose worst non-capture
    /// successor has the lowest level.
    pub fn optimal_cat_move(&self, state: &InfoState) -> Result<Vertex, SolveError> {
        let id = *self.index.get(state).ok_or(SolveError::UnknownState)? as usize;
        let level = self.levels[id];
        if level == LOSE {
            return Err(SolveError::NotWinning);
        }
        let n = self.graph.vertex_count();
        (0..n)
            .find(|&c| self.action_value(id, c) == level)
            .ok_or(SolveError::NotWinning)
    }

    fn action_value(&self, id: usize, c: Vertex) -> u32 {
        let n = self.graph.vertex_count();
        let k = id * n + c;
        let succ = &self.successors[self.offsets[k] as usize..self.offsets[k + 1] as usize];
        let worst = succ.iter().map(|&s| self.levels[s as usize]).max().unwrap_or(0);
        worst.saturating_add(1).min(LOSE)
    }

    fn explore(&mut self, max_states: usize) -> Result<(), SolveError> {
        let n = self.graph.vertex_count();
        let start = InfoState::initial(n);
        self.index.insert(start, 0);
        self.states.push(start);
        let mut queue = VecDeque::from([0u32]);
        // Ids are assigned in BFS order, so offsets are appended in id order.
        while let Some(id) = queue.pop_front() {
            let state = self.states[id as usize];
            for c in 0..n {
                for (obs, next) in self.partition(&state, c) {
                    if obs.class == DistClass::Zero {
                        continue;
                    }
                    let next_id = match self.index.get(&next) {
                        Some(&i) => i,
                        None => {
                            if self.states.len() >= max_states {
                                return Err(SolveError::StateCap { cap: max_states });
                            }
                            let i = self.states.len() as u32;
                            self.index.insert(next, i);
                            self.states.push(next);
                            queue.push_back(i);
                            i
                        }
                    };
                    self.successors.push(next_id);
                }
                self.offsets.push(self.successors.len() as u32);
            }
        }
        Ok(())
    }

    fn assign_levels(&mut self) {
        let n = self.graph.vertex_count();
        self.levels = vec![LOSE; self.states.len()];
        loop {
            let mut changed = false;
            for id in (0..self.states.len()).rev() {
                let best = (0..n).map(|c| self.action_value(id, c)).min().unwrap_or(LOSE);
                if best < self.levels[id] {
                    self.levels[id] = best;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn to_level(raw: u32) -> Level {
    if raw == LOSE {
        Level::Lose
    } else {
        Level::Win(raw)
    }
}
