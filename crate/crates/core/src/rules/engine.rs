use thiserror::Error;

use super::{feedback, legal_mouse_moves, Observation, RoundRecord, RuleSet};
use crate::cat::{StrategyError, TransitionEvent};
use crate::graph::{Dist, Graph, Vertex};
use crate::mouse::ConsistencySet;

/// What a cat strategy does next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatMove {
    Play(Vertex),
    /// The strategy has nothing left to try; the game ends uncaptured.
    Resign,
}

pub trait CatStrategy {
    /// Chooses the vertex for the next round from the observation of the
    /// round just played (`None` before round 1).
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError>;

    /// Bookkeeping events produced since the previous call.
    fn drain_events(&mut self) -> Vec<TransitionEvent> {
        Vec::new()
    }
}

impl<C: CatStrategy + ?Sized> CatStrategy for Box<C> {
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        (**self).next_move(last)
    }

    fn drain_events(&mut self) -> Vec<TransitionEvent> {
        (**self).drain_events()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MouseKind {
    /// Commits to a vertex every round.
    Concrete,
    /// Commits only to the observation; positions stay implicit.
    Phantom,
}

/// Everything the mouse may look at when answering round `round`: the full
/// cat history including this round's vertex.
pub struct MouseView<'a> {
    pub graph: &'a Graph,
    pub rules: RuleSet,
    pub round: usize,
    /// `c_1, ..., c_round`.
    pub cats: &'a [Vertex],
    /// Concrete agents only: the agent's previous position.
    pub position: Option<Vertex>,
    /// Concrete agents only: the legal positions for this round (never empty).
    pub legal: &'a [Vertex],
}

impl MouseView<'_> {
    pub fn cat(&self) -> Vertex {
        *self.cats.last().expect("cat moves first")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MouseReply {
    Move(Vertex),
    Signal(Observation),
}

pub trait MouseAgent {
    fn kind(&self) -> MouseKind;

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError>;

    /// A concrete trajectory consistent with the game, for phantom agents.
    fn witness(&mut self) -> Option<Vec<Vertex>> {
        None
    }
}

impl<M: MouseAgent + ?Sized> MouseAgent for Box<M> {
    fn kind(&self) -> MouseKind {
        (**self).kind()
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        (**self).reply(view)
    }

    fn witness(&mut self) -> Option<Vec<Vertex>> {
        (**self).witness()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    CatWins,
    MouseSurvivedHorizon,
    MouseNoLegalMove,
}

impl Outcome {
    pub fn id(self) -> &'static str {
        match self {
            Outcome::CatWins => "cat-wins",
            Outcome::MouseSurvivedHorizon => "mouse-survived",
            Outcome::MouseNoLegalMove => "mouse-no-legal-move",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GameResult {
    pub outcome: Outcome,
    /// Rounds the cat committed to. For `MouseNoLegalMove` this includes the
    /// round in which the mouse had nowhere to go, which has no record.
    pub rounds_played: usize,
    pub trace: Vec<RoundRecord>,
    /// Transition events, each tagged with the round whose observation
    /// produced it.
    pub events: Vec<(usize, TransitionEvent)>,
    pub witness: Option<Vec<Vertex>>,
}

impl GameResult {
    /// Line-oriented trace text: one `round=` line per round, `transition`
    /// lines after the round that triggered them, and a trailing `witness=`
    /// line for phantom games.
    pub fn to_trace_text(&self) -> String {
        let mut out = String::new();
        let mut events = self.events.iter().peekable();
        while let Some((_, e)) = events.next_if(|(r, _)| *r == 0) {
            out.push_str(&format!("{e}\n"));
        }
        for rec in &self.trace {
            out.push_str(&format!("{rec}\n"));
            while let Some((_, e)) = events.next_if(|(r, _)| *r == rec.round) {
                out.push_str(&format!("{e}\n"));
            }
        }
        if let Some(w) = &self.witness {
            let list: Vec<String> = w.iter().map(ToString::to_string).collect();
            out.push_str(&format!("witness={}\n", list.join(",")));
        }
        out
    }

    /// The trace with mouse positions filled in from the witness.
    pub fn omniscient_trace(&self) -> Option<Vec<RoundRecord>> {
        if self.trace.iter().all(|r| r.mouse.is_some()) {
            return Some(self.trace.clone());
        }
        let w = self.witness.as_ref()?;
        if w.len() < self.trace.len() {
            return None;
        }
        Some(
            self.trace
                .iter()
                .zip(w)
                .map(|(r, &m)| RoundRecord {
                    mouse: Some(m),
                    ..r.clone()
                })
                .collect(),
        )
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("max_rounds must be at least 1")]
    NoRounds,
    #[error("round {round}: cat chose vertex {vertex}, graph has {n} vertices")]
    InvalidCatVertex { round: usize, vertex: Vertex, n: usize },
    #[error("round {round}: mouse move to {vertex} is illegal (legal: {legal:?})")]
    IllegalMouseMove {
        round: usize,
        vertex: Vertex,
        legal: Vec<Vertex>,
    },
    #[error("round {round}: signal `{observation}` is infeasible")]
    InfeasibleSignal { round: usize, observation: Observation },
    #[error("round {round}: {kind:?} agent gave a reply of the wrong kind")]
    WrongReplyKind { round: usize, kind: MouseKind },
    #[error("round {round}: {source}")]
    Strategy {
        round: usize,
        #[source]
        source: StrategyError,
    },
}

/// Runs one game.
///
/// Each round the cat commits to a vertex from its observation history; the
/// mouse then answers knowing every cat vertex so far. Concrete agents name a
/// position, which is checked for legality; phantom agents name a signal,
/// which is checked for feasibility against the engine's own consistency
/// set. The game stops at capture, when the mouse has no legal move, when
/// the cat resigns, or after `max_rounds` rounds.
pub fn play_game(
    g: &Graph,
    rules: RuleSet,
    cat: &mut dyn CatStrategy,
    mouse: &mut dyn MouseAgent,
    max_rounds: usize,
) -> Result<GameResult, GameError> {
    if max_rounds == 0 {
        return Err(GameError::NoRounds);
    }
    let n = g.vertex_count();
    let kind = mouse.kind();
    let all: Vec<Vertex> = (0..n).collect();
    let mut cats = Vec::new();
    let mut trace: Vec<RoundRecord> = Vec::new();
    let mut events = Vec::new();
    let mut position: Option<Vertex> = None;
    let mut d_prev: Option<Dist> = None;
    let mut consistency = ConsistencySet::new(n);
    let mut outcome = Outcome::MouseSurvivedHorizon;
    let mut rounds_played = max_rounds;

    for round in 1..=max_rounds {
        let last = trace.last().map(|r| r.observation);
        let decision = cat
            .next_move(last.as_ref())
            .map_err(|source| GameError::Strategy { round, source })?;
        events.extend(cat.drain_events().into_iter().map(|e| (round - 1, e)));
        let c = match decision {
            CatMove::Play(c) if c < n => c,
            CatMove::Play(vertex) => return Err(GameError::InvalidCatVertex { round, vertex, n }),
            CatMove::Resign => {
                rounds_played = round - 1;
                break;
            }
        };
        cats.push(c);

        let legal = match (kind, position) {
            (MouseKind::Concrete, None) => all.clone(),
            (MouseKind::Concrete, Some(m)) => legal_mouse_moves(rules, g, m, cats[round - 2]),
            (MouseKind::Phantom, _) => {
                if round > 1 && consistency.successors_by_observation(g, rules, c).is_empty() {
                    Vec::new()
                } else {
                    all.clone()
                }
            }
        };
        if legal.is_empty() {
            outcome = Outcome::MouseNoLegalMove;
            rounds_played = round;
            break;
        }

        let view = MouseView {
            graph: g,
            rules,
            round,
            cats: &cats,
            position,
            legal: if kind == MouseKind::Concrete { &legal } else { &[] },
        };
        let reply = mouse
            .reply(&view)
            .map_err(|source| GameError::Strategy { round, source })?;
        let (observation, mouse_at) = match (kind, reply) {
            (MouseKind::Concrete, MouseReply::Move(m)) => {
                if !legal.contains(&m) {
                    return Err(GameError::IllegalMouseMove {
                        round,
                        vertex: m,
                        legal,
                    });
                }
                let d = g.distances_from(c)[m];
                let obs = feedback(rules, d, d_prev);
                d_prev = Some(d);
                position = Some(m);
                (obs, Some(m))
            }
            (MouseKind::Phantom, MouseReply::Signal(obs)) => {
                let next = consistency.update(g, rules, c, obs);
                if next.is_empty() {
                    return Err(GameError::InfeasibleSignal {
                        round,
                        observation: obs,
                    });
                }
                consistency = next;
                (obs, None)
            }
            _ => return Err(GameError::WrongReplyKind { round, kind }),
        };
        trace.push(RoundRecord {
            round,
            cat: c,
            mouse: mouse_at,
            observation,
        });
        if observation.is_capture() {
            outcome = Outcome::CatWins;
            rounds_played = round;
            break;
        }
    }

    Ok(GameResult {
        outcome,
        rounds_played,
        trace,
        events,
        witness: mouse.witness(),
    })
}
