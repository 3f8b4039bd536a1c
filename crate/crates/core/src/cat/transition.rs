use fixedbitset::FixedBitSet;

use super::{StrategyError, TransitionEvent};
use crate::graph::{root_tree, Dist, Graph, RootedTree, Vertex};
use crate::rules::{Channel, Cmp, DistClass, Movement, Observation, RuleSet};

/// Where the cat is inside the current transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Just played the reference vertex at the start of a transition.
    AtReference,
    /// Heard ONE at the reference vertex and played it again.
    RepeatAfterOne,
    /// Played `x1`, the first child of `w1` outside Y.
    ProbeX1,
    /// Heard GREATER after the probe and returned to the reference vertex.
    ReturnAfterGreater,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Play(Vertex),
    Captured,
    /// Every vertex of the component is certified mouse-free.
    Exhausted,
}

#[derive(Clone, Debug)]
struct Pending {
    w1: Vertex,
    x1: Vertex,
    leaves: Vec<Vertex>,
    /// `w2..wl`.
    others: Vec<Vertex>,
}

/// Bookkeeping of the tree strategy on one component.
///
/// Invariants at every transition start: X holds every non-descendant of
/// `r` other than `r` itself, and otherwise whole sets `V_u` for children
/// `u` of `r`; Y is a union of `V_u` over children of one non-leaf child of
/// `r`; X and Y are disjoint.
#[derive(Clone, Debug)]
pub struct TransitionState {
    tree: RootedTree,
    exact_channel: bool,
    r: Vertex,
    x: FixedBitSet,
    y: FixedBitSet,
    y_parent: Option<Vertex>,
    phase: Option<Phase>,
    pending: Option<Pending>,
    start: usize,
    x_start: usize,
    y_start: usize,
    round: usize,
    counts: [usize; 4],
    refinements: usize,
    last_kind: Option<u8>,
    type1_repeats: usize,
    events: Vec<TransitionEvent>,
    certified: Option<FixedBitSet>,
    last_exact: Option<Dist>,
    finished: bool,
}

impl TransitionState {
    /// Strategy for the component of `component_of`, rooted at its smallest
    /// vertex. Needs must-move play and a channel at least as informative as
    /// coarse classes with comparison.
    pub fn new(g: &Graph, component_of: Vertex, rules: RuleSet) -> Result<TransitionState, StrategyError> {
        if rules.movement != Movement::MustMove
            || !matches!(rules.channel, Channel::CoarseCmp | Channel::Exact)
        {
            return Err(StrategyError::UnsupportedRules(format!(
                "the transition strategy needs must-move play with coarse-cmp or exact feedback, got {} {}",
                rules.channel, rules.movement
            )));
        }
        let dist = g.distances_from(component_of);
        let root = (0..g.vertex_count())
            .find(|&v| dist[v].is_finite())
            .expect("component_of is in its own component");
        let tree = root_tree(g, component_of, root)?;
        let n = g.vertex_count();
        Ok(TransitionState {
            tree,
            exact_channel: rules.channel == Channel::Exact,
            r: root,
            x: FixedBitSet::with_capacity(n),
            y: FixedBitSet::with_capacity(n),
            y_parent: None,
            phase: None,
            pending: None,
            start: 0,
            x_start: 0,
            y_start: 0,
            round: 0,
            counts: [0; 4],
            refinements: 0,
            last_kind: None,
            type1_repeats: 0,
            events: Vec::new(),
            certified: None,
            last_exact: None,
            finished: false,
        })
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn reference(&self) -> Vertex {
        self.r
    }

    pub fn x(&self) -> &FixedBitSet {
        &self.x
    }

    pub fn y(&self) -> &FixedBitSet {
        &self.y
    }

    pub fn phase(&self) -> Option<Phase> {
        self.phase
    }

    /// Rounds played on this component.
    pub fn rounds_used(&self) -> usize {
        self.round
    }

    /// Completed transitions per type, `[t1, t2, t3, t4]`.
    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// Times the p = 0 refinement fired.
    pub fn refinements(&self) -> usize {
        self.refinements
    }

    /// Type 1 transitions that directly followed another type 1.
    pub fn type1_repeats(&self) -> usize {
        self.type1_repeats
    }

    /// `X ∪ Y` as it stood when the most recent observation was read at the
    /// start of a transition; `None` if that observation was read elsewhere.
    /// The mouse cannot be in this set.
    pub fn certified_free(&self) -> Option<&FixedBitSet> {
        self.certified.as_ref()
    }

    pub fn drain_events(&mut self) -> Vec<TransitionEvent> {
        std::mem::take(&mut self.events)
    }

    /// Consumes the observation of the last round (`None` before the first
    /// round) and decides the next step.
    pub fn next(&mut self, obs: Option<&Observation>) -> Result<Step, StrategyError> {
        if self.finished {
            return Err(violation("strategy already finished"));
        }
        self.certified = None;
        let Some(phase) = self.phase else {
            if obs.is_some() {
                return Err(violation("observation before the first move"));
            }
            self.phase = Some(Phase::AtReference);
            self.start = 1;
            return Ok(self.play(self.r));
        };
        let obs = obs.ok_or_else(|| violation("missing observation"))?;
        let (class, cmp) = self.normalize(obs)?;
        if class == DistClass::Zero {
            self.finished = true;
            return Ok(Step::Captured);
        }
        let step = match phase {
            Phase::AtReference => {
                self.begin_transition();
                self.at_reference(class)
            }
            Phase::RepeatAfterOne => {
                if class == DistClass::One {
                    return Err(violation("ONE twice at the reference vertex; the mouse must move"));
                }
                self.clear_y();
                self.emit(1, 1);
                self.start = self.round;
                self.begin_transition();
                self.at_reference(class)
            }
            Phase::ProbeX1 => {
                let p = self.pending.take().expect("probe has a pending transition");
                match cmp.ok_or_else(|| violation("probe observation without comparison"))? {
                    Cmp::NotGreater => {
                        for &v in &p.leaves {
                            self.x.insert(v);
                        }
                        for &w in &p.others {
                            self.x.union_with(self.tree.descendants(w));
                        }
                        self.clear_y();
                        self.emit(3, 2);
                        self.phase = Some(Phase::AtReference);
                        self.start = self.round + 1;
                        Ok(self.play(self.r))
                    }
                    Cmp::Greater => {
                        self.pending = Some(p);
                        self.phase = Some(Phase::ReturnAfterGreater);
                        Ok(self.play(self.r))
                    }
                }
            }
            Phase::ReturnAfterGreater => {
                let p = self.pending.take().expect("return has a pending transition");
                for &v in &p.leaves {
                    self.x.insert(v);
                }
                if class == DistClass::One {
                    self.x.union_with(self.tree.descendants(p.w1));
                    self.clear_y();
                    self.emit(3, 2);
                } else {
                    self.y.union_with(self.tree.descendants(p.x1));
                    self.y_parent = Some(p.w1);
                    self.emit(4, 2);
                }
                self.start = self.round;
                self.begin_transition();
                self.at_reference(class)
            }
        };
        debug_assert!(
            self.check_invariants().is_ok(),
            "{:?}",
            self.check_invariants()
        );
        step
    }

    /// Checks the structural invariants on X and Y.
    pub fn check_invariants(&self) -> Result<(), String> {
        let t = &self.tree;
        let below = t.descendants(self.r);
        for v in t.members().ones() {
            if !below.contains(v) && !self.x.contains(v) {
                return Err(format!("non-descendant {v} of reference {} missing from X", self.r));
            }
        }
        for &u in t.children(self.r) {
            let part = t.descendants(u);
            let inside = part.intersection(&self.x).count();
            if inside != 0 && inside != part.count_ones(..) {
                return Err(format!("X splits the subtree of {u}"));
            }
        }
        if !self.x.is_disjoint(&self.y) {
            return Err("X and Y overlap".into());
        }
        if let Some(w) = self.y_parent {
            if t.parent(w) != Some(self.r) || t.is_leaf(w) {
                return Err(format!("Y hangs below {w}, not a non-leaf child of {}", self.r));
            }
            let mut covered = FixedBitSet::with_capacity(t.universe());
            for &c in t.children(w) {
                if self.y.contains(c) {
                    covered.union_with(t.descendants(c));
                }
            }
            if covered != self.y {
                return Err("Y is not a union of child subtrees".into());
            }
        } else if self.y.count_ones(..) != 0 {
            return Err("Y without an owner".into());
        }
        Ok(())
    }

    fn normalize(&mut self, obs: &Observation) -> Result<(DistClass, Option<Cmp>), StrategyError> {
        if !self.exact_channel {
            return match obs.class {
                DistClass::Zero | DistClass::One | DistClass::TwoPlus => Ok((obs.class, obs.cmp)),
                _ => Err(violation(&format!("unexpected signal `{obs}`"))),
            };
        }
        let d = match obs.class {
            DistClass::Zero => Dist::ZERO,
            DistClass::Exact(d) => d,
            _ => return Err(violation(&format!("unexpected signal `{obs}`"))),
        };
        let cmp = self.last_exact.map(|prev| {
            if d <= prev {
                Cmp::NotGreater
            } else {
                Cmp::Greater
            }
        });
        self.last_exact = Some(d);
        let class = match d.value() {
            Some(0) => DistClass::Zero,
            Some(1) => DistClass::One,
            _ => DistClass::TwoPlus,
        };
        Ok((class, cmp))
    }

    fn play(&mut self, v: Vertex) -> Step {
        self.round += 1;
        Step::Play(v)
    }

    fn begin_transition(&mut self) {
        let mut free = self.x.clone();
        free.union_with(&self.y);
        self.certified = Some(free);
        self.x_start = self.x.count_ones(..);
        self.y_start = self.y.count_ones(..);
    }

    fn clear_y(&mut self) {
        self.y.clear();
        self.y_parent = None;
    }

    fn emit(&mut self, kind: u8, j: u8) {
        self.counts[kind as usize - 1] += 1;
        if kind == 1 && self.last_kind == Some(1) {
            self.type1_repeats += 1;
        }
        self.last_kind = Some(kind);
        self.events.push(TransitionEvent {
            kind,
            start_round: self.start,
            j,
            x_before: self.x_start,
            x_after: self.x.count_ones(..),
            y_before: self.y_start,
            y_after: self.y.count_ones(..),
        });
    }

    /// Reads a non-capture observation at the reference vertex and moves.
    fn at_reference(&mut self, class: DistClass) -> Result<Step, StrategyError> {
        if class == DistClass::One {
            self.phase = Some(Phase::RepeatAfterOne);
            return Ok(self.play(self.r));
        }
        loop {
            let t = &self.tree;
            let (mut leaves, mut inner) = (Vec::new(), Vec::new());
            for &u in t.children(self.r) {
                if !self.x.contains(u) {
                    if t.is_leaf(u) {
                        leaves.push(u);
                    } else {
                        inner.push(u);
                    }
                }
            }
            let w1 = match self.y_parent {
                Some(w) if inner.contains(&w) => w,
                Some(w) => return Err(violation(&format!("Y owner {w} is not an open non-leaf child"))),
                None => match inner.first() {
                    Some(&w) => w,
                    None => {
                        self.finished = true;
                        return Ok(Step::Exhausted);
                    }
                },
            };
            let x1 = t.children(w1).iter().copied().find(|&c| !self.y.contains(c));
            let Some(x1) = x1 else {
                let part = t.descendants(w1).clone();
                self.x.union_with(&part);
                self.clear_y();
                self.refinements += 1;
                self.x_start = self.x.count_ones(..);
                self.y_start = 0;
                continue;
            };
            if inner.len() == 1 {
                let y = std::mem::take(&mut self.y);
                self.x.union_with(&y);
                self.y = FixedBitSet::with_capacity(y.len());
                for v in leaves {
                    self.x.insert(v);
                }
                self.x.insert(w1);
                self.x.insert(self.r);
                self.y_parent = None;
                self.emit(2, 1);
                self.r = w1;
                self.phase = Some(Phase::AtReference);
                self.start = self.round + 1;
                return Ok(self.play(w1));
            }
            inner.retain(|&w| w != w1);
            self.pending = Some(Pending {
                w1,
                x1,
                leaves,
                others: inner,
            });
            self.phase = Some(Phase::ProbeX1);
            return Ok(self.play(x1));
        }
    }
}

fn violation(msg: &str) -> StrategyError {
    StrategyError::InvariantViolation(msg.to_string())
}

/// Free-function form of [`TransitionState::next`] that also returns the
/// transition events the step completed.
pub fn transition_cat_next(
    state: &mut TransitionState,
    obs: Option<&Observation>,
) -> Result<(Step, Vec<TransitionEvent>), StrategyError> {
    let step = state.next(obs)?;
    Ok((step, state.drain_events()))
}
