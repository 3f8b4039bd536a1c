use super::transition::{Step, TransitionState};
use super::{StrategyError, TransitionEvent};
use crate::graph::{ForestCheck, Graph, GraphError, Vertex};
use crate::rules::{CatMove, CatStrategy, Observation, RuleSet};

/// Round budget of the tree strategy on a component of order `n`.
pub fn round_budget(n: usize) -> usize {
    let n = n as i64;
    (12 * n * n - 16 * n + 5) as usize
}

/// Per-component summary of a finished or running forest game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentAccount {
    pub smallest_vertex: Vertex,
    pub order: usize,
    pub rounds_used: usize,
    /// `[t1, t2, t3, t4]`.
    pub counts: [usize; 4],
    pub budget: usize,
}

impl ComponentAccount {
    /// The counting bounds of the tree strategy; `Err` names the first one
    /// that fails.
    pub fn check_bounds(&self) -> Result<(), String> {
        let [t1, t2, t3, t4] = self.counts;
        let n = self.order;
        let checks = [
            (t1 <= t2 + t3 + t4 + 1, "t1 <= t2 + t3 + t4 + 1"),
            (t2 < n.max(1), "t2 <= n - 1"),
            (t3 <= 2 * n.saturating_sub(1), "t3 <= 2n - 2"),
            (t4 <= (2 * n.saturating_sub(1)).pow(2), "t4 <= (2n - 2)^2"),
            (self.rounds_used <= self.budget, "rounds <= 12n^2 - 16n + 5"),
        ];
        match checks.iter().find(|c| !c.0) {
            Some((_, name)) => Err(format!(
                "component {} (n={n}): {name} fails with t={:?}, rounds={}",
                self.smallest_vertex, self.counts, self.rounds_used
            )),
            None => Ok(()),
        }
    }
}

/// The tree strategy applied to each component in turn, by ascending
/// smallest vertex, within each component's round budget.
#[derive(Clone, Debug)]
pub struct ForestCat {
    graph: Graph,
    rules: RuleSet,
    components: Vec<Vec<Vertex>>,
    current: usize,
    state: Option<TransitionState>,
    finished: Vec<ComponentAccount>,
    restart: bool,
    sweeps: usize,
    violations: usize,
}

pub fn forest_cat(g: &Graph, rules: RuleSet) -> Result<ForestCat, StrategyError> {
    if let ForestCheck::Cycle(c) = g.forest_check() {
        return Err(StrategyError::Graph(GraphError::Cycle(c)));
    }
    if g.vertex_count() == 0 {
        return Err(StrategyError::WrongGraph {
            expected: "at least one vertex".into(),
        });
    }
    // Validates the rules once up front.
    TransitionState::new(g, 0, rules)?;
    Ok(ForestCat {
        graph: g.clone(),
        rules,
        components: g.components(),
        current: 0,
        state: None,
        finished: Vec::new(),
        restart: false,
        sweeps: 0,
        violations: 0,
    })
}

impl ForestCat {
    /// Starts over from the first component instead of resigning once every
    /// component is done, and after any invariant violation. Useful when the
    /// game is played on a graph the strategy was not built for.
    pub fn restarting(mut self) -> ForestCat {
        self.restart = true;
        self
    }

    /// The transition state of the component being played.
    pub fn current(&self) -> Option<&TransitionState> {
        self.state.as_ref()
    }

    /// Completed full passes over all components.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Invariant violations absorbed by a restarting cat.
    pub fn violations(&self) -> usize {
        self.violations
    }

    /// Accounts of finished components, then the running one.
    pub fn accounts(&self) -> Vec<ComponentAccount> {
        let mut out = self.finished.clone();
        if let Some(s) = &self.state {
            out.push(account(s, &self.components[self.current]));
        }
        out
    }

    fn start_component(&mut self) -> Result<Option<Vertex>, StrategyError> {
        loop {
            if self.current >= self.components.len() {
                if !self.restart {
                    return Ok(None);
                }
                self.sweeps += 1;
                self.current = 0;
                self.finished.clear();
            }
            let comp = &self.components[self.current];
            let mut state = TransitionState::new(&self.graph, comp[0], self.rules)?;
            match state.next(None)? {
                Step::Play(v) => {
                    self.state = Some(state);
                    return Ok(Some(v));
                }
                _ => unreachable!("first step always plays the root"),
            }
        }
    }

    fn close_component(&mut self) {
        if let Some(s) = self.state.take() {
            self.finished.push(account(&s, &self.components[self.current]));
        }
        self.current += 1;
    }
}

fn account(s: &TransitionState, comp: &[Vertex]) -> ComponentAccount {
    ComponentAccount {
        smallest_vertex: comp[0],
        order: comp.len(),
        rounds_used: s.rounds_used(),
        counts: s.counts(),
        budget: round_budget(comp.len()),
    }
}

impl CatStrategy for ForestCat {
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        let next = match (&mut self.state, last) {
            (None, _) => self.start_component()?,
            (Some(state), Some(obs)) => {
                let budget = round_budget(self.components[self.current].len());
                let step = if obs.is_capture() || state.rounds_used() < budget {
                    match state.next(Some(obs)) {
                        Err(StrategyError::InvariantViolation(_)) if self.restart => {
                            self.violations += 1;
                            self.current = self.components.len();
                            self.state = None;
                            return Ok(self.start_component()?.map_or(CatMove::Resign, CatMove::Play));
                        }
                        other => other?,
                    }
                } else {
                    Step::Exhausted
                };
                match step {
                    Step::Play(v) => Some(v),
                    Step::Captured => None,
                    Step::Exhausted => {
                        self.close_component();
                        self.start_component()?
                    }
                }
            }
            (Some(_), None) => {
                return Err(StrategyError::InvariantViolation(
                    "missing observation mid-game".into(),
                ))
            }
        };
        Ok(next.map_or(CatMove::Resign, CatMove::Play))
    }

    fn drain_events(&mut self) -> Vec<TransitionEvent> {
        self.state
            .as_mut()
            .map(TransitionState::drain_events)
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;
    use crate::mouse::{explore_all_branches, phantom_adversary, ExploreLimits, PhantomMode};
    use crate::rules::{play_game, Outcome};

    #[test]
    fn budget_values() {
        assert_eq!(round_budget(1), 1);
        assert_eq!(round_budget(2), 21);
        assert_eq!(round_budget(10), 1045);
    }

    #[test]
    fn two_isolated_vertices_end_by_round_two() {
        // Must-move play strands a mouse on an isolated vertex.
        let g = Graph::empty(2);
        let mut cat = forest_cat(&g, RuleSet::MAIN).unwrap();
        let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Greedy);
        let r = play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, 10).unwrap();
        assert_eq!((r.outcome, r.rounds_played), (Outcome::MouseNoLegalMove, 2));
    }

    #[test]
    fn two_edges_every_mouse_is_caught() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cat = forest_cat(&g, RuleSet::MAIN).unwrap();
        let mut first_component_rounds = 0;
        let r = explore_all_branches(&g, RuleSet::MAIN, cat, ExploreLimits::default(), |node| {
            if node.cat_vertex >= 2 && first_component_rounds == 0 {
                first_component_rounds = node.round - 1;
            }
            Ok(())
        })
        .unwrap();
        assert!(r.cat_always_wins());
        assert!(first_component_rounds >= 1 && first_component_rounds <= round_budget(2));
        assert!(r.worst_round <= round_budget(2) * 2);
    }

    #[test]
    fn restarting_cat_keeps_playing() {
        let g = Graph::empty(1);
        let mut cat = forest_cat(&g, RuleSet::MAIN).unwrap().restarting();
        assert_eq!(cat.next_move(None).unwrap(), CatMove::Play(0));
        let far = Observation {
            class: crate::rules::DistClass::TwoPlus,
            cmp: None,
        };
        assert_eq!(cat.next_move(Some(&far)).unwrap(), CatMove::Play(0));
        assert_eq!(cat.sweeps(), 1);
    }

    #[test]
    fn rejects_cycles() {
        assert!(forest_cat(&make_named("cycle", 4).unwrap(), RuleSet::MAIN).is_err());
    }
}
