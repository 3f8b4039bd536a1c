use std::sync::Arc;

use super::StrategyError;
use crate::graph::{Graph, Vertex};
use crate::rules::{CatMove, CatStrategy, Observation, RuleSet};
use crate::solver::{InfoState, SolveError, SolvedGame, SolverLimits};

/// Plays the solver's optimal move from the current information state.
#[derive(Clone, Debug)]
pub struct SolverCat {
    game: Arc<SolvedGame>,
    state: InfoState,
    last: Option<Vertex>,
}

impl SolverCat {
    pub fn new(game: Arc<SolvedGame>) -> SolverCat {
        let state = game.initial_state();
        SolverCat {
            game,
            state,
            last: None,
        }
    }

    pub fn state(&self) -> &InfoState {
        &self.state
    }
}

/// Solves `(g, rules)` and returns its optimal cat; fails if the mouse wins.
pub fn solver_cat(g: &Graph, rules: RuleSet) -> Result<SolverCat, StrategyError> {
    let game = SolvedGame::new(g, rules, SolverLimits::default())?;
    if !game.result().cat_wins() {
        return Err(SolveError::NotWinning.into());
    }
    Ok(SolverCat::new(Arc::new(game)))
}

impl CatStrategy for SolverCat {
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        if let (Some(c), Some(obs)) = (self.last, last) {
            self.state = self.game.successor(&self.state, c, obs).ok_or_else(|| {
                StrategyError::InvariantViolation(format!("signal `{obs}` is infeasible"))
            })?;
        }
        let c = self.game.optimal_cat_move(&self.state)?;
        self.last = Some(c);
        Ok(CatMove::Play(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;
    use crate::mouse::{phantom_adversary, PhantomMode};
    use crate::rules::{play_game, Channel, Movement, Outcome};

    #[test]
    fn k2_within_two_rounds() {
        let g = make_named("path", 2).unwrap();
        let mut cat = solver_cat(&g, RuleSet::MAIN).unwrap();
        let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Greedy);
        let r = play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, 10).unwrap();
        assert_eq!(r.outcome, Outcome::CatWins);
        assert!(r.rounds_played <= 2);
    }

    #[test]
    fn p5_exact_channel_takes_the_optimum() {
        let g = make_named("path", 5).unwrap();
        let rules = RuleSet::new(Channel::Exact, Movement::MustMove);
        let game = Arc::new(SolvedGame::new(&g, rules, SolverLimits::default()).unwrap());
        let k = game.result().optimal_rounds().unwrap() as usize;
        let mut cat = SolverCat::new(game.clone());
        let mut mouse = phantom_adversary(&g, rules, PhantomMode::Exact(game));
        let r = play_game(&g, rules, &mut cat, &mut mouse, 100).unwrap();
        assert_eq!((r.outcome, r.rounds_played), (Outcome::CatWins, k));
    }

    #[test]
    fn c4_is_refused() {
        let g = make_named("cycle", 4).unwrap();
        assert!(matches!(
            solver_cat(&g, RuleSet::MAIN),
            Err(StrategyError::Solver(SolveError::NotWinning))
        ));
    }
}
