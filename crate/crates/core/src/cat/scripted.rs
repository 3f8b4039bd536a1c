use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StrategyError;
use crate::graph::{make_named, tstar, Graph, Vertex};
use crate::rules::{CatMove, CatStrategy, Channel, Cmp, DistClass, Movement, Observation, RuleSet};

/// Plays a fixed vertex list, then resigns.
#[derive(Clone, Debug)]
pub struct ScriptCat {
    script: Vec<Vertex>,
    next: usize,
}

impl ScriptCat {
    pub fn new(script: Vec<Vertex>) -> ScriptCat {
        ScriptCat { script, next: 0 }
    }
}

impl CatStrategy for ScriptCat {
    fn next_move(&mut self, _last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        let mv = self
            .script
            .get(self.next)
            .map_or(CatMove::Resign, |&v| CatMove::Play(v));
        self.next += 1;
        Ok(mv)
    }
}

/// `(x, v1, x, v2, x, v3, x)` on T*.
pub fn seager_demo_cat() -> ScriptCat {
    use tstar::{v, X};
    ScriptCat::new(vec![X, v(1), X, v(2), X, v(3), X])
}

/// Uniformly random vertices from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomCat {
    n: usize,
    rng: ChaCha8Rng,
}

impl RandomCat {
    pub fn new(n: usize, seed: u64) -> RandomCat {
        assert!(n > 0, "random cat needs a vertex");
        RandomCat {
            n,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CatStrategy for RandomCat {
    fn next_move(&mut self, _last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        Ok(CatMove::Play(self.rng.gen_range(0..self.n)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TStarPhase {
    Start,
    /// Sitting on x until the mouse is certainly two or more steps away.
    Center { leg: usize, skip_cmp: bool },
    Probe { leg: usize },
    Finish { leg: usize, step: usize },
}

/// The T* cat for the weakened channels: wait at x until the mouse is far,
/// probe `v_j`, and once the mouse is located on leg `j` play
/// `(x, w_j, v_j, u_j)`.
#[derive(Clone, Debug)]
pub struct TStarCat {
    channel: Channel,
    phase: TStarPhase,
}

pub fn tstar_weakened_cat(g: &Graph, rules: RuleSet) -> Result<TStarCat, StrategyError> {
    let reference = make_named("t_star", 0)?;
    if g.vertex_count() != reference.vertex_count() || g.edges().ne(reference.edges()) {
        return Err(StrategyError::WrongGraph {
            expected: "T* with the canonical numbering".into(),
        });
    }
    if rules.movement != Movement::MustMove
        || !matches!(rules.channel, Channel::Coarse | Channel::CmpOnly)
    {
        return Err(StrategyError::UnsupportedRules(format!(
            "the T* script needs coarse or cmp-only feedback with must-move play, got {} {}",
            rules.channel, rules.movement
        )));
    }
    Ok(TStarCat {
        channel: rules.channel,
        phase: TStarPhase::Start,
    })
}

impl TStarCat {
    /// The mouse is at distance two or more from x.
    fn far(&self, obs: &Observation) -> bool {
        match self.channel {
            Channel::Coarse => obs.class == DistClass::TwoPlus,
            _ => obs.cmp == Some(Cmp::Greater),
        }
    }

    /// The mouse is adjacent to the probed `v_j`.
    fn located(&self, obs: &Observation) -> bool {
        match self.channel {
            Channel::Coarse => obs.class == DistClass::One,
            _ => obs.cmp == Some(Cmp::NotGreater),
        }
    }
}

impl CatStrategy for TStarCat {
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        use tstar::{u, v, w, X};
        let cmp_only = self.channel == Channel::CmpOnly;
        let (phase, mv) = match (self.phase, last) {
            (TStarPhase::Start, None) => (TStarPhase::Center { leg: 1, skip_cmp: false }, X),
            (TStarPhase::Start, Some(_)) | (_, None) => {
                return Err(StrategyError::InvariantViolation("observation out of order".into()))
            }
            (TStarPhase::Center { leg, skip_cmp }, Some(obs)) => {
                if !skip_cmp && self.far(obs) {
                    (TStarPhase::Probe { leg }, v(leg))
                } else {
                    (TStarPhase::Center { leg, skip_cmp: false }, X)
                }
            }
            (TStarPhase::Probe { leg }, Some(obs)) => {
                if self.located(obs) {
                    (TStarPhase::Finish { leg, step: 0 }, X)
                } else if leg < 3 {
                    // After a probe the comparison is against a distance to
                    // v_j, which says nothing about x.
                    (TStarPhase::Center { leg: leg + 1, skip_cmp: cmp_only }, X)
                } else {
                    return Err(StrategyError::InvariantViolation(
                        "mouse not located on any leg".into(),
                    ));
                }
            }
            (TStarPhase::Finish { leg, step }, Some(_)) => {
                let script = [w(leg), v(leg), u(leg)];
                match script.get(step) {
                    Some(&c) => (TStarPhase::Finish { leg, step: step + 1 }, c),
                    None => return Ok(CatMove::Resign),
                }
            }
        };
        self.phase = phase;
        Ok(CatMove::Play(mv))
    }
}
