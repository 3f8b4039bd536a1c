//! Cat strategies: the transition strategy on trees and its forest wrapper,
//! fixed scripts, and a solver-backed optimal cat.

mod forest;
mod optimal;
mod scripted;
mod transition;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::GraphError;
use crate::solver::SolveError;

pub use forest::{forest_cat, round_budget, ComponentAccount, ForestCat};
pub use optimal::{solver_cat, SolverCat};
pub use scripted::{seager_demo_cat, tstar_weakened_cat, RandomCat, ScriptCat, TStarCat};
pub use transition::{transition_cat_next, Phase, Step, TransitionState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    /// An observation that cannot happen given the strategy's bookkeeping.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("strategy needs {expected}")]
    WrongGraph { expected: String },
    #[error("unsupported rules: {0}")]
    UnsupportedRules(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolveError),
    #[error("session aborted: {0}")]
    Aborted(String),
}

/// One completed transition of the tree strategy, with the sizes of X and Y
/// before and after.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransitionEvent {
    /// 1..=4.
    pub kind: u8,
    pub start_round: usize,
    /// Rounds spanned: 1 for types 1 and 2, 2 for types 3 and 4.
    pub j: u8,
    pub x_before: usize,
    pub x_after: usize,
    pub y_before: usize,
    pub y_after: usize,
}

impl TransitionEvent {
    pub fn line(&self) -> EventLine {
        EventLine {
            kind: self.kind,
            start_round: self.start_round,
            j: self.j,
            x: self.x_after,
            y: self.y_after,
        }
    }

    /// Whether the size changes match the defining conditions of the type.
    pub fn is_well_formed(&self) -> bool {
        match self.kind {
            1 => self.j == 1 && self.x_after >= self.x_before && self.y_after == 0,
            2 | 3 => self.j == if self.kind == 2 { 1 } else { 2 } && self.x_after > self.x_before && self.y_after == 0,
            4 => self.j == 2 && self.x_after >= self.x_before && self.y_after > self.y_before,
            _ => false,
        }
    }
}

impl fmt::Display for TransitionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.line().fmt(f)
    }
}

/// The text form of a transition event: sizes after the transition only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventLine {
    pub kind: u8,
    pub start_round: usize,
    pub j: u8,
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for EventLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transition type={} start={} j={} X={} Y={}",
            self.kind, self.start_round, self.j, self.x, self.y
        )
    }
}

impl FromStr for EventLine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let rest = s
            .strip_prefix("transition ")
            .ok_or_else(|| format!("expected `transition`, got `{s}`"))?;
        let f = crate::rules::key_values(rest, &["type", "start", "j", "X", "Y"])?;
        let num = |s: &str| s.parse::<usize>().map_err(|_| format!("bad number `{s}`"));
        let kind = num(f[0])?;
        let j = num(f[2])?;
        if !(1..=4).contains(&kind) || !(1..=2).contains(&j) {
            return Err(format!("bad transition `{s}`"));
        }
        Ok(EventLine {
            kind: kind as u8,
            start_round: num(f[1])?,
            j: j as u8,
            x: num(f[3])?,
            y: num(f[4])?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_line_round_trip() {
        let e = TransitionEvent {
            kind: 4,
            start_round: 7,
            j: 2,
            x_before: 3,
            x_after: 3,
            y_before: 0,
            y_after: 2,
        };
        assert!(e.is_well_formed());
        let text = e.to_string();
        assert_eq!(text, "transition type=4 start=7 j=2 X=3 Y=2");
        assert_eq!(text.parse::<EventLine>(), Ok(e.line()));
        assert!("transition type=5 start=1 j=1 X=0 Y=0".parse::<EventLine>().is_err());
    }
}
