//! Game variants: what the cat hears each round and how the mouse may move.

mod engine;
mod trace;

use std::fmt;
use std::str::FromStr;

use crate::graph::{Dist, Graph, Vertex};

pub use engine::{
    play_game, CatMove, CatStrategy, GameError, GameResult, MouseAgent, MouseKind, MouseReply,
    MouseView, Outcome,
};
pub(crate) use trace::key_values;
pub use trace::{parse_trace, validate_trace, ParsedTrace, RoundRecord, TraceError, TraceVerdict};

/// Per-round distance signal available to the cat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// Capture or not.
    Binary,
    /// Distance class 0, 1 or at least 2.
    Coarse,
    /// Distance class 0, 1 or at least 2, plus comparison with the previous
    /// round's distance.
    CoarseCmp,
    /// Capture signal plus comparison with the previous round's distance.
    CmpOnly,
    /// Exact distance.
    Exact,
}

impl Channel {
    pub const ALL: [Channel; 5] = [
        Channel::Binary,
        Channel::Coarse,
        Channel::CoarseCmp,
        Channel::CmpOnly,
        Channel::Exact,
    ];

    pub fn has_comparison(self) -> bool {
        matches!(self, Channel::CoarseCmp | Channel::CmpOnly)
    }

    pub fn id(self) -> &'static str {
        match self {
            Channel::Binary => "binary",
            Channel::Coarse => "coarse",
            Channel::CoarseCmp => "coarse-cmp",
            Channel::CmpOnly => "cmp-only",
            Channel::Exact => "exact",
        }
    }
}

/// Where the mouse may go from `m` when the cat stood on `c` last round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Movement {
    /// `N(m)`
    MustMove,
    /// `({m} ∪ N(m)) \ {c}`
    MayStayAvoidCat,
    /// `N(m) \ {c}`
    MustMoveAvoidCat,
    /// `{m} ∪ N(m)`
    MayStay,
}

impl Movement {
    pub const ALL: [Movement; 4] = [
        Movement::MustMove,
        Movement::MayStayAvoidCat,
        Movement::MustMoveAvoidCat,
        Movement::MayStay,
    ];

    pub fn may_stay(self) -> bool {
        matches!(self, Movement::MayStay | Movement::MayStayAvoidCat)
    }

    pub fn avoids_cat(self) -> bool {
        matches!(self, Movement::MayStayAvoidCat | Movement::MustMoveAvoidCat)
    }

    pub fn id(self) -> &'static str {
        match self {
            Movement::MustMove => "must-move",
            Movement::MayStayAvoidCat => "may-stay-avoid-cat",
            Movement::MustMoveAvoidCat => "must-move-avoid-cat",
            Movement::MayStay => "may-stay",
        }
    }
}

macro_rules! parse_by_id {
    ($ty:ty) => {
        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                <$ty>::ALL
                    .into_iter()
                    .find(|x| x.id() == s)
                    .ok_or_else(|| {
                        let ids: Vec<_> = <$ty>::ALL.iter().map(|x| x.id()).collect();
                        format!("unknown value `{s}` (expected one of {})", ids.join(", "))
                    })
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.id())
            }
        }
    };
}

parse_by_id!(Channel);
parse_by_id!(Movement);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet {
    pub channel: Channel,
    pub movement: Movement,
}

impl RuleSet {
    pub const fn new(channel: Channel, movement: Movement) -> RuleSet {
        RuleSet { channel, movement }
    }

    /// Coarse class plus comparison, mouse must move.
    pub const MAIN: RuleSet = RuleSet::new(Channel::CoarseCmp, Movement::MustMove);
    /// Capture signal only, mouse must move.
    pub const ORIGINAL: RuleSet = RuleSet::new(Channel::Binary, Movement::MustMove);

    pub fn all() -> impl Iterator<Item = RuleSet> {
        Channel::ALL
            .into_iter()
            .flat_map(|c| Movement::ALL.into_iter().map(move |m| RuleSet::new(c, m)))
    }

    /// Whether the solver state must remember the cat's previous vertex:
    /// comparison channels need each trajectory's previous distance, and
    /// avoid-cat movement needs the forbidden vertex.
    pub fn tracks_previous_cat(self) -> bool {
        self.channel.has_comparison() || self.movement.avoids_cat()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistClass {
    Zero,
    One,
    TwoPlus,
    NonZero,
    Exact(Dist),
}

impl fmt::Display for DistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistClass::Zero => f.write_str("0"),
            DistClass::One => f.write_str("1"),
            DistClass::TwoPlus => f.write_str("2+"),
            DistClass::NonZero => f.write_str("nz"),
            DistClass::Exact(d) => write!(f, "k:{d}"),
        }
    }
}

impl FromStr for DistClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "0" => DistClass::Zero,
            "1" => DistClass::One,
            "2+" => DistClass::TwoPlus,
            "nz" => DistClass::NonZero,
            _ => {
                let k = s
                    .strip_prefix("k:")
                    .ok_or_else(|| format!("bad distance class `{s}`"))?;
                if k == "inf" {
                    DistClass::Exact(Dist::INFINITE)
                } else {
                    let d: u32 = k.parse().map_err(|_| format!("bad distance `{k}`"))?;
                    if d == 0 || d == u32::MAX {
                        return Err(format!("bad exact distance `{k}`"));
                    }
                    DistClass::Exact(Dist::finite(d))
                }
            }
        })
    }
}

/// Comparison of this round's distance with the previous round's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cmp {
    NotGreater,
    Greater,
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::NotGreater => "le",
            Cmp::Greater => "gt",
        })
    }
}

/// What the cat learns in one round. The derived order (class first, then
/// absent < `NotGreater` < `Greater`) is the fixed tie order used by the
/// adversaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observation {
    pub class: DistClass,
    pub cmp: Option<Cmp>,
}

impl Observation {
    pub fn is_capture(&self) -> bool {
        self.class == DistClass::Zero
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class={} cmp=", self.class)?;
        match self.cmp {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("-"),
        }
    }
}

/// The signal produced by distance `d`, given the previous round's distance
/// (`None` in round 1).
pub fn feedback(rules: RuleSet, d: Dist, d_prev: Option<Dist>) -> Observation {
    let class = if d == Dist::ZERO {
        DistClass::Zero
    } else {
        match rules.channel {
            Channel::Binary | Channel::CmpOnly => DistClass::NonZero,
            Channel::Coarse | Channel::CoarseCmp if d == Dist::finite(1) => DistClass::One,
            Channel::Coarse | Channel::CoarseCmp => DistClass::TwoPlus,
            Channel::Exact => DistClass::Exact(d),
        }
    };
    let cmp = match d_prev {
        Some(prev) if rules.channel.has_comparison() => Some(if d <= prev {
            Cmp::NotGreater
        } else {
            Cmp::Greater
        }),
        _ => None,
    };
    Observation { class, cmp }
}

/// Every observation the channel can emit in a given round on a graph with
/// `n` vertices, in ascending order.
pub fn observation_alphabet(rules: RuleSet, n: usize, first_round: bool) -> Vec<Observation> {
    let classes: Vec<DistClass> = match rules.channel {
        Channel::Binary | Channel::CmpOnly => vec![DistClass::Zero, DistClass::NonZero],
        Channel::Coarse | Channel::CoarseCmp => {
            vec![DistClass::Zero, DistClass::One, DistClass::TwoPlus]
        }
        Channel::Exact => std::iter::once(DistClass::Zero)
            .chain((1..n.max(1) as u32).map(|d| DistClass::Exact(Dist::finite(d))))
            .chain(std::iter::once(DistClass::Exact(Dist::INFINITE)))
            .collect(),
    };
    let cmps: Vec<Option<Cmp>> = if rules.channel.has_comparison() && !first_round {
        vec![Some(Cmp::NotGreater), Some(Cmp::Greater)]
    } else {
        vec![None]
    };
    classes
        .into_iter()
        .flat_map(|class| cmps.iter().map(move |&cmp| Observation { class, cmp }))
        .collect()
}

/// Positions the mouse may take after standing on `m_prev` while the cat was
/// on `c_prev`. Round-1 placement is unrestricted and not covered here.
pub fn legal_mouse_moves(rules: RuleSet, g: &Graph, m_prev: Vertex, c_prev: Vertex) -> Vec<Vertex> {
    let mut moves = Vec::with_capacity(g.degree(m_prev) + 1);
    for_each_legal_move(rules.movement, g, m_prev, c_prev, |w| moves.push(w));
    moves
}

/// Calls `f` on each legal destination in ascending order.
#[inline]
pub(crate) fn for_each_legal_move(
    movement: Movement,
    g: &Graph,
    m_prev: Vertex,
    c_prev: Vertex,
    mut f: impl FnMut(Vertex),
) {
    let ns = g.neighbors(m_prev);
    let split = ns.partition_point(|&w| w < m_prev);
    let stay = movement.may_stay().then_some(m_prev);
    let candidates = ns[..split]
        .iter()
        .copied()
        .chain(stay)
        .chain(ns[split..].iter().copied());
    let avoid = movement.avoids_cat();
    for w in candidates {
        if !(avoid && w == c_prev) {
            f(w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, tstar};

    fn obs(class: DistClass, cmp: Option<Cmp>) -> Observation {
        Observation { class, cmp }
    }

    #[test]
    fn legal_moves_examples() {
        let k2 = make_named("path", 2).unwrap();
        let main = RuleSet::MAIN;
        assert_eq!(legal_mouse_moves(main, &k2, 1, 0), vec![0]);

        let t = make_named("t_star", 0).unwrap();
        let demo = RuleSet::new(Channel::Binary, Movement::MustMoveAvoidCat);
        assert!(legal_mouse_moves(demo, &t, tstar::u(1), tstar::v(1)).is_empty());
        let seager = RuleSet::new(Channel::Exact, Movement::MayStayAvoidCat);
        assert_eq!(
            legal_mouse_moves(seager, &t, tstar::u(1), tstar::v(1)),
            vec![tstar::u(1)]
        );
        let lazy = RuleSet::new(Channel::Exact, Movement::MayStay);
        assert_eq!(legal_mouse_moves(lazy, &t, 1, 5), vec![0, 1, 2]);
    }

    #[test]
    fn feedback_examples() {
        let main = RuleSet::MAIN;
        assert_eq!(
            feedback(main, Dist::finite(3), Some(Dist::finite(2))),
            obs(DistClass::TwoPlus, Some(Cmp::Greater))
        );
        assert_eq!(
            feedback(main, Dist::ZERO, Some(Dist::finite(1))),
            obs(DistClass::Zero, Some(Cmp::NotGreater))
        );
        assert_eq!(
            feedback(main, Dist::INFINITE, Some(Dist::finite(5))),
            obs(DistClass::TwoPlus, Some(Cmp::Greater))
        );
        assert_eq!(
            feedback(main, Dist::INFINITE, Some(Dist::INFINITE)),
            obs(DistClass::TwoPlus, Some(Cmp::NotGreater))
        );
        assert_eq!(feedback(main, Dist::finite(1), None).cmp, None);
    }

    #[test]
    fn binary_collapses_classes_and_drops_comparison() {
        let b = RuleSet::ORIGINAL;
        for d in [1, 2, 7] {
            assert_eq!(
                feedback(b, Dist::finite(d), Some(Dist::finite(1))),
                obs(DistClass::NonZero, None)
            );
        }
        let exact = RuleSet::new(Channel::Exact, Movement::MustMove);
        assert_eq!(
            feedback(exact, Dist::finite(4), Some(Dist::ZERO)),
            obs(DistClass::Exact(Dist::finite(4)), None)
        );
    }

    #[test]
    fn alphabet_covers_every_feedback_value() {
        for rules in RuleSet::all() {
            let n = 5;
            let dists: Vec<Dist> = (0..n as u32)
                .map(Dist::finite)
                .chain([Dist::INFINITE])
                .collect();
            let first = observation_alphabet(rules, n, true);
            let later = observation_alphabet(rules, n, false);
            for &d in &dists {
                assert!(first.contains(&feedback(rules, d, None)));
                for &p in &dists {
                    assert!(later.contains(&feedback(rules, d, Some(p))));
                }
            }
            assert!(first.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ids_round_trip() {
        for c in Channel::ALL {
            assert_eq!(c.id().parse::<Channel>().unwrap(), c);
        }
        for m in Movement::ALL {
            assert_eq!(m.to_string().parse::<Movement>().unwrap(), m);
        }
        assert!("loud".parse::<Channel>().is_err());
        for s in ["0", "1", "2+", "nz", "k:3", "k:inf"] {
            assert_eq!(s.parse::<DistClass>().unwrap().to_string(), s);
        }
        assert!("k:0".parse::<DistClass>().is_err());
    }
}
