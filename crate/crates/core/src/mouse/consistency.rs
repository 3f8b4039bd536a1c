use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Dist, Graph, Vertex};
use crate::rules::{feedback, for_each_legal_move, legal_mouse_moves, Observation, RuleSet};

/// Everything the mouse could be, given the cat's moves and the signals
/// emitted so far: pairs of (position, distance to the cat this round).
/// Before round 1 every vertex is possible and no distance is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistencySet {
    elements: Vec<(Vertex, Option<Dist>)>,
    history: Vec<(Vertex, Observation)>,
}

impl ConsistencySet {
    pub fn new(n: usize) -> ConsistencySet {
        ConsistencySet {
            elements: (0..n).map(|v| (v, None)).collect(),
            history: Vec::new(),
        }
    }

    /// Sorted `(position, distance)` pairs.
    pub fn elements(&self) -> &[(Vertex, Option<Dist>)] {
        &self.elements
    }

    /// `(cat vertex, observation)` per completed round.
    pub fn history(&self) -> &[(Vertex, Observation)] {
        &self.history
    }

    pub fn round(&self) -> usize {
        self.history.len()
    }

    pub fn last_cat(&self) -> Option<Vertex> {
        self.history.last().map(|h| h.0)
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn positions(&self) -> Vec<Vertex> {
        let mut p: Vec<Vertex> = self.elements.iter().map(|e| e.0).collect();
        p.dedup();
        p
    }

    fn for_each_successor(
        &self,
        g: &Graph,
        rules: RuleSet,
        c: Vertex,
        mut f: impl FnMut(Observation, Vertex, Dist),
    ) {
        let to_cat = g.distance_row(c);
        let last = self.last_cat();
        for &(m, d_prev) in &self.elements {
            let mut visit = |m2: Vertex| {
                let d = to_cat[m2];
                f(feedback(rules, d, d_prev), m2, d);
            };
            match last {
                None => visit(m),
                Some(c_prev) => for_each_legal_move(rules.movement, g, m, c_prev, visit),
            }
        }
    }

    fn successor(&self, c: Vertex, obs: Observation, mut elements: Vec<(Vertex, Option<Dist>)>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut history = Vec::with_capacity(self.history.len() + 1);
        history.extend_from_slice(&self.history);
        history.push((c, obs));
        ConsistencySet { elements, history }
    }

    /// The set after the cat plays `c` and hears `obs`.
    pub fn update(&self, g: &Graph, rules: RuleSet, c: Vertex, obs: Observation) -> ConsistencySet {
        let mut next = Vec::with_capacity(2 * self.elements.len());
        self.for_each_successor(g, rules, c, |o, m, d| {
            if o == obs {
                next.push((m, Some(d)));
            }
        });
        self.successor(c, obs, next)
    }

    /// Every feasible observation for cat vertex `c`, with the set it leads
    /// to, in ascending observation order. Empty iff the mouse has no legal
    /// move at all.
    pub fn successors_by_observation(
        &self,
        g: &Graph,
        rules: RuleSet,
        c: Vertex,
    ) -> BTreeMap<Observation, ConsistencySet> {
        let mut groups: BTreeMap<Observation, Vec<(Vertex, Option<Dist>)>> = BTreeMap::new();
        self.for_each_successor(g, rules, c, |o, m, d| {
            groups.entry(o).or_default().push((m, Some(d)));
        });
        groups
            .into_iter()
            .map(|(o, els)| (o, self.successor(c, o, els)))
            .collect()
    }
}

/// Free-function form of [`ConsistencySet::update`].
pub fn update_consistency(
    s: &ConsistencySet,
    g: &Graph,
    rules: RuleSet,
    c: Vertex,
    obs: Observation,
) -> ConsistencySet {
    s.update(g, rules, c, obs)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("consistency set is empty after round {0}")]
    Empty(usize),
    #[error("no predecessor for round {0}; the recorded history is inconsistent")]
    Broken(usize),
}

/// A concrete trajectory `m_1..m_t` reproducing every recorded observation.
/// Replays the history from scratch, then walks back from the smallest
/// final element.
pub fn extract_witness(
    s: &ConsistencySet,
    g: &Graph,
    rules: RuleSet,
) -> Result<Vec<Vertex>, WitnessError> {
    let mut sets = vec![ConsistencySet::new(g.vertex_count())];
    for &(c, obs) in s.history() {
        let next = sets.last().unwrap().update(g, rules, c, obs);
        sets.push(next);
    }
    let t = s.history().len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let mut current = *sets[t].elements().first().ok_or(WitnessError::Empty(t))?;
    let mut trajectory = vec![current.0];
    for i in (1..t).rev() {
        let (c_prev, _) = s.history()[i - 1];
        let (c, obs) = s.history()[i];
        let to_cat = g.distance_row(c);
        let pred = sets[i]
            .elements()
            .iter()
            .find(|&&(m, d_prev)| {
                legal_mouse_moves(rules, g, m, c_prev).contains(&current.0)
                    && feedback(rules, to_cat[current.0], d_prev) == obs
            })
            .ok_or(WitnessError::Broken(i + 1))?;
        current = *pred;
        trajectory.push(current.0);
    }
    trajectory.reverse();
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;
    use crate::rules::{validate_trace, Cmp, DistClass, RoundRecord};

    fn o(class: DistClass, cmp: Option<Cmp>) -> Observation {
        Observation { class, cmp }
    }

    #[test]
    fn first_round_on_k2() {
        let g = make_named("path", 2).unwrap();
        let s = ConsistencySet::new(2);
        let one = s.update(&g, RuleSet::MAIN, 0, o(DistClass::One, None));
        assert_eq!(one.elements(), &[(1, Some(Dist::finite(1)))]);
        let far = s.update(&g, RuleSet::MAIN, 0, o(DistClass::TwoPlus, None));
        assert!(far.is_empty());
    }

    #[test]
    fn partition_is_exhaustive_and_disjoint() {
        let g = make_named("path", 4).unwrap();
        let mut s = ConsistencySet::new(4);
        s = s.update(&g, RuleSet::MAIN, 0, o(DistClass::TwoPlus, None));
        let parts = s.successors_by_observation(&g, RuleSet::MAIN, 1);
        let total: usize = parts.values().map(|p| p.len()).sum();
        // From {2, 3}: 2 -> {1, 3}, 3 -> {2}.
        assert_eq!(total, 3);
        for (obs, part) in &parts {
            assert_eq!(part, &s.update(&g, RuleSet::MAIN, 1, *obs));
        }
    }

    #[test]
    fn witness_replays_as_a_valid_trace() {
        let g = make_named("path", 5).unwrap();
        let rules = RuleSet::MAIN;
        let mut s = ConsistencySet::new(5);
        for c in [0, 0, 1, 2, 2] {
            let parts = s.successors_by_observation(&g, rules, c);
            s = parts
                .into_iter()
                .filter(|(o, _)| !o.is_capture())
                .max_by_key(|(_, p)| p.len())
                .map(|(_, p)| p)
                .unwrap_or_else(|| s.update(&g, rules, c, o(DistClass::Zero, Some(Cmp::NotGreater))));
            if s.history().last().unwrap().1.is_capture() {
                break;
            }
        }
        let w = extract_witness(&s, &g, rules).unwrap();
        let trace: Vec<RoundRecord> = s
            .history()
            .iter()
            .zip(&w)
            .enumerate()
            .map(|(i, (&(cat, observation), &m))| RoundRecord {
                round: i + 1,
                cat,
                mouse: Some(m),
                observation,
            })
            .collect();
        assert!(validate_trace(&g, rules, &trace).is_valid());
    }

    #[test]
    fn witness_after_one_round_is_a_single_consistent_vertex() {
        let g = make_named("path", 3).unwrap();
        let s = ConsistencySet::new(3).update(&g, RuleSet::MAIN, 0, o(DistClass::TwoPlus, None));
        assert_eq!(extract_witness(&s, &g, RuleSet::MAIN), Ok(vec![2]));
        let empty = ConsistencySet::new(3).update(&g, RuleSet::MAIN, 1, o(DistClass::TwoPlus, None));
        assert_eq!(
            extract_witness(&empty, &g, RuleSet::MAIN),
            Err(WitnessError::Empty(1))
        );
    }
}
