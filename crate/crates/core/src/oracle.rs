//! Brute-force reference for consistency sets.
//!
//! Keeps every legal trajectory explicitly and filters by signals, using its
//! own all-pairs distances, legality test and feedback rule, so that it
//! shares no code with [`crate::mouse::ConsistencySet`].

use std::collections::BTreeMap;

use crate::graph::{Dist, Graph, Vertex};
use crate::mouse::ConsistencySet;
use crate::rules::{Channel, Cmp, DistClass, Movement, Observation, RuleSet};

/// Equal-length trajectories `m_1..m_t`, stored back to back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trajectories {
    len: usize,
    flat: Vec<Vertex>,
}

impl Trajectories {
    pub fn count(&self) -> usize {
        if self.len == 0 {
            0
        } else {
            self.flat.len() / self.len
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Vertex]> {
        self.flat.chunks_exact(self.len.max(1))
    }

    fn push(&mut self, prefix: &[Vertex], last: Vertex) {
        self.len = prefix.len() + 1;
        self.flat.extend_from_slice(prefix);
        self.flat.push(last);
    }
}

pub struct TrajectoryOracle {
    rules: RuleSet,
    n: usize,
    adjacent: Vec<Vec<bool>>,
    /// Floyd–Warshall distances; `None` between components.
    dist: Vec<Vec<Option<u32>>>,
}

impl TrajectoryOracle {
    pub fn new(g: &Graph, rules: RuleSet) -> TrajectoryOracle {
        let n = g.vertex_count();
        let mut adjacent = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adjacent[u][v] = true;
            adjacent[v][u] = true;
        }
        let mut dist: Vec<Vec<Option<u32>>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| match (u == v, adjacent[u][v]) {
                        (true, _) => Some(0),
                        (false, true) => Some(1),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (dist[i][k], dist[k][j]) {
                        if dist[i][j].is_none_or(|d| a + b < d) {
                            dist[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        TrajectoryOracle {
            rules,
            n,
            adjacent,
            dist,
        }
    }

    fn legal(&self, from: Vertex, to: Vertex, c_prev: Vertex) -> bool {
        let stays = from == to;
        let step = self.adjacent[from][to];
        match self.rules.movement {
            Movement::MustMove => step,
            Movement::MayStay => step || stays,
            Movement::MustMoveAvoidCat => step && to != c_prev,
            Movement::MayStayAvoidCat => (step || stays) && to != c_prev,
        }
    }

    fn signal(&self, d: Option<u32>, d_prev: Option<Option<u32>>) -> Observation {
        let class = match (d, self.rules.channel) {
            (Some(0), _) => DistClass::Zero,
            (_, Channel::Binary | Channel::CmpOnly) => DistClass::NonZero,
            (Some(1), Channel::Coarse | Channel::CoarseCmp) => DistClass::One,
            (_, Channel::Coarse | Channel::CoarseCmp) => DistClass::TwoPlus,
            (Some(k), Channel::Exact) => DistClass::Exact(Dist::finite(k)),
            (None, Channel::Exact) => DistClass::Exact(Dist::INFINITE),
        };
        let with_cmp = matches!(self.rules.channel, Channel::CoarseCmp | Channel::CmpOnly);
        let cmp = match d_prev {
            Some(prev) if with_cmp => {
                // Unreachable counts as larger than every distance.
                let greater = match (d, prev) {
                    (None, None) => false,
                    (None, Some(_)) => true,
                    (Some(_), None) => false,
                    (Some(a), Some(b)) => a > b,
                };
                Some(if greater { Cmp::Greater } else { Cmp::NotGreater })
            }
            _ => None,
        };
        Observation { class, cmp }
    }

    /// Every one-round extension of `trajectories` when the cat plays `c`
    /// after `history`, grouped by the signal it produces.
    pub fn extend(
        &self,
        trajectories: &Trajectories,
        history: &[(Vertex, Observation)],
        c: Vertex,
    ) -> BTreeMap<Observation, Trajectories> {
        let mut out: BTreeMap<Observation, Trajectories> = BTreeMap::new();
        if history.is_empty() {
            for m in 0..self.n {
                out.entry(self.signal(self.dist[c][m], None)).or_default().push(&[], m);
            }
            return out;
        }
        let c_prev = history.last().unwrap().0;
        for t in trajectories.iter() {
            let m = *t.last().unwrap();
            let d_prev = self.dist[c_prev][m];
            for m2 in 0..self.n {
                if self.legal(m, m2, c_prev) {
                    out.entry(self.signal(self.dist[c][m2], Some(d_prev)))
                        .or_default()
                        .push(t, m2);
                }
            }
        }
        out
    }

    /// Sorted distinct `(final position, distance to the last cat vertex)`
    /// over `trajectories`.
    pub fn endpoints(&self, trajectories: &Trajectories, c: Vertex) -> Vec<(Vertex, Option<u32>)> {
        let mut out: Vec<_> = trajectories
            .iter()
            .map(|t| {
                let m = *t.last().unwrap();
                (m, self.dist[c][m])
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All trajectories reproducing `history`, enumerated from scratch.
    pub fn consistent(&self, history: &[(Vertex, Observation)]) -> Trajectories {
        let mut current = Trajectories::default();
        for (i, &(c, obs)) in history.iter().enumerate() {
            current = self
                .extend(&current, &history[..i], c)
                .remove(&obs)
                .unwrap_or_default();
            if current.is_empty() {
                break;
            }
        }
        current
    }
}

fn as_oracle_set(s: &ConsistencySet) -> Vec<(Vertex, Option<u32>)> {
    let mut out: Vec<_> = s
        .elements()
        .iter()
        .map(|&(m, d)| (m, d.and_then(Dist::value)))
        .collect();
    out.sort_unstable();
    out
}

/// Set equality with `want` (sorted, distinct). Elements past round 0 all
/// carry a distance, and the map from `Dist` to `Option<u32>` is injective,
/// so equal sizes plus inclusion suffice.
fn matches(s: &ConsistencySet, want: &[(Vertex, Option<u32>)]) -> bool {
    s.len() == want.len()
        && s
            .elements()
            .iter()
            .all(|&(m, d)| d.is_some() && want.binary_search(&(m, d.and_then(Dist::value))).is_ok())
}

/// Compares `ConsistencySet` against brute force on every cat sequence and
/// every signal sequence of length up to `depth`. Prefixes whose set is empty
/// are not extended: both sides stay empty from there on. Returns the number
/// of comparisons.
pub fn check_against_brute_force(g: &Graph, rules: RuleSet, depth: usize) -> Result<usize, String> {
    let oracle = TrajectoryOracle::new(g, rules);
    let mut count = 0;
    let start = ConsistencySet::new(g.vertex_count());
    walk(g, rules, &oracle, &start, &Trajectories::default(), depth, &mut count)?;
    Ok(count)
}

fn walk(
    g: &Graph,
    rules: RuleSet,
    oracle: &TrajectoryOracle,
    set: &ConsistencySet,
    trajectories: &Trajectories,
    depth: usize,
    count: &mut usize,
) -> Result<(), String> {
    if depth == 0 {
        return Ok(());
    }
    let first = set.history().is_empty();
    let alphabet = crate::rules::observation_alphabet(rules, g.vertex_count(), first);
    for c in 0..g.vertex_count() {
        let parts = set.successors_by_observation(g, rules, c);
        let mut brute = oracle.extend(trajectories, set.history(), c);
        for obs in &alphabet {
            let expected = brute.remove(obs).unwrap_or_default();
            let want = oracle.endpoints(&expected, c);
            let got = set.update(g, rules, c, *obs);
            *count += 1;
            let from_parts = parts.get(obs);
            let parts_ok = match from_parts {
                Some(p) => matches(p, &want),
                None => want.is_empty(),
            };
            if !matches(&got, &want) || !parts_ok {
                let got_set = as_oracle_set(&got);
                let from_parts = from_parts.map(as_oracle_set).unwrap_or_default();
                return Err(format!(
                    "{} {}: after {:?} then cat {c} signal `{obs}`: update {:?}, partition {:?}, brute force {:?}",
                    rules.channel,
                    rules.movement,
                    set.history(),
                    got_set,
                    from_parts,
                    want
                ));
            }
            if !want.is_empty() {
                walk(g, rules, oracle, &got, &expected, depth - 1, count)?;
            }
        }
        if let Some((obs, _)) = brute.into_iter().next() {
            return Err(format!("brute force produced `{obs}`, outside the channel alphabet"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;

    #[test]
    fn p4_three_rounds() {
        let g = make_named("path", 4).unwrap();
        let n = check_against_brute_force(&g, RuleSet::MAIN, 3).unwrap();
        assert!(n > 100);
    }

    #[test]
    fn from_scratch_matches_incremental() {
        let g = make_named("star", 3).unwrap();
        let oracle = TrajectoryOracle::new(&g, RuleSet::MAIN);
        let first = Observation {
            class: DistClass::One,
            cmp: None,
        };
        let t = oracle.consistent(&[(0, first)]);
        assert_eq!(t.iter().collect::<Vec<_>>(), [[1], [2], [3]]);
        assert_eq!(t.count(), 3);
    }

    #[test]
    fn disconnected_pairs_are_infinite() {
        let g = Graph::empty(2);
        let exact = RuleSet::new(Channel::Exact, Movement::MayStay);
        let oracle = TrajectoryOracle::new(&g, exact);
        let by_obs = oracle.extend(&Trajectories::default(), &[], 0);
        assert!(by_obs.contains_key(&Observation {
            class: DistClass::Exact(Dist::INFINITE),
            cmp: None
        }));
        check_against_brute_force(&g, exact, 3).unwrap();
    }
}
