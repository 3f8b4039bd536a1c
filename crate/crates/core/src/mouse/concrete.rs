use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cat::StrategyError;
use crate::graph::{Graph, Vertex};
use crate::rules::{MouseAgent, MouseKind, MouseReply, MouseView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentError {
    #[error("not a cycle of the graph: {0:?}")]
    BadCycle(Vec<Vertex>),
    #[error("graph is not a path")]
    NotAPath,
}

/// Runs around a fixed cycle, always stepping to a cycle neighbor the cat is
/// not standing on.
#[derive(Clone, Debug)]
pub struct CycleMouse {
    cycle: Vec<Vertex>,
}

/// Accepts the cycle as an open list or as a closed walk (first = last).
pub fn cycle_mouse(g: &Graph, cycle: &[Vertex]) -> Result<CycleMouse, AgentError> {
    let mut c = cycle.to_vec();
    if c.len() > 1 && c.first() == c.last() {
        c.pop();
    }
    let bad = || AgentError::BadCycle(cycle.to_vec());
    let mut sorted = c.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if c.len() < 3 || sorted.len() != c.len() || c.iter().any(|&v| v >= g.vertex_count()) {
        return Err(bad());
    }
    if (0..c.len()).any(|i| !g.has_edge(c[i], c[(i + 1) % c.len()])) {
        return Err(bad());
    }
    Ok(CycleMouse { cycle: c })
}

impl MouseAgent for CycleMouse {
    fn kind(&self) -> MouseKind {
        MouseKind::Concrete
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        let c = view.cat();
        let to_cat = view.graph.distances_from(c);
        let candidates: Vec<Vertex> = match view.position {
            None => self.cycle.clone(),
            Some(m) => {
                let k = self.cycle.len();
                let i = self.cycle.iter().position(|&v| v == m).ok_or_else(|| {
                    StrategyError::InvariantViolation(format!("cycle mouse left its cycle at {m}"))
                })?;
                vec![self.cycle[(i + k - 1) % k], self.cycle[(i + 1) % k]]
            }
        };
        let best = candidates
            .into_iter()
            .filter(|&v| v != c && view.legal.contains(&v))
            .max_by_key(|&v| (to_cat[v], std::cmp::Reverse(v)));
        Ok(MouseReply::Move(best.unwrap_or(view.legal[0])))
    }
}

/// Path mouse: starts near the middle and runs away from the cat; when the
/// cat lands on its previous vertex it flees into the larger side.
#[derive(Clone, Debug)]
pub struct PathMouse {
    order: Vec<Vertex>,
    index: Vec<usize>,
}

pub fn path_mouse(g: &Graph) -> Result<PathMouse, AgentError> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() || g.edge_count() + 1 != n || (0..n).any(|v| g.degree(v) > 2) {
        return Err(AgentError::NotAPath);
    }
    let start = (0..n).find(|&v| g.degree(v) <= 1).expect("a path has an endpoint");
    let mut order = vec![start];
    while order.len() < n {
        let last = *order.last().unwrap();
        let prev = order.len().checked_sub(2).map(|i| order[i]);
        let next = g
            .neighbors(last)
            .iter()
            .copied()
            .find(|&w| Some(w) != prev)
            .expect("path continues");
        order.push(next);
    }
    let mut index = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        index[v] = i;
    }
    Ok(PathMouse { order, index })
}

impl MouseAgent for PathMouse {
    fn kind(&self) -> MouseKind {
        MouseKind::Concrete
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        let n = self.order.len();
        let c = self.index[view.cat()];
        let target = match view.position {
            None => {
                let mid = n / 2;
                if mid == c && n > 1 {
                    mid - 1
                } else {
                    mid
                }
            }
            Some(m) => {
                let i = self.index[m];
                let (left, right) = (i, n - 1 - i);
                let toward_right = if c == i {
                    right > left || left == 0
                } else {
                    c < i
                };
                match (toward_right, i) {
                    (true, _) if i + 1 < n => i + 1,
                    (false, 0) => i + 1,
                    (false, _) => i - 1,
                    (true, _) => i - 1,
                }
            }
        };
        let v = self.order[target];
        Ok(MouseReply::Move(if view.legal.contains(&v) {
            v
        } else {
            view.legal[0]
        }))
    }
}

/// Uniformly random legal moves from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomMouse {
    rng: ChaCha8Rng,
}

pub fn random_mouse(seed: u64) -> RandomMouse {
    RandomMouse {
        rng: ChaCha8Rng::seed_from_u64(seed),
    }
}

impl MouseAgent for RandomMouse {
    fn kind(&self) -> MouseKind {
        MouseKind::Concrete
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        let i = self.rng.gen_range(0..view.legal.len());
        Ok(MouseReply::Move(view.legal[i]))
    }
}
