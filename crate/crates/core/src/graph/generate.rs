use super::{Graph, GraphError, Vertex};

/// Default largest `n` accepted by [`enumerate_labeled_trees`].
pub const DEFAULT_TREE_CAP: usize = 8;

/// Largest `n` accepted by [`enumerate_labeled_graphs`] (2^21 graphs).
const GRAPH_CAP: usize = 7;

/// Vertex numbering of the T* spider built by `make_named("t_star", _)`:
/// center `x = 0`, leg `j` (1-based) is `w_j = 3j-2`, `v_j = 3j-1`, `u_j = 3j`.
pub mod tstar {
    use crate::graph::Vertex;

    pub const X: Vertex = 0;

    pub const fn w(j: usize) -> Vertex {
        3 * j - 2
    }

    pub const fn v(j: usize) -> Vertex {
        3 * j - 1
    }

    pub const fn u(j: usize) -> Vertex {
        3 * j
    }
}

/// Builds a named shape.
///
/// Numbering: `path` and `cycle` run `0, 1, ..., k-1` in order; `star` has
/// center 0 and leaves `1..=k`; `spider` has center 0 and leg `j` (0-based)
/// on `3j+1, 3j+2, 3j+3` from the center outwards; `t_star` is `spider(3)`
/// and ignores `k`.
pub fn make_named(name: &str, k: usize) -> Result<Graph, GraphError> {
    let need = |min: usize| {
        if k < min {
            Err(GraphError::ShapeTooSmall {
                name: name.to_string(),
                k,
                min,
            })
        } else {
            Ok(())
        }
    };
    match name {
        "path" => {
            need(1)?;
            let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            Graph::from_edges(k, &edges)
        }
        "cycle" => {
            need(3)?;
            let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            Graph::from_edges(k, &edges)
        }
        "star" => {
            need(1)?;
            let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
            Graph::from_edges(k + 1, &edges)
        }
        "spider" => {
            need(1)?;
            Ok(spider(k, 3))
        }
        "t_star" => Ok(spider(3, 3)),
        _ => Err(GraphError::UnknownShape(name.to_string())),
    }
}

/// Spider with `legs` legs of `length` vertices each, center 0, leg `j`
/// occupying `j*length + 1 ..= (j+1)*length` from the center outwards.
pub fn spider(legs: usize, length: usize) -> Graph {
    let mut g = Graph::empty(1 + legs * length);
    for j in 0..legs {
        let mut prev = 0;
        for step in 1..=length {
            let v = j * length + step;
            g.add_edge(prev, v).expect("fresh spider edge");
            prev = v;
        }
    }
    g
}

/// Decodes a Prüfer sequence over `0..n` into its labeled tree.
pub fn tree_from_prufer(seq: &[Vertex], n: usize) -> Graph {
    assert!(n >= 2 && seq.len() == n - 2, "Prüfer sequence length");
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut g = Graph::empty(n);
    for &a in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        g.add_edge(leaf, a).expect("Prüfer edge");
        degree[leaf] = 0;
        degree[a] -= 1;
    }
    let mut rest = (0..n).filter(|&v| degree[v] == 1);
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    g.add_edge(a, b).expect("final Prüfer edge");
    g
}

/// All labeled trees on `0..n` in lexicographic Prüfer order, with the
/// default cap.
pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees, GraphError> {
    enumerate_labeled_trees_capped(n, DEFAULT_TREE_CAP)
}

pub fn enumerate_labeled_trees_capped(n: usize, cap: usize) -> Result<LabeledTrees, GraphError> {
    if n > cap {
        return Err(GraphError::EnumerationCap { n, cap });
    }
    if n == 0 {
        return Err(GraphError::ShapeTooSmall {
            name: "labeled tree".into(),
            k: 0,
            min: 1,
        });
    }
    Ok(LabeledTrees {
        n,
        next: Some(vec![0; n.saturating_sub(2)]),
    })
}

#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    next: Option<Vec<Vertex>>,
}

impl Iterator for LabeledTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let seq = self.next.take()?;
        let tree = if self.n == 1 {
            Graph::empty(1)
        } else {
            tree_from_prufer(&seq, self.n)
        };
        let mut succ = seq;
        // Odometer increment, last position fastest.
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.n {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(tree)
    }
}

/// Every labeled simple graph on `0..n`, by edge-subset bitmask.
pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    if n > GRAPH_CAP {
        return Err(GraphError::EnumerationCap { n, cap: GRAPH_CAP });
    }
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(LabeledGraphs {
        n,
        total: 1u64 << pairs.len(),
        pairs,
        mask: 0,
    })
}

#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    mask: u64,
    total: u64,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.mask == self.total {
            return None;
        }
        let mut g = Graph::empty(self.n);
        for (bit, &(u, v)) in self.pairs.iter().enumerate() {
            if self.mask >> bit & 1 == 1 {
                g.add_edge(u, v).expect("distinct pair");
            }
        }
        self.mask += 1;
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Spanning-tree count by brute force over all (n-1)-edge subsets of K_n.
    fn brute_force_tree_count(n: usize) -> usize {
        enumerate_labeled_graphs(n)
            .unwrap()
            .filter(|g| g.edge_count() + 1 == n && g.is_connected())
            .count()
    }

    #[test]
    fn tree_counts_match_brute_force() {
        assert_eq!(brute_force_tree_count(3), 3);
        assert_eq!(brute_force_tree_count(4), 16);
        assert_eq!(enumerate_labeled_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_labeled_trees(4).unwrap().count(), 16);
        assert_eq!(enumerate_labeled_trees(1).unwrap().count(), 1);
        let k2: Vec<_> = enumerate_labeled_trees(2).unwrap().collect();
        assert_eq!(k2, vec![make_named("path", 2).unwrap()]);
    }

    #[test]
    fn trees_are_distinct_forests() {
        for n in 3..=7 {
            let mut seen = BTreeSet::new();
            let mut count = 0;
            for t in enumerate_labeled_trees(n).unwrap() {
                assert!(t.is_forest() && t.is_connected());
                assert_eq!(t.edge_count(), n - 1);
                seen.insert(t.edges().collect::<Vec<_>>());
                count += 1;
            }
            assert_eq!(count, n.pow(n as u32 - 2));
            assert_eq!(seen.len(), count);
        }
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(
            enumerate_labeled_trees(9).unwrap_err(),
            GraphError::EnumerationCap { n: 9, cap: 8 }
        );
        assert!(enumerate_labeled_trees_capped(9, 9).is_ok());
    }

    #[test]
    fn first_tree_in_prufer_order() {
        // (0, 0) decodes to the star centered at 0.
        let first = enumerate_labeled_trees(4).unwrap().next().unwrap();
        assert_eq!(first, make_named("star", 3).unwrap());
    }

    #[test]
    fn named_shapes() {
        assert_eq!(
            make_named("path", 2).unwrap(),
            Graph::from_edges(2, &[(0, 1)]).unwrap()
        );
        let c3 = make_named("cycle", 3).unwrap();
        assert_eq!(c3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        let t = make_named("t_star", 0).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (10, 9));
        assert_eq!(t.degree_sequence(), vec![3, 2, 2, 2, 2, 2, 2, 1, 1, 1]);
        assert_eq!(make_named("spider", 3).unwrap(), t);
        for j in 1..=3 {
            assert!(t.has_edge(tstar::X, tstar::w(j)));
            assert!(t.has_edge(tstar::w(j), tstar::v(j)));
            assert!(t.has_edge(tstar::v(j), tstar::u(j)));
        }
        assert!(matches!(
            make_named("cycle", 2),
            Err(GraphError::ShapeTooSmall { min: 3, .. })
        ));
        assert!(matches!(
            make_named("wheel", 5),
            Err(GraphError::UnknownShape(_))
        ));
    }

    #[test]
    fn graph_enumeration_counts() {
        assert_eq!(enumerate_labeled_graphs(4).unwrap().count(), 64);
        assert_eq!(enumerate_labeled_graphs(1).unwrap().count(), 1);
    }
}
