//! Undirected simple graphs on dense vertex ids `0..n`, plus the tree and
//! forest structure the strategies need.

mod generate;
mod parse;
mod rooted;

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use thiserror::Error;

pub use generate::{
    enumerate_labeled_graphs, enumerate_labeled_trees, enumerate_labeled_trees_capped, make_named,
    spider, tree_from_prufer, tstar, LabeledGraphs, LabeledTrees, DEFAULT_TREE_CAP,
};
pub use parse::parse_graph;
pub use rooted::{root_tree, RootedTree};

pub type Vertex = usize;

/// Graph distance extended with a distinguished `INFINITE` value for vertex
/// pairs in different components. `INFINITE` orders above every finite
/// distance and compares equal to itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dist(u32);

impl Dist {
    pub const ZERO: Dist = Dist(0);
    pub const INFINITE: Dist = Dist(u32::MAX);

    pub const fn finite(d: u32) -> Dist {
        assert!(d != u32::MAX);
        Dist(d)
    }

    pub fn is_finite(self) -> bool {
        self != Dist::INFINITE
    }

    pub fn value(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph contains a cycle: {0:?}")]
    Cycle(Vec<Vertex>),
    #[error("vertex {vertex} is not in the component of {component_of}")]
    NotInComponent { vertex: Vertex, component_of: Vertex },
    #[error("unknown graph shape `{0}`")]
    UnknownShape(String),
    #[error("shape `{name}` needs parameter >= {min}, got {k}")]
    ShapeTooSmall { name: String, k: usize, min: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
}

/// Result of [`Graph::forest_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestCheck {
    Forest,
    /// Closed walk `v0, v1, ..., v0` along a cycle of the graph.
    Cycle(Vec<Vertex>),
}

impl ForestCheck {
    pub fn is_forest(&self) -> bool {
        matches!(self, ForestCheck::Forest)
    }
}

#[derive(Clone)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    /// All-pairs distances, computed on first use; reset by `add_edge`.
    distances: OnceLock<DistanceTable>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.adjacency.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("adjacency", &self.adjacency).finish()
    }
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
            distances: OnceLock::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.distances.take();
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Breadth-first distances from `source`; unreachable vertices get
    /// [`Dist::INFINITE`].
    pub fn distances_from(&self, source: Vertex) -> Vec<Dist> {
        let mut dist = vec![Dist::INFINITE; self.vertex_count()];
        dist[source] = Dist::ZERO;
        // Each vertex enters once, so a plain vector with a read cursor suffices.
        let mut queue = Vec::with_capacity(self.vertex_count());
        queue.push(source);
        let mut head = 0;
        while let Some(&u) = queue.get(head) {
            head += 1;
            let next = Dist(dist[u].0 + 1);
            for &w in &self.adjacency[u] {
                if dist[w] == Dist::INFINITE {
                    dist[w] = next;
                    queue.push(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs(&self) -> DistanceTable {
        self.cached_distances().clone()
    }

    /// Distances from `v` to every vertex, from the cached table.
    pub fn distance_row(&self, v: Vertex) -> &[Dist] {
        let table = self.cached_distances();
        &table.table[v * table.n..(v + 1) * table.n]
    }

    fn cached_distances(&self) -> &DistanceTable {
        self.distances.get_or_init(|| {
            let n = self.vertex_count();
            let mut table = Vec::with_capacity(n * n);
            for v in 0..n {
                table.extend(self.distances_from(v));
            }
            DistanceTable { n, table }
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Forest test with a cycle witness on failure.
    pub fn forest_check(&self) -> ForestCheck {
        let n = self.vertex_count();
        let mut forest = Graph::empty(n);
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], mut v: usize) -> usize {
            while comp[v] != v {
                comp[v] = comp[comp[v]];
                v = comp[v];
            }
            v
        }
        for (u, v) in self.edges() {
            let (a, b) = (find(&mut comp, u), find(&mut comp, v));
            if a == b {
                let mut walk = forest.path(v, u).expect("same component");
                walk.push(v);
                return ForestCheck::Cycle(walk);
            }
            comp[a] = b;
            forest.add_edge(u, v).expect("new edge");
        }
        ForestCheck::Forest
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// Some shortest path from `from` to `to`, both endpoints included.
    pub fn path(&self, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &w in &self.adjacency[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// Breadth-first spanning forest, each tree grown from the smallest
    /// vertex of its component.
    pub fn spanning_forest(&self) -> Graph {
        let mut forest = Graph::empty(self.vertex_count());
        let mut seen = vec![false; self.vertex_count()];
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        forest.add_edge(u, w).expect("tree edge");
                        queue.push_back(w);
                    }
                }
            }
        }
        forest
    }

    /// True iff the T* spider (three legs of length 3) is a subgraph.
    /// Only defined for forests, where distinct branches at a vertex are
    /// automatically disjoint.
    pub fn contains_t_star_subtree(&self) -> Result<bool, GraphError> {
        if let ForestCheck::Cycle(c) = self.forest_check() {
            return Err(GraphError::Cycle(c));
        }
        let long_branch = |x: Vertex, w: Vertex| {
            self.neighbors(w)
                .iter()
                .any(|&v| v != x && self.neighbors(v).iter().any(|&u| u != w))
        };
        Ok((0..self.vertex_count()).any(|x| {
            self.degree(x) >= 3
                && self
                    .neighbors(x)
                    .iter()
                    .filter(|&&w| long_branch(x, w))
                    .count()
                    >= 3
        }))
    }

    /// Degree sequence, descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Text in the `n m` / `u v` edge-list format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Dense all-pairs distance matrix.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    table: Vec<Dist>,
}

impl DistanceTable {
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> Dist {
        self.table[u * self.n + v]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}
