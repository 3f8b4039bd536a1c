use fixedbitset::FixedBitSet;

use super::{Graph, GraphError, Vertex};

/// One tree component of a graph, rooted at a chosen vertex.
///
/// All per-vertex tables are indexed by the vertex ids of the whole graph;
/// entries for vertices outside the component are empty.
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: Vertex,
    members: FixedBitSet,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<u32>,
    descendants: Vec<FixedBitSet>,
}

/// Roots the component containing `component_of` at `root`.
pub fn root_tree(g: &Graph, component_of: Vertex, root: Vertex) -> Result<RootedTree, GraphError> {
    let n = g.vertex_count();
    for v in [component_of, root] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    let dist = g.distances_from(component_of);
    if !dist[root].is_finite() {
        return Err(GraphError::NotInComponent {
            vertex: root,
            component_of,
        });
    }
    let component: Vec<Vertex> = (0..n).filter(|&v| dist[v].is_finite()).collect();
    let edges: usize = component.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    if edges + 1 != component.len() {
        let sub = restricted(g, &component);
        if let super::ForestCheck::Cycle(c) = sub.forest_check() {
            return Err(GraphError::Cycle(c));
        }
    }

    let mut members = FixedBitSet::with_capacity(n);
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0u32; n];
    let mut order = vec![root];
    members.insert(root);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in g.neighbors(u) {
            if !members.contains(w) {
                members.insert(w);
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                children[u].push(w);
                order.push(w);
            }
        }
    }

    let mut descendants = vec![FixedBitSet::with_capacity(n); n];
    for &u in order.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(u);
        for &c in &children[u] {
            set.union_with(&descendants[c]);
        }
        descendants[u] = set;
    }

    Ok(RootedTree {
        root,
        members,
        parent,
        children,
        depth,
        descendants,
    })
}

fn restricted(g: &Graph, component: &[Vertex]) -> Graph {
    let mut sub = Graph::empty(g.vertex_count());
    for &u in component {
        for &w in g.neighbors(u) {
            if u < w {
                sub.add_edge(u, w).expect("edge of a simple graph");
            }
        }
    }
    sub
}

impl RootedTree {
    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Size of the underlying graph's vertex range.
    pub fn universe(&self) -> usize {
        self.parent.len()
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v]
    }

    /// `V_u`: `u` together with all its descendants.
    pub fn descendants(&self, v: Vertex) -> &FixedBitSet {
        &self.descendants[v]
    }
}
