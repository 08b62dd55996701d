//! Simple undirected graphs with dense vertex ids, plus the edge and
//! partition containers shared by every solver.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense internal vertex id.
pub type Vertex = usize;

/// An unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Builds the pair `{u, v}`. Panics on `u == v`; use [`Edge::try_new`] for
    /// untrusted input.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        Self::try_new(u, v).expect("edge endpoints must differ")
    }

    pub fn try_new(u: Vertex, v: Vertex) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Some(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> Vertex {
        self.lo
    }

    pub fn hi(&self) -> Vertex {
        self.hi
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

/// A set of unordered vertex pairs. Used both for deletion sets (subsets of
/// `E`) and insertion sets (subsets of the non-edges).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn extend<I: IntoIterator<Item = Edge>>(&mut self, it: I) {
        self.0.extend(it)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl IntoIterator for EdgeSet {
    type Item = Edge;
    type IntoIter = std::collections::btree_set::IntoIter<Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A modification set made of edge deletions and edge insertions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditSet {
    pub deletions: EdgeSet,
    pub insertions: EdgeSet,
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insertions_only(insertions: EdgeSet) -> Self {
        EditSet { deletions: EdgeSet::new(), insertions }
    }

    pub fn deletions_only(deletions: EdgeSet) -> Self {
        EditSet { deletions, insertions: EdgeSet::new() }
    }

    /// Number of modification operations.
    pub fn len(&self) -> usize {
        self.deletions.len() + self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Applies the edits to `g`. Fails if a deletion is not an edge of `g` or
    /// an insertion already is one.
    pub fn apply(&self, g: &Graph) -> Result<Graph, GraphError> {
        for e in &self.deletions {
            if !g.has_edge(e.lo(), e.hi()) {
                return Err(GraphError::MissingEdge(*e));
            }
        }
        for e in &self.insertions {
            if e.hi() >= g.n() {
                return Err(GraphError::VertexOutOfRange(e.hi()));
            }
            if g.has_edge(e.lo(), e.hi()) {
                return Err(GraphError::DuplicateEdge(*e));
            }
        }
        let mut edges: BTreeSet<Edge> = g.edges().filter(|e| !self.deletions.contains(e)).collect();
        edges.extend(self.insertions.iter().copied());
        let mut out = Graph::from_edges(g.n(), edges)?;
        out.labels = g.labels.clone();
        Ok(out)
    }
}

/// Disjoint vertex clusters covering the whole vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    clusters: Vec<Vec<Vertex>>,
}

impl Partition {
    /// Normalizes the clusters (each sorted, clusters ordered by their first
    /// vertex) and checks disjointness, coverage of `0..n`, and non-emptiness.
    pub fn new(n: usize, mut clusters: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        for c in clusters.iter_mut() {
            if c.is_empty() {
                return Err(GraphError::InvalidPartition("empty cluster".into()));
            }
            c.sort_unstable();
            for &v in c.iter() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} in two clusters")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
        }
        clusters.sort_unstable_by_key(|c| c[0]);
        Ok(Partition { clusters })
    }

    pub fn clusters(&self) -> &[Vec<Vertex>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Cluster index per vertex.
    pub fn membership(&self) -> Vec<usize> {
        let n = self.clusters.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so `has_edge` is a binary search and
/// iteration orders are deterministic. Graphs are never mutated in place by
/// the solvers; edits produce new graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    labels: Vec<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `1..=n`.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0, labels: (1..=n).map(|i| i.to_string()).collect() }
    }

    /// Builds a graph from an edge iterator. Duplicate pairs are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n);
        for e in edges {
            if e.hi() >= n {
                return Err(GraphError::VertexOutOfRange(e.hi()));
            }
            g.adj[e.lo()].push(e.hi());
            g.adj[e.hi()].push(e.lo());
        }
        let mut twice = 0;
        for list in g.adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        g.m = twice / 2;
        Ok(g)
    }

    /// Convenience constructor from `(u, v)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            edges.push(Edge::try_new(u, v).ok_or(GraphError::SelfLoop(u))?);
        }
        Self::from_edges(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::InvalidLabels { expected: self.n(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| Edge { lo: u, hi: v }))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// All vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (u + 1..n).filter(move |&v| !self.has_edge(u, v)).map(move |v| Edge { lo: u, hi: v }))
    }

    /// Copy of the graph without the given edges. Pairs that are not edges
    /// are ignored.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        let mut out = self.clone();
        for e in removed {
            let (u, v) = e.endpoints();
            if let Ok(i) = out.adj[u].binary_search(&v) {
                out.adj[u].remove(i);
                let j = out.adj[v].binary_search(&u).expect("symmetric adjacency");
                out.adj[v].remove(j);
                out.m -= 1;
            }
        }
        out
    }

    /// Induced subgraph on `vertices` (any order; duplicates are an error).
    /// Vertex `i` of the result corresponds to `vertices[i]`; labels carry over.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            debug_assert_eq!(local[v], usize::MAX, "duplicate vertex in induced()");
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut twice = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                }
            }
            adj[i].sort_unstable();
            twice += adj[i].len();
        }
        Graph { adj, m: twice / 2, labels: vertices.iter().map(|&v| self.labels[v].clone()).collect() }
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &[Vertex]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        set.iter().map(|&v| self.adj[v].iter().filter(|&&w| inside[w] && w > v).count()).sum()
    }

    /// Checks the structural invariants: symmetric adjacency, no loops, no
    /// parallel edges, and `m` equal to half the degree sum.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let mut twice = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::Corrupt(format!("adjacency of {u} not strictly sorted")));
                }
            }
            for &v in list {
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Corrupt(format!("asymmetric pair ({u}, {v})")));
                }
            }
            twice += list.len();
        }
        if twice != 2 * self.m {
            return Err(GraphError::Corrupt("edge count mismatch".into()));
        }
        Ok(())
    }
}

/// Connected components, each sorted ascending, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let all: Vec<Vertex> = g.vertices().collect();
    components_within(g, &all)
}

/// Connected components of the subgraph induced by `set`.
pub fn components_within(g: &Graph, set: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut allowed = vec![false; g.n()];
    for &v in set {
        allowed[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for &s in &sorted {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// True if `set` induces a connected subgraph (the empty set is not connected).
pub fn is_connected_within(g: &Graph, set: &[Vertex]) -> bool {
    !set.is_empty() && components_within(g, set).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_plus_isolated() -> Graph {
        Graph::from_pairs(4, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn components_of_empty_graph() {
        assert!(connected_components(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn components_triangle_and_isolated_vertex() {
        let comps = connected_components(&triangle_plus_isolated());
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn duplicate_edges_are_merged() {
        let g = Graph::from_pairs(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        g.check_invariants().unwrap();
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(Graph::from_pairs(2, &[(1, 1)]), Err(GraphError::SelfLoop(1))));
    }

    #[test]
    fn induced_keeps_labels_and_edges() {
        let g = triangle_plus_isolated();
        let h = g.induced(&[2, 0, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(0, 1));
        assert_eq!(h.label(0), "3");
    }

    #[test]
    fn edit_set_apply_checks_membership() {
        let g = triangle_plus_isolated();
        let mut edits = EditSet::new();
        edits.deletions.insert(Edge::new(0, 1));
        edits.insertions.insert(Edge::new(2, 3));
        let h = edits.apply(&g).unwrap();
        assert!(!h.has_edge(0, 1));
        assert!(h.has_edge(2, 3));
        assert_eq!(h.m(), 3);

        let mut bad = EditSet::new();
        bad.insertions.insert(Edge::new(0, 1));
        assert!(bad.apply(&g).is_err());
    }

    #[test]
    fn partition_rejects_overlap_and_gaps() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![]]).is_err());
        let p = Partition::new(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.clusters(), &[vec![0, 1], vec![2]]);
        assert_eq!(p.membership(), vec![0, 0, 1]);
    }
}
