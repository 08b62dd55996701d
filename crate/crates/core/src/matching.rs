//! Maximum bipartite matching (Hopcroft–Karp) and König vertex covers.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::graph::{Edge, EdgeSet, Vertex};

const NIL: usize = usize::MAX;

/// Bipartite graph with sides `0..left` and `0..right`.
#[derive(Clone, Debug)]
pub struct Bipartite {
    right: usize,
    adj: Vec<Vec<usize>>,
}

/// A matching stored from both sides; `NIL`-free accessors return `Option`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
    size: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate_of_left(&self, u: usize) -> Option<usize> {
        Some(self.mate_left[u]).filter(|&m| m != NIL)
    }

    pub fn mate_of_right(&self, v: usize) -> Option<usize> {
        Some(self.mate_right[v]).filter(|&m| m != NIL)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_left.iter().enumerate().filter(|(_, &m)| m != NIL).map(|(u, &m)| (u, m))
    }
}

impl Bipartite {
    pub fn new(left: usize, right: usize) -> Self {
        Bipartite { right, adj: vec![Vec::new(); left] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(v < self.right);
        self.adj[u].push(v);
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn maximum_matching(&self) -> Matching {
        let nl = self.left();
        let mut mate_left = vec![NIL; nl];
        let mut mate_right = vec![NIL; self.right];
        let mut dist = vec![0usize; nl];
        let mut size = 0;
        while self.bfs(&mate_left, &mate_right, &mut dist) {
            for u in 0..nl {
                if mate_left[u] == NIL && self.dfs(u, &mut mate_left, &mut mate_right, &mut dist) {
                    size += 1;
                }
            }
        }
        Matching { mate_left, mate_right, size }
    }

    fn bfs(&self, mate_left: &[usize], mate_right: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.left() {
            if mate_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = mate_right[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&self, u: usize, mate_left: &mut [usize], mate_right: &mut [usize], dist: &mut [usize]) -> bool {
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            let w = mate_right[v];
            if w == NIL || (dist[w] == dist[u] + 1 && self.dfs(w, mate_left, mate_right, dist)) {
                mate_left[u] = v;
                mate_right[v] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    /// Minimum vertex cover from a maximum matching via König's theorem:
    /// with `Z` the vertices reachable from unmatched left vertices along
    /// alternating paths, the cover is `(L \ Z) ∪ (R ∩ Z)`.
    pub fn konig_cover(&self, m: &Matching) -> (Vec<bool>, Vec<bool>) {
        let mut seen_left = vec![false; self.left()];
        let mut seen_right = vec![false; self.right];
        let mut queue: VecDeque<usize> = (0..self.left()).filter(|&u| m.mate_left[u] == NIL).collect();
        for &u in &queue {
            seen_left[u] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen_right[v] && m.mate_left[u] != v {
                    seen_right[v] = true;
                    let w = m.mate_right[v];
                    if w != NIL && !seen_left[w] {
                        seen_left[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let cover_left = seen_left.iter().map(|s| !s).collect();
        (cover_left, seen_right)
    }
}

/// Maximum matching between the vertex sets `left` and `right` using only
/// `edges`, each of which must join the two sides.
pub fn max_bipartite_matching(left: &[Vertex], right: &[Vertex], edges: &EdgeSet) -> Result<EdgeSet, GraphError> {
    let max_id = left.iter().chain(right).copied().max().map_or(0, |v| v + 1);
    let mut side = vec![(0u8, 0usize); max_id];
    for (i, &v) in left.iter().enumerate() {
        side[v] = (1, i);
    }
    for (i, &v) in right.iter().enumerate() {
        side[v] = (2, i);
    }
    let mut b = Bipartite::new(left.len(), right.len());
    for e in edges {
        let (x, y) = e.endpoints();
        let sx = side.get(x).copied().unwrap_or((0, 0));
        let sy = side.get(y).copied().unwrap_or((0, 0));
        match (sx.0, sy.0) {
            (1, 2) => b.add_edge(sx.1, sy.1),
            (2, 1) => b.add_edge(sy.1, sx.1),
            _ => return Err(GraphError::NotBipartite(*e)),
        }
    }
    let m = b.maximum_matching();
    Ok(m.pairs().map(|(u, v)| Edge::new(left[u], right[v])).collect())
}
