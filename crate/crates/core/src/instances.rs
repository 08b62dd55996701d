//! Small fixed instances (the illustrative figures) and seeded random
//! generators used by tests, benchmarks and the tuner corpus.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph, Vertex};

fn one_based(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let edges = pairs.iter().map(|&(u, v)| Edge::new(u - 1, v - 1));
    Graph::from_edges(n, edges).expect("fixture is simple")
}

/// Triangle `T1..T3` (ids 0..2) and a five-vertex cluster `K1..K5` (ids 3..7)
/// joined by the three edges `T1–K5`, `T2–K3`, `T1–K4`.
pub fn hcd_figure() -> Graph {
    let labels = ["T1", "T2", "T3", "K1", "K2", "K3", "K4", "K5"].map(String::from).to_vec();
    let (t1, t2, t3) = (0, 1, 2);
    let k = |i: usize| 2 + i;
    let mut pairs = vec![(t1, t2), (t2, t3), (t3, t1)];
    for i in 2..=5 {
        pairs.push((k(i), k(i - 1)));
    }
    for (i, j) in [(1, 4), (1, 5), (2, 5), (3, 5)] {
        pairs.push((k(i), k(j)));
    }
    pairs.extend([(t1, k(5)), (t2, k(3)), (t1, k(4))]);
    Graph::from_pairs(8, &pairs).expect("fixture").with_labels(labels).expect("8 labels")
}

/// The three edges between the triangle and the five-vertex cluster of
/// [`hcd_figure`].
pub fn hcd_figure_crossing() -> Vec<Edge> {
    vec![Edge::new(0, 7), Edge::new(1, 5), Edge::new(0, 6)]
}

/// Six vertices with degrees (1, 1, 3, 2, 2, 1); inserting `{v4, v6}` makes
/// it 2-anonymous.
pub fn anonymity_figure() -> Graph {
    one_based(6, &[(1, 4), (2, 3), (3, 4), (3, 5), (5, 6)])
}

/// Graph and size-5 cover `{v1, v3, v4, v5, v6}` admitting a size-4 cover
/// at exchange distance 3.
pub fn lsvc_figure() -> (Graph, Vec<Vertex>) {
    let g = one_based(6, &[(1, 4), (1, 2), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (3, 6), (4, 6), (5, 6)]);
    (g, vec![0, 2, 3, 4, 5])
}

/// Triangle `v1 v2 v3` with `v2, v3` joined to `v4`, which has the two
/// pendant neighbours `v5, v6`. LP optimum 5/2, minimum cover 3.
pub fn vc_lp_figure() -> Graph {
    one_based(6, &[(1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (4, 5), (4, 6)])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge::new(u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple")
}

/// Vertex-disjoint cliques of the given sizes.
pub fn disjoint_cliques(sizes: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut base = 0;
    for &s in sizes {
        for i in 0..s {
            for j in i + 1..s {
                edges.push(Edge::new(base + i, base + j));
            }
        }
        base += s;
    }
    Graph::from_edges(base, edges).expect("simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_degrees() {
        assert_eq!(anonymity_figure().degrees(), vec![1, 1, 3, 2, 2, 1]);
        let g = hcd_figure();
        assert_eq!(g.m(), 14);
        for e in hcd_figure_crossing() {
            assert!(g.has_edge(e.lo(), e.hi()));
        }
        assert_eq!(vc_lp_figure().m(), 7);
        assert_eq!(lsvc_figure().0.m(), 10);
    }
}
