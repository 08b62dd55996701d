//! Vertex Cover: the half-integral LP relaxation, the reduction it induces,
//! an above-LP branch-and-bound, and k-exchange local search.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::matching::Bipartite;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VcError {
    #[error("no vertex cover of size <= {0}")]
    Infeasible(usize),
    #[error("the given set is not a vertex cover (edge {0}-{1} uncovered)")]
    InvalidCover(Vertex, Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

/// LP value of one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Zero,
    Half,
    One,
}

impl Half {
    pub fn halves(self) -> u64 {
        match self {
            Half::Zero => 0,
            Half::Half => 1,
            Half::One => 2,
        }
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Half::Zero => "0",
            Half::Half => "1/2",
            Half::One => "1",
        })
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A non-negative multiple of one half, printed as a reduced fraction `p/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfUnits(pub u64);

impl HalfUnits {
    pub fn ceil(self) -> u64 {
        self.0.div_ceil(2)
    }
}

impl fmt::Display for HalfUnits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}/1", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfUnits {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Optimal LP solution with every value in {0, 1/2, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfIntegralAssignment {
    pub values: Vec<Half>,
}

impl HalfIntegralAssignment {
    pub fn lp_value(&self) -> HalfUnits {
        HalfUnits(self.values.iter().map(|h| h.halves()).sum())
    }

    /// Every edge constraint `x_u + x_v >= 1` holds.
    pub fn is_feasible(&self, g: &Graph) -> bool {
        self.values.len() == g.n() && g.edges().all(|e| self.values[e.lo()].halves() + self.values[e.hi()].halves() >= 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCover {
    pub members: Vec<Vertex>,
}

impl VertexCover {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexCover { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// First uncovered edge, if any.
    pub fn uncovered(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        let mut inside = vec![false; g.n()];
        for &v in &self.members {
            if v < g.n() {
                inside[v] = true;
            }
        }
        g.edges().find(|e| !inside[e.lo()] && !inside[e.hi()]).map(|e| e.endpoints())
    }

    pub fn is_cover(&self, g: &Graph) -> bool {
        self.members.iter().all(|&v| v < g.n()) && self.uncovered(g).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMove {
    pub added: Vec<Vertex>,
    pub removed: Vec<Vertex>,
    pub distance: usize,
}

/// Twice the LP optimum (maximum matching of the bipartite double cover) and
/// a half-integral optimum read off a König cover of the double cover.
fn double_cover_lp(g: &Graph) -> (u64, Vec<u8>) {
    let n = g.n();
    let mut b = Bipartite::new(n, n);
    for u in g.vertices() {
        for &v in g.neighbors(u) {
            b.add_edge(u, v);
        }
    }
    let m = b.maximum_matching();
    let (left, right) = b.konig_cover(&m);
    let x2 = (0..n).map(|v| u8::from(left[v]) + u8::from(right[v])).collect();
    (m.size() as u64, x2)
}

fn lp_twice(g: &Graph, vertices: &[Vertex]) -> u64 {
    double_cover_lp(&g.induced(vertices)).0
}

/// Optimal half-integral LP solution. Among the optima, vertices are fixed to
/// 0 (with their neighbours at 1) or to 1 whenever that keeps the value
/// optimal, so the half-valued part is as small as this greedy pass finds.
pub fn lp_half_integral(g: &Graph) -> HalfIntegralAssignment {
    let (total, x2) = double_cover_lp(g);
    let mut values: Vec<Half> = x2
        .iter()
        .map(|&x| match x {
            0 => Half::Zero,
            1 => Half::Half,
            _ => Half::One,
        })
        .collect();
    let mut half: Vec<Vertex> = g.vertices().filter(|&v| values[v] == Half::Half).collect();
    let mut residual = lp_twice(g, &half);
    debug_assert_eq!(residual + 2 * values.iter().filter(|&&h| h == Half::One).count() as u64, total);

    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i < half.len() {
            let v = half[i];
            let in_half = |w: &Vertex| half.binary_search(w).is_ok();
            let nb: Vec<Vertex> = g.neighbors(v).iter().copied().filter(in_half).collect();
            let without_closed: Vec<Vertex> =
                half.iter().copied().filter(|&w| w != v && nb.binary_search(&w).is_err()).collect();
            let zero_value = lp_twice(g, &without_closed);
            if 2 * nb.len() as u64 + zero_value == residual {
                values[v] = Half::Zero;
                for &w in &nb {
                    values[w] = Half::One;
                }
                half = without_closed;
                residual = zero_value;
                changed = true;
                continue;
            }
            let without_v: Vec<Vertex> = half.iter().copied().filter(|&w| w != v).collect();
            let one_value = lp_twice(g, &without_v);
            if 2 + one_value == residual {
                values[v] = Half::One;
                half = without_v;
                residual = one_value;
                changed = true;
                continue;
            }
            i += 1;
        }
    }
    HalfIntegralAssignment { values }
}

/// Vertices forced in (value 1) and out (value 0), and the subgraph induced
/// by the half-valued vertices. `residual_ids[i]` is residual vertex `i`.
#[derive(Clone, Debug)]
pub struct NtReduction {
    pub forced_in: Vec<Vertex>,
    pub forced_out: Vec<Vertex>,
    pub residual: Graph,
    pub residual_ids: Vec<Vertex>,
}

pub fn nt_reduce(g: &Graph, a: &HalfIntegralAssignment) -> NtReduction {
    let pick = |h: Half| -> Vec<Vertex> { g.vertices().filter(|&v| a.values[v] == h).collect() };
    let residual_ids = pick(Half::Half);
    NtReduction { forced_in: pick(Half::One), forced_out: pick(Half::Zero), residual: g.induced(&residual_ids), residual_ids }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AboveLpStats {
    pub nodes: u64,
    /// LP value of the input graph.
    pub lp_value: u64,
}

/// Minimum vertex cover of size at most `k`.
pub fn vc_above_lp(g: &Graph, k: usize) -> Result<VertexCover, VcError> {
    vc_above_lp_with_stats(g, k).map(|(c, _)| c)
}

pub fn vc_above_lp_with_stats(g: &Graph, k: usize) -> Result<(VertexCover, AboveLpStats), VcError> {
    let mut search = AboveLp { g, best: None, bound: k + 1, nodes: 0 };
    search.run(vec![true; g.n()], Vec::new());
    let stats = AboveLpStats { nodes: search.nodes, lp_value: double_cover_lp(g).0 };
    match search.best {
        Some(best) => Ok((VertexCover::new(best), stats)),
        None => Err(VcError::Infeasible(k)),
    }
}

struct AboveLp<'a> {
    g: &'a Graph,
    best: Option<Vec<Vertex>>,
    /// Only covers strictly smaller than this are of interest.
    bound: usize,
    nodes: u64,
}

impl AboveLp<'_> {
    fn run(&mut self, alive: Vec<bool>, mut chosen: Vec<Vertex>) {
        self.nodes += 1;
        let g = self.g;
        let verts: Vec<Vertex> = g.vertices().filter(|&v| alive[v] && g.neighbors(v).iter().any(|&w| alive[w])).collect();
        if verts.is_empty() {
            if chosen.len() < self.bound {
                self.bound = chosen.len();
                self.best = Some(chosen);
            }
            return;
        }
        let h = g.induced(&verts);
        let lp = lp_half_integral(&h);
        if chosen.len() as u64 + lp.lp_value().ceil() >= self.bound as u64 {
            return;
        }
        let nt = nt_reduce(&h, &lp);
        chosen.extend(nt.forced_in.iter().map(|&i| verts[i]));
        let mut alive = vec![false; g.n()];
        let mut degree = vec![0usize; g.n()];
        for &i in &nt.residual_ids {
            alive[verts[i]] = true;
        }
        for (i, &orig) in nt.residual_ids.iter().enumerate() {
            degree[verts[orig]] = nt.residual.degree(i);
        }
        if nt.residual.m() == 0 {
            self.run(alive, chosen);
            return;
        }
        // branch on the largest residual degree; ties by input degree, then id
        let v = nt
            .residual_ids
            .iter()
            .map(|&i| verts[i])
            .max_by_key(|&v| (degree[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("non-empty residual");

        let mut take_v = alive.clone();
        take_v[v] = false;
        let mut with_v = chosen.clone();
        with_v.push(v);
        self.run(take_v, with_v);

        let nb: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        let mut skip_v = alive;
        skip_v[v] = false;
        for &w in &nb {
            skip_v[w] = false;
        }
        chosen.extend(nb);
        self.run(skip_v, chosen);
    }
}

/// A strictly smaller cover within exchange distance `k` of `s`, or `None`
/// if `s` is locally optimal.
///
/// Every improving neighbour removes an independent set `R ⊆ S` and must add
/// `N(R) \ S`; adding exactly that set is cheapest, so enumerating `R` is
/// exhaustive. The move with the largest gain is returned (ties: smaller
/// distance, then lexicographically smaller `R`).
pub fn ls_vertex_cover(g: &Graph, s: &VertexCover, k: usize) -> Result<Option<(VertexCover, ExchangeMove)>, VcError> {
    if let Some(&v) = s.members.iter().find(|&&v| v >= g.n()) {
        return Err(VcError::VertexOutOfRange(v));
    }
    if let Some((u, v)) = s.uncovered(g) {
        return Err(VcError::InvalidCover(u, v));
    }
    let mut in_s = vec![false; g.n()];
    for &v in &s.members {
        in_s[v] = true;
    }
    let mut best: Option<(Vec<Vertex>, Vec<Vertex>)> = None;
    let mut removed = Vec::new();
    let mut added_count = vec![0usize; g.n()];
    let mut added = 0usize;
    enumerate_removals(g, &s.members, &in_s, k, 0, &mut removed, &mut added_count, &mut added, &mut best);

    Ok(best.map(|(removed, added)| {
        let members: Vec<Vertex> =
            s.members.iter().copied().filter(|v| removed.binary_search(v).is_err()).chain(added.iter().copied()).collect();
        let distance = removed.len() + added.len();
        (VertexCover::new(members), ExchangeMove { added, removed, distance })
    }))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_removals(
    g: &Graph,
    s: &[Vertex],
    in_s: &[bool],
    k: usize,
    from: usize,
    removed: &mut Vec<Vertex>,
    added_count: &mut [usize],
    added: &mut usize,
    best: &mut Option<(Vec<Vertex>, Vec<Vertex>)>,
) {
    if !removed.is_empty() && *added < removed.len() {
        let gain = removed.len() - *added;
        let distance = removed.len() + *added;
        let better = match best {
            None => true,
            Some((r, a)) => {
                let (bg, bd) = (r.len() - a.len(), r.len() + a.len());
                gain > bg || (gain == bg && distance < bd)
            }
        };
        if better {
            let add: Vec<Vertex> = g.vertices().filter(|&v| added_count[v] > 0).collect();
            *best = Some((removed.clone(), add));
        }
    }
    for i in from..s.len() {
        let v = s[i];
        if removed.len() + 1 + *added > k {
            break;
        }
        // removed vertices must be pairwise non-adjacent
        if g.neighbors(v).iter().any(|w| removed.contains(w)) {
            continue;
        }
        let mut fresh = 0;
        for &w in g.neighbors(v) {
            if !in_s[w] {
                if added_count[w] == 0 {
                    fresh += 1;
                }
                added_count[w] += 1;
            }
        }
        *added += fresh;
        removed.push(v);
        if removed.len() + *added <= k {
            enumerate_removals(g, s, in_s, k, i + 1, removed, added_count, added, best);
        }
        removed.pop();
        *added -= fresh;
        for &w in g.neighbors(v) {
            if !in_s[w] {
                added_count[w] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{lsvc_figure, vc_lp_figure};

    #[test]
    fn triangle_is_all_half() {
        let a = lp_half_integral(&Graph::complete(3));
        assert_eq!(a.values, vec![Half::Half; 3]);
        assert_eq!(a.lp_value(), HalfUnits(3));
        assert_eq!(a.lp_value().to_string(), "3/2");
    }

    #[test]
    fn single_edge_has_value_one() {
        let g = Graph::complete(2);
        let a = lp_half_integral(&g);
        assert_eq!(a.lp_value(), HalfUnits(2));
        assert!(a.is_feasible(&g));
    }

    #[test]
    fn figure_lp_and_reduction() {
        let g = vc_lp_figure();
        let a = lp_half_integral(&g);
        let h = Half::Half;
        assert_eq!(a.values, vec![h, h, h, Half::One, Half::Zero, Half::Zero]);
        assert_eq!(a.lp_value().to_string(), "5/2");
        let nt = nt_reduce(&g, &a);
        assert_eq!(nt.forced_in, vec![3]);
        assert_eq!(nt.forced_out, vec![4, 5]);
        assert_eq!(nt.residual_ids, vec![0, 1, 2]);
        assert_eq!(nt.residual.m(), 3);
    }

    #[test]
    fn all_half_graph_forces_nothing() {
        let g = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let a = lp_half_integral(&g);
        let nt = nt_reduce(&g, &a);
        assert!(nt.forced_in.is_empty() && nt.forced_out.is_empty());
    }

    #[test]
    fn figure_above_lp() {
        let g = vc_lp_figure();
        let cover = vc_above_lp(&g, 3).unwrap();
        assert_eq!(cover.members, vec![1, 2, 3]);
        assert!(cover.is_cover(&g));
        assert_eq!(vc_above_lp(&g, 2), Err(VcError::Infeasible(2)));
    }

    #[test]
    fn figure_local_search() {
        let (g, s) = lsvc_figure();
        let s = VertexCover::new(s);
        let (better, mv) = ls_vertex_cover(&g, &s, 3).unwrap().expect("improvement exists");
        assert_eq!(better.len(), 4);
        assert!(better.is_cover(&g));
        assert!(mv.distance <= 3);
        // v6 has all its neighbours in the cover, so dropping it alone already improves
        let (_, single) = ls_vertex_cover(&g, &s, 1).unwrap().unwrap();
        assert_eq!((single.removed, single.added), (vec![5], vec![]));
        assert_eq!(ls_vertex_cover(&g, &s, 0).unwrap(), None);
    }

    #[test]
    fn minimum_cover_is_locally_optimal() {
        let g = vc_lp_figure();
        let min = vc_above_lp(&g, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(ls_vertex_cover(&g, &min, k).unwrap(), None);
        }
    }

    #[test]
    fn rejects_non_cover() {
        let g = vc_lp_figure();
        assert!(matches!(ls_vertex_cover(&g, &VertexCover::new(vec![0]), 2), Err(VcError::InvalidCover(..))));
    }
}
