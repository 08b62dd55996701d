//! Highly Connected Deletion: the min-cut clustering heuristic, an exact
//! cut-branching solver, data reduction, and the two-clique instance family
//! on which the heuristic is far from optimal.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cut::{is_highly_connected, CutSelector, TieBreakPolicy};
use crate::graph::{components_within, connected_components, Edge, EdgeSet, Graph, Partition, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HcdError {
    #[error("no solution within the budget")]
    Infeasible,
    #[error("component with {size} vertices exceeds the exact-solver cap of {cap}")]
    ComponentTooLarge { size: usize, cap: usize },
    #[error("adversarial instances need n >= 2, got {0}")]
    InvalidSize(usize),
}

/// Deleted edges and the resulting highly connected clusters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HcdSolution {
    pub deleted: EdgeSet,
    pub clusters: Partition,
    pub cost: usize,
}

impl HcdSolution {
    fn from_deletions(g: &Graph, deleted: EdgeSet) -> Self {
        let rest = g.without_edges(&deleted);
        let clusters = Partition::new(g.n(), connected_components(&rest)).expect("components partition V");
        HcdSolution { cost: deleted.len(), deleted, clusters }
    }

    /// Re-checks the solution against `g`: deletions are edges, the clusters
    /// are exactly the components after deletion, and each is highly connected.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.cost != self.deleted.len() || self.deleted.iter().any(|e| !g.has_edge(e.lo(), e.hi())) {
            return false;
        }
        let rest = g.without_edges(&self.deleted);
        if g.m() - rest.m() != self.cost {
            return false;
        }
        let comps = match Partition::new(g.n(), connected_components(&rest)) {
            Ok(p) => p,
            Err(_) => return false,
        };
        comps == self.clusters && comps.clusters().iter().all(|c| is_highly_connected(&rest, c))
    }
}

/// Two `n`-cliques `u_1..u_n`, `v_1..v_n` joined by the matching edges
/// `{u_i, v_i}` for `2 <= i <= n`. Vertex `u_i` has id `i-1`, `v_i` has id
/// `n+i-1`.
#[derive(Clone, Debug)]
pub struct AdversarialInstance {
    pub n: usize,
    pub graph: Graph,
}

impl AdversarialInstance {
    /// Deleting the matching edges is optimal.
    pub fn optimal_cost(&self) -> usize {
        self.n - 1
    }

    /// Cost of the heuristic when every cut isolates one `u` vertex.
    pub fn adversarial_heuristic_cost(&self) -> usize {
        self.n * (self.n + 1) / 2 - 1
    }
}

pub fn gen_adversarial(n: usize) -> Result<AdversarialInstance, HcdError> {
    if n < 2 {
        return Err(HcdError::InvalidSize(n));
    }
    let mut edges = Vec::new();
    for side in [0, n] {
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Edge::new(side + i, side + j));
            }
        }
    }
    for i in 1..n {
        edges.push(Edge::new(i, n + i));
    }
    let labels = (1..=n).map(|i| format!("u{i}")).chain((1..=n).map(|i| format!("v{i}"))).collect();
    let graph = Graph::from_edges(2 * n, edges).expect("simple").with_labels(labels).expect("2n labels");
    Ok(AdversarialInstance { n, graph })
}

/// Repeatedly deletes a minimum cut of some component that is not yet highly
/// connected. Both sides of a cut are pushed back; the smaller side is
/// processed first.
pub fn hs_cluster(g: &Graph, policy: TieBreakPolicy) -> HcdSolution {
    let mut selector = CutSelector::new(policy);
    let mut current = g.clone();
    let mut deleted = EdgeSet::new();
    let mut stack: Vec<Vec<Vertex>> = connected_components(g);
    stack.reverse();
    while let Some(comp) = stack.pop() {
        if is_highly_connected(&current, &comp) {
            continue;
        }
        let cut = selector.select(&current, &comp).expect("non-HC components have >= 2 vertices");
        current = current.without_edges(&cut.crossing);
        deleted.extend(cut.crossing.iter().copied());
        let mut parts = components_within(&current, &cut.side_a);
        parts.extend(components_within(&current, &cut.side_b));
        parts.sort_by_key(|p| (p.len(), p[0]));
        stack.extend(parts.into_iter().rev());
    }
    HcdSolution::from_deletions(g, deleted)
}

/// Output of [`hcd_reduce`]. Vertex `i` of `reduced` is `kept[i]` in the input.
#[derive(Clone, Debug)]
pub struct HcdReduction {
    pub reduced: Graph,
    pub kept: Vec<Vertex>,
    pub forced_deletions: EdgeSet,
    pub residual_k: usize,
}

/// Drops components that are already highly connected and rejects the
/// instance when the non-HC components need more than `k` deletions in total
/// (each needs at least its edge connectivity).
pub fn hcd_reduce(g: &Graph, k: usize) -> Result<HcdReduction, HcdError> {
    let mut kept = Vec::new();
    let mut bound = 0;
    for comp in connected_components(g) {
        if !is_highly_connected(g, &comp) {
            bound += crate::cut::edge_connectivity(g, &comp);
            kept.extend(comp);
        }
    }
    if bound > k {
        return Err(HcdError::Infeasible);
    }
    kept.sort_unstable();
    Ok(HcdReduction { reduced: g.induced(&kept), kept, forced_deletions: EdgeSet::new(), residual_k: k })
}

/// Sum of edge connectivities over the components that are not highly
/// connected.
pub fn hcd_lower_bound(g: &Graph) -> usize {
    connected_components(g)
        .iter()
        .filter(|c| !is_highly_connected(g, c))
        .map(|c| crate::cut::edge_connectivity(g, c))
        .sum()
}

#[derive(Clone, Debug)]
pub struct HcdExactOptions {
    /// Components above this size are refused rather than searched.
    pub max_component: usize,
}

impl Default for HcdExactOptions {
    fn default() -> Self {
        HcdExactOptions { max_component: 20 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HcdStats {
    /// Component subproblems expanded by the search.
    pub nodes: u64,
    pub upper_bound: usize,
    pub lower_bound: usize,
}

/// Minimum deletion set of size at most `k`.
pub fn hcd_exact(g: &Graph, k: usize) -> Result<HcdSolution, HcdError> {
    hcd_exact_with(g, k, &HcdExactOptions::default()).map(|(s, _)| s)
}

pub fn hcd_exact_with(g: &Graph, k: usize, opts: &HcdExactOptions) -> Result<(HcdSolution, HcdStats), HcdError> {
    let hard: Vec<Vec<Vertex>> = connected_components(g).into_iter().filter(|c| !is_highly_connected(g, c)).collect();
    if let Some(c) = hard.iter().find(|c| c.len() > opts.max_component.min(64)) {
        return Err(HcdError::ComponentTooLarge { size: c.len(), cap: opts.max_component.min(64) });
    }
    let locals: Vec<LocalGraph> = hard.iter().map(|c| LocalGraph::new(g, c)).collect();
    let lbs: Vec<usize> = locals.iter().map(|l| l.lambda(l.full()) as usize).collect();
    let lower_bound: usize = lbs.iter().sum();
    let upper_bound = hs_cluster(g, TieBreakPolicy::Lexicographic).cost;
    let mut stats = HcdStats { nodes: 0, upper_bound, lower_bound };
    if lower_bound > k {
        return Err(HcdError::Infeasible);
    }
    let budget = k.min(upper_bound);
    let mut used = 0;
    let mut deleted = EdgeSet::new();
    for (i, local) in locals.iter().enumerate() {
        let others: usize = lbs[i + 1..].iter().sum();
        let room = budget - used - others;
        let mut search = CutSearch { g: local, memo: HashMap::new(), nodes: 0 };
        let found = search.solve_comp(local.full(), room as u32);
        stats.nodes += search.nodes;
        let cost = found.ok_or(HcdError::Infeasible)? as usize;
        used += cost;
        let mut local_deleted = Vec::new();
        search.collect(local.full(), &mut local_deleted);
        deleted.extend(local_deleted.into_iter().map(|(a, b)| Edge::new(local.ids[a], local.ids[b])));
    }
    let sol = HcdSolution::from_deletions(g, deleted);
    debug_assert_eq!(sol.cost, used);
    Ok((sol, stats))
}

/// A component as bitmask adjacency over local indices `0..ids.len()`.
struct LocalGraph {
    ids: Vec<Vertex>,
    adj: Vec<u64>,
}

impl LocalGraph {
    fn new(g: &Graph, comp: &[Vertex]) -> Self {
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let adj = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| local[w] != usize::MAX).fold(0u64, |m, &w| m | 1 << local[w]))
            .collect();
        LocalGraph { ids: comp.to_vec(), adj }
    }

    fn full(&self) -> u64 {
        if self.ids.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.ids.len()) - 1
        }
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & mask & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn cut(&self, side: u64, rest: u64) -> u32 {
        bits(side).map(|v| (self.adj[v] & rest).count_ones()).sum()
    }

    /// Edge connectivity of a connected mask (Stoer–Wagner on the mask).
    fn lambda(&self, mask: u64) -> u32 {
        let verts: Vec<usize> = bits(mask).collect();
        let n = verts.len();
        if n < 2 {
            return 0;
        }
        let mut w = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                w[i][j] = u32::from(self.adj[verts[i]] >> verts[j] & 1 == 1);
            }
        }
        let mut active: Vec<usize> = (0..n).collect();
        let mut best = u32::MAX;
        while active.len() > 1 {
            let mut added = vec![false; n];
            let mut key = vec![0u32; n];
            let (mut prev, mut last) = (active[0], active[0]);
            for step in 0..active.len() {
                let next = if step == 0 {
                    active[0]
                } else {
                    *active.iter().filter(|&&c| !added[c]).max_by_key(|&&c| (key[c], std::cmp::Reverse(c))).unwrap()
                };
                added[next] = true;
                prev = last;
                last = next;
                for &c in &active {
                    if !added[c] {
                        key[c] += w[next][c];
                    }
                }
            }
            best = best.min(key[last]);
            for &c in &active {
                if c != prev && c != last {
                    w[prev][c] += w[last][c];
                    w[c][prev] = w[prev][c];
                }
            }
            active.retain(|&c| c != last);
        }
        best
    }

    fn is_hc(&self, mask: u64) -> bool {
        let n = mask.count_ones();
        if n <= 1 {
            return n == 1;
        }
        // lambda <= min degree, so a low-degree vertex rules it out cheaply
        if bits(mask).any(|v| 2 * (self.adj[v] & mask).count_ones() <= n) {
            return false;
        }
        2 * self.lambda(mask) > n
    }

    fn lower_bound(&self, mask: u64) -> u32 {
        self.components(mask).into_iter().filter(|&c| !self.is_hc(c)).map(|c| self.lambda(c)).sum()
    }

    /// Connected subsets of `comp` that contain its lowest vertex, excluding
    /// `comp` itself.
    fn connected_subsets(&self, comp: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let start = comp & comp.wrapping_neg();
        self.grow(comp, start, 0, &mut out);
        out.retain(|&s| s != comp);
        out
    }

    fn grow(&self, comp: u64, set: u64, excluded: u64, out: &mut Vec<u64>) {
        out.push(set);
        let nb = bits(set).fold(0u64, |m, v| m | self.adj[v]) & comp & !set & !excluded;
        let mut banned = excluded;
        for v in bits(nb) {
            self.grow(comp, set | 1 << v, banned, out);
            banned |= 1 << v;
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, Copy, Debug)]
enum Memo {
    /// Optimal cost and the side (containing the lowest vertex) cut first;
    /// side 0 marks an already highly connected component.
    Exact(u32, u64),
    /// The optimum is at least this value.
    AtLeast(u32),
}

/// Memoized cut branching: a component that is not highly connected must be
/// split, and the part containing its lowest vertex is some connected set `S`;
/// all edges between `S` and the rest are deleted.
struct CutSearch<'a> {
    g: &'a LocalGraph,
    memo: HashMap<u64, Memo>,
    nodes: u64,
}

impl CutSearch<'_> {
    fn solve_set(&mut self, mask: u64, budget: u32) -> Option<u32> {
        let comps = self.g.components(mask);
        let lbs: Vec<u32> = comps.iter().map(|&c| if self.g.is_hc(c) { 0 } else { self.g.lambda(c) }).collect();
        if lbs.iter().sum::<u32>() > budget {
            return None;
        }
        let mut used = 0;
        for (i, &c) in comps.iter().enumerate() {
            let others: u32 = lbs[i + 1..].iter().sum();
            used += self.solve_comp(c, budget - used - others)?;
        }
        Some(used)
    }

    fn solve_comp(&mut self, comp: u64, budget: u32) -> Option<u32> {
        match self.memo.get(&comp) {
            Some(Memo::Exact(v, _)) => return (*v <= budget).then_some(*v),
            Some(Memo::AtLeast(lb)) if *lb > budget => return None,
            _ => {}
        }
        if self.g.is_hc(comp) {
            self.memo.insert(comp, Memo::Exact(0, 0));
            return Some(0);
        }
        self.nodes += 1;
        let lambda = self.g.lambda(comp);
        if lambda > budget {
            self.memo.insert(comp, Memo::AtLeast(lambda));
            return None;
        }
        let mut candidates: Vec<(u32, u64)> = self
            .g
            .connected_subsets(comp)
            .into_iter()
            .map(|s| (self.g.cut(s, comp & !s), s))
            .filter(|&(c, _)| c <= budget)
            .collect();
        candidates.sort_unstable();

        let mut best = budget + 1;
        let mut choice = 0;
        for (cut, side) in candidates {
            if cut >= best {
                break;
            }
            let rest = comp & !side;
            let lb_side = self.g.lower_bound(side);
            let lb_rest = self.g.lower_bound(rest);
            if cut + lb_side + lb_rest >= best {
                continue;
            }
            let room = best - 1 - cut;
            let Some(a) = self.solve_set(side, room - lb_rest) else { continue };
            let Some(b) = self.solve_set(rest, room - a) else { continue };
            best = cut + a + b;
            choice = side;
        }
        if choice != 0 {
            self.memo.insert(comp, Memo::Exact(best, choice));
            Some(best)
        } else {
            let floor = match self.memo.get(&comp) {
                Some(Memo::AtLeast(lb)) => (*lb).max(budget + 1),
                _ => budget + 1,
            };
            self.memo.insert(comp, Memo::AtLeast(floor));
            None
        }
    }

    fn collect(&self, mask: u64, out: &mut Vec<(usize, usize)>) {
        for comp in self.g.components(mask) {
            match self.memo.get(&comp) {
                Some(Memo::Exact(_, 0)) => {}
                Some(Memo::Exact(_, side)) => {
                    let rest = comp & !side;
                    for u in bits(*side) {
                        out.extend(bits(self.g.adj[u] & rest).map(|w| (u, w)));
                    }
                    self.collect(*side, out);
                    self.collect(rest, out);
                }
                _ => debug_assert!(self.g.is_hc(comp), "unsolved component on the solution path"),
            }
        }
    }
}
