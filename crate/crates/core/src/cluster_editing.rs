//! Exact Cluster Editing by branch and bound over conflict triples, with
//! interchangeable lower bounds, data reduction and branching orders.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{connected_components, Edge, EditSet, Graph, Partition, Vertex};
use crate::instances::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CeError {
    #[error("no cluster editing with at most {0} edits")]
    Infeasible(usize),
    #[error("search stopped after {0} nodes without a proof of optimality")]
    NodeLimit(u64),
    #[error("search stopped at the time limit after {0} nodes")]
    Timeout(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundKind {
    None,
    P3Packing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    None,
    /// Merge critical cliques at the root and apply the weighted forcing
    /// rules during the search.
    CriticalClique,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchOrder {
    MinId,
    MaxConflict,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CeConfig {
    pub lower_bound: LowerBoundKind,
    pub reduction: ReductionKind,
    /// Reduction runs at search depths divisible by this.
    pub reduction_period: u32,
    pub branch_order: BranchOrder,
    /// Breaks ties between equally conflicted edges under `max_conflict`.
    pub seed: u64,
}

impl Default for CeConfig {
    fn default() -> Self {
        CeConfig {
            lower_bound: LowerBoundKind::P3Packing,
            reduction: ReductionKind::CriticalClique,
            reduction_period: 1,
            branch_order: BranchOrder::MaxConflict,
            seed: 0,
        }
    }
}

impl CeConfig {
    pub fn validate(&self) -> Result<(), CeError> {
        if self.reduction_period == 0 {
            return Err(CeError::InvalidConfig("reduction_period must be at least 1".into()));
        }
        Ok(())
    }
}

/// Search limits; `None` means unlimited.
#[derive(Clone, Debug, Default)]
pub struct CeLimits {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

/// Vertices `u, v, w` with edges `uv`, `vw` and non-edge `uw`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictTriple {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mark {
    Free,
    Permanent,
    Forbidden,
}

const INF: u64 = u64::MAX / 4;

/// Instance over super-vertices (groups of original vertices that stay
/// together). Editing a pair costs the product of the group sizes. Permanent
/// pairs are present and forbidden pairs absent for the rest of the search.
#[derive(Clone, Debug)]
pub struct WeightedInstance {
    members: Vec<Vec<Vertex>>,
    weight: Vec<Vec<u64>>,
    present: Vec<Vec<bool>>,
    mark: Vec<Vec<Mark>>,
    cost: u64,
}

impl WeightedInstance {
    /// One super-vertex per vertex.
    pub fn from_graph(g: &Graph) -> Self {
        let groups: Vec<Vec<Vertex>> = g.vertices().map(|v| vec![v]).collect();
        Self::from_groups(g, groups)
    }

    /// Merges vertices with identical closed neighbourhoods.
    pub fn critical_cliques(g: &Graph) -> Self {
        let mut keyed: Vec<(Vec<Vertex>, Vertex)> = g
            .vertices()
            .map(|v| {
                let mut closed = g.neighbors(v).to_vec();
                closed.push(v);
                closed.sort_unstable();
                (closed, v)
            })
            .collect();
        keyed.sort();
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        for (i, (key, v)) in keyed.iter().enumerate() {
            if i > 0 && keyed[i - 1].0 == *key {
                groups.last_mut().expect("previous group").push(*v);
            } else {
                groups.push(vec![*v]);
            }
        }
        groups.sort_by_key(|grp| grp[0]);
        Self::from_groups(g, groups)
    }

    fn from_groups(g: &Graph, groups: Vec<Vec<Vertex>>) -> Self {
        let n = groups.len();
        let mut weight = vec![vec![0; n]; n];
        let mut present = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weight[i][j] = (groups[i].len() * groups[j].len()) as u64;
                    present[i][j] = g.has_edge(groups[i][0], groups[j][0]);
                }
            }
        }
        WeightedInstance { members: groups, weight, present, mark: vec![vec![Mark::Free; n]; n], cost: 0 }
    }

    /// Number of super-vertices.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self, i: usize) -> &[Vertex] {
        &self.members[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weight[i][j]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.present[i][j]
    }

    /// Cost of the edits made so far.
    pub fn cost(&self) -> u64 {
        self.cost
    }

    fn set_permanent(&mut self, i: usize, j: usize) -> bool {
        match self.mark[i][j] {
            Mark::Forbidden => false,
            Mark::Permanent => true,
            Mark::Free => {
                if !self.present[i][j] {
                    self.cost += self.weight[i][j];
                    self.present[i][j] = true;
                    self.present[j][i] = true;
                }
                self.mark[i][j] = Mark::Permanent;
                self.mark[j][i] = Mark::Permanent;
                true
            }
        }
    }

    fn set_forbidden(&mut self, i: usize, j: usize) -> bool {
        match self.mark[i][j] {
            Mark::Permanent => false,
            Mark::Forbidden => true,
            Mark::Free => {
                if self.present[i][j] {
                    self.cost += self.weight[i][j];
                    self.present[i][j] = false;
                    self.present[j][i] = false;
                }
                self.mark[i][j] = Mark::Forbidden;
                self.mark[j][i] = Mark::Forbidden;
                true
            }
        }
    }

    /// Closes the marks under "together with together is together" and
    /// "together with apart is apart". False on contradiction.
    fn propagate(&mut self) -> bool {
        let n = self.len();
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..n {
                for i in 0..n {
                    if i == j || self.mark[i][j] != Mark::Permanent {
                        continue;
                    }
                    for l in 0..n {
                        if l == i || l == j {
                            continue;
                        }
                        let ok = match (self.mark[j][l], self.mark[i][l]) {
                            (Mark::Permanent, Mark::Permanent) | (Mark::Forbidden, Mark::Forbidden) => continue,
                            (Mark::Permanent, _) => self.set_permanent(i, l),
                            (Mark::Forbidden, _) => self.set_forbidden(i, l),
                            (Mark::Free, _) => continue,
                        };
                        if !ok {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
        }
        true
    }

    fn triples(&self) -> impl Iterator<Item = ConflictTriple> + '_ {
        let n = self.len();
        (0..n).flat_map(move |v| {
            (0..n).filter(move |&u| self.present[u][v]).flat_map(move |u| {
                (u + 1..n)
                    .filter(move |&w| w != v && self.present[v][w] && !self.present[u][w])
                    .map(move |w| ConflictTriple { u, v, w })
            })
        })
    }

    fn edit_cost(&self, i: usize, j: usize) -> u64 {
        if self.mark[i][j] == Mark::Free {
            self.weight[i][j]
        } else {
            INF
        }
    }

    /// Greedy packing of conflict triples that share no pair; each packed
    /// triple needs one edit among its three pairs. `None` if some triple
    /// cannot be resolved at all.
    fn packing_bound(&self) -> Option<u64> {
        let n = self.len();
        let mut used = vec![vec![false; n]; n];
        let mut total = 0u64;
        for t in self.triples() {
            let pairs = [(t.u, t.v), (t.v, t.w), (t.u, t.w)];
            let cheapest = pairs.iter().map(|&(a, b)| self.edit_cost(a, b)).min().expect("three pairs");
            if cheapest >= INF {
                return None;
            }
            if pairs.iter().any(|&(a, b)| used[a][b]) {
                continue;
            }
            for (a, b) in pairs {
                used[a][b] = true;
                used[b][a] = true;
            }
            total += cheapest;
        }
        Some(total)
    }

    /// Lower bound on the cost of putting `u` and `v` in different clusters.
    fn separation_cost(&self, u: usize, v: usize) -> u64 {
        let mut cost = if self.present[u][v] { self.edit_cost(u, v) } else { 0 };
        for x in 0..self.len() {
            if x != u && x != v && self.present[u][x] && self.present[v][x] {
                cost = cost.saturating_add(self.edit_cost(u, x).min(self.edit_cost(v, x)));
            }
        }
        cost.min(INF)
    }

    /// Lower bound on the cost of putting `u` and `v` in the same cluster.
    fn merge_cost(&self, u: usize, v: usize) -> u64 {
        let mut cost = if self.present[u][v] { 0 } else { self.edit_cost(u, v) };
        for x in 0..self.len() {
            if x == u || x == v || self.present[u][x] == self.present[v][x] {
                continue;
            }
            let (inside, outside) = if self.present[u][x] { (u, v) } else { (v, u) };
            cost = cost.saturating_add(self.edit_cost(inside, x).min(self.edit_cost(outside, x)));
        }
        cost.min(INF)
    }

    /// Fixes pairs whose alternative alone would exceed `limit` total cost.
    /// False when the instance cannot be solved within `limit`.
    fn apply_rules(&mut self, limit: u64) -> bool {
        if !self.propagate() {
            return false;
        }
        let n = self.len();
        let mut changed = true;
        while changed {
            changed = false;
            for u in 0..n {
                for v in u + 1..n {
                    if self.cost > limit {
                        return false;
                    }
                    if self.mark[u][v] != Mark::Free {
                        continue;
                    }
                    let room = limit - self.cost;
                    let sep = self.separation_cost(u, v);
                    let merge = self.merge_cost(u, v);
                    if sep > room && merge > room {
                        return false;
                    }
                    let ok = if sep > room {
                        self.set_permanent(u, v)
                    } else if merge > room {
                        self.set_forbidden(u, v)
                    } else {
                        continue;
                    };
                    if !ok || !self.propagate() {
                        return false;
                    }
                    changed = true;
                }
            }
        }
        self.cost <= limit
    }

    /// Partition of the original vertices into the current components.
    fn partition(&self, n: usize) -> Partition {
        let k = self.len();
        let mut adj_pairs = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.present[i][j] {
                    adj_pairs.push(Edge::new(i, j));
                }
            }
        }
        let quotient = Graph::from_edges(k, adj_pairs).expect("simple quotient");
        let clusters = connected_components(&quotient)
            .into_iter()
            .map(|c| c.iter().flat_map(|&i| self.members[i].iter().copied()).collect())
            .collect();
        Partition::new(n, clusters).expect("groups cover all vertices")
    }
}

pub fn is_cluster_graph(g: &Graph) -> bool {
    find_conflict_triple(g, BranchOrder::MinId).is_none()
}

/// `None` iff `g` is a disjoint union of cliques.
pub fn find_conflict_triple(g: &Graph, order: BranchOrder) -> Option<ConflictTriple> {
    let inst = WeightedInstance::from_graph(g);
    select_triple(&inst, order, &[]).map(|t| ConflictTriple {
        u: inst.members[t.u][0],
        v: inst.members[t.v][0],
        w: inst.members[t.w][0],
    })
}

/// `min_id`: smallest (center, u, w). `max_conflict`: an edge in the most
/// conflict triples (ties by `rank`, then by ids), completed by the smallest
/// third vertex.
fn select_triple(inst: &WeightedInstance, order: BranchOrder, rank: &[u64]) -> Option<ConflictTriple> {
    match order {
        BranchOrder::MinId => inst.triples().next(),
        BranchOrder::MaxConflict => {
            let n = inst.len();
            let mut best: Option<(usize, u64, usize, usize)> = None;
            for i in 0..n {
                for j in i + 1..n {
                    if !inst.present[i][j] {
                        continue;
                    }
                    let count =
                        (0..n).filter(|&x| x != i && x != j && inst.present[i][x] != inst.present[j][x]).count();
                    if count == 0 {
                        continue;
                    }
                    let r = rank.get(i).copied().unwrap_or(0) ^ rank.get(j).copied().unwrap_or(0);
                    let better = match best {
                        None => true,
                        Some((bc, br, _, _)) => count > bc || (count == bc && r < br),
                    };
                    if better {
                        best = Some((count, r, i, j));
                    }
                }
            }
            let (_, _, i, j) = best?;
            (0..n)
                .find(|&x| x != i && x != j && inst.present[i][x] != inst.present[j][x])
                .map(|x| if inst.present[j][x] { ConflictTriple { u: i, v: j, w: x } } else { ConflictTriple { u: j, v: i, w: x } })
        }
    }
}

/// Lower bound on the optimal number of edits.
pub fn ce_lower_bound(g: &Graph, cfg: &CeConfig) -> usize {
    match cfg.lower_bound {
        LowerBoundKind::None => 0,
        LowerBoundKind::P3Packing => WeightedInstance::from_graph(g).packing_bound().unwrap_or(0) as usize,
    }
}

/// Reduced instance, the edits it forces, and the budget left for the rest.
#[derive(Clone, Debug)]
pub struct CeReduction {
    pub instance: WeightedInstance,
    pub forced: EditSet,
    pub residual_budget: usize,
}

/// Merges critical cliques, then fixes every pair whose separation or
/// merging alone would cost more than the remaining budget.
pub fn ce_reduce(g: &Graph, budget: usize) -> Result<CeReduction, CeError> {
    let mut inst = WeightedInstance::critical_cliques(g);
    let limit = budget as u64;
    if !inst.apply_rules(limit) {
        return Err(CeError::Infeasible(budget));
    }
    match inst.packing_bound() {
        Some(lb) if inst.cost + lb <= limit => {}
        _ => return Err(CeError::Infeasible(budget)),
    }
    let mut forced = EditSet::default();
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            if inst.mark[i][j] == Mark::Free || inst.present[i][j] == g.has_edge(inst.members[i][0], inst.members[j][0]) {
                continue;
            }
            for &a in &inst.members[i] {
                for &b in &inst.members[j] {
                    if inst.present[i][j] {
                        forced.insertions.insert(Edge::new(a, b));
                    } else {
                        forced.deletions.insert(Edge::new(a, b));
                    }
                }
            }
        }
    }
    debug_assert_eq!(forced.len() as u64, inst.cost);
    let residual_budget = budget - forced.len();
    Ok(CeReduction { instance: inst, forced, residual_budget })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CeSolution {
    pub edits: EditSet,
    pub clusters: Partition,
    pub cost: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CeStats {
    pub nodes: u64,
    /// Super-vertices after the root reduction.
    pub root_size: usize,
}

/// Edits that turn `g` into the cluster graph of `clusters`.
pub fn edits_for_partition(g: &Graph, clusters: &Partition) -> EditSet {
    let member = clusters.membership();
    let mut edits = EditSet::default();
    for u in g.vertices() {
        for v in u + 1..g.n() {
            match (g.has_edge(u, v), member[u] == member[v]) {
                (true, false) => {
                    edits.deletions.insert(Edge::new(u, v));
                }
                (false, true) => {
                    edits.insertions.insert(Edge::new(u, v));
                }
                _ => {}
            }
        }
    }
    edits
}

/// Minimum edit set of size at most `k`.
pub fn ce_solve(g: &Graph, k: usize, cfg: &CeConfig) -> Result<EditSet, CeError> {
    ce_solve_with(g, k, cfg, &CeLimits::default()).map(|(s, _)| s.edits)
}

pub fn ce_solve_with(g: &Graph, k: usize, cfg: &CeConfig, limits: &CeLimits) -> Result<(CeSolution, CeStats), CeError> {
    cfg.validate()?;
    let root = match cfg.reduction {
        ReductionKind::None => WeightedInstance::from_graph(g),
        ReductionKind::CriticalClique => WeightedInstance::critical_cliques(g),
    };
    let mut r = rng(cfg.seed);
    let rank: Vec<u64> = (0..root.len()).map(|_| r.gen()).collect();
    let mut search = CeSearch {
        cfg,
        rank,
        bound: k as u64 + 1,
        best: None,
        nodes: 0,
        max_nodes: limits.max_nodes,
        deadline: limits.time_limit.map(|d| Instant::now() + d),
        stopped: None,
    };
    let root_size = root.len();
    search.run(root, 0);
    let stats = CeStats { nodes: search.nodes, root_size };
    if let Some(stop) = search.stopped {
        return Err(stop);
    }
    let best = search.best.ok_or(CeError::Infeasible(k))?;
    let clusters = best.partition(g.n());
    let edits = edits_for_partition(g, &clusters);
    debug_assert_eq!(edits.len() as u64, best.cost);
    Ok((CeSolution { cost: edits.len(), edits, clusters }, stats))
}

/// Solves a reduced instance and adds the forced edits back.
pub fn ce_solve_reduced(g: &Graph, red: &CeReduction, cfg: &CeConfig) -> Result<CeSolution, CeError> {
    cfg.validate()?;
    let mut search = CeSearch {
        cfg,
        rank: vec![0; red.instance.len()],
        bound: (red.forced.len() + red.residual_budget) as u64 + 1,
        best: None,
        nodes: 0,
        max_nodes: None,
        deadline: None,
        stopped: None,
    };
    search.run(red.instance.clone(), 0);
    let best = search.best.ok_or(CeError::Infeasible(red.forced.len() + red.residual_budget))?;
    let clusters = best.partition(g.n());
    let edits = edits_for_partition(g, &clusters);
    Ok(CeSolution { cost: edits.len(), edits, clusters })
}

struct CeSearch<'a> {
    cfg: &'a CeConfig,
    rank: Vec<u64>,
    /// Only solutions cheaper than this are of interest.
    bound: u64,
    best: Option<WeightedInstance>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    stopped: Option<CeError>,
}

impl CeSearch<'_> {
    fn run(&mut self, mut st: WeightedInstance, depth: u32) {
        if self.stopped.is_some() {
            return;
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            self.stopped = Some(CeError::NodeLimit(self.nodes - 1));
            return;
        }
        if self.nodes.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stopped = Some(CeError::Timeout(self.nodes));
            return;
        }
        if st.cost >= self.bound {
            return;
        }
        if self.cfg.reduction == ReductionKind::CriticalClique
            && depth.is_multiple_of(self.cfg.reduction_period)
            && !st.apply_rules(self.bound - 1)
        {
            return;
        }
        let lb = match self.cfg.lower_bound {
            LowerBoundKind::None => 0,
            LowerBoundKind::P3Packing => match st.packing_bound() {
                Some(lb) => lb,
                None => return,
            },
        };
        if st.cost + lb >= self.bound {
            return;
        }
        let Some(t) = select_triple(&st, self.cfg.branch_order, &self.rank) else {
            self.bound = st.cost;
            self.best = Some(st);
            return;
        };
        let (u, v, w) = (t.u, t.v, t.w);

        let mut a = st.clone();
        if a.set_forbidden(u, v) && a.propagate() {
            self.run(a, depth + 1);
        }
        let mut b = st.clone();
        if b.set_permanent(u, v) && b.set_forbidden(v, w) && b.propagate() {
            self.run(b, depth + 1);
        }
        if st.set_permanent(u, v) && st.set_permanent(v, w) && st.set_permanent(u, w) && st.propagate() {
            self.run(st, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::disjoint_cliques;

    fn all_configs() -> Vec<CeConfig> {
        let mut out = Vec::new();
        for lower_bound in [LowerBoundKind::None, LowerBoundKind::P3Packing] {
            for reduction in [ReductionKind::None, ReductionKind::CriticalClique] {
                for reduction_period in [1, 2, 4] {
                    for branch_order in [BranchOrder::MinId, BranchOrder::MaxConflict] {
                        out.push(CeConfig { lower_bound, reduction, reduction_period, branch_order, seed: 7 });
                    }
                }
            }
        }
        out
    }

    #[test]
    fn triples() {
        assert_eq!(find_conflict_triple(&disjoint_cliques(&[3, 3]), BranchOrder::MinId), None);
        let p3 = Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        for order in [BranchOrder::MinId, BranchOrder::MaxConflict] {
            assert_eq!(find_conflict_triple(&p3, order), Some(ConflictTriple { u: 0, v: 1, w: 2 }));
        }
        // paw: triangle 0 1 2 with pendant 3 on 2
        let paw = Graph::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        for order in [BranchOrder::MinId, BranchOrder::MaxConflict] {
            let t = find_conflict_triple(&paw, order).unwrap();
            assert!(t.u == 3 || t.w == 3);
        }
    }

    #[test]
    fn lower_bounds() {
        let cfg = CeConfig::default();
        assert_eq!(ce_lower_bound(&disjoint_cliques(&[2, 3]), &cfg), 0);
        assert_eq!(ce_lower_bound(&Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap(), &cfg), 1);
        let c5 = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(ce_lower_bound(&c5, &cfg) >= 2);
        let none = CeConfig { lower_bound: LowerBoundKind::None, ..cfg };
        assert_eq!(ce_lower_bound(&c5, &none), 0);
    }

    #[test]
    fn reduce_clique_and_twins() {
        let r = ce_reduce(&Graph::complete(4), 0).unwrap();
        assert_eq!(r.instance.len(), 1);
        assert!(r.forced.is_empty());
        // 0 and 1 are true twins attached to 2
        let g = Graph::from_pairs(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = ce_reduce(&g, 5).unwrap();
        assert!((0..r.instance.len()).any(|i| r.instance.members(i) == [0, 1]));
    }

    #[test]
    fn reduce_detects_infeasible_budget() {
        let c5 = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(ce_reduce(&c5, 1).unwrap_err(), CeError::Infeasible(1));
    }

    #[test]
    fn p3_needs_one_edit() {
        let p3 = Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        for cfg in all_configs() {
            assert_eq!(ce_solve(&p3, 1, &cfg).unwrap().len(), 1);
            assert_eq!(ce_solve(&p3, 0, &cfg), Err(CeError::Infeasible(0)));
        }
    }

    #[test]
    fn bowtie_isolates_shared_vertex_from_one_triangle() {
        let g = Graph::from_pairs(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        for cfg in all_configs() {
            let edits = ce_solve(&g, 2, &cfg).unwrap();
            assert_eq!(edits.deletions.len(), 2);
            assert!(edits.insertions.is_empty());
            assert!(is_cluster_graph(&edits.apply(&g).unwrap()));
        }
    }

    #[test]
    fn zero_period_is_rejected() {
        let cfg = CeConfig { reduction_period: 0, ..CeConfig::default() };
        assert!(matches!(ce_solve(&Graph::empty(2), 0, &cfg), Err(CeError::InvalidConfig(_))));
    }

    #[test]
    fn node_limit_stops_search() {
        let g = crate::instances::gnp(12, 0.5, &mut rng(2));
        let cfg = CeConfig { lower_bound: LowerBoundKind::None, reduction: ReductionKind::None, ..CeConfig::default() };
        let limits = CeLimits { max_nodes: Some(5), time_limit: None };
        assert_eq!(ce_solve_with(&g, 60, &cfg, &limits).unwrap_err(), CeError::NodeLimit(5));
    }
}
