//! Degree anonymization by edge insertion.
//!
//! The heuristic works in two phases: first the degree sequence is made
//! ℓ-anonymous at minimum total increase by a dynamic program over the
//! descending-sorted sequence, then the required degree increments are
//! realized by inserting non-edges. When realization fails, the next
//! achievable (even) cost is tried.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, EdgeSet, EditSet, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnonError {
    #[error("anonymity level must satisfy 1 <= ell <= n (ell = {ell}, n = {n})")]
    InvalidLevel { ell: usize, n: usize },
    #[error("increment plan is invalid: {0}")]
    InvalidPlan(String),
    #[error("greedy realization stalled with residual demand {0}")]
    RealizationFailed(usize),
    #[error("no insertion set of size <= {0} makes the graph anonymous")]
    Infeasible(usize),
    #[error("exhaustive search would examine {candidates} insertion sets (cap {cap})")]
    TooLarge { candidates: u128, cap: u128 },
}

/// Per-vertex degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn of(g: &Graph) -> Self {
        DegreeSequence { degrees: g.degrees() }
    }

    pub fn delta_max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Required degree increase per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncrementPlan {
    pub increment: Vec<usize>,
}

impl IncrementPlan {
    pub fn total(&self) -> usize {
        self.increment.iter().sum()
    }
}

/// Every occurring value has multiplicity at least `ell`.
pub fn is_sequence_anonymous(values: &[usize], ell: usize) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.chunk_by(|a, b| a == b).all(|run| run.len() >= ell)
}

/// Each vertex shares its degree with at least `ell - 1` others.
pub fn is_l_anonymous(g: &Graph, ell: usize) -> bool {
    is_sequence_anonymous(&g.degrees(), ell)
}

fn check_level(n: usize, ell: usize) -> Result<(), AnonError> {
    if ell == 0 || ell > n.max(1) {
        return Err(AnonError::InvalidLevel { ell, n });
    }
    Ok(())
}

/// Grouping dynamic program over a descending-sorted degree sequence.
///
/// A grouping splits the sorted positions into consecutive blocks of
/// `ell..=2*ell-1` positions; every degree in a block is raised to the block
/// maximum. Larger blocks never help since they split at no extra cost.
struct GroupingDp {
    /// Vertex ids, sorted by degree descending then id ascending.
    order: Vec<Vertex>,
    sorted: Vec<usize>,
    prefix: Vec<usize>,
    ell: usize,
    /// `reach[i]` holds every total cost achievable for the first `i` positions.
    reach: Vec<Vec<bool>>,
}

impl GroupingDp {
    fn new(degrees: &[usize], ell: usize) -> Self {
        let mut order: Vec<Vertex> = (0..degrees.len()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
        let sorted: Vec<usize> = order.iter().map(|&v| degrees[v]).collect();
        let mut prefix = vec![0; sorted.len() + 1];
        for (i, &d) in sorted.iter().enumerate() {
            prefix[i + 1] = prefix[i] + d;
        }
        let top = sorted.first().copied().unwrap_or(0);
        let max_cost: usize = sorted.iter().map(|&d| top - d).sum();
        let n = sorted.len();
        let mut dp = GroupingDp { order, sorted, prefix, ell, reach: vec![vec![false; max_cost + 1]; n + 1] };
        dp.reach[0][0] = true;
        for i in 1..=n {
            for j in dp.block_starts(i) {
                let c = dp.block_cost(j, i);
                let (head, tail) = dp.reach.split_at_mut(i);
                for (cost, &ok) in head[j].iter().enumerate() {
                    if ok {
                        tail[0][cost + c] = true;
                    }
                }
            }
        }
        dp
    }

    fn block_starts(&self, end: usize) -> impl Iterator<Item = usize> {
        let lo = end.saturating_sub(2 * self.ell - 1);
        let hi = end.checked_sub(self.ell);
        hi.into_iter().flat_map(move |hi| lo..=hi)
    }

    fn block_cost(&self, start: usize, end: usize) -> usize {
        self.sorted[start] * (end - start) - (self.prefix[end] - self.prefix[start])
    }

    fn achievable_costs(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.sorted.len();
        self.reach[n].iter().enumerate().filter(|(_, &ok)| ok).map(|(c, _)| c)
    }

    fn min_cost(&self) -> usize {
        self.achievable_costs().next().unwrap_or(0)
    }

    /// Up to `cap` groupings with total cost exactly `cost`, as target values
    /// per sorted position.
    fn groupings(&self, cost: usize, cap: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut blocks = Vec::new();
        self.collect(self.sorted.len(), cost, cap, &mut blocks, &mut out);
        out
    }

    fn collect(&self, end: usize, cost: usize, cap: usize, blocks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= cap {
            return;
        }
        if end == 0 {
            let mut targets = vec![0; self.sorted.len()];
            let mut stop = self.sorted.len();
            for &start in blocks.iter() {
                targets[start..stop].fill(self.sorted[start]);
                stop = start;
            }
            out.push(targets);
            return;
        }
        for start in self.block_starts(end) {
            let c = self.block_cost(start, end);
            if c <= cost && self.reach[start][cost - c] {
                blocks.push(start);
                self.collect(start, cost - c, cap, blocks, out);
                blocks.pop();
            }
        }
    }
}

/// Minimum-increase ℓ-anonymous target degrees; cost is the total increase.
pub fn anonymize_degree_sequence(d: &DegreeSequence, ell: usize) -> Result<(DegreeSequence, usize), AnonError> {
    check_level(d.len(), ell)?;
    if d.is_empty() {
        return Ok((d.clone(), 0));
    }
    let dp = GroupingDp::new(&d.degrees, ell);
    let cost = dp.min_cost();
    let by_position = dp.groupings(cost, 1).pop().expect("minimum cost is achievable");
    let mut degrees = vec![0; d.len()];
    for (pos, &v) in dp.order.iter().enumerate() {
        degrees[v] = by_position[pos];
    }
    Ok((DegreeSequence { degrees }, cost))
}

/// Inserts non-edges so that each vertex gains exactly its increment. Pairs
/// the vertex with the largest residual demand with the largest-demand vertex
/// it is not yet adjacent to (ties by lower id).
pub fn realize_increments(g: &Graph, plan: &IncrementPlan) -> Result<EdgeSet, AnonError> {
    let n = g.n();
    if plan.increment.len() != n {
        return Err(AnonError::InvalidPlan(format!("{} increments for {n} vertices", plan.increment.len())));
    }
    if plan.total() % 2 == 1 {
        return Err(AnonError::InvalidPlan("odd total increment".into()));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) + plan.increment[v] > n.saturating_sub(1)) {
        return Err(AnonError::InvalidPlan(format!("vertex {v} would exceed degree n-1")));
    }
    let mut demand = plan.increment.clone();
    let mut inserted = EdgeSet::new();
    loop {
        let Some(u) = (0..n).filter(|&v| demand[v] > 0).max_by_key(|&v| (demand[v], std::cmp::Reverse(v))) else {
            return Ok(inserted);
        };
        let partner = (0..n)
            .filter(|&v| v != u && demand[v] > 0 && !g.has_edge(u, v) && !inserted.contains(&Edge::new(u, v)))
            .max_by_key(|&v| (demand[v], std::cmp::Reverse(v)));
        let Some(v) = partner else {
            return Err(AnonError::RealizationFailed(demand.iter().sum()));
        };
        inserted.insert(Edge::new(u, v));
        demand[u] -= 1;
        demand[v] -= 1;
    }
}

#[derive(Clone, Debug)]
pub struct LtOptions {
    /// Groupings tried per candidate cost.
    pub groupings_per_cost: usize,
    /// Orderings of equal-degree vertices tried per grouping.
    pub assignments_per_grouping: usize,
    /// Total realization attempts before falling back to uniform targets.
    pub max_attempts: usize,
}

impl Default for LtOptions {
    fn default() -> Self {
        LtOptions { groupings_per_cost: 16, assignments_per_grouping: 64, max_attempts: 20_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LtOutcome {
    pub edits: EditSet,
    /// Minimum total degree increase over all groupings.
    pub dp_cost: usize,
    /// Total degree increase of the realized plan.
    pub realized_cost: usize,
    pub attempts: usize,
    /// True if the grouping phase was exhausted and uniform targets were used.
    pub fallback: bool,
}

/// Insertion set making `g` ℓ-anonymous.
pub fn lt_heuristic(g: &Graph, ell: usize) -> Result<EditSet, AnonError> {
    lt_heuristic_with(g, ell, &LtOptions::default()).map(|o| o.edits)
}

pub fn lt_heuristic_with(g: &Graph, ell: usize, opts: &LtOptions) -> Result<LtOutcome, AnonError> {
    let n = g.n();
    check_level(n, ell)?;
    if is_l_anonymous(g, ell) {
        return Ok(LtOutcome { edits: EditSet::new(), dp_cost: 0, realized_cost: 0, attempts: 0, fallback: false });
    }
    let degrees = g.degrees();
    let dp = GroupingDp::new(&degrees, ell);
    let dp_cost = dp.min_cost();
    let mut attempts = 0;
    let done = |edges: EdgeSet, attempts, fallback| LtOutcome {
        realized_cost: 2 * edges.len(),
        edits: EditSet::insertions_only(edges),
        dp_cost,
        attempts,
        fallback,
    };

    'costs: for cost in dp.achievable_costs().filter(|c| c % 2 == 0) {
        for targets in dp.groupings(cost, opts.groupings_per_cost) {
            for plan in class_assignments(&dp, &targets, opts.assignments_per_grouping) {
                if attempts >= opts.max_attempts {
                    break 'costs;
                }
                attempts += 1;
                if let Ok(edges) = realize_increments(g, &plan) {
                    return Ok(done(edges, attempts, false));
                }
            }
        }
    }

    // every vertex at a common degree is anonymous for any ell <= n; the
    // complete graph always realizes
    let top = degrees.iter().copied().max().unwrap_or(0);
    for target in top..n {
        let plan = IncrementPlan { increment: degrees.iter().map(|&d| target - d).collect() };
        if plan.total() % 2 == 1 {
            continue;
        }
        attempts += 1;
        if let Ok(edges) = realize_increments(g, &plan) {
            return Ok(done(edges, attempts, true));
        }
    }
    Ok(done(g.non_edges().collect(), attempts, true))
}

/// Increment plans for one grouping: within each run of equal degrees the
/// targets may go to any of the run's vertices, so distinct permutations of
/// the run's increments are enumerated (first the sorted-position order).
fn class_assignments(dp: &GroupingDp, targets: &[usize], cap: usize) -> Vec<IncrementPlan> {
    let n = dp.sorted.len();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || dp.sorted[i] != dp.sorted[start] {
            runs.push((start, i));
            start = i;
        }
    }
    let per_run: Vec<Vec<Vec<usize>>> = runs
        .iter()
        .map(|&(s, e)| {
            let incs: Vec<usize> = (s..e).map(|p| targets[p] - dp.sorted[p]).collect();
            distinct_permutations(incs, cap)
        })
        .collect();

    let mut out = Vec::new();
    let mut odometer = vec![0usize; runs.len()];
    'outer: while out.len() < cap {
        let mut increment = vec![0; n];
        for (r, &(s, _)) in runs.iter().enumerate() {
            for (offset, &inc) in per_run[r][odometer[r]].iter().enumerate() {
                increment[dp.order[s + offset]] = inc;
            }
        }
        out.push(IncrementPlan { increment });
        for r in (0..runs.len()).rev() {
            odometer[r] += 1;
            if odometer[r] < per_run[r].len() {
                continue 'outer;
            }
            odometer[r] = 0;
        }
        break;
    }
    out
}

/// Distinct permutations of a non-increasing sequence, in decreasing
/// lexicographic order, at most `cap`.
fn distinct_permutations(mut seq: Vec<usize>, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![seq.clone()];
    while out.len() < cap && prev_permutation(&mut seq) {
        out.push(seq.clone());
    }
    out
}

fn prev_permutation(seq: &mut [usize]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] <= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] >= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Lower bound on the number of insertions: half the minimum total degree
/// increase, rounded up.
pub fn anonymity_lower_bound(g: &Graph, ell: usize) -> Result<usize, AnonError> {
    check_level(g.n(), ell)?;
    if g.n() == 0 {
        return Ok(0);
    }
    Ok(GroupingDp::new(&g.degrees(), ell).min_cost().div_ceil(2))
}

/// True when a proven lower bound on the optimum exceeds `2·Δ⁴`, the regime in
/// which the grouping heuristic is known to be optimal.
pub fn win_win_certificate(delta: u64, lower_bound: u64) -> bool {
    let threshold = delta.checked_pow(4).and_then(|d4| d4.checked_mul(2));
    threshold.is_some_and(|t| lower_bound > t)
}

#[derive(Clone, Debug)]
pub struct AnonExactOptions {
    /// Maximum number of insertion sets examined.
    pub max_candidates: u128,
}

impl Default for AnonExactOptions {
    fn default() -> Self {
        AnonExactOptions { max_candidates: 20_000_000 }
    }
}

/// Minimum insertion set of size at most `k`, by exhaustive search in order
/// of increasing size.
pub fn anon_exact(g: &Graph, ell: usize, k: usize) -> Result<EditSet, AnonError> {
    anon_exact_with(g, ell, k, &AnonExactOptions::default())
}

pub fn anon_exact_with(g: &Graph, ell: usize, k: usize, opts: &AnonExactOptions) -> Result<EditSet, AnonError> {
    check_level(g.n(), ell)?;
    let candidates: Vec<Edge> = g.non_edges().collect();
    let k = k.min(candidates.len());
    let total: u128 = (0..=k).map(|s| binomial(candidates.len() as u128, s as u128)).sum();
    if total > opts.max_candidates {
        return Err(AnonError::TooLarge { candidates: total, cap: opts.max_candidates });
    }
    let mut degrees = g.degrees();
    for size in 0..=k {
        let mut chosen = Vec::with_capacity(size);
        if let Some(found) = search_subsets(&candidates, 0, size, &mut chosen, &mut degrees, ell) {
            return Ok(EditSet::insertions_only(found.into_iter().collect()));
        }
    }
    Err(AnonError::Infeasible(k))
}

fn search_subsets(
    cand: &[Edge],
    from: usize,
    left: usize,
    chosen: &mut Vec<Edge>,
    degrees: &mut [usize],
    ell: usize,
) -> Option<Vec<Edge>> {
    if left == 0 {
        return is_sequence_anonymous(degrees, ell).then(|| chosen.clone());
    }
    for i in from..=cand.len().saturating_sub(left) {
        let e = cand[i];
        degrees[e.lo()] += 1;
        degrees[e.hi()] += 1;
        chosen.push(e);
        let found = search_subsets(cand, i + 1, left - 1, chosen, degrees, ell);
        chosen.pop();
        degrees[e.lo()] -= 1;
        degrees[e.hi()] -= 1;
        if found.is_some() {
            return found;
        }
    }
    None
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::anonymity_figure;

    #[test]
    fn level_one_is_always_anonymous() {
        assert!(is_l_anonymous(&anonymity_figure(), 1));
    }

    #[test]
    fn figure_is_not_two_anonymous_until_edge_added() {
        let g = anonymity_figure();
        assert!(!is_l_anonymous(&g, 2));
        let mut edits = EditSet::new();
        edits.insertions.insert(Edge::new(3, 5));
        assert!(is_l_anonymous(&edits.apply(&g).unwrap(), 2));
    }

    #[test]
    fn already_anonymous_sequence_costs_nothing() {
        let d = DegreeSequence { degrees: vec![2, 2, 1, 1] };
        let (t, cost) = anonymize_degree_sequence(&d, 2).unwrap();
        assert_eq!(cost, 0);
        assert_eq!(t, d);
    }

    #[test]
    fn figure_sequence_needs_two_degree_units() {
        // one inserted edge raises the degree total by two
        let d = DegreeSequence::of(&anonymity_figure());
        let (t, cost) = anonymize_degree_sequence(&d, 2).unwrap();
        assert_eq!(cost, 2);
        assert!(is_sequence_anonymous(&t.degrees, 2));
        assert!(t.degrees.iter().zip(&d.degrees).all(|(t, d)| t >= d));
    }

    #[test]
    fn realize_examples() {
        let g = anonymity_figure();
        let zero = IncrementPlan { increment: vec![0; 6] };
        assert!(realize_increments(&g, &zero).unwrap().is_empty());

        let plan = IncrementPlan { increment: vec![0, 0, 0, 1, 0, 1] };
        let edges = realize_increments(&g, &plan).unwrap();
        assert_eq!(edges.iter().copied().collect::<Vec<_>>(), vec![Edge::new(3, 5)]);

        let too_much = IncrementPlan { increment: vec![5, 1, 0, 0, 0, 0] };
        assert!(matches!(realize_increments(&g, &too_much), Err(AnonError::InvalidPlan(_))));

        // v1 and v4 are already adjacent
        let stuck = IncrementPlan { increment: vec![1, 0, 0, 1, 0, 0] };
        assert_eq!(realize_increments(&g, &stuck), Err(AnonError::RealizationFailed(2)));
    }

    #[test]
    fn heuristic_on_figure_inserts_one_edge() {
        let g = anonymity_figure();
        let edits = lt_heuristic(&g, 2).unwrap();
        assert_eq!(edits.len(), 1);
        assert!(is_l_anonymous(&edits.apply(&g).unwrap(), 2));
    }

    #[test]
    fn exact_examples() {
        let g = anonymity_figure();
        assert_eq!(anon_exact(&g, 2, 1).unwrap().len(), 1);
        assert_eq!(anon_exact(&g, 2, 0), Err(AnonError::Infeasible(0)));
        let anon = Graph::complete(4);
        assert!(anon_exact(&anon, 4, 0).unwrap().is_empty());
    }

    #[test]
    fn win_win_arithmetic() {
        assert!(win_win_certificate(1, 3));
        assert!(!win_win_certificate(3, 100));
        assert!(win_win_certificate(2, 33));
        assert!(!win_win_certificate(2, 32));
    }

    #[test]
    fn invalid_levels() {
        let g = anonymity_figure();
        assert!(lt_heuristic(&g, 0).is_err());
        assert!(lt_heuristic(&g, 7).is_err());
    }

    #[test]
    fn heuristic_terminates_when_groupings_are_unrealizable() {
        // star K1,3: leaves must reach degree 3 and connect to each other
        let g = Graph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let edits = lt_heuristic(&g, 4).unwrap();
        assert!(is_l_anonymous(&edits.apply(&g).unwrap(), 4));
        assert_eq!(edits.len(), 3);
    }

    #[test]
    fn permutations_are_distinct() {
        let perms = distinct_permutations(vec![1, 0, 0], 10);
        assert_eq!(perms, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
