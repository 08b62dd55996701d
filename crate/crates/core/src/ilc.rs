//! Incremental List Coloring: color one new vertex by recoloring at most `c`
//! others, and a full coloring heuristic that inserts vertices one at a time.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IlcError {
    #[error("expected {expected} color lists, got {got}")]
    ListCount { expected: usize, got: usize },
    #[error("target {0} is out of range or already colored")]
    BadTarget(Vertex),
    #[error("vertex {0} has a color outside its list")]
    ColorNotInList(Vertex),
    #[error("the old coloring is improper on edge {0}-{1}")]
    Improper(Vertex, Vertex),
}

/// A proper partial list coloring plus one uncolored target. Other uncolored
/// vertices are treated as absent.
#[derive(Clone, Debug)]
pub struct ListColoringInstance {
    graph: Graph,
    lists: Vec<Vec<Color>>,
    coloring: Vec<Option<Color>>,
    target: Vertex,
    budget: usize,
}

impl ListColoringInstance {
    pub fn new(
        graph: Graph,
        lists: Vec<Vec<Color>>,
        coloring: Vec<Option<Color>>,
        target: Vertex,
        budget: usize,
    ) -> Result<Self, IlcError> {
        let n = graph.n();
        for len in [lists.len(), coloring.len()] {
            if len != n {
                return Err(IlcError::ListCount { expected: n, got: len });
            }
        }
        if target >= n || coloring[target].is_some() {
            return Err(IlcError::BadTarget(target));
        }
        let lists: Vec<Vec<Color>> = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        for v in 0..n {
            if let Some(c) = coloring[v] {
                if lists[v].binary_search(&c).is_err() {
                    return Err(IlcError::ColorNotInList(v));
                }
            }
        }
        for e in graph.edges() {
            if coloring[e.lo()].is_some() && coloring[e.lo()] == coloring[e.hi()] {
                return Err(IlcError::Improper(e.lo(), e.hi()));
            }
        }
        Ok(ListColoringInstance { graph, lists, coloring, target, budget })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn coloring(&self) -> &[Option<Color>] {
        &self.coloring
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Largest list size.
    pub fn k(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `1 + k + k^2 + ... + k^c`, saturating.
pub fn node_bound(k: usize, c: usize) -> u64 {
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..=c {
        total = total.saturating_add(power);
        power = power.saturating_mul(k as u64);
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IlcOutcome {
    /// New coloring (target included), or `None` if the budget is too small.
    pub coloring: Option<Vec<Option<Color>>>,
    /// Previously colored vertices whose color changed.
    pub recolored: Vec<Vertex>,
    pub nodes: u64,
}

/// Branching search: give the target a list color, then repeatedly take the
/// lowest-id vertex that clashes with an already decided vertex and try each
/// other color of its list. Every decided vertex keeps its color for the rest
/// of the branch, so each level spends one unit of budget. A child is only
/// entered when the clashes it leaves fit into the remaining budget.
pub fn ilc_solve(inst: &ListColoringInstance) -> IlcOutcome {
    let mut search = IlcSearch { inst, nodes: 0 };
    let mut found = None;
    for &color in &inst.lists[inst.target] {
        let mut col = inst.coloring.clone();
        col[inst.target] = Some(color);
        let mut fixed = vec![false; col.len()];
        fixed[inst.target] = true;
        if search.pending(&col, &fixed).len() > inst.budget {
            continue;
        }
        search.nodes += 1;
        if search.descend(&mut col, &mut fixed, inst.budget) {
            found = Some(col);
            break;
        }
    }
    debug_assert!(search.nodes <= node_bound(inst.k(), inst.budget));
    let recolored = match &found {
        Some(col) => (0..col.len()).filter(|&v| inst.coloring[v].is_some() && inst.coloring[v] != col[v]).collect(),
        None => Vec::new(),
    };
    IlcOutcome { coloring: found, recolored, nodes: search.nodes }
}

struct IlcSearch<'a> {
    inst: &'a ListColoringInstance,
    nodes: u64,
}

impl IlcSearch<'_> {
    /// Undecided colored vertices sharing a color with a decided neighbour.
    fn pending(&self, col: &[Option<Color>], fixed: &[bool]) -> Vec<Vertex> {
        let g = &self.inst.graph;
        g.vertices()
            .filter(|&v| !fixed[v] && col[v].is_some() && g.neighbors(v).iter().any(|&w| fixed[w] && col[w] == col[v]))
            .collect()
    }

    fn descend(&mut self, col: &mut [Option<Color>], fixed: &mut [bool], budget: usize) -> bool {
        let pending = self.pending(col, fixed);
        let Some(&v) = pending.first() else { return true };
        if budget == 0 {
            return false;
        }
        let g = &self.inst.graph;
        let old = col[v];
        fixed[v] = true;
        for &c in &self.inst.lists[v] {
            if Some(c) == old || g.neighbors(v).iter().any(|&w| fixed[w] && col[w] == Some(c)) {
                continue;
            }
            col[v] = Some(c);
            if self.pending(col, fixed).len() > budget - 1 {
                continue;
            }
            self.nodes += 1;
            if self.descend(col, fixed, budget - 1) {
                return true;
            }
        }
        col[v] = old;
        fixed[v] = false;
        false
    }
}

/// Insertion order used by both coloring heuristics: degree descending, ties
/// by id.
pub fn insertion_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Smallest list color not used by a colored neighbour.
fn first_free(g: &Graph, lists: &[Vec<Color>], col: &[Option<Color>], v: Vertex) -> Option<Color> {
    lists[v].iter().copied().find(|&c| g.neighbors(v).iter().all(|&w| col[w] != Some(c)))
}

fn sorted_lists(lists: &[Vec<Color>]) -> Vec<Vec<Color>> {
    lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect()
}

/// Greedy list coloring in [`insertion_order`]; `None` when some vertex has
/// no free color.
pub fn greedy_list_coloring(g: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    assert_eq!(lists.len(), g.n(), "one list per vertex");
    let lists = sorted_lists(lists);
    let mut col = vec![None; g.n()];
    for v in insertion_order(g) {
        col[v] = Some(first_free(g, &lists, &col, v)?);
    }
    Some(col.into_iter().map(|c| c.expect("all colored")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IlcColorOptions {
    /// Recoloring budget per insertion.
    pub budget: usize,
    /// Treat `budget` as a total over all insertions instead.
    pub global_budget: bool,
}

impl IlcColorOptions {
    pub fn per_step(budget: usize) -> Self {
        IlcColorOptions { budget, global_budget: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringRun {
    pub colors: Vec<Color>,
    /// Distinct colors used.
    pub num_colors: usize,
    pub recolorings: usize,
    pub nodes: u64,
}

pub fn count_colors(colors: &[Color]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Proper and every color from its vertex's list.
pub fn is_proper_list_coloring(g: &Graph, lists: &[Vec<Color>], colors: &[Color]) -> bool {
    colors.len() == g.n()
        && lists.len() == g.n()
        && g.vertices().all(|v| lists[v].contains(&colors[v]))
        && g.edges().all(|e| colors[e.lo()] != colors[e.hi()])
}

/// [`ilc_color_graph_with`] with a per-insertion budget.
pub fn ilc_color_graph(g: &Graph, lists: &[Vec<Color>], c: usize) -> Option<Vec<Color>> {
    ilc_color_graph_with(g, lists, &IlcColorOptions::per_step(c)).map(|r| r.colors)
}

/// Inserts vertices in [`insertion_order`]. A vertex takes its smallest free
/// color when that color is already in use (numerically no larger than the
/// largest used color). Otherwise recoloring within the used colors is tried
/// first, and only then is a larger color opened, again with recoloring if no
/// color is free at all. With budget 0 this is exactly the greedy coloring.
pub fn ilc_color_graph_with(g: &Graph, lists: &[Vec<Color>], opts: &IlcColorOptions) -> Option<ColoringRun> {
    assert_eq!(lists.len(), g.n(), "one list per vertex");
    let lists = sorted_lists(lists);
    let mut col: Vec<Option<Color>> = vec![None; g.n()];
    let mut remaining = opts.budget;
    let mut recolorings = 0;
    let mut nodes = 0;
    for v in insertion_order(g) {
        let budget = if opts.global_budget { remaining } else { opts.budget };
        let max_used = col.iter().flatten().copied().max();
        let free = first_free(g, &lists, &col, v);
        if let (Some(f), Some(m)) = (free, max_used) {
            if f <= m {
                col[v] = Some(f);
                continue;
            }
        }
        let mut attempt = |restrict: Option<Color>| -> Option<IlcOutcome> {
            let restricted: Vec<Vec<Color>> = match restrict {
                Some(m) => lists.iter().map(|l| l.iter().copied().filter(|&c| c <= m).collect()).collect(),
                None => lists.clone(),
            };
            let inst = ListColoringInstance::new(g.clone(), restricted, col.clone(), v, budget).expect("coloring stays proper");
            let out = ilc_solve(&inst);
            nodes += out.nodes;
            out.coloring.is_some().then_some(out)
        };
        let outcome = match (max_used, free) {
            (Some(m), _) if budget > 0 => attempt(Some(m)),
            _ => None,
        };
        let outcome = match (outcome, free) {
            (Some(o), _) => Some(o),
            (None, Some(f)) => {
                col[v] = Some(f);
                continue;
            }
            (None, None) if budget > 0 => attempt(None),
            (None, None) => None,
        };
        let out = outcome?;
        debug_assert!(out.recolored.len() <= budget);
        recolorings += out.recolored.len();
        remaining -= out.recolored.len().min(remaining);
        col = out.coloring.expect("successful outcome");
    }
    let colors: Vec<Color> = col.into_iter().map(|c| c.expect("all inserted")).collect();
    Some(ColoringRun { num_colors: count_colors(&colors), colors, recolorings, nodes })
}

/// Six-cycle `a1 b1 a2 b2 a3 b3` drawn as a crown (`a_i ~ b_j` for `i != j`)
/// with lists `{1, 2, 3}`: greedy in id order needs three colors, one
/// recoloring chain of length two saves the third.
pub fn crown_fixture() -> (Graph, Vec<Vec<Color>>) {
    let a = |i: usize| 2 * (i - 1);
    let b = |j: usize| 2 * (j - 1) + 1;
    let mut pairs = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                pairs.push((a(i), b(j)));
            }
        }
    }
    let g = Graph::from_pairs(6, &pairs).expect("crown is simple");
    (g, vec![vec![1, 2, 3]; 6])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_instance(budget: usize) -> ListColoringInstance {
        // a - v - b with a = 1, b = 2
        let g = Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        ListColoringInstance::new(g, vec![vec![1, 2]; 3], vec![Some(1), None, Some(2)], 1, budget).unwrap()
    }

    #[test]
    fn free_color_needs_no_changes() {
        let g = Graph::from_pairs(2, &[(0, 1)]).unwrap();
        let inst = ListColoringInstance::new(g, vec![vec![1, 2]; 2], vec![Some(1), None], 1, 0).unwrap();
        let out = ilc_solve(&inst);
        assert_eq!(out.coloring, Some(vec![Some(1), Some(2)]));
        assert!(out.recolored.is_empty());
        assert_eq!(out.nodes, 1);
    }

    #[test]
    fn path_needs_one_recoloring() {
        let out = ilc_solve(&path_instance(0));
        assert_eq!(out.coloring, None);
        let out = ilc_solve(&path_instance(1));
        let col = out.coloring.unwrap();
        assert_eq!(out.recolored.len(), 1);
        assert_ne!(col[0], col[1]);
        assert_ne!(col[1], col[2]);
        assert!(out.nodes <= node_bound(2, 1));
    }

    #[test]
    fn node_bound_values() {
        assert_eq!(node_bound(3, 0), 1);
        assert_eq!(node_bound(3, 2), 13);
        assert_eq!(node_bound(0, 3), 1);
    }

    #[test]
    fn instance_validation() {
        let g = Graph::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(
            ListColoringInstance::new(g.clone(), vec![vec![1]; 2], vec![Some(1), Some(1)], 0, 0).unwrap_err(),
            IlcError::BadTarget(0)
        );
        assert_eq!(
            ListColoringInstance::new(g, vec![vec![1]; 2], vec![Some(2), None], 1, 0).unwrap_err(),
            IlcError::ColorNotInList(0)
        );
    }

    #[test]
    fn crown_separates_heuristics() {
        let (g, lists) = crown_fixture();
        let greedy = greedy_list_coloring(&g, &lists).unwrap();
        assert_eq!(count_colors(&greedy), 3);
        assert_eq!(ilc_color_graph(&g, &lists, 0).unwrap(), greedy);
        let run = ilc_color_graph_with(&g, &lists, &IlcColorOptions::per_step(2)).unwrap();
        assert!(is_proper_list_coloring(&g, &lists, &run.colors));
        assert_eq!(run.num_colors, 2);
        // one recoloring is not enough on the crown
        assert_eq!(count_colors(&ilc_color_graph(&g, &lists, 1).unwrap()), 3);
    }

    #[test]
    fn empty_graph() {
        assert_eq!(ilc_color_graph(&Graph::empty(0), &[], 2), Some(vec![]));
    }

    #[test]
    fn global_budget_caps_total_recolorings() {
        let (g, lists) = crown_fixture();
        let opts = IlcColorOptions { budget: 2, global_budget: true };
        let run = ilc_color_graph_with(&g, &lists, &opts).unwrap();
        assert!(run.recolorings <= 2);
    }
}
