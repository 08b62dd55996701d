//! Global minimum cuts, edge connectivity, and the highly-connected predicate.
//!
//! Minimum cuts are computed with the Stoer–Wagner node-merging scheme on the
//! subgraph induced by a component. Which minimum cut is returned when several
//! exist is controlled by a [`TieBreakPolicy`]; the clustering heuristic in
//! [`crate::hcd`] is sensitive to that choice.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{components_within, Edge, EdgeSet, Graph, Vertex};

/// How to pick among several minimum cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreakPolicy {
    /// Stoer–Wagner in ascending vertex order; first minimum phase cut wins.
    Lexicographic,
    /// Prefer isolating the lowest-id vertex whose degree equals the edge
    /// connectivity; otherwise behave like `Lexicographic`.
    Adversarial,
    /// Stoer–Wagner over a seeded random vertex order.
    Random(u64),
}

impl std::str::FromStr for TieBreakPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicographic" | "lex" => Ok(TieBreakPolicy::Lexicographic),
            "adversarial" => Ok(TieBreakPolicy::Adversarial),
            other => {
                let seed = other
                    .strip_prefix("random:")
                    .or_else(|| other.strip_prefix("random(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| format!("unknown tie-break policy '{other}'"))?;
                seed.parse().map(TieBreakPolicy::Random).map_err(|_| format!("bad seed in '{other}'"))
            }
        }
    }
}

/// A 2-partition of a component together with the edges crossing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    /// The side containing the smallest vertex of the component.
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
    pub crossing: EdgeSet,
}

impl Cut {
    pub fn size(&self) -> usize {
        self.crossing.len()
    }

    fn from_side(g: &Graph, component: &[Vertex], side: &[Vertex]) -> Cut {
        let mut in_side = vec![false; g.n()];
        for &v in side {
            in_side[v] = true;
        }
        let (mut a, mut b): (Vec<Vertex>, Vec<Vertex>) = component.iter().partition(|&&v| in_side[v]);
        a.sort_unstable();
        b.sort_unstable();
        if b.first() < a.first() {
            std::mem::swap(&mut a, &mut b);
        }
        let crossing = crossing_edges(g, &a, &b);
        Cut { side_a: a, side_b: b, crossing }
    }
}

/// Edges with one endpoint in `a` and the other in `b`.
pub fn crossing_edges(g: &Graph, a: &[Vertex], b: &[Vertex]) -> EdgeSet {
    let mut in_b = vec![false; g.n()];
    for &v in b {
        in_b[v] = true;
    }
    a.iter()
        .flat_map(|&u| g.neighbors(u).iter().filter(|&&w| in_b[w]).map(move |&w| Edge::new(u, w)))
        .collect()
}

/// Stateful cut chooser. Keeps the RNG alive across calls so that a sequence
/// of cuts under `Random(seed)` is reproducible as a whole.
pub struct CutSelector {
    policy: TieBreakPolicy,
    rng: Option<ChaCha8Rng>,
}

impl CutSelector {
    pub fn new(policy: TieBreakPolicy) -> Self {
        let rng = match policy {
            TieBreakPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        CutSelector { policy, rng }
    }

    /// A minimum cut of the connected vertex set `component`.
    pub fn select(&mut self, g: &Graph, component: &[Vertex]) -> Result<Cut, GraphError> {
        if component.len() < 2 {
            return Err(GraphError::ComponentTooSmall(component.len()));
        }
        let mut order = component.to_vec();
        order.sort_unstable();
        match self.policy {
            TieBreakPolicy::Lexicographic => {
                let (_, side) = stoer_wagner(g, &order);
                Ok(Cut::from_side(g, component, &side))
            }
            TieBreakPolicy::Adversarial => {
                let (lambda, side) = stoer_wagner(g, &order);
                let degree_in = in_component_degrees(g, &order);
                match order.iter().zip(&degree_in).find(|(_, &d)| d == lambda) {
                    Some((&v, _)) => Ok(Cut::from_side(g, component, &[v])),
                    None => Ok(Cut::from_side(g, component, &side)),
                }
            }
            TieBreakPolicy::Random(_) => {
                let rng = self.rng.as_mut().expect("rng present for random policy");
                order.shuffle(rng);
                let (_, side) = stoer_wagner(g, &order);
                Ok(Cut::from_side(g, component, &side))
            }
        }
    }
}

/// A minimum cut of `component` selected by `policy`.
pub fn min_cut(g: &Graph, component: &[Vertex], policy: TieBreakPolicy) -> Result<Cut, GraphError> {
    CutSelector::new(policy).select(g, component)
}

/// Edge connectivity of the subgraph induced by `component`. Disconnected
/// sets and singletons have connectivity 0.
pub fn edge_connectivity(g: &Graph, component: &[Vertex]) -> usize {
    match component.len() {
        0 | 1 => 0,
        2 => usize::from(g.has_edge(component[0], component[1])),
        _ => {
            if components_within(g, component).len() != 1 {
                return 0;
            }
            let mut order = component.to_vec();
            order.sort_unstable();
            stoer_wagner(g, &order).0
        }
    }
}

/// `λ > |component| / 2`, with singletons counted as highly connected.
pub fn is_highly_connected(g: &Graph, component: &[Vertex]) -> bool {
    match component.len() {
        0 => false,
        1 => true,
        n => 2 * edge_connectivity(g, component) > n,
    }
}

fn in_component_degrees(g: &Graph, order: &[Vertex]) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &v in order {
        inside[v] = true;
    }
    order.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count()).collect()
}

/// Stoer–Wagner on the subgraph induced by `order`. Phases start from
/// `order[0]` and break key ties by position in `order`. Returns the cut
/// weight and one side (original vertex ids).
fn stoer_wagner(g: &Graph, order: &[Vertex]) -> (usize, Vec<Vertex>) {
    let n = order.len();
    debug_assert!(n >= 2);
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        local[v] = i;
    }
    let mut w = vec![vec![0usize; n]; n];
    for (i, &v) in order.iter().enumerate() {
        for &x in g.neighbors(v) {
            if local[x] != usize::MAX {
                w[i][local[x]] = 1;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    let mut best_side = Vec::new();

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0usize; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = if step == 0 {
                active[0]
            } else {
                // first maximum in `active` order
                let mut pick = usize::MAX;
                for &c in &active {
                    if !added[c] && (pick == usize::MAX || key[c] > key[pick]) {
                        pick = c;
                    }
                }
                pick
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
        if key[last] < best {
            best = key[last];
            best_side = groups[last].clone();
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &c in &active {
            if c != prev && c != last {
                w[prev][c] += w[last][c];
                w[c][prev] = w[prev][c];
            }
        }
        active.retain(|&c| c != last);
    }
    (best, best_side.into_iter().map(|i| order[i]).collect())
}
