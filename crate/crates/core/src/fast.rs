//! Feedback Arc Set in Tournaments: acyclicity checks, an exact solver for
//! small tournaments, and k-exchange local search over deletion sets.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Vertex;

/// Ordered pair `(from, to)`.
pub type Arc = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FastError {
    #[error("arc {0}->{1} is not in the tournament")]
    ArcNotPresent(Vertex, Vertex),
    #[error("tournament with {n} vertices exceeds the cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("deleting the given arcs does not leave an acyclic graph")]
    InvalidSolution,
    #[error("not a tournament: {0}")]
    NotTournament(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    beats: Vec<Vec<bool>>,
}

impl Tournament {
    /// Requires exactly one arc per unordered pair.
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self, FastError> {
        let mut beats = vec![vec![false; n]; n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(FastError::NotTournament(format!("arc {u}->{v} out of range")));
            }
            if u == v {
                return Err(FastError::NotTournament(format!("self-loop at {u}")));
            }
            if beats[u][v] || beats[v][u] {
                return Err(FastError::NotTournament(format!("pair {u},{v} has more than one arc")));
            }
            beats[u][v] = true;
        }
        for u in 0..n {
            for v in u + 1..n {
                if !beats[u][v] && !beats[v][u] {
                    return Err(FastError::NotTournament(format!("pair {u},{v} has no arc")));
                }
            }
        }
        Ok(Tournament { beats })
    }

    /// Transitive tournament in which earlier vertices of `order` beat later ones.
    pub fn transitive(order: &[Vertex]) -> Self {
        let n = order.len();
        let mut beats = vec![vec![false; n]; n];
        for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                beats[u][v] = true;
            }
        }
        Tournament { beats }
    }

    /// Uniformly random orientation of every pair.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut beats = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    beats[u][v] = true;
                } else {
                    beats[v][u] = true;
                }
            }
        }
        Tournament { beats }
    }

    pub fn n(&self) -> usize {
        self.beats.len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.beats[u][v]
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.n();
        (0..n).flat_map(|u| (0..n).filter(move |&v| self.beats[u][v]).map(move |v| (u, v))).collect()
    }

    /// The arcs pointing backwards in `order`.
    pub fn backward_arcs(&self, order: &[Vertex]) -> ArcSet {
        let mut set = ArcSet::default();
        for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                if self.beats[v][u] {
                    set.insert((v, u));
                }
            }
        }
        set
    }

    /// Backward arcs of a random vertex order: a valid, usually redundant,
    /// deletion set.
    pub fn random_solution<R: Rng>(&self, rng: &mut R) -> ArcSet {
        let mut order: Vec<Vertex> = (0..self.n()).collect();
        order.shuffle(rng);
        self.backward_arcs(&order)
    }

    fn check(&self, s: &ArcSet) -> Result<(), FastError> {
        match s.iter().find(|&&(u, v)| !self.has_arc(u, v)) {
            Some(&(u, v)) => Err(FastError::ArcNotPresent(u, v)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArcSet(BTreeSet<Arc>);

impl ArcSet {
    pub fn new() -> Self {
        ArcSet::default()
    }

    pub fn insert(&mut self, a: Arc) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: &Arc) -> bool {
        self.0.remove(a)
    }

    pub fn contains(&self, a: &Arc) -> bool {
        self.0.contains(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.0.iter()
    }

    pub fn symmetric_difference_len(&self, other: &ArcSet) -> usize {
        self.0.symmetric_difference(&other.0).count()
    }
}

impl FromIterator<Arc> for ArcSet {
    fn from_iter<I: IntoIterator<Item = Arc>>(iter: I) -> Self {
        ArcSet(iter.into_iter().collect())
    }
}

/// Adjacency matrix of the tournament minus `deleted`.
fn remaining(t: &Tournament, deleted: &ArcSet) -> Vec<Vec<bool>> {
    let mut adj = t.beats.clone();
    for &(u, v) in deleted.iter() {
        adj[u][v] = false;
    }
    adj
}

fn acyclic(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut indeg: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| adj[u][v]).count()).collect();
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop_front() {
        seen += 1;
        for v in 0..n {
            if adj[u][v] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
    }
    seen == n
}

pub fn is_acyclic_after(t: &Tournament, s: &ArcSet) -> Result<bool, FastError> {
    t.check(s)?;
    Ok(acyclic(&remaining(t, s)))
}

/// Minimum deletion set for tournaments of at most 9 vertices.
pub fn fas_exact(t: &Tournament) -> Result<ArcSet, FastError> {
    fas_exact_with_cap(t, 9)
}

/// Dynamic programme over vertex subsets: `best[mask]` is the fewest
/// backward arcs when `mask` forms a prefix of the order.
pub fn fas_exact_with_cap(t: &Tournament, cap: usize) -> Result<ArcSet, FastError> {
    let n = t.n();
    if n > cap || n > 24 {
        return Err(FastError::InstanceTooLarge { n, cap: cap.min(24) });
    }
    let full = (1usize << n) - 1;
    let mut best = vec![usize::MAX; full + 1];
    let mut last = vec![0usize; full + 1];
    best[0] = 0;
    for mask in 0..full {
        if best[mask] == usize::MAX {
            continue;
        }
        for v in (0..n).filter(|&v| mask >> v & 1 == 0) {
            // v goes after everything in mask; arcs v->u with u in mask point back
            let back = (0..n).filter(|&u| mask >> u & 1 == 1 && t.beats[v][u]).count();
            let next = mask | 1 << v;
            if best[mask] + back < best[next] {
                best[next] = best[mask] + back;
                last[next] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        order.push(last[mask]);
        mask &= !(1 << last[mask]);
    }
    order.reverse();
    Ok(t.backward_arcs(&order))
}

/// Shortest directed cycle, as its list of arcs.
fn shortest_cycle(adj: &[Vec<bool>]) -> Option<Vec<Arc>> {
    let n = adj.len();
    let mut best: Option<Vec<Arc>> = None;
    for s in 0..n {
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| dist[u] + 1 >= b.len()) {
                break;
            }
            for v in 0..n {
                if !adj[u][v] {
                    continue;
                }
                if v == s {
                    let mut cycle = vec![(u, s)];
                    let mut x = u;
                    while x != s {
                        cycle.push((parent[x], x));
                        x = parent[x];
                    }
                    cycle.reverse();
                    best = Some(cycle);
                    break 'bfs;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    best
}

/// A strictly smaller deletion set at symmetric-difference distance at most
/// `k` from `s`, or `None` when `s` is optimal within that neighbourhood.
///
/// For every set `R ⊆ S` of arcs to restore, the fewest additional
/// deletions are found by branching on the arcs of a shortest remaining
/// cycle. The returned set is the smallest found, ties broken by distance and
/// then by enumeration order.
pub fn ls_fast(t: &Tournament, s: &ArcSet, k: usize) -> Result<Option<ArcSet>, FastError> {
    if !is_acyclic_after(t, s)? {
        return Err(FastError::InvalidSolution);
    }
    let base: Vec<Arc> = s.iter().copied().collect();
    let mut best: Option<(usize, usize, ArcSet)> = None;
    let mut restored = Vec::new();
    restore_subsets(t, s, &base, k, 0, &mut restored, &mut best);
    Ok(best.map(|(_, _, set)| set))
}

fn restore_subsets(
    t: &Tournament,
    s: &ArcSet,
    base: &[Arc],
    k: usize,
    from: usize,
    restored: &mut Vec<Arc>,
    best: &mut Option<(usize, usize, ArcSet)>,
) {
    if !restored.is_empty() {
        let r = restored.len();
        let max_add = (r - 1).min(k - r);
        let mut kept: ArcSet = s.iter().copied().filter(|a| !restored.contains(a)).collect();
        let adj = remaining(t, &kept);
        for budget in 0..=max_add {
            let size = s.len() - r + budget;
            if best.as_ref().is_some_and(|(bs, bd, _)| (size, r + budget) >= (*bs, *bd)) {
                break;
            }
            let mut added = Vec::new();
            if cover_cycles(adj.clone(), restored, budget, &mut added) {
                for a in added {
                    kept.insert(a);
                }
                *best = Some((size, r + budget, kept));
                break;
            }
        }
    }
    if restored.len() == k {
        return;
    }
    for i in from..base.len() {
        restored.push(base[i]);
        restore_subsets(t, s, base, k, i + 1, restored, best);
        restored.pop();
    }
}

/// Deletes at most `budget` arcs (never one of `frozen`) to make `adj` acyclic.
fn cover_cycles(mut adj: Vec<Vec<bool>>, frozen: &[Arc], budget: usize, added: &mut Vec<Arc>) -> bool {
    let Some(cycle) = shortest_cycle(&adj) else { return true };
    if budget == 0 {
        return false;
    }
    for a in cycle {
        if frozen.contains(&a) {
            continue;
        }
        adj[a.0][a.1] = false;
        added.push(a);
        if cover_cycles(adj.clone(), frozen, budget - 1, added) {
            return true;
        }
        added.pop();
        adj[a.0][a.1] = true;
    }
    false
}
