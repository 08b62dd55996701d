//! Brute-force reference solvers for small instances. They share no code
//! with the solvers they check beyond the graph type itself.

use crate::fast::{Arc, ArcSet, Tournament};
use crate::graph::{Graph, Vertex};
use crate::ilc::{Color, ListColoringInstance};

/// Calls `f` with every set partition of `0..n`, as a block index per element.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(i: usize, blocks: usize, labels: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == labels.len() {
            f(labels);
            return;
        }
        for b in 0..=blocks {
            labels[i] = b;
            rec(i + 1, blocks.max(b + 1), labels, f);
        }
    }
    let mut labels = vec![0; n];
    rec(0, 0, &mut labels, &mut f);
}

/// Calls `f` with every subset of `0..n` of size at most `k`, smaller
/// subsets first. Stops early when `f` returns true.
pub fn for_each_subset_upto(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, size: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in from..n {
            cur.push(i);
            if rec(n, size, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (0..=k.min(n)).any(|size| rec(n, size, 0, &mut Vec::new(), &mut f))
}

fn block_members(labels: &[usize]) -> Vec<Vec<Vertex>> {
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (v, &b) in labels.iter().enumerate() {
        blocks[b].push(v);
    }
    blocks
}

/// Highly connected via minimum degree: a block of size `s >= 2` qualifies
/// iff every member has more than `s/2` neighbours inside it.
fn block_is_highly_connected(g: &Graph, block: &[Vertex]) -> bool {
    let s = block.len();
    s == 1 || block.iter().all(|&v| 2 * block.iter().filter(|&&w| g.has_edge(v, w)).count() > s)
}

fn crossing_count(g: &Graph, labels: &[usize]) -> usize {
    g.edges().filter(|e| labels[e.lo()] != labels[e.hi()]).count()
}

/// Minimum Highly Connected Deletion cost: the cheapest partition into
/// highly connected blocks, paying for the edges between blocks.
pub fn hcd_brute(g: &Graph) -> usize {
    let mut best = usize::MAX;
    for_each_partition(g.n(), |labels| {
        let blocks = block_members(labels);
        if blocks.iter().all(|b| block_is_highly_connected(g, b)) {
            best = best.min(crossing_count(g, labels));
        }
    });
    best
}

/// Minimum Highly Connected Deletion cost by trying edge subsets in order of
/// size. Exponential in the edge count; meant for checking [`hcd_brute`].
pub fn hcd_edge_subset_brute(g: &Graph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    let mut best = usize::MAX;
    for_each_subset_upto(edges.len(), edges.len(), |del| {
        let mut adj = vec![vec![false; g.n()]; g.n()];
        for (i, e) in edges.iter().enumerate() {
            if !del.contains(&i) {
                adj[e.lo()][e.hi()] = true;
                adj[e.hi()][e.lo()] = true;
            }
        }
        let ok = components(&adj).iter().all(|c| {
            c.len() == 1 || c.iter().all(|&v| 2 * c.iter().filter(|&&w| adj[v][w]).count() > c.len())
        });
        if ok {
            best = del.len();
        }
        ok
    });
    best
}

/// Minimum Cluster Editing cost by trying sets of toggled vertex pairs in
/// order of size.
pub fn ce_edit_subset_brute(g: &Graph) -> usize {
    let n = g.n();
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut best = usize::MAX;
    for_each_subset_upto(pairs.len(), pairs.len(), |flip| {
        let mut adj = vec![vec![false; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let present = g.has_edge(u, v) != flip.contains(&i);
            adj[u][v] = present;
            adj[v][u] = present;
        }
        // a cluster graph has no induced path on three vertices
        let ok = (0..n).all(|v| {
            (0..n).all(|u| (0..n).all(|w| u == w || !adj[v][u] || !adj[v][w] || adj[u][w]))
        });
        if ok {
            best = flip.len();
        }
        ok
    });
    best
}

fn components(adj: &[Vec<bool>]) -> Vec<Vec<Vertex>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in 0..n {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Minimum Cluster Editing cost over all partitions.
pub fn ce_brute(g: &Graph) -> usize {
    let mut best = usize::MAX;
    for_each_partition(g.n(), |labels| {
        let mut cost = 0;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.has_edge(u, v) != (labels[u] == labels[v]) {
                    cost += 1;
                }
            }
        }
        best = best.min(cost);
    });
    best
}

/// Minimum total increase making `degrees` `ell`-anonymous: every partition
/// into classes of size at least `ell`, each raised to its maximum.
pub fn anonymity_grouping_brute(degrees: &[usize], ell: usize) -> usize {
    let mut best = usize::MAX;
    for_each_partition(degrees.len(), |labels| {
        let blocks = block_members(labels);
        if blocks.iter().any(|b| b.len() < ell) {
            return;
        }
        let cost = blocks
            .iter()
            .map(|b| {
                let top = b.iter().map(|&i| degrees[i]).max().unwrap_or(0);
                b.iter().map(|&i| top - degrees[i]).sum::<usize>()
            })
            .sum();
        best = best.min(cost);
    });
    best
}

fn anonymous(degrees: &[usize], ell: usize) -> bool {
    let mut counts = std::collections::HashMap::new();
    for &d in degrees {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    counts.values().all(|&c| c >= ell)
}

/// Fewest edge insertions making `g` `ell`-anonymous, searching sizes up
/// to `k`.
pub fn anon_brute(g: &Graph, ell: usize, k: usize) -> Option<usize> {
    let non_edges: Vec<(Vertex, Vertex)> =
        (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    let mut found = None;
    for_each_subset_upto(non_edges.len(), k, |idx| {
        let mut d = g.degrees();
        for &i in idx {
            d[non_edges[i].0] += 1;
            d[non_edges[i].1] += 1;
        }
        if anonymous(&d, ell) {
            found = Some(idx.len());
            return true;
        }
        false
    });
    found
}

fn covers(g: &Graph, inside: &[bool]) -> bool {
    g.edges().all(|e| inside[e.lo()] || inside[e.hi()])
}

/// Minimum vertex cover size by subset enumeration.
pub fn vc_brute(g: &Graph) -> usize {
    let mut best = g.n();
    let mut inside = vec![false; g.n()];
    for_each_subset_upto(g.n(), g.n(), |set| {
        inside.iter_mut().for_each(|x| *x = false);
        for &v in set {
            inside[v] = true;
        }
        if covers(g, &inside) {
            best = set.len();
            return true;
        }
        false
    });
    best
}

/// Twice the fractional vertex cover optimum, searched over assignments with
/// values in {0, 1/2, 1} (some optimum always has this form).
pub fn vc_lp_brute_halves(g: &Graph) -> u64 {
    let n = g.n();
    let mut x = vec![0u8; n];
    let mut best = u64::MAX;
    loop {
        if g.edges().all(|e| x[e.lo()] + x[e.hi()] >= 2) {
            best = best.min(x.iter().map(|&v| u64::from(v)).sum());
        }
        // base-3 counter
        let mut i = 0;
        while i < n && x[i] == 2 {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    best
}

/// Size of the smallest cover at symmetric-difference distance at most `k`
/// from `s`, if it is smaller than `s`.
pub fn lsvc_brute(g: &Graph, s: &[Vertex], k: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for_each_subset_upto(g.n(), k, |flip| {
        let mut inside = vec![false; g.n()];
        for &v in s {
            inside[v] = true;
        }
        for &v in flip {
            inside[v] = !inside[v];
        }
        let size = inside.iter().filter(|&&x| x).count();
        if size < s.len() && covers(g, &inside) && best.is_none_or(|b| size < b) {
            best = Some(size);
        }
        false
    });
    best
}

fn acyclic_without(t: &Tournament, removed: &[bool], arcs: &[Arc]) -> bool {
    // depth-first search for a back edge
    let n = t.n();
    let mut out = vec![Vec::new(); n];
    for (i, &(u, v)) in arcs.iter().enumerate() {
        if !removed[i] {
            out[u].push(v);
        }
    }
    let mut state = vec![0u8; n];
    fn visit(v: usize, out: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &out[v] {
            if state[w] == 1 || (state[w] == 0 && !visit(w, out, state)) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    (0..n).all(|v| state[v] != 0 || visit(v, &out, &mut state))
}

/// Minimum feedback arc set size by arc-subset search.
pub fn fas_brute(t: &Tournament) -> usize {
    let arcs = t.arcs();
    let mut best = arcs.len();
    for_each_subset_upto(arcs.len(), arcs.len(), |set| {
        let mut removed = vec![false; arcs.len()];
        for &i in set {
            removed[i] = true;
        }
        if acyclic_without(t, &removed, &arcs) {
            best = set.len();
            return true;
        }
        false
    });
    best
}

/// Size of the smallest valid deletion set at symmetric-difference distance
/// at most `k` from `s`, if smaller than `s`.
pub fn ls_fast_brute(t: &Tournament, s: &ArcSet, k: usize) -> Option<usize> {
    let arcs = t.arcs();
    let mut best: Option<usize> = None;
    for_each_subset_upto(arcs.len(), k, |flip| {
        let mut removed: Vec<bool> = arcs.iter().map(|a| s.contains(a)).collect();
        for &i in flip {
            removed[i] = !removed[i];
        }
        let size = removed.iter().filter(|&&x| x).count();
        if size < s.len() && best.is_none_or(|b| size < b) && acyclic_without(t, &removed, &arcs) {
            best = Some(size);
        }
        false
    });
    best
}

/// Whether some proper list coloring of all vertices differs from the old
/// coloring on at most `budget` previously colored vertices.
pub fn ilc_brute(inst: &ListColoringInstance) -> bool {
    let g = inst.graph();
    let lists = inst.lists();
    let old = inst.coloring();
    // vertices that take part: the colored ones and the target
    let active: Vec<Vertex> = g.vertices().filter(|&v| old[v].is_some() || v == inst.target()).collect();
    let mut choice: Vec<Option<Color>> = vec![None; g.n()];
    fn rec(
        i: usize,
        active: &[Vertex],
        g: &Graph,
        lists: &[Vec<Color>],
        old: &[Option<Color>],
        changes: usize,
        budget: usize,
        choice: &mut Vec<Option<Color>>,
    ) -> bool {
        let Some(&v) = active.get(i) else { return true };
        for &c in &lists[v] {
            let change = usize::from(old[v].is_some_and(|o| o != c));
            if changes + change > budget || g.neighbors(v).iter().any(|&w| choice[w] == Some(c)) {
                continue;
            }
            choice[v] = Some(c);
            if rec(i + 1, active, g, lists, old, changes + change, budget, choice) {
                return true;
            }
            choice[v] = None;
        }
        false
    }
    rec(0, &active, g, lists, old, 0, inst.budget(), &mut choice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{anonymity_figure, hcd_figure, vc_lp_figure};

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (3, 5), (5, 52)] {
            let mut count = 0;
            for_each_partition(n, |_| count += 1);
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn figure_values() {
        assert_eq!(hcd_brute(&hcd_figure()), 3);
        assert_eq!(anon_brute(&anonymity_figure(), 2, 3), Some(1));
        assert_eq!(vc_brute(&vc_lp_figure()), 3);
        assert_eq!(vc_lp_brute_halves(&vc_lp_figure()), 5);
        let tri = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(fas_brute(&tri), 1);
    }

    #[test]
    fn subset_searches_match_partition_searches() {
        let mut r = crate::instances::rng(5);
        for _ in 0..40 {
            let g = crate::instances::gnp(5, 0.5, &mut r);
            assert_eq!(hcd_edge_subset_brute(&g), hcd_brute(&g), "{g:?}");
            assert_eq!(ce_edit_subset_brute(&g), ce_brute(&g), "{g:?}");
        }
        assert_eq!(hcd_edge_subset_brute(&hcd_figure()), 3);
    }

    #[test]
    fn cluster_editing_small() {
        assert_eq!(ce_brute(&Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap()), 1);
        assert_eq!(ce_brute(&Graph::complete(4)), 0);
    }
}
