//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails. Built with `harness = false` so the lines are
//! always shown by `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphmod::anonymity::{anon_exact, anonymize_degree_sequence, is_l_anonymous, lt_heuristic, DegreeSequence};
use graphmod::cluster_editing::{ce_solve, is_cluster_graph, LowerBoundKind};
use graphmod::cut::{is_highly_connected, TieBreakPolicy};
use graphmod::fast::{ls_fast, ArcSet, Tournament};
use graphmod::graph::Graph;
use graphmod::hcd::{gen_adversarial, hcd_exact, hs_cluster};
use graphmod::ilc::{
    count_colors, crown_fixture, greedy_list_coloring, ilc_color_graph, ilc_solve, is_proper_list_coloring, node_bound,
    Color, ListColoringInstance,
};
use graphmod::instances::{anonymity_figure, gnp, hcd_figure, lsvc_figure, rng, vc_lp_figure};
use graphmod::oracle;
use graphmod::tuner::{enumerate_configs, random_corpus, tune, ConfigGrid, TuneOptions};
use graphmod::vc::{lp_half_integral, ls_vertex_cover, vc_above_lp, Half, VcError, VertexCover};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_graph<R: Rng>(r: &mut R, max_n: usize) -> Graph {
    let n = r.gen_range(1..=max_n);
    let p = r.gen_range(0.15..0.85);
    gnp(n, p, r)
}

fn adversarial_gap() -> Outcome {
    let start = Instant::now();
    for n in 3..=6 {
        let inst = gen_adversarial(n).map_err(|e| e.to_string())?;
        let exact = hcd_exact(&inst.graph, inst.graph.m()).map_err(|e| e.to_string())?;
        check(exact.cost == n - 1, format!("n={n}: exact cost {} != {}", exact.cost, n - 1))?;
        let hs = hs_cluster(&inst.graph, TieBreakPolicy::Adversarial);
        let want = n * (n + 1) / 2 - 1;
        check(hs.cost == want, format!("n={n}: adversarial heuristic cost {} != {want}", hs.cost))?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!("n=3..6 exact n-1, heuristic n(n+1)/2-1, {took:.2?}"))
}

fn hcd_figure_fixture() -> Outcome {
    let g = hcd_figure();
    let sol = hcd_exact(&g, 3).map_err(|e| e.to_string())?;
    check(sol.cost == 3, format!("cost {}", sol.cost))?;
    check(sol.validate(&g), "solution does not validate")?;
    let rest = g.without_edges(&sol.deleted);
    let clusters = sol.clusters.clusters();
    check(clusters.len() == 2, format!("{} clusters", clusters.len()))?;
    check(clusters.iter().all(|c| is_highly_connected(&rest, c)), "cluster not highly connected")?;
    Ok("cost 3, two highly connected clusters".into())
}

fn hcd_oracle() -> Outcome {
    let mut r = rng(101);
    let mut subset_checked = 0;
    for i in 0..200 {
        let g = random_graph(&mut r, 8);
        let want = oracle::hcd_brute(&g);
        // the literal edge-subset search is only affordable on sparse inputs
        if g.m() <= 14 {
            let literal = oracle::hcd_edge_subset_brute(&g);
            check(literal == want, format!("graph {i}: oracles disagree {literal} vs {want}"))?;
            subset_checked += 1;
        }
        let sol = hcd_exact(&g, g.m()).map_err(|e| format!("graph {i}: {e}"))?;
        check(sol.cost == want && sol.validate(&g), format!("graph {i}: exact {} vs oracle {want}", sol.cost))?;
    }
    Ok(format!("200/200 agree ({subset_checked} also by edge-subset search)"))
}

fn anonymity_figure_fixture() -> Outcome {
    let g = anonymity_figure();
    let lt = lt_heuristic(&g, 2).map_err(|e| e.to_string())?;
    check(lt.len() == 1, format!("heuristic inserted {}", lt.len()))?;
    let after = lt.apply(&g).map_err(|e| e.to_string())?;
    check(is_l_anonymous(&after, 2), "result not 2-anonymous")?;
    let exact = anon_exact(&g, 2, 1).map_err(|e| e.to_string())?;
    check(exact.len() == 1, format!("exact optimum {}", exact.len()))?;
    check(anon_exact(&g, 2, 0).is_err(), "k=0 should be infeasible")?;
    Ok("1 inserted edge, optimum 1".into())
}

fn anonymity_dp_oracle() -> Outcome {
    let mut r = rng(102);
    for i in 0..200 {
        let n = r.gen_range(2..=8);
        let degrees: Vec<usize> = (0..n).map(|_| r.gen_range(0..n)).collect();
        let ell = if i % 2 == 0 { 2 } else { 3.min(n) };
        let (_, cost) = anonymize_degree_sequence(&DegreeSequence { degrees: degrees.clone() }, ell)
            .map_err(|e| format!("{degrees:?}: {e}"))?;
        let want = oracle::anonymity_grouping_brute(&degrees, ell);
        check(cost == want, format!("{degrees:?} ell={ell}: dp {cost} vs {want}"))?;
    }
    Ok("200/200 agree".into())
}

fn vc_lp_figure_fixture() -> Outcome {
    let g = vc_lp_figure();
    let lp = lp_half_integral(&g);
    check(lp.lp_value().to_string() == "5/2", format!("lp value {}", lp.lp_value()))?;
    check(lp.is_feasible(&g), "LP solution infeasible")?;
    let figure = [Half::Half, Half::Half, Half::Half, Half::One, Half::Zero, Half::Zero];
    let shape = if lp.values == figure { "figure values" } else { "tie-equivalent values" };
    let cover = vc_above_lp(&g, 3).map_err(|e| e.to_string())?;
    check(cover.len() == 3 && cover.is_cover(&g), "k=3 cover wrong")?;
    check(matches!(vc_above_lp(&g, 2), Err(VcError::Infeasible(2))), "k=2 not infeasible")?;
    Ok(format!("lp 5/2 ({shape}), cover 3, k=2 infeasible"))
}

fn half_integrality_sandwich() -> Outcome {
    let mut r = rng(103);
    for i in 0..500 {
        let g = random_graph(&mut r, 8);
        let lp = lp_half_integral(&g);
        // Half has only the three variants; feasibility and value are what can go wrong
        check(lp.is_feasible(&g), format!("graph {i}: infeasible"))?;
        let halves = lp.lp_value().0 as usize;
        check(halves as u64 == oracle::vc_lp_brute_halves(&g), format!("graph {i}: LP not optimal"))?;
        let opt = oracle::vc_brute(&g);
        check(halves <= 2 * opt && opt <= halves, format!("graph {i}: lp {halves}/2, opt {opt}"))?;
    }
    Ok("500/500 half-integral, lp <= opt <= 2 lp".into())
}

fn lsvc_figure_fixture() -> Outcome {
    let (g, s) = lsvc_figure();
    let seed = VertexCover::new(s);
    check(seed.len() == 5 && seed.is_cover(&g), "seed is not a size-5 cover")?;
    let (cover, mv) = ls_vertex_cover(&g, &seed, 3).map_err(|e| e.to_string())?.ok_or("no improvement found")?;
    check(cover.len() == 4 && cover.is_cover(&g), format!("cover size {}", cover.len()))?;
    check(mv.distance <= 3, format!("distance {}", mv.distance))?;
    Ok(format!("size 4 at distance {}", mv.distance))
}

fn fast_ls_oracle() -> Outcome {
    let mut r = rng(104);
    let mut improved = 0;
    for i in 0..100 {
        let n = r.gen_range(6..=7);
        let t = Tournament::random(n, &mut r);
        // backward arcs of a random order plus one or two spare arcs
        let mut seed = t.random_solution(&mut r);
        let mut spare: Vec<_> = t.arcs().into_iter().filter(|a| !seed.contains(a)).collect();
        spare.shuffle(&mut r);
        for a in spare.into_iter().take(r.gen_range(1..=2)) {
            seed.insert(a);
        }
        for k in 0..=4 {
            let found = ls_fast(&t, &seed, k).map_err(|e| format!("tournament {i}: {e}"))?;
            let want = oracle::ls_fast_brute(&t, &seed, k);
            check(
                found.as_ref().map(ArcSet::len) == want,
                format!("tournament {i} k={k}: {:?} vs {want:?}", found.as_ref().map(ArcSet::len)),
            )?;
            improved += usize::from(found.is_some());
        }
    }
    Ok(format!("500/500 agree ({improved} improvements)"))
}

fn ilc_bound_and_oracle() -> Outcome {
    let mut r = rng(105);
    for i in 0..200 {
        let g = random_graph(&mut r, 8);
        let k = r.gen_range(1..=3usize);
        let lists: Vec<Vec<Color>> = g
            .vertices()
            .map(|_| {
                let mut palette: Vec<Color> = (1..=4).collect();
                palette.shuffle(&mut r);
                palette.truncate(r.gen_range(1..=k));
                palette
            })
            .collect();
        let target = r.gen_range(0..g.n());
        let mut col = vec![None; g.n()];
        for v in g.vertices().filter(|&v| v != target) {
            col[v] = lists[v].iter().copied().find(|&c| g.neighbors(v).iter().all(|&w| col[w] != Some(c)));
        }
        let c = r.gen_range(0..=3);
        let inst = ListColoringInstance::new(g, lists, col, target, c).map_err(|e| e.to_string())?;
        let out = ilc_solve(&inst);
        let bound = node_bound(inst.k(), c);
        check(out.nodes <= bound, format!("instance {i}: {} nodes > {bound}", out.nodes))?;
        check(out.coloring.is_some() == oracle::ilc_brute(&inst), format!("instance {i}: answer differs"))?;
    }
    Ok("200/200 within node bound and agree".into())
}

fn ilc_vs_greedy() -> Outcome {
    let mut r = rng(106);
    let mut strictly_better = 0;
    for i in 0..100 {
        let g = random_graph(&mut r, 10);
        let palette = g.max_degree() as Color + 2;
        let lists: Vec<Vec<Color>> = g
            .vertices()
            .map(|v| {
                let mut all: Vec<Color> = (1..=palette).collect();
                all.shuffle(&mut r);
                all.truncate(g.degree(v) + 1);
                all
            })
            .collect();
        let greedy = greedy_list_coloring(&g, &lists).ok_or(format!("instance {i}: greedy failed"))?;
        let c0 = ilc_color_graph(&g, &lists, 0).ok_or(format!("instance {i}: c=0 failed"))?;
        check(c0 == greedy, format!("instance {i}: c=0 differs from greedy"))?;
        let c2 = ilc_color_graph(&g, &lists, 2).ok_or(format!("instance {i}: c=2 failed"))?;
        check(is_proper_list_coloring(&g, &lists, &c2), format!("instance {i}: c=2 improper"))?;
        let (a, b) = (count_colors(&c2), count_colors(&greedy));
        check(a <= b, format!("instance {i}: c=2 uses {a} > greedy {b}"))?;
        strictly_better += usize::from(a < b);
    }
    let (g, lists) = crown_fixture();
    let greedy = count_colors(&greedy_list_coloring(&g, &lists).ok_or("crown: greedy failed")?);
    let c2 = count_colors(&ilc_color_graph(&g, &lists, 2).ok_or("crown: c=2 failed")?);
    check(c2 < greedy, format!("crown: c=2 uses {c2}, greedy {greedy}"))?;
    Ok(format!("100 corpus instances ({strictly_better} strictly better), crown {c2} < {greedy}"))
}

fn ce_config_invariance() -> Outcome {
    let configs = enumerate_configs(&ConfigGrid::full(7)).map_err(|e| e.to_string())?;
    check(configs.len() == 24, format!("{} configs", configs.len()))?;
    let mut r = rng(107);
    for i in 0..100 {
        let g = random_graph(&mut r, 7);
        let want = oracle::ce_brute(&g);
        for (ci, cfg) in configs.iter().enumerate() {
            let edits = ce_solve(&g, want, cfg).map_err(|e| format!("graph {i} config {ci}: {e}"))?;
            check(edits.len() == want, format!("graph {i} config {ci}: {} vs {want}", edits.len()))?;
            let after = edits.apply(&g).map_err(|e| e.to_string())?;
            check(is_cluster_graph(&after), format!("graph {i} config {ci}: not a cluster graph"))?;
            if want > 0 {
                check(ce_solve(&g, want - 1, cfg).is_err(), format!("graph {i} config {ci}: below optimum"))?;
            }
        }
    }
    Ok("24 configs x 100 graphs equal brute force".into())
}

fn tuner_determinism_and_dominance() -> Outcome {
    let corpus = random_corpus(20, 7, 0.7, 2024);
    let grid = ConfigGrid::full(2024);
    let opts = TuneOptions::default();
    let (a, _) = tune(&corpus, &grid, &opts).map_err(|e| e.to_string())?;
    let (b, _) = tune(&corpus, &grid, &opts).map_err(|e| e.to_string())?;
    check(a.to_json().as_bytes() == b.to_json().as_bytes(), "reports differ")?;
    check(a.answers_agree, "configs disagree on optima")?;
    let p3 = a.total_where(|c| c.lower_bound == LowerBoundKind::P3Packing);
    let none = a.total_where(|c| c.lower_bound == LowerBoundKind::None);
    check(p3 < none, format!("p3 {p3} vs none {none}"))?;
    Ok(format!("byte-identical, nodes p3 {p3} < none {none}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 13] = [
        ("adversarial gap", adversarial_gap),
        ("hcd figure", hcd_figure_fixture),
        ("hcd oracle", hcd_oracle),
        ("anonymity figure", anonymity_figure_fixture),
        ("anonymity dp oracle", anonymity_dp_oracle),
        ("vc lp figure", vc_lp_figure_fixture),
        ("half-integrality sandwich", half_integrality_sandwich),
        ("lsvc figure", lsvc_figure_fixture),
        ("fast local search oracle", fast_ls_oracle),
        ("ilc node bound", ilc_bound_and_oracle),
        ("ilc vs greedy", ilc_vs_greedy),
        ("ce config invariance", ce_config_invariance),
        ("tuner determinism", tuner_determinism_and_dominance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        failed += usize::from(outcome.is_err());
        let detail = outcome.unwrap_or_else(|e| e);
        println!("criterion {:>2}: {verdict} {name}: {detail} [{:.2?}]", i + 1, t.elapsed());
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(300);
    failed += usize::from(!in_time);
    println!("criterion 14: {} total runtime {total:.2?} (limit 300s)", if in_time { "PASS" } else { "FAIL" });
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
