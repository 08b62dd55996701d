//! Uniform result records for every solver, the figure fixtures, and a
//! corpus runner.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::anonymity::{anon_exact, is_l_anonymous, lt_heuristic, AnonError};
use crate::cluster_editing::{ce_solve_with, is_cluster_graph, CeConfig, CeError, CeLimits};
use crate::cut::TieBreakPolicy;
use crate::fast::{fas_exact, is_acyclic_after, ls_fast, ArcSet, FastError, Tournament};
use crate::graph::Graph;
use crate::hcd::{hcd_exact_with, hs_cluster, HcdError, HcdExactOptions};
use crate::ilc::{greedy_list_coloring, ilc_color_graph_with, is_proper_list_coloring, Color, IlcColorOptions};
use crate::instances::{anonymity_figure, hcd_figure, lsvc_figure, vc_lp_figure};
use crate::io::{parse_instance, Format, Instance};
use crate::vc::{lp_half_integral, ls_vertex_cover, vc_above_lp_with_stats, VcError, VertexCover};

pub const RECORD_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// No solution within the budget.
    Infeasible,
    /// Local search found no improvement.
    NoImprovement,
    /// A size cap, node limit or time limit was hit.
    ResourceLimit,
    InvalidInput,
}

/// Solver selection; the names are the `problem`/`solver` pairs in records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Task {
    HcdExact,
    HcdHeuristic,
    AnonHeuristic,
    AnonExact,
    VcLp,
    VcAboveLp,
    VcLocalSearch,
    FastExact,
    FastLocalSearch,
    IlcColoring,
    GreedyColoring,
    CeExact,
}

impl Task {
    pub const ALL: [Task; 12] = [
        Task::HcdExact,
        Task::HcdHeuristic,
        Task::AnonHeuristic,
        Task::AnonExact,
        Task::VcLp,
        Task::VcAboveLp,
        Task::VcLocalSearch,
        Task::FastExact,
        Task::FastLocalSearch,
        Task::IlcColoring,
        Task::GreedyColoring,
        Task::CeExact,
    ];

    pub fn problem(self) -> &'static str {
        match self {
            Task::HcdExact | Task::HcdHeuristic => "hcd",
            Task::AnonHeuristic | Task::AnonExact => "anonymity",
            Task::VcLp | Task::VcAboveLp | Task::VcLocalSearch => "vc",
            Task::FastExact | Task::FastLocalSearch => "fast",
            Task::IlcColoring | Task::GreedyColoring => "coloring",
            Task::CeExact => "ce",
        }
    }

    pub fn solver(self) -> &'static str {
        match self {
            Task::HcdExact | Task::AnonExact | Task::FastExact | Task::CeExact => "exact",
            Task::HcdHeuristic => "hs",
            Task::AnonHeuristic => "lt",
            Task::VcLp => "lp",
            Task::VcAboveLp => "above-lp",
            Task::VcLocalSearch | Task::FastLocalSearch => "ls",
            Task::IlcColoring => "ilc",
            Task::GreedyColoring => "greedy",
        }
    }

    pub fn find(problem: &str, solver: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.problem() == problem && t.solver() == solver)
    }

    /// Format assumed for corpus files that do not say otherwise.
    pub fn default_format(self) -> Format {
        match self {
            Task::FastExact | Task::FastLocalSearch => Format::Tournament,
            Task::IlcColoring | Task::GreedyColoring => Format::ListColoring,
            _ => Format::EdgeList,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.problem(), self.solver())
    }
}

/// Starting solution for the local-search solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSolution {
    /// All vertices (vertex cover) or the backward arcs of the identity
    /// order (tournaments).
    #[default]
    Trivial,
    /// The empty set; invalid unless the instance is already solved.
    Empty,
}

impl FromStr for SeedSolution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" | "identity" | "all" => Ok(SeedSolution::Trivial),
            "empty" => Ok(SeedSolution::Empty),
            other => Err(format!("unknown seed solution `{other}`")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip)]
    pub policy: Option<TieBreakPolicy>,
    #[serde(skip)]
    pub config: Option<CeConfig>,
    #[serde(skip)]
    pub seed_solution: SeedSolution,
    #[serde(skip)]
    pub timeout: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub problem: String,
    pub solver: String,
    pub instance: String,
    pub params: Params,
    pub status: Status,
    /// Objective value: edits, cover size, arcs, or colors used.
    pub cost: Option<usize>,
    /// Objective value of the starting solution, for local search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_cost: Option<usize>,
    /// Exact LP optimum as `p/q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_value: Option<String>,
    pub nodes: Option<u64>,
    pub wall_ms: f64,
    /// Set only after re-checking the solution against the instance.
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ResultRecord {
    fn new(task: Task, instance: &str, params: &Params) -> Self {
        ResultRecord {
            schema_version: RECORD_SCHEMA_VERSION,
            problem: task.problem().into(),
            solver: task.solver().into(),
            instance: instance.into(),
            params: params.clone(),
            status: Status::Ok,
            cost: None,
            seed_cost: None,
            lp_value: None,
            nodes: None,
            wall_ms: 0.0,
            valid: false,
            error: None,
            warnings: Vec::new(),
        }
    }

    fn fail(&mut self, status: Status, message: impl ToString) {
        self.status = status;
        self.error = Some(message.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn graph_of<'a>(inst: &'a Instance, rec: &mut ResultRecord) -> Option<&'a Graph> {
    match inst {
        Instance::Graph(g) => Some(g),
        Instance::ListColoring { graph, .. } => Some(graph),
        Instance::Tournament(_) => {
            rec.fail(Status::InvalidInput, "expected a graph, got a tournament");
            None
        }
    }
}

fn require(value: Option<usize>, name: &str, rec: &mut ResultRecord) -> Option<usize> {
    if value.is_none() {
        rec.fail(Status::InvalidInput, format!("parameter --{name} is required"));
    }
    value
}

/// Runs one solver on one parsed instance and re-validates the answer.
pub fn run_task(task: Task, name: &str, inst: &Instance, params: &Params) -> ResultRecord {
    let mut rec = ResultRecord::new(task, name, params);
    let start = Instant::now();
    solve_into(task, inst, params, &mut rec);
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

fn solve_into(task: Task, inst: &Instance, params: &Params, rec: &mut ResultRecord) {
    match task {
        Task::HcdExact | Task::HcdHeuristic => {
            let Some(g) = graph_of(inst, rec) else { return };
            let outcome = if task == Task::HcdExact {
                hcd_exact_with(g, params.k.unwrap_or(g.m()), &HcdExactOptions::default()).map(|(s, st)| (s, Some(st.nodes)))
            } else {
                Ok((hs_cluster(g, params.policy.unwrap_or(TieBreakPolicy::Lexicographic)), None))
            };
            match outcome {
                Ok((sol, nodes)) => {
                    rec.cost = Some(sol.cost);
                    rec.nodes = nodes;
                    rec.valid = sol.validate(g);
                }
                Err(HcdError::Infeasible) => rec.fail(Status::Infeasible, HcdError::Infeasible),
                Err(e) => rec.fail(Status::ResourceLimit, e),
            }
        }
        Task::AnonHeuristic | Task::AnonExact => {
            let Some(g) = graph_of(inst, rec) else { return };
            let Some(ell) = require(params.ell, "ell", rec) else { return };
            let outcome = if task == Task::AnonExact {
                let Some(k) = require(params.k, "k", rec) else { return };
                anon_exact(g, ell, k)
            } else {
                lt_heuristic(g, ell)
            };
            match outcome {
                Ok(edits) => {
                    rec.cost = Some(edits.len());
                    rec.valid = edits.deletions.is_empty() && edits.apply(g).is_ok_and(|h| is_l_anonymous(&h, ell));
                }
                Err(e @ AnonError::InvalidLevel { .. }) => rec.fail(Status::InvalidInput, e),
                Err(e @ AnonError::TooLarge { .. }) => rec.fail(Status::ResourceLimit, e),
                Err(e) => rec.fail(Status::Infeasible, e),
            }
        }
        Task::VcLp => {
            let Some(g) = graph_of(inst, rec) else { return };
            let a = lp_half_integral(g);
            rec.lp_value = Some(a.lp_value().to_string());
            rec.cost = Some(a.lp_value().ceil() as usize);
            rec.valid = a.is_feasible(g);
        }
        Task::VcAboveLp => {
            let Some(g) = graph_of(inst, rec) else { return };
            rec.lp_value = Some(lp_half_integral(g).lp_value().to_string());
            match vc_above_lp_with_stats(g, params.k.unwrap_or(g.n())) {
                Ok((cover, stats)) => {
                    rec.cost = Some(cover.len());
                    rec.nodes = Some(stats.nodes);
                    rec.valid = cover.is_cover(g);
                }
                Err(e) => rec.fail(Status::Infeasible, e),
            }
        }
        Task::VcLocalSearch => {
            let Some(g) = graph_of(inst, rec) else { return };
            let Some(k) = require(params.k, "k", rec) else { return };
            let seed = match params.seed_solution {
                SeedSolution::Trivial => VertexCover::new(g.vertices().collect()),
                SeedSolution::Empty => VertexCover::new(Vec::new()),
            };
            vc_ls_into(g, &seed, k, rec);
        }
        Task::FastExact | Task::FastLocalSearch => {
            let Instance::Tournament(t) = inst else {
                rec.fail(Status::InvalidInput, "expected a tournament");
                return;
            };
            if task == Task::FastExact {
                match fas_exact(t) {
                    Ok(s) => {
                        rec.cost = Some(s.len());
                        rec.valid = is_acyclic_after(t, &s).unwrap_or(false);
                    }
                    Err(e) => rec.fail(Status::ResourceLimit, e),
                }
                return;
            }
            let Some(k) = require(params.k, "k", rec) else { return };
            let seed = match params.seed_solution {
                SeedSolution::Trivial => t.backward_arcs(&(0..t.n()).collect::<Vec<_>>()),
                SeedSolution::Empty => ArcSet::new(),
            };
            fast_ls_into(t, &seed, k, rec);
        }
        Task::IlcColoring | Task::GreedyColoring => {
            let Instance::ListColoring { graph, lists } = inst else {
                rec.fail(Status::InvalidInput, "expected a list-coloring instance");
                return;
            };
            let colors: Option<Vec<Color>> = if task == Task::GreedyColoring {
                greedy_list_coloring(graph, lists)
            } else {
                let opts = IlcColorOptions::per_step(params.c.unwrap_or(0));
                ilc_color_graph_with(graph, lists, &opts).map(|run| {
                    rec.nodes = Some(run.nodes);
                    run.colors
                })
            };
            match colors {
                Some(colors) => {
                    rec.cost = Some(crate::ilc::count_colors(&colors));
                    rec.valid = is_proper_list_coloring(graph, lists, &colors);
                }
                None => rec.fail(Status::Infeasible, "no list coloring found"),
            }
        }
        Task::CeExact => {
            let Some(g) = graph_of(inst, rec) else { return };
            let cfg = params.config.clone().unwrap_or_default();
            let limits = CeLimits { max_nodes: None, time_limit: params.timeout };
            let k = params.k.unwrap_or(g.n() * g.n().saturating_sub(1) / 2);
            match ce_solve_with(g, k, &cfg, &limits) {
                Ok((sol, stats)) => {
                    rec.cost = Some(sol.cost);
                    rec.nodes = Some(stats.nodes);
                    rec.valid = sol.edits.apply(g).is_ok_and(|h| is_cluster_graph(&h));
                }
                Err(e @ CeError::Infeasible(_)) => rec.fail(Status::Infeasible, e),
                Err(e @ CeError::InvalidConfig(_)) => rec.fail(Status::InvalidInput, e),
                Err(e) => rec.fail(Status::ResourceLimit, e),
            }
        }
    }
}

fn vc_ls_into(g: &Graph, seed: &VertexCover, k: usize, rec: &mut ResultRecord) {
    rec.seed_cost = Some(seed.len());
    match ls_vertex_cover(g, seed, k) {
        Ok(Some((cover, _))) => {
            rec.cost = Some(cover.len());
            rec.valid = cover.is_cover(g) && cover.len() < seed.len();
        }
        Ok(None) => {
            rec.cost = Some(seed.len());
            rec.status = Status::NoImprovement;
            rec.valid = true;
        }
        Err(e @ VcError::InvalidCover(..)) | Err(e @ VcError::VertexOutOfRange(_)) => rec.fail(Status::InvalidInput, e),
        Err(e) => rec.fail(Status::Infeasible, e),
    }
}

fn fast_ls_into(t: &Tournament, seed: &ArcSet, k: usize, rec: &mut ResultRecord) {
    rec.seed_cost = Some(seed.len());
    match ls_fast(t, seed, k) {
        Ok(Some(s)) => {
            rec.cost = Some(s.len());
            rec.valid = is_acyclic_after(t, &s).unwrap_or(false) && s.symmetric_difference_len(seed) <= k;
        }
        Ok(None) => {
            rec.cost = Some(seed.len());
            rec.status = Status::NoImprovement;
            rec.valid = true;
        }
        Err(e @ (FastError::InvalidSolution | FastError::ArcNotPresent(..))) => rec.fail(Status::InvalidInput, e),
        Err(e) => rec.fail(Status::ResourceLimit, e),
    }
}

/// Local search from a caller-supplied cover.
pub fn run_vc_local_search(name: &str, g: &Graph, seed: &VertexCover, params: &Params) -> ResultRecord {
    let mut rec = ResultRecord::new(Task::VcLocalSearch, name, params);
    let start = Instant::now();
    if let Some(k) = require(params.k, "k", &mut rec) {
        vc_ls_into(g, seed, k, &mut rec);
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

/// The four figure instances with their stated parameters.
pub fn run_fixtures() -> Vec<ResultRecord> {
    let mut out = Vec::new();
    let hcd = Params { k: Some(3), ..Params::default() };
    out.push(run_task(Task::HcdExact, "hcd-figure", &Instance::Graph(hcd_figure()), &hcd));

    let anon = Params { ell: Some(2), ..Params::default() };
    out.push(run_task(Task::AnonHeuristic, "anonymity-figure", &Instance::Graph(anonymity_figure()), &anon));

    let (g, s) = lsvc_figure();
    let ls = Params { k: Some(3), ..Params::default() };
    out.push(run_vc_local_search("lsvc-figure", &g, &VertexCover::new(s), &ls));

    let above = Params { k: Some(3), ..Params::default() };
    out.push(run_task(Task::VcAboveLp, "vc-lp-figure", &Instance::Graph(vc_lp_figure()), &above));
    out
}

/// Runs `task` on every file of `dir` in name order. Files that fail to parse
/// become records with status `invalid_input`.
pub fn bench(dir: &Path, task: Task, params: &Params, format: Option<Format>) -> std::io::Result<Vec<ResultRecord>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let records = paths
        .iter()
        .map(|path| {
            let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
            let fmt = format.or_else(|| explicit_format(path)).unwrap_or(task.default_format());
            match parse_instance(path, Some(fmt)) {
                Ok(parsed) => {
                    let mut rec = run_task(task, &name, &parsed.instance, params);
                    rec.warnings = parsed.warnings.iter().map(|w| format!("line {}: {}", w.line, w.message)).collect();
                    rec
                }
                Err(e) => {
                    let mut rec = ResultRecord::new(task, &name, params);
                    rec.fail(Status::InvalidInput, e);
                    rec
                }
            }
        })
        .collect();
    Ok(records)
}

/// Format implied by a recognised extension, if any.
fn explicit_format(path: &Path) -> Option<Format> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    matches!(ext.as_str(), "dimacs" | "col" | "tour" | "tournament" | "lc" | "edges").then(|| Format::from_path(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_reproduce_figure_values() {
        let recs = run_fixtures();
        let costs: Vec<Option<usize>> = recs.iter().map(|r| r.cost).collect();
        assert_eq!(costs, vec![Some(3), Some(1), Some(4), Some(3)]);
        assert!(recs.iter().all(|r| r.valid && r.status == Status::Ok));
        assert_eq!(recs[2].seed_cost, Some(5));
        assert_eq!(recs[3].lp_value.as_deref(), Some("5/2"));
    }

    #[test]
    fn task_names_round_trip() {
        for t in Task::ALL {
            assert_eq!(Task::find(t.problem(), t.solver()), Some(t));
        }
    }

    #[test]
    fn empty_seed_on_cyclic_tournament_is_invalid_input() {
        let t = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let params = Params { k: Some(2), seed_solution: SeedSolution::Empty, ..Params::default() };
        let rec = run_task(Task::FastLocalSearch, "tri", &Instance::Tournament(t), &params);
        assert_eq!(rec.status, Status::InvalidInput);
        assert!(!rec.valid);
    }

    #[test]
    fn missing_parameter_is_reported() {
        let rec = run_task(Task::AnonHeuristic, "g", &Instance::Graph(Graph::complete(3)), &Params::default());
        assert_eq!(rec.status, Status::InvalidInput);
    }
}
