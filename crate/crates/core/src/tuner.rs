//! Grid search over Cluster Editing solver configurations, scored by search
//! nodes on a training corpus.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cluster_editing::{ce_solve_with, BranchOrder, CeConfig, CeError, CeLimits, LowerBoundKind, ReductionKind};
use crate::graph::Graph;
use crate::instances::{gnp, rng};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuneError {
    #[error("grid dimension `{0}` is empty")]
    EmptyDimension(&'static str),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error(transparent)]
    Config(#[from] CeError),
}

/// Values to try per configuration dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigGrid {
    pub lower_bound: Vec<LowerBoundKind>,
    pub reduction: Vec<ReductionKind>,
    pub reduction_period: Vec<u32>,
    pub branch_order: Vec<BranchOrder>,
    pub seed: u64,
}

impl ConfigGrid {
    /// Both bounds, both reductions, periods 1, 2, 4 and both orders.
    pub fn full(seed: u64) -> Self {
        ConfigGrid {
            lower_bound: vec![LowerBoundKind::None, LowerBoundKind::P3Packing],
            reduction: vec![ReductionKind::None, ReductionKind::CriticalClique],
            reduction_period: vec![1, 2, 4],
            branch_order: vec![BranchOrder::MinId, BranchOrder::MaxConflict],
            seed,
        }
    }
}

/// Cartesian product in the order lower bound, reduction, period, branch order.
pub fn enumerate_configs(grid: &ConfigGrid) -> Result<Vec<CeConfig>, TuneError> {
    for (name, empty) in [
        ("lower_bound", grid.lower_bound.is_empty()),
        ("reduction", grid.reduction.is_empty()),
        ("reduction_period", grid.reduction_period.is_empty()),
        ("branch_order", grid.branch_order.is_empty()),
    ] {
        if empty {
            return Err(TuneError::EmptyDimension(name));
        }
    }
    let mut out = Vec::new();
    for &lower_bound in &grid.lower_bound {
        for &reduction in &grid.reduction {
            for &reduction_period in &grid.reduction_period {
                for &branch_order in &grid.branch_order {
                    let cfg = CeConfig { lower_bound, reduction, reduction_period, branch_order, seed: grid.seed };
                    cfg.validate()?;
                    out.push(cfg);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusInstance {
    pub name: String,
    pub graph: Graph,
}

/// `count` graphs `G(n, p)` named `gnp-000`, `gnp-001`, ...
pub fn random_corpus(count: usize, n: usize, p: f64, seed: u64) -> Vec<CorpusInstance> {
    let mut r = rng(seed);
    (0..count).map(|i| CorpusInstance { name: format!("gnp-{i:03}"), graph: gnp(n, p, &mut r) }).collect()
}

/// SHA-256 over the names, sizes and sorted edge lists.
pub fn corpus_fingerprint(corpus: &[CorpusInstance]) -> String {
    let mut h = Sha256::new();
    for inst in corpus {
        h.update(format!("{}\n{}\n", inst.name, inst.graph.n()));
        for e in inst.graph.edges() {
            h.update(format!("{} {}\n", e.lo(), e.hi()));
        }
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug)]
pub struct TuneOptions {
    /// Per-run node budget; runs that exhaust it are charged the budget.
    pub node_budget: u64,
    /// Optional wall-clock limit per run. Makes results machine-dependent.
    pub time_limit: Option<Duration>,
}

impl Default for TuneOptions {
    fn default() -> Self {
        TuneOptions { node_budget: 1_000_000, time_limit: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunRecord {
    pub config: usize,
    pub instance: String,
    pub nodes: u64,
    /// Charged cost: `nodes`, or the budget on timeout.
    pub metric: u64,
    pub edit_cost: Option<usize>,
    pub timeout: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuneReport {
    pub schema_version: u32,
    pub seed: u64,
    pub corpus_fingerprint: String,
    pub node_budget: u64,
    pub grid: ConfigGrid,
    pub configs: Vec<CeConfig>,
    pub runs: Vec<RunRecord>,
    /// Aggregate metric per config.
    pub totals: Vec<u64>,
    pub winner_index: usize,
    pub winner: CeConfig,
    /// Every finished run on an instance reported the same edit cost.
    pub answers_agree: bool,
}

impl TuneReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Sum of totals over configs matching `pred`.
    pub fn total_where(&self, pred: impl Fn(&CeConfig) -> bool) -> u64 {
        self.configs.iter().zip(&self.totals).filter(|(c, _)| pred(c)).map(|(_, t)| t).sum()
    }
}

/// Wall-clock time of each run, in the order of [`TuneReport::runs`]. Kept
/// out of the report so that the report is reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct TuneTimings {
    pub wall_ms: Vec<f64>,
}

/// Runs every configuration on every instance (in parallel) and picks the
/// configuration with the smallest total; ties go to the earlier one.
pub fn tune(corpus: &[CorpusInstance], grid: &ConfigGrid, opts: &TuneOptions) -> Result<(TuneReport, TuneTimings), TuneError> {
    if corpus.is_empty() {
        return Err(TuneError::EmptyCorpus);
    }
    let configs = enumerate_configs(grid)?;
    let limits = CeLimits { max_nodes: Some(opts.node_budget), time_limit: opts.time_limit };
    let jobs: Vec<(usize, usize)> = (0..configs.len()).flat_map(|c| (0..corpus.len()).map(move |i| (c, i))).collect();
    let results: Vec<(RunRecord, f64)> = jobs
        .par_iter()
        .map(|&(c, i)| {
            let g = &corpus[i].graph;
            let k = g.n() * g.n().saturating_sub(1) / 2;
            let start = Instant::now();
            let outcome = ce_solve_with(g, k, &configs[c], &limits);
            let wall = start.elapsed().as_secs_f64() * 1e3;
            let record = match outcome {
                Ok((sol, stats)) => RunRecord {
                    config: c,
                    instance: corpus[i].name.clone(),
                    nodes: stats.nodes,
                    metric: stats.nodes,
                    edit_cost: Some(sol.cost),
                    timeout: false,
                },
                Err(CeError::NodeLimit(nodes)) | Err(CeError::Timeout(nodes)) => RunRecord {
                    config: c,
                    instance: corpus[i].name.clone(),
                    nodes,
                    metric: opts.node_budget,
                    edit_cost: None,
                    timeout: true,
                },
                Err(e) => unreachable!("an unbounded budget cannot be infeasible: {e}"),
            };
            (record, wall)
        })
        .collect();

    let mut totals = vec![0u64; configs.len()];
    for (r, _) in &results {
        totals[r.config] = totals[r.config].saturating_add(r.metric);
    }
    let winner_index = (0..configs.len()).min_by_key(|&c| (totals[c], c)).expect("non-empty grid");
    let answers_agree = (0..corpus.len()).all(|i| {
        let mut costs = results.iter().filter(|(r, _)| r.instance == corpus[i].name).filter_map(|(r, _)| r.edit_cost);
        let first = costs.next();
        costs.all(|c| Some(c) == first)
    });
    let (runs, wall_ms): (Vec<RunRecord>, Vec<f64>) = results.into_iter().unzip();
    let report = TuneReport {
        schema_version: REPORT_SCHEMA_VERSION,
        seed: grid.seed,
        corpus_fingerprint: corpus_fingerprint(corpus),
        node_budget: opts.node_budget,
        grid: grid.clone(),
        winner: configs[winner_index].clone(),
        configs,
        runs,
        totals,
        winner_index,
        answers_agree,
    };
    Ok((report, TuneTimings { wall_ms }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::disjoint_cliques;

    #[test]
    fn grid_sizes() {
        assert_eq!(enumerate_configs(&ConfigGrid::full(0)).unwrap().len(), 24);
        let single = ConfigGrid {
            lower_bound: vec![LowerBoundKind::None],
            reduction: vec![ReductionKind::None],
            reduction_period: vec![1],
            branch_order: vec![BranchOrder::MinId],
            seed: 3,
        };
        assert_eq!(enumerate_configs(&single).unwrap().len(), 1);
        let empty = ConfigGrid { branch_order: vec![], ..single.clone() };
        assert_eq!(enumerate_configs(&empty), Err(TuneError::EmptyDimension("branch_order")));
        let zero = ConfigGrid { reduction_period: vec![0], ..single };
        assert!(matches!(enumerate_configs(&zero), Err(TuneError::Config(_))));
    }

    #[test]
    fn cluster_graph_corpus_picks_first_config() {
        let corpus: Vec<CorpusInstance> = (0..3)
            .map(|i| CorpusInstance { name: format!("c{i}"), graph: disjoint_cliques(&[i + 1, 3, 2]) })
            .collect();
        let (report, _) = tune(&corpus, &ConfigGrid::full(1), &TuneOptions::default()).unwrap();
        assert_eq!(report.winner_index, 0);
        assert!(report.totals.iter().all(|&t| t == 3));
    }

    #[test]
    fn timeouts_are_charged_the_budget() {
        let corpus = random_corpus(1, 10, 0.5, 4);
        let opts = TuneOptions { node_budget: 3, time_limit: None };
        let grid = ConfigGrid { lower_bound: vec![LowerBoundKind::None], ..ConfigGrid::full(0) };
        let (report, _) = tune(&corpus, &grid, &opts).unwrap();
        assert!(report.runs.iter().any(|r| r.timeout && r.metric == 3));
    }

    #[test]
    fn empty_corpus_is_rejected() {
        assert_eq!(tune(&[], &ConfigGrid::full(0), &TuneOptions::default()).unwrap_err(), TuneError::EmptyCorpus);
    }
}
