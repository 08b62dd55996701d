//! `graphmod`: run the graph modification solvers on instance files.
//!
//! Results are printed as one JSON record per line. Exit status: 0 success,
//! 1 infeasible or no improvement, 2 input error, 3 resource cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use graphmod::bench::{bench, run_fixtures, run_task, run_vc_local_search, Params, ResultRecord, SeedSolution, Status, Task};
use graphmod::cluster_editing::CeConfig;
use graphmod::cut::TieBreakPolicy;
use graphmod::fast::{ArcSet, Tournament};
use graphmod::io::{parse_instance, Format, Instance, Parsed};
use graphmod::oracle;
use graphmod::tuner::{random_corpus, tune, ConfigGrid, CorpusInstance, TuneOptions};
use graphmod::vc::{HalfUnits, VertexCover};

#[derive(Parser)]
#[command(name = "graphmod", version, about = "Exact solvers, heuristics and oracles for graph modification problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Budget (edits, cover size or exchange distance)
    #[arg(long)]
    k: Option<usize>,
    /// Anonymity level
    #[arg(long)]
    ell: Option<usize>,
    /// Recoloring budget per insertion
    #[arg(long)]
    c: Option<usize>,
    /// Min-cut tie-breaking: lexicographic, adversarial, random or random:<seed>
    #[arg(long)]
    policy: Option<String>,
    /// Cluster Editing configuration: a JSON file or inline JSON object
    #[arg(long)]
    config: Option<String>,
    /// Seed for randomized choices
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Input format: edge_list, dimacs, tournament, listcoloring
    #[arg(long)]
    format: Option<Format>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Highly Connected Deletion
    Hcd {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Min-cut clustering heuristic
    Hs {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Degree anonymization (heuristic, or exhaustive with --exact)
    Anon {
        file: PathBuf,
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Vertex Cover LP value and above-LP branch and bound
    VcLp {
        file: PathBuf,
        /// Only solve the LP relaxation
        #[arg(long)]
        lp_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Local search from a vertex cover (all vertices unless --cover is given)
    VcLs {
        file: PathBuf,
        /// Starting cover as comma-separated 1-based ids
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Feedback arc set local search (or the exact solver with --exact)
    FastLs {
        file: PathBuf,
        #[arg(long)]
        exact: bool,
        /// Starting deletion set: trivial (backward arcs of 1..n) or empty
        #[arg(long, default_value = "trivial")]
        seed_solution: SeedSolution,
        #[command(flatten)]
        common: Common,
    },
    /// List coloring by insertion with bounded recoloring (greedy with --greedy)
    Ilc {
        file: PathBuf,
        #[arg(long)]
        greedy: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Exact Cluster Editing
    Ce {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Grid search over Cluster Editing configurations
    Tune {
        /// Corpus directory; omit to use a random corpus
        dir: Option<PathBuf>,
        /// Random corpus size
        #[arg(long, default_value_t = 20)]
        random: usize,
        /// Random corpus vertex count
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Random corpus edge probability
        #[arg(long, default_value_t = 0.7)]
        p: f64,
        /// Grid as a JSON file; default is the full 24-point grid
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Node budget per run
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: u64,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write per-run wall times (JSON) here
        #[arg(long)]
        timings: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force reference value for a small instance
    Oracle {
        /// hcd, ce, vc, vc-lp, anon, lsvc, fast, fast-ls
        problem: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the four illustrative figure instances
    Fixtures,
    /// Run one solver over every file in a directory
    Bench {
        dir: PathBuf,
        /// hcd, anonymity, vc, fast, coloring, ce
        #[arg(long)]
        problem: String,
        /// exact, hs, lt, lp, above-lp, ls, ilc, greedy
        #[arg(long)]
        solver: String,
        #[arg(long, default_value = "trivial")]
        seed_solution: SeedSolution,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::Infeasible | Status::NoImprovement => 1,
        Status::InvalidInput => 2,
        Status::ResourceLimit => 3,
    }
}

fn load(file: &Path, format: Option<Format>, fallback: Format) -> Result<Parsed> {
    let format = format.or_else(|| (Format::from_path(file) != Format::EdgeList).then(|| Format::from_path(file)));
    let parsed = parse_instance(file, Some(format.unwrap_or(fallback)))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: line {}: {}", file.display(), w.line, w.message);
    }
    Ok(parsed)
}

fn params(common: &Common, seed_solution: SeedSolution) -> Result<Params> {
    let policy = match common.policy.as_deref() {
        None => None,
        Some("random") => Some(TieBreakPolicy::Random(common.seed)),
        Some(p) => Some(p.parse::<TieBreakPolicy>().map_err(anyhow::Error::msg)?),
    };
    let config = match &common.config {
        None => None,
        Some(text) => {
            let json = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                std::fs::read_to_string(text).with_context(|| format!("reading config {text}"))?
            };
            let cfg: CeConfig = serde_json::from_str(&json).context("parsing Cluster Editing config")?;
            Some(cfg)
        }
    };
    let timeout = match common.timeout {
        Some(t) if !(t.is_finite() && t > 0.0) => bail!("--timeout must be a positive number of seconds"),
        t => t.map(Duration::from_secs_f64),
    };
    Ok(Params { k: common.k, ell: common.ell, c: common.c, policy, config, seed_solution, timeout })
}

fn emit(rec: &ResultRecord) -> ExitCode {
    println!("{}", rec.to_json());
    ExitCode::from(exit_for(rec.status))
}

fn single(task: Task, file: &Path, common: &Common, seed_solution: SeedSolution) -> Result<ExitCode> {
    let parsed = load(file, common.format, task.default_format())?;
    let name = file.display().to_string();
    Ok(emit(&run_task(task, &name, &parsed.instance, &params(common, seed_solution)?)))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Hcd { file, common } => single(Task::HcdExact, &file, &common, SeedSolution::Trivial),
        Command::Hs { file, common } => single(Task::HcdHeuristic, &file, &common, SeedSolution::Trivial),
        Command::Anon { file, exact, common } => {
            let task = if exact { Task::AnonExact } else { Task::AnonHeuristic };
            single(task, &file, &common, SeedSolution::Trivial)
        }
        Command::VcLp { file, lp_only, common } => {
            let task = if lp_only { Task::VcLp } else { Task::VcAboveLp };
            single(task, &file, &common, SeedSolution::Trivial)
        }
        Command::VcLs { file, cover: None, common } => single(Task::VcLocalSearch, &file, &common, SeedSolution::Trivial),
        Command::VcLs { file, cover: Some(ids), common } => vc_ls_from_cover(&file, &ids, &common),
        Command::FastLs { file, exact, seed_solution, common } => {
            let task = if exact { Task::FastExact } else { Task::FastLocalSearch };
            single(task, &file, &common, seed_solution)
        }
        Command::Ilc { file, greedy, common } => {
            let task = if greedy { Task::GreedyColoring } else { Task::IlcColoring };
            single(task, &file, &common, SeedSolution::Trivial)
        }
        Command::Ce { file, common } => single(Task::CeExact, &file, &common, SeedSolution::Trivial),
        Command::Tune { dir, random, n, p, grid, node_budget, out, timings, common } => {
            let corpus = match dir {
                Some(dir) => load_corpus(&dir, common.format)?,
                None => random_corpus(random, n, p, common.seed),
            };
            let grid = match grid {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(&path)?).context("parsing grid")?,
                None => ConfigGrid::full(common.seed),
            };
            let opts = TuneOptions { node_budget, time_limit: common.timeout.map(Duration::from_secs_f64) };
            let (report, wall) = tune(&corpus, &grid, &opts)?;
            let json = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, json + "\n")?,
                None => println!("{json}"),
            }
            if let Some(path) = timings {
                std::fs::write(&path, serde_json::to_string_pretty(&wall)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { problem, file, common } => run_oracle(&problem, &file, &common),
        Command::Fixtures => {
            let records = run_fixtures();
            for r in &records {
                println!("{}", r.to_json());
            }
            let ok = records.iter().all(|r| r.valid && r.status == Status::Ok);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bench { dir, problem, solver, seed_solution, common } => {
            let Some(task) = Task::find(&problem, &solver) else {
                bail!("unknown problem/solver pair {problem}/{solver}");
            };
            let records = bench(&dir, task, &params(&common, seed_solution)?, common.format)
                .with_context(|| format!("reading {}", dir.display()))?;
            for r in &records {
                println!("{}", r.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn vc_ls_from_cover(file: &Path, ids: &[usize], common: &Common) -> Result<ExitCode> {
    let parsed = load(file, common.format, Format::EdgeList)?;
    let Instance::Graph(g) = &parsed.instance else { bail!("expected a graph") };
    if let Some(&bad) = ids.iter().find(|&&v| v == 0 || v > g.n()) {
        bail!("cover vertex {bad} out of range");
    }
    let cover = VertexCover::new(ids.iter().map(|v| v - 1).collect());
    let params = params(common, SeedSolution::Trivial)?;
    Ok(emit(&run_vc_local_search(&file.display().to_string(), g, &cover, &params)))
}

fn load_corpus(dir: &Path, format: Option<Format>) -> Result<Vec<CorpusInstance>> {
    let mut paths: Vec<PathBuf> =
        std::fs::read_dir(dir)?.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.is_file()).collect();
    paths.sort();
    let mut corpus = Vec::new();
    for path in paths {
        let parsed = load(&path, format, Format::EdgeList)?;
        let Instance::Graph(graph) = parsed.instance else { bail!("{}: expected a graph", path.display()) };
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        corpus.push(CorpusInstance { name, graph });
    }
    Ok(corpus)
}

fn run_oracle(problem: &str, file: &Path, common: &Common) -> Result<ExitCode> {
    const MAX_N: usize = 10;
    let fallback = if problem.starts_with("fast") { Format::Tournament } else { Format::EdgeList };
    let parsed = load(file, common.format, fallback)?;
    let value: Option<String> = match (&parsed.instance, problem) {
        (Instance::Graph(g), _) if g.n() > MAX_N => bail!("oracles are limited to {MAX_N} vertices"),
        (Instance::Graph(g), "hcd") => Some(oracle::hcd_brute(g).to_string()),
        (Instance::Graph(g), "ce") => Some(oracle::ce_brute(g).to_string()),
        (Instance::Graph(g), "vc") => Some(oracle::vc_brute(g).to_string()),
        (Instance::Graph(g), "vc-lp") => Some(HalfUnits(oracle::vc_lp_brute_halves(g)).to_string()),
        (Instance::Graph(g), "anon") => {
            let Some(ell) = common.ell else { bail!("parameter --ell is required") };
            let k = common.k.unwrap_or(6);
            oracle::anon_brute(g, ell, k).map(|c| c.to_string())
        }
        (Instance::Graph(g), "lsvc") => {
            let Some(k) = common.k else { bail!("parameter --k is required") };
            let all: Vec<usize> = g.vertices().collect();
            oracle::lsvc_brute(g, &all, k).map(|c| c.to_string())
        }
        (Instance::Tournament(t), _) if t.n() > 7 => bail!("tournament oracles are limited to 7 vertices"),
        (Instance::Tournament(t), "fast") => Some(oracle::fas_brute(t).to_string()),
        (Instance::Tournament(t), "fast-ls") => {
            let Some(k) = common.k else { bail!("parameter --k is required") };
            let seed: ArcSet = identity_backward(t);
            oracle::ls_fast_brute(t, &seed, k).map(|c| c.to_string())
        }
        (_, other) => bail!("no oracle `{other}` for this input"),
    };
    let json = serde_json::json!({
        "problem": problem,
        "instance": file.display().to_string(),
        "value": value,
    });
    println!("{json}");
    Ok(if value.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn identity_backward(t: &Tournament) -> ArcSet {
    t.backward_arcs(&(0..t.n()).collect::<Vec<_>>())
}
