//! Seeded Monte Carlo harness: sample graphs over an n-grid, run the clique
//! algorithms, and summarize against the theory predictors.
//!
//! Replicates are independent work units. Each gets a seed derived from the
//! master seed and a global replicate counter, so output is byte-identical
//! (up to wall times) for any worker count.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cliques::{
    count_k4, count_triangles, full_top_clique, greedy_clique, max_clique_exact, quasi_top_clique,
    Method, OrderKind, ScanOrder, DEFAULT_NODE_BUDGET,
};
use crate::error::{Error, Result};
use crate::model::{Kernel, ModelParams};
use crate::rng::derive_seed;
use crate::sampler::{sample_multigraph_fast, sample_scan_adjacency, sample_variant_fast};
use crate::stats::{median, quartiles};
use crate::theory::{OmegaPrediction, PredictionReport};
use crate::weights::{
    deterministic_weights, sample_iid_pareto, sample_poisson_vertex_count, WeightParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    Iid,
    Deterministic,
    PoissonCount,
}

fn default_exact_max_n() -> usize {
    200
}
fn default_workers() -> usize {
    1
}
fn default_one() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelParams,
    pub weight_mode: WeightMode,
    pub n_grid: Vec<u64>,
    #[serde(default = "default_one")]
    pub replications: u32,
    pub master_seed: u64,
    pub algorithms: Vec<Method>,
    #[serde(default = "default_order")]
    pub order: OrderKind,
    #[serde(default = "default_exact_max_n")]
    pub exact_oracle_max_n: usize,
    /// Also count triangles and K4s per replicate. Off by default: the
    /// counts explode on heavy-tail graphs with polynomial-size cliques.
    #[serde(default)]
    pub count_cliques: bool,
    #[serde(default)]
    pub output_path: Option<std::path::PathBuf>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub edge_budget: Option<f64>,
}

fn default_order() -> OrderKind {
    OrderKind::Weight
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.n_grid.is_empty() {
            return Err(Error::invalid("n_grid must be nonempty"));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("n_grid must be strictly ascending"));
        }
        if self.replications == 0 {
            return Err(Error::invalid("replications must be >= 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::invalid("algorithms must be nonempty"));
        }
        if self.weight_mode == WeightMode::Deterministic && self.n_grid.contains(&0) {
            return Err(Error::invalid("deterministic weights need n >= 1"));
        }
        Ok(())
    }
}

/// One replicate's measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: u64,
    pub replicate: u32,
    /// Derived per-replicate seed (see `rng::derive_seed`).
    pub seed: u64,
    pub order: OrderKind,
    pub greedy: Option<usize>,
    pub quasi_top: Option<usize>,
    pub full_top: Option<usize>,
    /// Absent when n exceeds the oracle cutoff or the node budget tripped.
    pub exact: Option<usize>,
    pub x3: Option<u64>,
    pub x4: Option<u64>,
    pub edge_count: u64,
    pub wall_time_secs: f64,
}

impl RunRecord {
    /// Everything except the wall time, for determinism comparisons.
    pub fn content(&self) -> impl PartialEq + std::fmt::Debug + '_ {
        (
            self.n,
            self.replicate,
            self.seed,
            self.greedy,
            self.quasi_top,
            self.full_top,
            self.exact,
            self.x3,
            self.x4,
            self.edge_count,
        )
    }

    fn assert_chain(&self) {
        if let (Some(ft), Some(qt)) = (self.full_top, self.quasi_top) {
            assert!(ft <= qt, "chain violated: full_top {ft} > quasi_top {qt}");
        }
        if let (Some(qt), Some(gr)) = (self.quasi_top, self.greedy) {
            assert!(qt <= gr, "chain violated: quasi_top {qt} > greedy {gr}");
        }
        if let (Some(gr), Some(ex)) = (self.greedy, self.exact) {
            assert!(gr <= ex, "chain violated: greedy {gr} > exact {ex}");
        }
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let reps = config.replications as u64;
    let tasks: Vec<(usize, u64, u32)> = config
        .n_grid
        .iter()
        .enumerate()
        .flat_map(|(idx, &n)| (0..config.replications).map(move |r| (idx, n, r)))
        .collect();
    let run = |&(n_idx, n, rep): &(usize, u64, u32)| -> Result<RunRecord> {
        let counter = n_idx as u64 * reps + rep as u64;
        let seed = derive_seed(config.master_seed, counter);
        run_replicate(config, n, rep, seed)
    };
    let records: Vec<RunRecord> = if config.workers <= 1 {
        tasks.iter().map(run).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(run).collect::<Result<_>>())?
    };
    for r in &records {
        r.assert_chain();
    }
    Ok(records)
}

fn run_replicate(config: &ExperimentConfig, n: u64, replicate: u32, seed: u64) -> Result<RunRecord> {
    let start = Instant::now();
    let params = &config.model;
    let weights = match config.weight_mode {
        WeightMode::Iid => {
            sample_iid_pareto(n as usize, &WeightParams::pareto(params.a, params.alpha)?, seed)?
        }
        WeightMode::Deterministic => deterministic_weights(n as usize, params.a, params.alpha)?,
        WeightMode::PoissonCount => {
            let count = sample_poisson_vertex_count(n as f64, seed)?;
            sample_iid_pareto(count, &WeightParams::pareto(params.a, params.alpha)?, seed)?
        }
    };
    // Weight-order scans on the exponential kernel never look at the full
    // graph, so skip building it; this is what keeps the largest runs in
    // memory.
    let scan_only = params.kernel == Kernel::Exponential
        && config.order == OrderKind::Weight
        && !config.count_cliques
        && config
            .algorithms
            .iter()
            .all(|m| matches!(m, Method::Greedy | Method::QuasiTop | Method::FullTop));
    if scan_only {
        let adj = sample_scan_adjacency(&weights, params, seed, config.edge_budget)?;
        let sizes = adj.scan_sizes();
        let mut record = RunRecord {
            n,
            replicate,
            seed,
            order: config.order,
            greedy: None,
            quasi_top: None,
            full_top: None,
            exact: None,
            x3: None,
            x4: None,
            edge_count: adj.edge_count() as u64,
            wall_time_secs: 0.0,
        };
        for &method in &config.algorithms {
            match method {
                Method::Greedy => record.greedy = Some(sizes.greedy),
                Method::QuasiTop => record.quasi_top = Some(sizes.quasi_top),
                Method::FullTop => record.full_top = Some(sizes.full_top),
                _ => unreachable!(),
            }
        }
        record.wall_time_secs = start.elapsed().as_secs_f64();
        return Ok(record);
    }

    let graph = match params.kernel {
        Kernel::Exponential => {
            sample_multigraph_fast(&weights, params, seed, config.edge_budget)?.collapse()
        }
        Kernel::Capped | Kernel::Ratio => {
            sample_variant_fast(&weights, params, seed, config.edge_budget)?
        }
    };

    let order = match config.order {
        OrderKind::Weight => ScanOrder::by_weight(&weights),
        OrderKind::Degree => ScanOrder::by_degree(&graph),
    };
    let mut record = RunRecord {
        n,
        replicate,
        seed,
        order: config.order,
        greedy: None,
        quasi_top: None,
        full_top: None,
        exact: None,
        x3: None,
        x4: None,
        edge_count: graph.edge_count() as u64,
        wall_time_secs: 0.0,
    };
    for &method in &config.algorithms {
        match method {
            Method::Greedy | Method::DegreeGreedy => {
                record.greedy = Some(greedy_clique(&graph, &order).size)
            }
            Method::QuasiTop | Method::DegreeQuasiTop => {
                record.quasi_top = Some(quasi_top_clique(&graph, &order).size)
            }
            Method::FullTop | Method::DegreeFullTop => {
                record.full_top = Some(full_top_clique(&graph, &order).size)
            }
            Method::Exact => {
                if graph.n() <= config.exact_oracle_max_n {
                    match max_clique_exact(&graph, DEFAULT_NODE_BUDGET) {
                        Ok(res) => record.exact = Some(res.size),
                        Err(Error::BudgetExceeded { .. }) => record.exact = None,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    if config.count_cliques {
        record.x3 = Some(count_triangles(&graph));
        record.x4 = Some(count_k4(&graph));
    }
    record.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(record)
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodSummary {
    pub method: String,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub replicates: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NSummary {
    pub n: u64,
    pub methods: Vec<MethodSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_ft_gr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_qt_gr: Option<f64>,
    /// Empirical omega class fractions, derivable when small-clique counts
    /// were recorded: omega=2 means edges but no triangle, omega=3 a triangle
    /// but no K4.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frac_omega_2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frac_omega_3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frac_omega_ge_4: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_omega: Option<OmegaPrediction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub predictions: PredictionReport,
    pub per_n: Vec<NSummary>,
}

/// Pure reduction of records + predictions into the per-n report.
pub fn summarize(records: &[RunRecord], config: &ExperimentConfig) -> Result<Report> {
    if records.is_empty() {
        return Err(Error::invalid("summarize needs at least one record"));
    }
    let mut per_n = Vec::new();
    for &n in &config.n_grid {
        let rows: Vec<&RunRecord> = records.iter().filter(|r| r.n == n).collect();
        if rows.is_empty() {
            continue;
        }
        let mut methods = Vec::new();
        let collect = |get: fn(&RunRecord) -> Option<usize>| -> Vec<f64> {
            rows.iter().filter_map(|r| get(r)).map(|s| s as f64).collect()
        };
        for (name, get) in [
            ("greedy", (|r: &RunRecord| r.greedy) as fn(&RunRecord) -> Option<usize>),
            ("quasi_top", |r: &RunRecord| r.quasi_top),
            ("full_top", |r: &RunRecord| r.full_top),
            ("exact", |r: &RunRecord| r.exact),
        ] {
            let sizes = collect(get);
            if !sizes.is_empty() {
                let (q1, q2, q3) = quartiles(&sizes);
                methods.push(MethodSummary {
                    method: name.to_string(),
                    median: q2,
                    q1,
                    q3,
                    replicates: sizes.len(),
                });
            }
        }
        let ratio = |num: fn(&RunRecord) -> Option<usize>, den: fn(&RunRecord) -> Option<usize>| {
            let rs: Vec<f64> = rows
                .iter()
                .filter_map(|r| match (num(r), den(r)) {
                    (Some(a), Some(b)) if b > 0 => Some(a as f64 / b as f64),
                    _ => None,
                })
                .collect();
            if rs.is_empty() { None } else { Some(median(&rs)) }
        };
        let omega_fracs = if rows.iter().all(|r| r.x3.is_some() && r.x4.is_some()) {
            let m = rows.len() as f64;
            let is2 = rows
                .iter()
                .filter(|r| r.edge_count > 0 && r.x3 == Some(0))
                .count() as f64;
            let is3 = rows
                .iter()
                .filter(|r| r.x3.map_or(false, |t| t > 0) && r.x4 == Some(0))
                .count() as f64;
            let ge4 = rows.iter().filter(|r| r.x4.map_or(false, |q| q > 0)).count() as f64;
            Some((is2 / m, is3 / m, ge4 / m))
        } else {
            None
        };
        per_n.push(NSummary {
            n,
            methods,
            ratio_ft_gr: ratio(|r| r.full_top, |r| r.greedy),
            ratio_qt_gr: ratio(|r| r.quasi_top, |r| r.greedy),
            frac_omega_2: omega_fracs.map(|f| f.0),
            frac_omega_3: omega_fracs.map(|f| f.1),
            frac_omega_ge_4: omega_fracs.map(|f| f.2),
            predicted_omega: crate::theory::predicted_omega(n as f64, &config.model).ok(),
        });
    }
    let top_n = *config.n_grid.last().unwrap() as f64;
    Ok(Report {
        predictions: PredictionReport::build(top_n, &config.model),
        per_n,
    })
}

/// One CSV row per record.
pub fn write_records_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let w = |out: &mut BufWriter<File>, s: String| {
        out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
    };
    w(
        &mut out,
        "n,replicate,seed,greedy,quasi_top,full_top,exact,x3,x4,edge_count,wall_time_secs\n".into(),
    )?;
    fn opt<T: ToString>(v: Option<T>) -> String {
        v.map_or(String::new(), |x| x.to_string())
    }
    for r in records {
        w(
            &mut out,
            format!(
                "{},{},{},{},{},{},{},{},{},{},{:.6}\n",
                r.n,
                r.replicate,
                r.seed,
                opt(r.greedy),
                opt(r.quasi_top),
                opt(r.full_top),
                opt(r.exact),
                opt(r.x3),
                opt(r.x4),
                r.edge_count,
                r.wall_time_secs
            ),
        )?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

/// One CSV row per (n, method), with the point prediction where one exists.
pub fn write_summary_csv(report: &Report, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let w = |out: &mut BufWriter<File>, s: String| {
        out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
    };
    w(&mut out, "n,method,median,q1,q3,replicates,predicted_omega\n".into())?;
    for s in &report.per_n {
        let pred = match s.predicted_omega {
            Some(OmegaPrediction::Point { value }) => format!("{value:.6}"),
            _ => String::new(),
        };
        for m in &s.methods {
            w(
                &mut out,
                format!(
                    "{},{},{},{},{},{},{}\n",
                    s.n, m.method, m.median, m.q1, m.q3, m.replicates, pred
                ),
            )?;
        }
    }
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary_json(report: &Report, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::invalid(format!("serialize report: {e}")))?;
    std::fs::write(path, json).map_err(|e| Error::io(path, e))
}
