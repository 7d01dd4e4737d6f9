use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plrg::cliques::{
    full_top_clique, greedy_clique, max_clique_exact, quasi_top_clique, CliqueResult, ScanOrder,
    DEFAULT_NODE_BUDGET,
};
use plrg::error::{Error, Result};
use plrg::experiment::{
    run_experiment, summarize, write_records_csv, write_summary_csv, write_summary_json,
    ExperimentConfig,
};
use plrg::graph::Graph;
use plrg::model::{Kernel, ModelParams, Normalization};
use plrg::sampler::{sample_multigraph_fast, sample_variant_fast};
use plrg::stats::poisson_gof;
use plrg::theory::PredictionReport;
use plrg::weights::{deterministic_weights, sample_iid_pareto, WeightParams, WeightVector};

#[derive(Parser)]
#[command(name = "plrg", about = "Power-law random graphs and their cliques", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Exponential,
    Capped,
    Ratio,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Kernel {
        match k {
            KernelArg::Exponential => Kernel::Exponential,
            KernelArg::Capped => Kernel::Capped,
            KernelArg::Ratio => Kernel::Ratio,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    ByN,
    ByWeightSum,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Normalization {
        match n {
            NormalizationArg::ByN => Normalization::ByN,
            NormalizationArg::ByWeightSum => Normalization::ByWeightSum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightModeArg {
    Iid,
    Deterministic,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Greedy,
    QuasiTop,
    FullTop,
    Exact,
    DegreeGreedy,
    DegreeQuasiTop,
    DegreeFullTop,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = KernelArg::Exponential)]
    kernel: KernelArg,
    #[arg(long, value_enum, default_value_t = NormalizationArg::ByN)]
    normalization: NormalizationArg,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(
            self.a,
            self.b,
            self.alpha,
            self.kernel.into(),
            self.normalization.into(),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample weights and a graph, writing both to files.
    Generate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = WeightModeArg::Iid)]
        weight_mode: WeightModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Edgelist)]
        format: FormatArg,
        /// Graph output path; weights go to "<out>.weights".
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one clique method on a graph file.
    Clique {
        /// Edge-list or DIMACS graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Weight file (one weight per line); required for weight-ordered methods.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Print theory predictions as JSON.
    Predict {
        #[arg(long)]
        n: f64,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Run a Monte Carlo experiment from a TOML config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's worker count.
        #[arg(long)]
        workers: Option<usize>,
        /// Override the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Poisson goodness-of-fit test on a file of counts (one per line).
    Gof {
        #[arg(long)]
        counts: PathBuf,
        #[arg(long)]
        rate: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            n,
            model,
            weight_mode,
            seed,
            format,
            out,
        } => {
            let params = model.params()?;
            let weights = match weight_mode {
                WeightModeArg::Iid => {
                    sample_iid_pareto(n, &WeightParams::pareto(params.a, params.alpha)?, seed)?
                }
                WeightModeArg::Deterministic => deterministic_weights(n, params.a, params.alpha)?,
            };
            let graph = match params.kernel {
                Kernel::Exponential => {
                    sample_multigraph_fast(&weights, &params, seed, None)?.collapse()
                }
                _ => sample_variant_fast(&weights, &params, seed, None)?,
            };
            match format {
                FormatArg::Edgelist => graph.write_edgelist(&out)?,
                FormatArg::Dimacs => graph.write_dimacs(&out)?,
            }
            let mut weights_path = out.clone();
            weights_path.set_extension("weights");
            weights.write(&weights_path)?;
            println!(
                "wrote {} vertices, {} edges to {} (weights: {})",
                graph.n(),
                graph.edge_count(),
                out.display(),
                weights_path.display()
            );
            Ok(())
        }
        Command::Clique {
            graph,
            weights,
            method,
            node_budget,
        } => {
            let mut g = Graph::read(&graph)?;
            if let Some(path) = &weights {
                let wv = WeightVector::read(path)?;
                if wv.n() != g.n() {
                    return Err(Error::invalid(format!(
                        "weight file has {} entries but the graph has {} vertices",
                        wv.n(),
                        g.n()
                    )));
                }
                g = g.with_weights(wv);
            }
            let need_weights = matches!(
                method,
                MethodArg::Greedy | MethodArg::QuasiTop | MethodArg::FullTop
            );
            if need_weights && g.weights.is_none() {
                return Err(Error::invalid(
                    "weight-ordered methods need --weights; use degree-* methods otherwise",
                ));
            }
            let result: CliqueResult = match method {
                MethodArg::Exact => max_clique_exact(&g, node_budget)?,
                _ => {
                    let order = if need_weights {
                        ScanOrder::by_weight(g.weights.as_ref().unwrap())
                    } else {
                        ScanOrder::by_degree(&g)
                    };
                    match method {
                        MethodArg::Greedy | MethodArg::DegreeGreedy => greedy_clique(&g, &order),
                        MethodArg::QuasiTop | MethodArg::DegreeQuasiTop => {
                            quasi_top_clique(&g, &order)
                        }
                        MethodArg::FullTop | MethodArg::DegreeFullTop => {
                            full_top_clique(&g, &order)
                        }
                        MethodArg::Exact => unreachable!(),
                    }
                }
            };
            let ids: Vec<String> = result.vertices.iter().map(|v| (v + 1).to_string()).collect();
            println!("size {}", result.size);
            println!("vertices {}", ids.join(" "));
            Ok(())
        }
        Command::Predict { n, model } => {
            let params = model.params()?;
            let report = PredictionReport::build(n, &params);
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::invalid(format!("serialize: {e}")))?;
            println!("{json}");
            Ok(())
        }
        Command::Experiment {
            config,
            workers,
            out,
            seed,
        } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Error::io(&config, e))?;
            let mut cfg: ExperimentConfig = toml::from_str(&text).map_err(|e| Error::Parse {
                path: config.clone(),
                message: e.to_string(),
            })?;
            if let Some(w) = workers {
                cfg.workers = w;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(o) = out {
                cfg.output_path = Some(o);
            }
            let records = run_experiment(&cfg)?;
            let report = summarize(&records, &cfg)?;
            let dir = cfg.output_path.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
            write_records_csv(&records, &dir.join("records.csv"))?;
            write_summary_csv(&report, &dir.join("summary.csv"))?;
            write_summary_json(&report, &dir.join("summary.json"))?;
            println!(
                "{} records written to {}",
                records.len(),
                dir.join("records.csv").display()
            );
            Ok(())
        }
        Command::Gof { counts, rate } => {
            let text = std::fs::read_to_string(&counts).map_err(|e| Error::io(&counts, e))?;
            let values: Vec<u64> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.parse().map_err(|_| Error::Parse {
                        path: counts.clone(),
                        message: format!("not a count: {l:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            let (chi2, p) = poisson_gof(&values, rate)?;
            println!("chi_square {chi2:.6}");
            println!("p_value {p:.6}");
            Ok(())
        }
    }
}
