//! Power-law random graphs and their cliques.
//!
//! The graph model: each of n vertices carries a weight with power-law tail
//! `P(W > x) = a x^{-alpha}`, and pair {i,j} receives a Poisson number of
//! parallel edges with mean `b W_i W_j / n`. Collapsing parallel edges gives
//! a simple graph whose clique number grows like `n^{1-alpha/2}` (up to a
//! log factor) for alpha < 2, stays bounded for alpha = 2, and is 2 or 3 for
//! alpha > 2. Three weight-ordered scan algorithms (greedy, quasi-top,
//! full-top) recover near-maximum cliques in near-linear time.
//!
//! The crate provides the samplers (an O(n^2) reference and linear-expected-
//! time fast paths, including the min(lambda,1) and lambda/(1+lambda) kernel
//! variants), the clique algorithms with an exact Bron-Kerbosch oracle,
//! closed-form predictors for the asymptotic laws, and a reproducible Monte
//! Carlo harness that checks the laws at desk scale.

pub mod cliques;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod model;
pub mod rng;
pub mod sampler;
pub mod stats;
pub mod theory;
pub mod weights;

pub use cliques::{
    count_k4, count_triangles, full_top_clique, greedy_clique, is_clique, max_clique_exact,
    quasi_top_clique, CliqueResult, Method, OrderKind, ScanAdjacency, ScanOrder, ScanSizes,
};
pub use error::{Error, Result};
pub use experiment::{run_experiment, summarize, ExperimentConfig, RunRecord, WeightMode};
pub use graph::Graph;
pub use model::{
    edge_probability, effective_b_for_normalized, intensity, rescale_params, Kernel, ModelParams,
    Normalization,
};
pub use sampler::{
    collapse_multigraph, heavy_vertex_set, sample_multigraph_fast, sample_pairwise,
    sample_scan_adjacency, sample_variant_fast, HeavyVertexSet,
};
pub use stats::{fit_loglog_slope, poisson_gof, ScalingFit};
pub use theory::{
    clique_constant_c, ft_ratio, gnp_clique_bound, limit_omega_probs, pareto_second_moment,
    predicted_omega, triangle_limit_rate, OmegaPrediction, PredictionReport,
};
pub use weights::{
    deterministic_weights, rank_by_weight, sample_iid_pareto, sample_poisson_vertex_count,
    WeightParams, WeightVector,
};
