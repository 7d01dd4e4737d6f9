//! Graph samplers.
//!
//! `sample_pairwise` is the O(n^2) reference: one uniform per pair in
//! lexicographic order, so two runs with the same seed and the same lambda
//! matrix produce the same graph. The fast samplers run in expected
//! O(n + M) time via a Poisson endpoint construction and are checked against
//! the reference distributionally.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::{Distribution, Poisson};

use crate::cliques::ScanAdjacency;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{edge_probability, intensity, Kernel, ModelParams, Normalization};
use crate::rng::{replicate_rng, STREAM_GRAPH};
use crate::weights::WeightVector;

/// Cap on the expected number of sampled (multi)edges.
pub const DEFAULT_EDGE_BUDGET: f64 = 2e9;

/// Region boundary for the capped-kernel sampler.
pub const DEFAULT_LAMBDA_HIGH: f64 = 0.9;

/// Intensity scale for the given normalization: `n` or the weight sum.
pub fn intensity_scale(weights: &WeightVector, params: &ModelParams) -> f64 {
    match params.normalization {
        Normalization::ByN => weights.n() as f64,
        Normalization::ByWeightSum => weights.total(),
    }
}

/// Reference sampler: every unordered pair independently with probability
/// `edge_probability(intensity(...))`, consuming uniforms in lexicographic
/// pair order.
pub fn sample_pairwise(weights: &WeightVector, params: &ModelParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let n = weights.n();
    let scale = intensity_scale(weights, params);
    let mut rng = replicate_rng(seed, 0, STREAM_GRAPH);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let u: f64 = rng.random();
            let lam = intensity(weights.w[i], weights.w[j], params, scale)?;
            if u < edge_probability(lam, params.kernel)? {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?.with_weights(weights.clone()))
}

/// Poisson multigraph sampler: `E_ij ~ Poisson(lambda_ij)` mutually
/// independent, realized by drawing a Poisson total number of edges with
/// mean `(coef/2)(sum W)^2` and i.i.d. weight-proportional endpoints;
/// self-loops are discarded. Multiplicities are retained.
pub fn sample_multigraph_fast(
    weights: &WeightVector,
    params: &ModelParams,
    seed: u64,
    edge_budget: Option<f64>,
) -> Result<Graph> {
    params.validate()?;
    if params.kernel != Kernel::Exponential {
        return Err(Error::invalid(
            "the multigraph sampler realizes the exponential-kernel law; use sample_variant_fast for other kernels",
        ));
    }
    let mut rng = replicate_rng(seed, 0, STREAM_GRAPH);
    let pairs = poisson_endpoint_pairs(weights, params, 1.0, edge_budget, &mut rng)?;
    Ok(Graph::from_multi_edges(weights.n(), pairs).with_weights(weights.clone()))
}

/// Merge parallel edges into a single edge.
pub fn collapse_multigraph(g: &Graph) -> Graph {
    g.collapse()
}

/// Exponential-kernel sampler that materializes only each vertex's neighbors
/// earlier in the weight order — same law as `sample_multigraph_fast` +
/// collapse as far as the scan algorithms can observe, at ~12 bytes per
/// multiedge peak instead of ~3x that, which is what makes the largest
/// weight-order runs fit in memory.
pub fn sample_scan_adjacency(
    weights: &WeightVector,
    params: &ModelParams,
    seed: u64,
    edge_budget: Option<f64>,
) -> Result<ScanAdjacency> {
    params.validate()?;
    if params.kernel != Kernel::Exponential {
        return Err(Error::invalid(
            "the scan-adjacency sampler realizes the exponential-kernel law",
        ));
    }
    let n = weights.n();
    let mut rng = replicate_rng(seed, 0, STREAM_GRAPH);
    let mut pairs = poisson_endpoint_pairs(weights, params, 1.0, edge_budget, &mut rng)?;
    let mut pos = vec![0u32; n];
    for (p, &v) in weights.rank.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    // Rewrite endpoint pairs as (later, earlier) scan positions in place,
    // dropping self-loops.
    pairs.retain_mut(|pair| {
        let pi = pos[pair.0 as usize];
        let pj = pos[pair.1 as usize];
        if pi == pj {
            return false;
        }
        *pair = (pi.max(pj), pi.min(pj));
        true
    });
    Ok(ScanAdjacency::from_position_pairs(n, &mut pairs))
}

/// Fast sampler for the capped and ratio kernels, exact in distribution.
pub fn sample_variant_fast(
    weights: &WeightVector,
    params: &ModelParams,
    seed: u64,
    edge_budget: Option<f64>,
) -> Result<Graph> {
    params.validate()?;
    if params.normalization != Normalization::ByN {
        return Err(Error::invalid("variant kernels are sampled under the by-n normalization"));
    }
    match params.kernel {
        Kernel::Exponential => Err(Error::invalid(
            "use sample_multigraph_fast for the exponential kernel",
        )),
        Kernel::Ratio => sample_ratio_fast(weights, params, seed, edge_budget),
        Kernel::Capped => sample_capped_fast(weights, params, seed, edge_budget, DEFAULT_LAMBDA_HIGH),
    }
}

/// Ratio kernel: thin the exponential-kernel simple graph, keeping each edge
/// with probability `[lambda/(1+lambda)] / [1 - exp(-lambda)]` (<= 1 by the
/// kernel ordering, -> 1 as lambda -> 0).
fn sample_ratio_fast(
    weights: &WeightVector,
    params: &ModelParams,
    seed: u64,
    edge_budget: Option<f64>,
) -> Result<Graph> {
    let n = weights.n();
    let scale = n as f64;
    let mut rng = replicate_rng(seed, 0, STREAM_GRAPH);
    let pairs = poisson_endpoint_pairs(weights, params, 1.0, edge_budget, &mut rng)?;
    let base = Graph::from_multi_edges(n, pairs);
    let mut kept = Vec::new();
    for (i, j) in base.edges() {
        let lam = intensity(weights.w[i as usize], weights.w[j as usize], params, scale)?;
        let p_exp = -(-lam).exp_m1();
        let accept = if p_exp > 0.0 {
            (lam / (1.0 + lam)) / p_exp
        } else {
            1.0
        };
        if rng.random::<f64>() < accept {
            kept.push((i, j));
        }
    }
    Ok(Graph::from_edges(n, &kept)?.with_weights(weights.clone()))
}

/// Capped kernel, split at `lambda_high`:
///   * pairs with lambda >= lambda_high are enumerated by a two-pointer sweep
///     over weight-sorted vertices (deterministic edge when lambda >= 1,
///     Bernoulli(lambda) below);
///   * pairs with lambda < lambda_high come from a boosted Poisson candidate
///     process with rate c*lambda, c = -ln(1 - lambda_high)/lambda_high, each
///     realized candidate pair accepted with probability
///     lambda / (1 - exp(-c*lambda)).
fn sample_capped_fast(
    weights: &WeightVector,
    params: &ModelParams,
    seed: u64,
    edge_budget: Option<f64>,
    lambda_high: f64,
) -> Result<Graph> {
    let n = weights.n();
    let scale = n as f64;
    let mut rng = replicate_rng(seed, 0, STREAM_GRAPH);
    let mut edges: Vec<(u32, u32)> = Vec::new();

    // High region: in decreasing-weight order, lambda >= lambda_high means
    // w_p * w_q >= lambda_high * n / b, a prefix property in q for each p.
    let order = &weights.rank;
    let product_floor = lambda_high * scale / params.b;
    // Exclusive end of the qualifying partner prefix; non-increasing in p
    // since the scan weight w_p only decreases.
    let mut bound = n;
    for p in 0..n {
        let wp = weights.w[order[p] as usize];
        while bound > p + 1 && wp * weights.w[order[bound - 1] as usize] < product_floor {
            bound -= 1;
        }
        if bound <= p + 1 {
            break; // no pair reaches lambda_high from here on
        }
        for q in (p + 1)..bound {
            let wq = weights.w[order[q] as usize];
            let lam = params.b * wp * wq / scale;
            let keep = lam >= 1.0 || rng.random::<f64>() < lam;
            if keep {
                edges.push((order[p], order[q]));
            }
        }
    }

    // Low region via boosted candidates.
    let boost = -(1.0 - lambda_high).ln() / lambda_high;
    let candidates = poisson_endpoint_pairs(weights, params, boost, edge_budget, &mut rng)?;
    let cand = Graph::from_multi_edges(n, candidates);
    for (i, j) in cand.edges() {
        let lam = intensity(weights.w[i as usize], weights.w[j as usize], params, scale)?;
        if lam >= lambda_high {
            continue; // already covered by the sweep
        }
        let p_cand = -(-boost * lam).exp_m1();
        if p_cand > 0.0 && rng.random::<f64>() < lam / p_cand {
            edges.push((i, j));
        }
    }

    Ok(Graph::from_edges(n, &edges)?.with_weights(weights.clone()))
}

/// Draw a Poisson number of endpoint pairs with total rate
/// `boost * (coef/2) (sum W)^2`, endpoints i.i.d. proportional to the
/// weights. Self-loops are kept here and dropped during graph construction.
fn poisson_endpoint_pairs(
    weights: &WeightVector,
    params: &ModelParams,
    boost: f64,
    edge_budget: Option<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(u32, u32)>> {
    let n = weights.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let total_w = weights.total();
    let coef = match params.normalization {
        Normalization::ByN => params.b / n as f64,
        Normalization::ByWeightSum => 1.0 / total_w,
    };
    let rate = boost * coef / 2.0 * total_w * total_w;
    let budget = edge_budget.unwrap_or(DEFAULT_EDGE_BUDGET);
    if rate > budget {
        return Err(Error::EdgeBudgetExceeded {
            expected: rate,
            budget,
        });
    }
    let count = if rate == 0.0 {
        0u64
    } else {
        let pois = Poisson::new(rate).map_err(|e| Error::invalid(format!("Poisson({rate}): {e}")))?;
        pois.sample(rng) as u64
    };
    let alias = WeightedAliasIndex::new(weights.w.clone())
        .map_err(|e| Error::invalid(format!("weight table: {e}")))?;
    let mut pairs = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let i = alias.sample(rng) as u32;
        let j = alias.sample(rng) as u32;
        pairs.push((i, j));
    }
    Ok(pairs)
}

/// The heavy-vertex set `{i : W_i > s sqrt(n ln n)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeavyVertexSet {
    pub threshold_s: f64,
    pub members: Vec<u32>,
}

pub fn heavy_vertex_set(weights: &WeightVector, s: f64) -> Result<HeavyVertexSet> {
    let n = weights.n();
    if n < 2 {
        return Err(Error::invalid("heavy_vertex_set needs n >= 2"));
    }
    if !(s > 0.0) {
        return Err(Error::invalid(format!("s must be positive, got {s}")));
    }
    let threshold = s * (n as f64 * (n as f64).ln()).sqrt();
    let members = (0..n as u32)
        .filter(|&i| weights.w[i as usize] > threshold)
        .collect();
    Ok(HeavyVertexSet {
        threshold_s: s,
        members,
    })
}
