//! Vertex weight generation.
//!
//! Weights follow a pure Pareto law `P(W > x) = a x^{-alpha}` for `x >= x0`
//! with `x0 = a^{1/alpha}`, or the deterministic sequence
//! `W_i = a^{1/alpha} (n/i)^{1/alpha}`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{replicate_rng, STREAM_VERTEX_COUNT, STREAM_WEIGHTS};

/// Parameters of the power-law tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    /// Tail exponent.
    pub alpha: f64,
    /// Tail constant.
    pub a: f64,
    /// Tail cutoff; `a^{1/alpha}` for the pure Pareto case.
    pub x0: f64,
}

impl WeightParams {
    /// Pure Pareto: `x0 = a^{1/alpha}` so that `P(W > x0) = 1`.
    pub fn pareto(a: f64, alpha: f64) -> Result<Self> {
        let p = WeightParams {
            alpha,
            a,
            x0: a.powf(1.0 / alpha),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::invalid(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::invalid(format!("a must be positive, got {}", self.a)));
        }
        if !(self.x0 > 0.0) || !self.x0.is_finite() {
            return Err(Error::invalid(format!("x0 must be positive, got {}", self.x0)));
        }
        Ok(())
    }

    /// Survival function `P(W > x)` of the pure Pareto law.
    pub fn survival(&self, x: f64) -> f64 {
        if x <= self.x0 {
            1.0
        } else {
            self.a * x.powf(-self.alpha)
        }
    }
}

/// A sampled (or constructed) weight sequence with its decreasing-weight order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    /// Weight of vertex `i` (0-based internally; files use 1-based ids).
    pub w: Vec<f64>,
    /// Vertex indices in decreasing weight order, ties broken by ascending id.
    pub rank: Vec<u32>,
}

impl WeightVector {
    pub fn from_weights(w: Vec<f64>) -> Self {
        let rank = rank_by_weight(&w);
        WeightVector { w, rank }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Largest weight, `W*`.
    pub fn max_weight(&self) -> f64 {
        self.rank.first().map_or(0.0, |&i| self.w[i as usize])
    }

    pub fn total(&self) -> f64 {
        self.w.iter().sum()
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        for w in &self.w {
            writeln!(out, "{w}").map_err(|e| Error::io(path, e))?;
        }
        out.flush().map_err(|e| Error::io(path, e))
    }

    /// One decimal weight per line, vertex id implied by line number.
    pub fn read(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut w = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let x: f64 = line.parse().map_err(|_| Error::Parse {
                path: path.into(),
                message: format!("line {}: not a number: {line:?}", lineno + 1),
            })?;
            if !(x > 0.0) {
                return Err(Error::Parse {
                    path: path.into(),
                    message: format!("line {}: weight must be positive", lineno + 1),
                });
            }
            w.push(x);
        }
        Ok(WeightVector::from_weights(w))
    }
}

/// Draw `n` i.i.d. pure-Pareto weights via the inverse CDF `W = x0 U^{-1/alpha}`.
pub fn sample_iid_pareto(n: usize, params: &WeightParams, seed: u64) -> Result<WeightVector> {
    params.validate()?;
    let mut rng = replicate_rng(seed, 0, STREAM_WEIGHTS);
    let w = (0..n)
        .map(|_| {
            // U uniform on (0,1]: flip the half-open unit interval.
            let u: f64 = 1.0 - rng.random::<f64>();
            pareto_inverse_cdf(u, params)
        })
        .collect();
    Ok(WeightVector::from_weights(w))
}

/// Inverse CDF of the pure Pareto law, exposed for oracle tests.
pub fn pareto_inverse_cdf(u: f64, params: &WeightParams) -> f64 {
    params.x0 * u.powf(-1.0 / params.alpha)
}

/// The deterministic sequence `W_i = a^{1/alpha} (n/i)^{1/alpha}`, `i = 1..n`.
///
/// Strictly decreasing, so the rank order is the identity.
pub fn deterministic_weights(n: usize, a: f64, alpha: f64) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::invalid("deterministic weights need n >= 1"));
    }
    if !(a > 0.0) || !(alpha > 0.0) {
        return Err(Error::invalid("a and alpha must be positive"));
    }
    let x0 = a.powf(1.0 / alpha);
    let w = (1..=n)
        .map(|i| x0 * (n as f64 / i as f64).powf(1.0 / alpha))
        .collect();
    Ok(WeightVector::from_weights(w))
}

/// Poisson(n)-distributed vertex count; `n` may be any nonnegative real.
pub fn sample_poisson_vertex_count(n: f64, seed: u64) -> Result<usize> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::invalid(format!("Poisson mean must be >= 0, got {n}")));
    }
    if n == 0.0 {
        return Ok(0);
    }
    let mut rng = replicate_rng(seed, 0, STREAM_VERTEX_COUNT);
    let pois = Poisson::new(n).map_err(|e| Error::invalid(format!("Poisson({n}): {e}")))?;
    Ok(pois.sample(&mut rng) as usize)
}

/// Stable decreasing-weight order; ties broken by ascending vertex id.
pub fn rank_by_weight(w: &[f64]) -> Vec<u32> {
    let mut rank: Vec<u32> = (0..w.len() as u32).collect();
    rank.sort_by(|&i, &j| {
        w[j as usize]
            .partial_cmp(&w[i as usize])
            .unwrap()
            .then(i.cmp(&j))
    });
    rank
}
