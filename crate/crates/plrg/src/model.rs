//! Edge intensities and edge probabilities.
//!
//! Given weights, each pair {i,j} carries intensity `lambda_ij = b W_i W_j / n`
//! (or `W_i W_j / sum W` under the by-weight-sum normalization) and is turned
//! into an edge probability by one of three kernels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `p = 1 - exp(-lambda)`, the collapsed multigraph law.
    Exponential,
    /// `p = min(lambda, 1)`.
    Capped,
    /// `p = lambda / (1 + lambda)`.
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `lambda_ij = b W_i W_j / n`.
    ByN,
    /// `lambda_ij = W_i W_j / sum_k W_k`; `b` is ignored.
    ByWeightSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub kernel: Kernel,
    pub normalization: Normalization,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, alpha: f64, kernel: Kernel, normalization: Normalization) -> Result<Self> {
        let p = ModelParams {
            a,
            b,
            alpha,
            kernel,
            normalization,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b), ("alpha", self.alpha)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Intensity of the pair: `b wi wj / scale` (by-n) or `wi wj / scale`
/// (by-weight-sum), where `scale` is `n` or the weight sum respectively.
pub fn intensity(wi: f64, wj: f64, params: &ModelParams, scale: f64) -> Result<f64> {
    if !(wi > 0.0) || !(wj > 0.0) {
        return Err(Error::invalid(format!("weights must be positive, got {wi}, {wj}")));
    }
    if !(scale > 0.0) {
        return Err(Error::invalid(format!("scale must be positive, got {scale}")));
    }
    Ok(match params.normalization {
        Normalization::ByN => params.b * wi * wj / scale,
        Normalization::ByWeightSum => wi * wj / scale,
    })
}

/// Edge probability under the given kernel. Monotone in `lambda`, in [0,1].
pub fn edge_probability(lambda: f64, kernel: Kernel) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::invalid(format!("lambda must be >= 0, got {lambda}")));
    }
    Ok(match kernel {
        // -expm1(-x) keeps full precision for the small lambdas most pairs have.
        Kernel::Exponential => -(-lambda).exp_m1(),
        Kernel::Capped => lambda.min(1.0),
        Kernel::Ratio => lambda / (1.0 + lambda),
    })
}

/// Map `(a, b) -> (a t^alpha, b t^{-2})`, which leaves the intensity of the
/// rescaled weights `t W_i` unchanged; only `a b^{alpha/2}` matters.
pub fn rescale_params(params: &ModelParams, t: f64) -> Result<ModelParams> {
    if !(t > 0.0) {
        return Err(Error::invalid(format!("t must be positive, got {t}")));
    }
    if params.normalization != Normalization::ByN {
        return Err(Error::invalid(
            "rescaling applies to the by-n normalization only",
        ));
    }
    Ok(ModelParams {
        a: params.a * t.powf(params.alpha),
        b: params.b / (t * t),
        ..*params
    })
}

/// The by-n parameter `b = 1 / E W` whose predictions match the
/// by-weight-sum model asymptotically (valid when `E W` is finite).
pub fn effective_b_for_normalized(mean_w: f64) -> Result<f64> {
    if !(mean_w > 0.0) || !mean_w.is_finite() {
        return Err(Error::invalid(format!("mean weight must be positive, got {mean_w}")));
    }
    Ok(1.0 / mean_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(kernel: Kernel, normalization: Normalization) -> ModelParams {
        ModelParams::new(1.0, 1.0, 1.0, kernel, normalization).unwrap()
    }

    #[test]
    fn intensity_by_n() {
        let mut p = params(Kernel::Exponential, Normalization::ByN);
        p.b = 0.5;
        let lam = intensity(2.0, 3.0, &p, 100.0).unwrap();
        assert!((lam - 0.03).abs() < 1e-15);
    }

    #[test]
    fn intensity_rejects_bad_inputs() {
        let p = params(Kernel::Exponential, Normalization::ByN);
        assert!(intensity(0.0, 1.0, &p, 10.0).is_err());
        assert!(intensity(1.0, 1.0, &p, 0.0).is_err());
    }

    #[test]
    fn intensity_deterministic_special_case() {
        // Deterministic weights with a=1, alpha=2 give lambda_ij = b / sqrt(ij).
        let p = params(Kernel::Exponential, Normalization::ByN);
        let n = 100usize;
        let wv = crate::weights::deterministic_weights(n, 1.0, 2.0).unwrap();
        let lam = intensity(wv.w[3], wv.w[8], &p, n as f64).unwrap();
        assert!((lam - 1.0 / 6.0).abs() < 1e-12, "lambda {lam}");
        let lam11 = intensity(wv.w[0], wv.w[0], &p, n as f64).unwrap();
        assert!((lam11 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn edge_probability_closed_forms() {
        for k in [Kernel::Exponential, Kernel::Capped, Kernel::Ratio] {
            assert_eq!(edge_probability(0.0, k).unwrap(), 0.0);
        }
        assert!((edge_probability(2f64.ln(), Kernel::Exponential).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(edge_probability(2.0, Kernel::Capped).unwrap(), 1.0);
        assert!((edge_probability(1.0, Kernel::Ratio).unwrap() - 0.5).abs() < 1e-15);
        assert!(edge_probability(-0.1, Kernel::Exponential).is_err());
    }

    #[test]
    fn rescale_hand_values() {
        let p = params(Kernel::Exponential, Normalization::ByN);
        let same = rescale_params(&p, 1.0).unwrap();
        assert_eq!(same, p);
        let r = rescale_params(&p, 2.0).unwrap();
        assert!((r.a - 2.0).abs() < 1e-15);
        assert!((r.b - 0.25).abs() < 1e-15);
        // a b^{alpha/2} preserved.
        let inv = |q: &ModelParams| q.a * q.b.powf(q.alpha / 2.0);
        assert!((inv(&r) - inv(&p)).abs() < 1e-15);
        assert!(rescale_params(&p, 0.0).is_err());
        assert!(rescale_params(&params(Kernel::Exponential, Normalization::ByWeightSum), 2.0).is_err());
    }

    #[test]
    fn rescale_lambda_invariance() {
        let p = params(Kernel::Exponential, Normalization::ByN);
        let lam0 = intensity(1.0, 1.0, &p, 10.0).unwrap();
        assert!((lam0 - 0.1).abs() < 1e-15);
        let mut q = p;
        q.b = 0.25;
        let lam1 = intensity(2.0, 2.0, &q, 10.0).unwrap();
        assert!((lam1 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn effective_b_values() {
        assert!((effective_b_for_normalized(2.0).unwrap() - 0.5).abs() < 1e-15);
        // Pure Pareto alpha=3, a=1: E W = alpha x0 / (alpha - 1) = 1.5.
        let mean = 3.0 / 2.0;
        assert!((effective_b_for_normalized(mean).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(effective_b_for_normalized(0.0).is_err());
        assert!(effective_b_for_normalized(f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn kernel_ordering(lambda in 0.0f64..50.0) {
            // ratio <= exponential <= capped pointwise; this ordering is what
            // lets the ratio sampler thin the exponential one.
            let r = edge_probability(lambda, Kernel::Ratio).unwrap();
            let e = edge_probability(lambda, Kernel::Exponential).unwrap();
            let c = edge_probability(lambda, Kernel::Capped).unwrap();
            prop_assert!(r <= e + 1e-15);
            prop_assert!(e <= c + 1e-15);
            prop_assert!((0.0..=1.0).contains(&r));
            prop_assert!((0.0..=1.0).contains(&c));
        }

        #[test]
        fn kernels_monotone(lo in 0.0f64..10.0, step in 0.0f64..10.0) {
            for k in [Kernel::Exponential, Kernel::Capped, Kernel::Ratio] {
                let p0 = edge_probability(lo, k).unwrap();
                let p1 = edge_probability(lo + step, k).unwrap();
                prop_assert!(p1 >= p0 - 1e-15);
            }
        }

        #[test]
        fn kernels_linear_at_zero(lambda in 1e-12f64..1e-6) {
            for k in [Kernel::Exponential, Kernel::Capped, Kernel::Ratio] {
                let p = edge_probability(lambda, k).unwrap();
                // A few ulps of slack: at tiny lambda the O(lambda^2) term
                // sits below rounding noise.
                prop_assert!((p - lambda).abs() <= lambda * lambda + 4.0 * f64::EPSILON * lambda);
            }
        }
    }
}
