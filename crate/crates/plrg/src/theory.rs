//! Closed-form predictors for the clique-number laws, used as ground truth
//! by the experiment harness. Logarithms are natural throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Kernel, ModelParams, Normalization};

/// Leading constant of the heavy-tail clique law:
/// `c = a b^{alpha/2} (1 - alpha/2)^{-alpha/2}`, valid for 0 < alpha < 2.
pub fn clique_constant_c(a: f64, b: f64, alpha: f64) -> Result<f64> {
    check_positive(a, "a")?;
    check_positive(b, "b")?;
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid(format!(
            "clique constant defined for 0 < alpha < 2, got {alpha}"
        )));
    }
    Ok(a * b.powf(alpha / 2.0) * (1.0 - alpha / 2.0).powf(-alpha / 2.0))
}

/// Predicted clique number for the given kernel/normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum OmegaPrediction {
    /// A point prediction for the typical clique number.
    Point { value: f64 },
    /// The ratio kernel only pins the growth exponents, not the constants:
    /// `c n^exponent <= omega <= C n^exponent (ln n)^{log_exponent}`.
    Bracket { exponent: f64, log_exponent: f64 },
}

/// Typical clique number at finite n:
///   * exponential kernel, by-n: `c n^{1-alpha/2} (ln n)^{-alpha/2}`;
///   * capped kernel: `a b^{alpha/2} n^{1-alpha/2}` (the log factor is gone);
///   * ratio kernel: exponent `(2-alpha)/(2+alpha)` bracket;
///   * by-weight-sum normalization, alpha = 1: `sqrt(2 a n) / ln n`.
pub fn predicted_omega(n: f64, params: &ModelParams) -> Result<OmegaPrediction> {
    params.validate()?;
    if !(n > 1.0) {
        return Err(Error::invalid(format!("prediction needs n > 1, got {n}")));
    }
    let alpha = params.alpha;
    if params.normalization == Normalization::ByWeightSum {
        if (alpha - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(
                "the by-weight-sum prediction is implemented for alpha = 1 only",
            ));
        }
        return Ok(OmegaPrediction::Point {
            value: (2.0 * params.a * n).sqrt() / n.ln(),
        });
    }
    if !(alpha < 2.0) {
        return Err(Error::invalid(format!(
            "polynomial clique growth requires alpha < 2, got {alpha}"
        )));
    }
    Ok(match params.kernel {
        Kernel::Exponential => {
            let c = clique_constant_c(params.a, params.b, alpha)?;
            OmegaPrediction::Point {
                value: c * n.powf(1.0 - alpha / 2.0) * n.ln().powf(-alpha / 2.0),
            }
        }
        Kernel::Capped => OmegaPrediction::Point {
            value: params.a * params.b.powf(alpha / 2.0) * n.powf(1.0 - alpha / 2.0),
        },
        Kernel::Ratio => OmegaPrediction::Bracket {
            exponent: (2.0 - alpha) / (2.0 + alpha),
            log_exponent: alpha / (2.0 + alpha),
        },
    })
}

/// Limit of |full_top| / omega: `2^{-alpha/2}` for 0 < alpha < 2.
pub fn ft_ratio(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid(format!(
            "ft_ratio defined for 0 < alpha < 2, got {alpha}"
        )));
    }
    Ok(2f64.powf(-alpha / 2.0))
}

/// `E W^2` for the pure Pareto law: `x0^2 alpha / (alpha - 2)`, alpha > 2.
pub fn pareto_second_moment(a: f64, alpha: f64) -> Result<f64> {
    check_positive(a, "a")?;
    if !(alpha > 2.0) {
        return Err(Error::invalid(format!(
            "second moment infinite for alpha <= 2, got {alpha}"
        )));
    }
    let x0 = a.powf(1.0 / alpha);
    Ok(x0 * x0 * alpha / (alpha - 2.0))
}

/// Poisson rate of the limiting triangle count: `(1/6)(b E W^2)^3`.
pub fn triangle_limit_rate(b: f64, ew2: f64) -> Result<f64> {
    check_positive(b, "b")?;
    check_positive(ew2, "E W^2")?;
    Ok((b * ew2).powi(3) / 6.0)
}

/// Limiting `(P(omega = 2), P(omega = 3)) = (e^{-rate}, 1 - e^{-rate})`.
pub fn limit_omega_probs(rate: f64) -> Result<(f64, f64)> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::invalid(format!("rate must be >= 0, got {rate}")));
    }
    let p2 = (-rate).exp();
    Ok((p2, 1.0 - p2))
}

/// Clique-number bound for G(n,p): `2 ln n / (1 - p)`.
pub fn gnp_clique_bound(n: f64, p: f64) -> Result<f64> {
    if !(n >= 2.0) {
        return Err(Error::invalid(format!("bound needs n >= 2, got {n}")));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid(format!("p must be in [0, 1), got {p}")));
    }
    Ok(2.0 * n.ln() / (1.0 - p))
}

fn check_positive(v: f64, name: &str) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::invalid(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// All predictions applicable to one parameter set, for the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct PredictionReport {
    pub n: f64,
    pub params: ModelParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_constant_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaPrediction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ft_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pareto_second_moment: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_limit_probs: Option<(f64, f64)>,
}

impl PredictionReport {
    pub fn build(n: f64, params: &ModelParams) -> PredictionReport {
        let ew2 = pareto_second_moment(params.a, params.alpha).ok();
        let rate = ew2.and_then(|m| triangle_limit_rate(params.b, m).ok());
        PredictionReport {
            n,
            params: *params,
            clique_constant_c: clique_constant_c(params.a, params.b, params.alpha).ok(),
            omega: predicted_omega(n, params).ok(),
            ft_ratio: ft_ratio(params.alpha).ok(),
            pareto_second_moment: ew2,
            triangle_rate: rate,
            omega_limit_probs: rate.and_then(|r| limit_omega_probs(r).ok()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Kernel, Normalization};

    fn params(a: f64, b: f64, alpha: f64, kernel: Kernel) -> ModelParams {
        ModelParams::new(a, b, alpha, kernel, Normalization::ByN).unwrap()
    }

    #[test]
    fn constant_c_values() {
        let c = clique_constant_c(1.0, 1.0, 1.0).unwrap();
        assert!((c - 2f64.sqrt()).abs() < 1e-12);
        // alpha -> 0+ limit is a.
        let c0 = clique_constant_c(3.0, 1.0, 1e-9).unwrap();
        assert!((c0 - 3.0).abs() < 1e-6);
        assert!(clique_constant_c(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn constant_c_rescaling_invariant() {
        let (a, b, alpha) = (1.3, 0.7, 1.4);
        let c = clique_constant_c(a, b, alpha).unwrap();
        for t in [0.5f64, 3.0] {
            let c2 = clique_constant_c(a * t.powf(alpha), b / (t * t), alpha).unwrap();
            assert!((c - c2).abs() < 1e-12 * c);
        }
    }

    #[test]
    fn omega_point_predictions() {
        // Exponential, a=b=1, alpha=1, n=e: c * sqrt(e).
        let p = params(1.0, 1.0, 1.0, Kernel::Exponential);
        let n = std::f64::consts::E;
        match predicted_omega(n, &p).unwrap() {
            OmegaPrediction::Point { value } => {
                assert!((value - 2f64.sqrt() * n.sqrt()).abs() < 1e-10, "{value}")
            }
            _ => panic!("expected point"),
        }
        // Capped, a=1, b=4, alpha=1, n=100 -> 1 * 2 * 10 = 20.
        let p = params(1.0, 4.0, 1.0, Kernel::Capped);
        match predicted_omega(100.0, &p).unwrap() {
            OmegaPrediction::Point { value } => assert!((value - 20.0).abs() < 1e-10),
            _ => panic!("expected point"),
        }
        // Ratio, alpha=1 -> exponent 1/3.
        let p = params(1.0, 1.0, 1.0, Kernel::Ratio);
        match predicted_omega(100.0, &p).unwrap() {
            OmegaPrediction::Bracket {
                exponent,
                log_exponent,
            } => {
                assert!((exponent - 1.0 / 3.0).abs() < 1e-12);
                assert!((log_exponent - 1.0 / 3.0).abs() < 1e-12);
            }
            _ => panic!("expected bracket"),
        }
    }

    #[test]
    fn omega_normalized_model() {
        let p = ModelParams::new(1.0, 1.0, 1.0, Kernel::Exponential, Normalization::ByWeightSum)
            .unwrap();
        let n = 1e6;
        match predicted_omega(n, &p).unwrap() {
            OmegaPrediction::Point { value } => {
                assert!((value - (2.0 * n).sqrt() / n.ln()).abs() < 1e-9)
            }
            _ => panic!("expected point"),
        }
        let mut bad = p;
        bad.alpha = 0.5;
        assert!(predicted_omega(n, &bad).is_err());
    }

    #[test]
    fn capped_removes_log_factor() {
        // exponential / capped prediction = (1-alpha/2)^{-alpha/2} (ln n)^{-alpha/2}.
        let alpha = 1.2;
        let pe = params(1.0, 1.0, alpha, Kernel::Exponential);
        let pc = params(1.0, 1.0, alpha, Kernel::Capped);
        for n in [1e4, 1e6, 1e8] {
            let (OmegaPrediction::Point { value: e }, OmegaPrediction::Point { value: c }) =
                (predicted_omega(n, &pe).unwrap(), predicted_omega(n, &pc).unwrap())
            else {
                panic!("expected points");
            };
            let expected = (1.0 - alpha / 2.0).powf(-alpha / 2.0) * n.ln().powf(-alpha / 2.0);
            assert!(((e / c) - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn ft_ratio_values() {
        assert!((ft_ratio(1.0).unwrap() - 0.7071067811865476).abs() < 1e-12);
        assert!((ft_ratio(1e-9).unwrap() - 1.0).abs() < 1e-6);
        assert!((ft_ratio(2.0 - 1e-9).unwrap() - 0.5).abs() < 1e-6);
        assert!(ft_ratio(2.0).is_err());
    }

    #[test]
    fn second_moment_values() {
        assert!((pareto_second_moment(1.0, 3.0).unwrap() - 3.0).abs() < 1e-12);
        // a=16, alpha=4 -> x0=2, moment = 4*4/2 = 8.
        assert!((pareto_second_moment(16.0, 4.0).unwrap() - 8.0).abs() < 1e-12);
        // Large alpha: mass concentrates at x0 = 1.
        assert!((pareto_second_moment(1.0, 1e6).unwrap() - 1.0).abs() < 1e-5);
        assert!(pareto_second_moment(1.0, 2.0).is_err());
    }

    #[test]
    fn second_moment_against_quadrature() {
        // E W^2 = x0^2 + int_{x0}^inf 2x P(W > x) dx, trapezoid on a log grid.
        let (a, alpha) = (2.0, 3.5);
        let wp = crate::weights::WeightParams::pareto(a, alpha).unwrap();
        let x0 = wp.x0;
        let mut integral = 0.0;
        let steps = 400_000;
        let top = x0 * 1e6f64;
        let ratio = (top / x0).powf(1.0 / steps as f64);
        let mut x = x0;
        for _ in 0..steps {
            let x1 = x * ratio;
            let f0 = 2.0 * x * wp.survival(x);
            let f1 = 2.0 * x1 * wp.survival(x1);
            integral += 0.5 * (f0 + f1) * (x1 - x);
            x = x1;
        }
        let numeric = x0 * x0 + integral;
        let closed = pareto_second_moment(a, alpha).unwrap();
        assert!(
            (numeric - closed).abs() < 1e-3 * closed,
            "{numeric} vs {closed}"
        );
    }

    #[test]
    fn triangle_rate_values() {
        assert!((triangle_limit_rate(0.5, 3.0).unwrap() - 0.5625).abs() < 1e-12);
        let r1 = triangle_limit_rate(1.0, 2.0).unwrap();
        let r2 = triangle_limit_rate(2.0, 2.0).unwrap();
        assert!((r2 / r1 - 8.0).abs() < 1e-12, "cubic in b");
        assert!(triangle_limit_rate(0.0, 1.0).is_err());
    }

    #[test]
    fn omega_limit_prob_values() {
        assert_eq!(limit_omega_probs(0.0).unwrap(), (1.0, 0.0));
        let (p2, p3) = limit_omega_probs(0.5625).unwrap();
        assert!((p2 - 0.5698).abs() < 5e-5);
        assert!((p3 - 0.4302).abs() < 5e-5);
        assert!((p2 + p3 - 1.0).abs() < 1e-15);
        let (p2, p3) = limit_omega_probs(1e6).unwrap();
        assert!(p2 < 1e-300 && (p3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gnp_bound_values() {
        let b = gnp_clique_bound(100.0, 0.5).unwrap();
        assert!((b - 4.0 * 100f64.ln()).abs() < 1e-12);
        assert!((gnp_clique_bound(50.0, 0.0).unwrap() - 2.0 * 50f64.ln()).abs() < 1e-12);
        assert!(gnp_clique_bound(100.0, 0.2).unwrap() < gnp_clique_bound(100.0, 0.6).unwrap());
        assert!(gnp_clique_bound(100.0, 1.0).is_err());
    }
}
