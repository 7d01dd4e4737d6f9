//! Scaling-law fits and distributional tests.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Ordinary least squares on `(ln n, ln statistic)`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::invalid(format!(
            "log-log fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, y)| {
            if !(n > 0.0) || !(y > 0.0) {
                Err(Error::invalid(format!("log-log fit needs positive values, got ({n}, {y})")))
            } else {
                Ok((n.ln(), y.ln()))
            }
        })
        .collect::<Result<_>>()?;
    let m = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("log-log fit needs distinct n values"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    let slope_stderr = if logs.len() > 2 {
        (ss_res / (m - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(ScalingFit {
        slope,
        intercept,
        slope_stderr,
        r_squared,
        points_used: logs.len(),
    })
}

/// Chi-square goodness of fit of integer counts against Poisson(rate).
///
/// Cells 0,1,2,... are merged from the right until every expected count is
/// at least 5; the last cell is the upper tail. Returns (statistic, p-value).
pub fn poisson_gof(counts: &[u64], rate: f64) -> Result<(f64, f64)> {
    if counts.is_empty() {
        return Err(Error::invalid("goodness of fit needs at least one count"));
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::invalid(format!("rate must be positive, got {rate}")));
    }
    let total = counts.len() as f64;
    let max_k = *counts.iter().max().unwrap() as usize;

    // Expected cell masses: pmf at 0..=k_top, then the tail.
    let mut pmf = Vec::new();
    let mut p = (-rate).exp(); // pmf(0)
    let mut cum = 0.0;
    let mut k = 0usize;
    loop {
        pmf.push(p);
        cum += p;
        // Stop once the remaining tail is small and we are past the data.
        if k >= max_k && 1.0 - cum < 5.0 / total {
            break;
        }
        if k > max_k + 10_000 {
            break;
        }
        k += 1;
        p *= rate / k as f64;
    }

    let mut observed = vec![0u64; pmf.len() + 1];
    for &c in counts {
        let idx = (c as usize).min(pmf.len());
        observed[idx] += 1;
    }
    let mut expected: Vec<f64> = pmf.iter().map(|&q| q * total).collect();
    expected.push((1.0 - cum).max(0.0) * total);

    // Merge low-expectation cells into their left neighbor, from the right.
    let mut cells: Vec<(u64, f64)> = observed.into_iter().zip(expected).collect();
    let mut i = cells.len();
    while i > 1 {
        i -= 1;
        if cells[i].1 < 5.0 {
            let (o, e) = cells.remove(i);
            let last = i.min(cells.len() - 1);
            cells[last].0 += o;
            cells[last].1 += e;
        }
    }
    // A leading under-filled cell merges rightward.
    while cells.len() > 1 && cells[0].1 < 5.0 {
        let (o, e) = cells.remove(0);
        cells[0].0 += o;
        cells[0].1 += e;
    }
    if cells.len() < 2 {
        return Err(Error::invalid(
            "degenerate binning: all mass in one cell; need more samples or a larger rate",
        ));
    }

    let chi_square: f64 = cells
        .iter()
        .map(|&(o, e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = (cells.len() - 1) as f64;
    let dist = ChiSquared::new(df).map_err(|e| Error::invalid(format!("chi-square df {df}: {e}")))?;
    let p_value = 1.0 - dist.cdf(chi_square);
    Ok((chi_square, p_value))
}

/// Median of a sample (average of the middle two for even lengths).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Lower quartile, median, upper quartile by the nearest-rank rule.
pub fn quartiles(values: &[f64]) -> (f64, f64, f64) {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |f: f64| v[((f * (v.len() - 1) as f64).round() as usize).min(v.len() - 1)];
    (q(0.25), median(values), q(0.75))
}

/// Empirical quantile by nearest rank.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[((q * (v.len() - 1) as f64).round() as usize).min(v.len() - 1)]
}
