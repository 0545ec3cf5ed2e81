//! Summary statistics for trial records: moments with normal confidence
//! intervals, Pearson correlation with Fisher-z intervals, and chi-squared
//! p-values.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("need equally many xs and ys, got {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {need} observations, got {got}")]
    TooFew { need: usize, got: usize },
    #[error("zero variance on one side")]
    ZeroVariance,
}

/// Moments of one recorded scalar. The interval is mean +- `ci95`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarSummary {
    pub count: u64,
    pub mean: f64,
    /// Unbiased sample variance; 0 when only one observation exists.
    pub variance: f64,
    /// Normal-approximation 95% half-width, `1.96 * sqrt(variance / count)`.
    pub ci95: f64,
}

/// Ignores non-finite entries, so means over partially defined scalars
/// (like girths of acyclic components) stay finite.
pub fn summarize_finite(values: &[f64]) -> ScalarSummary {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let count = finite.len() as u64;
    if count == 0 {
        return ScalarSummary {
            count: 0,
            mean: 0.0,
            variance: 0.0,
            ci95: 0.0,
        };
    }
    let mean = finite.iter().sum::<f64>() / count as f64;
    let variance = if count > 1 {
        finite.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64
    } else {
        0.0
    };
    let ci95 = 1.96 * (variance / count as f64).sqrt();
    ScalarSummary {
        count,
        mean,
        variance,
        ci95,
    }
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 3 {
        return Err(StatsError::TooFew {
            need: 3,
            got: xs.len(),
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    // keep the perfectly (anti)correlated cases exact instead of within an ulp
    if xs == ys {
        return Ok(1.0);
    }
    if xs.iter().zip(ys).all(|(x, y)| *x == -*y) {
        return Ok(-1.0);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson r with a Fisher-z 95% interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSummary {
    pub r: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub count: u64,
}

pub fn correlation_summary(xs: &[f64], ys: &[f64]) -> Result<CorrelationSummary, StatsError> {
    let r = pearson(xs, ys)?;
    let n = xs.len() as u64;
    // atanh blows up at |r| = 1; the interval degenerates to a point there
    let (ci_low, ci_high) = if r.abs() >= 1.0 - 1e-12 || n <= 3 {
        (r, r)
    } else {
        let z = r.atanh();
        let half = 1.96 / ((n - 3) as f64).sqrt();
        ((z - half).tanh(), (z + half).tanh())
    };
    Ok(CorrelationSummary {
        r,
        ci_low,
        ci_high,
        count: n,
    })
}

/// Upper-tail p-value of a chi-squared statistic.
pub fn chi_squared_p_value(statistic: f64, dof: f64) -> f64 {
    let dist = ChiSquared::new(dof).expect("positive dof");
    (1.0 - dist.cdf(statistic)).clamp(0.0, 1.0)
}

/// Pearson chi-squared independence statistic of a contingency table with
/// estimated margins; returns (statistic, dof).
pub fn chi_squared_independence(table: &[Vec<u64>]) -> (f64, f64) {
    let rows = table.len();
    let cols = table[0].len();
    let mut row_sum = vec![0.0f64; rows];
    let mut col_sum = vec![0.0f64; cols];
    let mut total = 0.0f64;
    for (i, row) in table.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            row_sum[i] += c as f64;
            col_sum[j] += c as f64;
            total += c as f64;
        }
    }
    let mut stat = 0.0;
    for i in 0..rows {
        for j in 0..cols {
            let expect = row_sum[i] * col_sum[j] / total;
            if expect > 0.0 {
                let d = table[i][j] as f64 - expect;
                stat += d * d / expect;
            }
        }
    }
    (stat, ((rows - 1) * (cols - 1)) as f64)
}

/// Chi-squared homogeneity of two samples over the same categories:
/// a 2 x k independence test.
pub fn chi_squared_homogeneity(a: &[u64], b: &[u64]) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    chi_squared_independence(&[a.to_vec(), b.to_vec()])
}
