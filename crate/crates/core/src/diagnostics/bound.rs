use serde::{Deserialize, Serialize};

use crate::circuits::OutputType;
use crate::fourier::SumSquareStats;

/// Measured `sum_k |c_k|^2` against its 2-design value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignBoundReport {
    pub n: usize,
    pub output_type: OutputType,
    pub sum_sq: f64,
    pub variance: f64,
    pub stderr: f64,
    pub theory: f64,
    pub epsilon2: Option<f64>,
    /// `|sum_sq - theory| <= epsilon2 + 3 stderr`; a missing epsilon counts as zero.
    pub satisfied: bool,
}

/// Compare sampled statistics with `1/(2^n+1)` or `1/(2^(n-1)(2^n+1))`.
pub fn design_bound_check(
    n: usize,
    stats: &SumSquareStats,
    output_type: OutputType,
    epsilon2: Option<f64>,
) -> DesignBoundReport {
    let theory = output_type.design_value(n);
    let stderr = stats.stderr();
    let satisfied = (stats.mean - theory).abs() <= epsilon2.unwrap_or(0.0) + 3.0 * stderr;
    DesignBoundReport {
        n,
        output_type,
        sum_sq: stats.mean,
        variance: stats.variance,
        stderr,
        theory,
        epsilon2,
        satisfied,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(mean: f64, variance: f64, n_samples: usize) -> SumSquareStats {
        SumSquareStats {
            mean,
            variance,
            n_samples,
            per_sample: None,
        }
    }

    #[test]
    fn theory_values() {
        let s = stats(0.2, 0.0, 10);
        assert!(
            (design_bound_check(2, &s, OutputType::Expectation, None).theory - 0.2).abs() < 1e-15
        );
        assert!(
            (design_bound_check(2, &s, OutputType::Probability, None).theory - 0.1).abs() < 1e-15
        );
        let r = design_bound_check(8, &s, OutputType::Expectation, None);
        assert!((r.theory - 0.003891).abs() < 1e-6);
    }

    #[test]
    fn satisfaction_uses_epsilon_and_stderr() {
        // stderr = sqrt(0.01 / 100) = 0.01
        let s = stats(0.25, 0.01, 100);
        let r = design_bound_check(2, &s, OutputType::Expectation, Some(0.02));
        assert!((r.stderr - 0.01).abs() < 1e-15);
        assert!(r.satisfied);
        let r = design_bound_check(2, &s, OutputType::Expectation, Some(0.01));
        assert!(!r.satisfied);
        let r = design_bound_check(2, &s, OutputType::Expectation, None);
        assert!(!r.satisfied);
    }
}
