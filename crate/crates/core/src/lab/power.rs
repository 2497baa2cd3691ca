use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::scoring::ScoringRule;

use super::Lab;

/// One sample size of a power study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRow {
    pub n: usize,
    /// Mean over replications of the average score difference
    /// `S(F_alt, y) - S(G, y)`.
    pub mean_diff: f64,
    /// Mean over replications of that average's standard error.
    pub stderr: f64,
    /// Fraction of replications whose difference exceeds twice its
    /// standard error, i.e. that would reject `F_alt` in favour of `G`.
    pub detect_frac: f64,
}

impl Lab {
    /// How often `reps` independent samples of size `n` from `G` tell the
    /// truth apart from `F_alt` by average CRPS. Replication `r` draws from
    /// stream `r` of `seed`, and both forecasts are scored on the same draws.
    pub fn mc_power_study(
        &self,
        rule: &ScoringRule,
        truth: &Distribution,
        alt: &Distribution,
        n_grid: &[usize],
        reps: usize,
        seed: u64,
    ) -> Result<Vec<PowerRow>> {
        if reps < 2 {
            return Err(Error::Precondition(format!("power study needs at least 2 replications, got {reps}")));
        }
        if let Some(n) = n_grid.iter().find(|&&n| n < 2) {
            return Err(Error::Precondition(format!("sample sizes must be at least 2, got {n}")));
        }
        let mut rows = Vec::with_capacity(n_grid.len());
        for &n in n_grid {
            let (mut sum_diff, mut sum_se, mut detected) = (0.0, 0.0, 0usize);
            for r in 0..reps {
                let ys = truth.sample_stream(n, seed, r as u64);
                let s_alt = self.engine.score_rule_batch(rule, alt, &ys)?;
                let s_truth = self.engine.score_rule_batch(rule, truth, &ys)?;
                let d: Vec<f64> = s_alt.iter().zip(&s_truth).map(|(a, b)| a - b).collect();
                let (mean, se) = crate::scoring::mean_stderr(&d);
                sum_diff += mean;
                sum_se += se;
                if mean > 2.0 * se {
                    detected += 1;
                }
            }
            let k = reps as f64;
            rows.push(PowerRow {
                n,
                mean_diff: sum_diff / k,
                stderr: sum_se / k,
                detect_frac: detected as f64 / k,
            });
        }
        Ok(rows)
    }
}
