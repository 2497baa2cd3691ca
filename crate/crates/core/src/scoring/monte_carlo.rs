use crate::distributions::Distribution;
use crate::error::{Error, Result};

use super::{ExpectedScore, Method, ScoreEngine, ScoringRule};

/// Mean and standard error (unbiased variance) of a sample.
pub(crate) fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1.0) / n).sqrt())
}

impl ScoreEngine {
    /// Monte-Carlo estimate of `S̄(F, G)` from `n` draws of `G`.
    pub fn mc_expected_score(
        &self,
        rule: &ScoringRule,
        forecast: &Distribution,
        truth: &Distribution,
        n: usize,
        seed: u64,
    ) -> Result<ExpectedScore> {
        if n < 2 {
            return Err(Error::Precondition(format!("Monte-Carlo needs n ≥ 2, got {n}")));
        }
        let ys = truth.sample(n, seed);
        let scores = self.score_rule_batch(rule, forecast, &ys)?;
        let (value, stderr) = mean_stderr(&scores);
        Ok(ExpectedScore {
            value,
            abs_error: stderr,
            method: Method::MonteCarlo,
            n_samples: Some(n),
            stderr: Some(stderr),
        })
    }
}
