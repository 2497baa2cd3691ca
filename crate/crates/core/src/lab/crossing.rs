use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::scoring::ScoringFunction;

use super::Lab;

/// Mixing weight at which two point forecasts score equally.
///
/// With `a = S̄(x0, F1) - S̄(x1, F1) > 0` and `b = S̄(x0, F0) - S̄(x1, F0) < 0`,
/// affinity of `λ ↦ S̄(x, F_λ)` puts the crossing at `λ* = -b / (a - b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingResult {
    pub lambda_star: f64,
    pub a: f64,
    pub b: f64,
    /// `|S̄(x0, F_λ*) - S̄(x1, F_λ*)|` evaluated on the mixture itself.
    pub residual: f64,
    /// Summed abs_error of the four expectations behind `a` and `b`.
    pub abs_error: f64,
    /// Summed abs_error of the two expectations behind `residual`.
    pub residual_abs_error: f64,
    pub slack: f64,
    /// Root of the score difference found by bisection on `[0, 1]`.
    pub lambda_bisect: f64,
    pub affinity: Vec<AffinityRow>,
}

impl CrossingResult {
    pub fn residual_ok(&self) -> bool {
        self.residual <= self.slack
    }

    pub fn bisect_agrees(&self, tol: f64) -> bool {
        (self.lambda_star - self.lambda_bisect).abs() <= tol
    }

    pub fn affinity_max_deviation(&self) -> f64 {
        self.affinity.iter().map(|r| r.deviation()).fold(0.0, f64::max)
    }
}

/// Score difference on the mixture against its affine prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinityRow {
    pub lambda: f64,
    pub direct: f64,
    pub affine: f64,
}

impl AffinityRow {
    pub fn deviation(&self) -> f64 {
        (self.direct - self.affine).abs()
    }
}

pub const AFFINITY_LAMBDAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const BISECT_TOL: f64 = 1e-10;

impl Lab {
    /// `S̄(x0, F) - S̄(x1, F)` and its summed abs_error.
    fn score_difference(&self, s: &ScoringFunction, x0: f64, x1: f64, f: &Distribution) -> Result<(f64, f64)> {
        let e0 = self.engine.expected_score_fn(s, x0, f)?;
        let e1 = self.engine.expected_score_fn(s, x1, f)?;
        Ok((e0.value - e1.value, e0.abs_error + e1.abs_error))
    }

    pub fn crossing_lambda(
        &self,
        s: &ScoringFunction,
        x0: f64,
        x1: f64,
        f0: &Distribution,
        f1: &Distribution,
    ) -> Result<CrossingResult> {
        let (a, err_a) = self.score_difference(s, x0, x1, f1)?;
        let (b, err_b) = self.score_difference(s, x0, x1, f0)?;
        if !(a > 0.0) {
            return Err(Error::SignPattern(format!(
                "S̄(x0, F1) - S̄(x1, F1) = {a} is not positive; x1 does not beat x0 under F1"
            )));
        }
        if !(b < 0.0) {
            return Err(Error::SignPattern(format!(
                "S̄(x0, F0) - S̄(x1, F0) = {b} is not negative; x0 does not beat x1 under F0"
            )));
        }
        let lambda_star = -b / (a - b);
        let mixed = Distribution::mix(f0, f1, lambda_star)?;
        let (d, residual_abs_error) = self.score_difference(s, x0, x1, &mixed)?;

        let mut affinity = Vec::with_capacity(AFFINITY_LAMBDAS.len());
        for &l in &AFFINITY_LAMBDAS {
            let m = Distribution::mix(f0, f1, l)?;
            let (direct, _) = self.score_difference(s, x0, x1, &m)?;
            affinity.push(AffinityRow {
                lambda: l,
                direct,
                affine: l * a + (1.0 - l) * b,
            });
        }

        let lambda_bisect = self.bisect_crossing(s, x0, x1, f0, f1)?;
        Ok(CrossingResult {
            lambda_star,
            a,
            b,
            residual: d.abs(),
            abs_error: err_a + err_b,
            residual_abs_error,
            slack: self.slack(residual_abs_error + err_a + err_b),
            lambda_bisect,
            affinity,
        })
    }

    /// Sign-change bisection for the crossing, independent of the closed form.
    fn bisect_crossing(&self, s: &ScoringFunction, x0: f64, x1: f64, f0: &Distribution, f1: &Distribution) -> Result<f64> {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            let m = Distribution::mix(f0, f1, mid)?;
            let (d, _) = self.score_difference(s, x0, x1, &m)?;
            if d < 0.0 {
                lo = mid;
            } else if d > 0.0 {
                hi = mid;
            } else {
                return Ok(mid);
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
