use crate::distributions::Distribution;
use crate::error::{Error, Result};

use super::rules::integrate_piecewise;
use super::{ExpectedScore, Method, ScoreEngine, ScoringFunction};

/// Realised loss of point forecast `x` against observation `y`.
pub fn score_fn(s: &ScoringFunction, x: f64, y: f64) -> f64 {
    match *s {
        ScoringFunction::SquaredError { power } => {
            let d = x - y.powi(power as i32);
            d * d
        }
        ScoringFunction::Pinball { alpha } => {
            let ind = if y <= x { 1.0 } else { 0.0 };
            (ind - alpha) * (x - y)
        }
    }
}

impl ScoreEngine {
    /// `S̄(x, F) = E_F[S(x, Y)]`.
    ///
    /// Squared error uses the closed-form moments of `F`:
    /// `(x - E[Y^k])² + Var(Y^k)`. Pinball loss integrates
    /// `(1 - α)∫_{-∞}^x F + α∫_x^∞ F̄`.
    pub fn expected_score_fn(&self, s: &ScoringFunction, x: f64, dist: &Distribution) -> Result<ExpectedScore> {
        if !x.is_finite() {
            return Err(Error::Precondition(format!("point forecast must be finite, got {x}")));
        }
        match *s {
            ScoringFunction::SquaredError { power } => {
                let (Some(m1), Some(m2)) = (dist.moment(power), dist.moment(2 * power)) else {
                    return Err(Error::InfiniteMoment {
                        what: "squared error expectation",
                        order: 2 * power,
                    });
                };
                let d = x - m1;
                let var = (m2 - m1 * m1).max(0.0);
                let value = d * d + var;
                let abs_error = 8.0 * f64::EPSILON * (x * x + m2.abs() + 2.0 * (x * m1).abs());
                Ok(ExpectedScore::exact(value, abs_error, Method::ClosedForm))
            }
            ScoringFunction::Pinball { alpha } => {
                if !dist.has_finite_mean() {
                    return Err(Error::InfiniteMoment {
                        what: "pinball expectation",
                        order: 1,
                    });
                }
                let knots = dist.breakpoints();
                let step = dist.is_discrete();
                let below = integrate_piecewise(|t| dist.cdf(t), dist.lower_endpoint(), x, &knots, step, &self.quad);
                let above = integrate_piecewise(|t| dist.sf(t), x, dist.upper_endpoint(), &knots, step, &self.quad);
                let value = (1.0 - alpha) * below.value + alpha * above.value;
                if !value.is_finite() {
                    return Err(Error::Divergent("pinball expectation".into()));
                }
                let abs_error = (1.0 - alpha) * below.abs_error + alpha * above.abs_error;
                let method = if step { Method::ClosedForm } else { Method::Quadrature };
                Ok(ExpectedScore::exact(value, abs_error, method))
            }
        }
    }
}
