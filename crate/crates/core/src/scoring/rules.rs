//! CRPS and threshold-weighted CRPS.
//!
//! For an observation `y` the score splits at `y' = max(y, q)` into
//! `∫_{q}^{y'} F² + ∫_{y'}^{∞} F̄²`. Taking expectations over `Y ~ G`
//! turns `1{y ≤ x}` into `G(x)` and gives the single integral
//! `S̄(F, G) = ∫_q^∞ (F - G)² + G·Ḡ dx`, whose first term alone is the
//! divergence `S̄(F, G) - S̄(G, G)`.

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Integral, QuadConfig};

use super::{ExpectedScore, Method, ScoreEngine, ScoringRule};

fn require_mean(d: &Distribution, what: &'static str) -> Result<()> {
    if d.has_finite_mean() {
        Ok(())
    } else {
        Err(Error::InfiniteMoment { what, order: 1 })
    }
}

fn finite_or_divergent(r: Integral, what: &str) -> Result<Integral> {
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Divergent(what.to_string()))
    }
}

/// `F(x) - G(x)`, taken from whichever side keeps precision.
#[inline]
fn cdf_gap(f: &Distribution, g: &Distribution, x: f64) -> f64 {
    let fc = f.cdf(x);
    if fc > 0.5 {
        g.sf(x) - f.sf(x)
    } else {
        fc - g.cdf(x)
    }
}

/// Integral of `f` over `[a, b]`. With `step` set, `f` must be constant
/// between consecutive `knots` and the sum is exact; otherwise adaptive
/// quadrature with the knots as breakpoints.
pub(crate) fn integrate_piecewise(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    knots: &[f64],
    step: bool,
    cfg: &QuadConfig,
) -> Integral {
    if !(a < b) {
        return Integral::ZERO;
    }
    let from = knots.partition_point(|&k| k <= a);
    let to = knots.partition_point(|&k| k < b);
    let inner = if from < to { &knots[from..to] } else { &[][..] };
    if !step {
        return integrate(f, a, b, inner, cfg);
    }
    debug_assert!(a.is_finite() && b.is_finite());
    let mut value = 0.0;
    let mut left = a;
    for &k in inner.iter().chain(std::iter::once(&b)) {
        value += (k - left) * f(0.5 * (left + k));
        left = k;
    }
    Integral {
        value,
        abs_error: 4.0 * f64::EPSILON * value.abs() * (inner.len() + 1) as f64,
        evaluations: inner.len() + 1,
        converged: true,
    }
}

fn merged_knots(ds: &[&Distribution], extra: &[f64]) -> Vec<f64> {
    let mut k: Vec<f64> = ds.iter().flat_map(|d| d.breakpoints()).chain(extra.iter().copied()).collect();
    k.retain(|x| x.is_finite());
    k.sort_by(f64::total_cmp);
    k.dedup();
    k
}

impl ScoreEngine {
    /// Realised score `S(F, y)`.
    pub fn score_rule(&self, rule: &ScoringRule, forecast: &Distribution, y: f64) -> Result<f64> {
        self.score_rule_integral(rule, forecast, y).map(|r| r.value)
    }

    /// Realised score with its quadrature error.
    pub fn score_rule_integral(&self, rule: &ScoringRule, forecast: &Distribution, y: f64) -> Result<Integral> {
        require_mean(forecast, "forecast")?;
        if !y.is_finite() {
            return Err(Error::Precondition(format!("observation must be finite, got {y}")));
        }
        let start = rule.weight_start();
        let y = y.max(start);
        let lo = start.max(forecast.lower_endpoint());
        let hi = forecast.upper_endpoint();
        let knots = merged_knots(&[forecast], &[]);
        let step = forecast.is_discrete();
        let below = integrate_piecewise(
            |x| {
                let c = forecast.cdf(x);
                c * c
            },
            lo,
            y,
            &knots,
            step,
            &self.quad,
        );
        let above = integrate_piecewise(
            |x| {
                let s = forecast.sf(x);
                s * s
            },
            y,
            hi,
            &knots,
            step,
            &self.quad,
        );
        finite_or_divergent(below + above, "realised score")
    }

    /// Realised scores for many observations at once. Observations are
    /// sorted and the two half-line integrals accumulated piece by piece,
    /// so the cost is one short integral per observation.
    pub fn score_rule_batch(&self, rule: &ScoringRule, forecast: &Distribution, ys: &[f64]) -> Result<Vec<f64>> {
        require_mean(forecast, "forecast")?;
        if let Some(bad) = ys.iter().find(|y| !y.is_finite()) {
            return Err(Error::Precondition(format!("observation must be finite, got {bad}")));
        }
        if ys.is_empty() {
            return Ok(Vec::new());
        }
        let start = rule.weight_start();
        let lo = start.max(forecast.lower_endpoint());
        let hi = forecast.upper_endpoint();
        let knots = merged_knots(&[forecast], &[]);
        let step = forecast.is_discrete();
        let cfg = self.quad.with_abs_tol(self.quad.abs_tol * 1e-3);
        let sq_cdf = |x: f64| {
            let c = forecast.cdf(x);
            c * c
        };
        let sq_sf = |x: f64| {
            let s = forecast.sf(x);
            s * s
        };

        let mut order: Vec<usize> = (0..ys.len()).collect();
        order.sort_by(|&i, &j| ys[i].total_cmp(&ys[j]));
        let clamped: Vec<f64> = order.iter().map(|&i| ys[i].max(start)).collect();

        let mut below = vec![0.0; clamped.len()];
        let mut acc = 0.0;
        let mut left = lo;
        for (slot, &y) in below.iter_mut().zip(&clamped) {
            if y > left {
                acc += integrate_piecewise(sq_cdf, left, y, &knots, step, &cfg).value;
                left = y;
            }
            *slot = acc;
        }

        let mut above = vec![0.0; clamped.len()];
        let mut acc = 0.0;
        let mut right = hi;
        for (slot, &y) in above.iter_mut().zip(&clamped).rev() {
            if y < right {
                acc += integrate_piecewise(sq_sf, y, right, &knots, step, &cfg).value;
                right = y;
            }
            *slot = acc;
        }

        let mut out = vec![0.0; ys.len()];
        for (k, &i) in order.iter().enumerate() {
            out[i] = below[k] + above[k];
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergent("realised score".into()));
        }
        Ok(out)
    }

    /// `S̄(F, G) = E_G[S(F, Y)]`.
    pub fn expected_score_rule(&self, rule: &ScoringRule, forecast: &Distribution, truth: &Distribution) -> Result<ExpectedScore> {
        self.expected_integral(rule, forecast, truth, true, &self.quad)
    }

    /// `S̄(F, G) - S̄(G, G) = ∫ w (F - G)²`, integrated directly so that
    /// small divergences keep their relative accuracy.
    pub fn score_divergence(&self, rule: &ScoringRule, forecast: &Distribution, truth: &Distribution) -> Result<ExpectedScore> {
        let cfg = QuadConfig { abs_tol: 0.0, ..self.quad };
        self.expected_integral(rule, forecast, truth, false, &cfg)
    }

    fn expected_integral(
        &self,
        rule: &ScoringRule,
        forecast: &Distribution,
        truth: &Distribution,
        with_entropy: bool,
        cfg: &QuadConfig,
    ) -> Result<ExpectedScore> {
        require_mean(forecast, "forecast")?;
        require_mean(truth, "observation distribution")?;
        let start = rule.weight_start();
        let lo = start.max(forecast.lower_endpoint().min(truth.lower_endpoint()));
        let hi = forecast.upper_endpoint().max(truth.upper_endpoint());
        let step = forecast.is_discrete() && truth.is_discrete();
        let method = if step { Method::ClosedForm } else { Method::Quadrature };
        if !(lo < hi) {
            return Ok(ExpectedScore::exact(0.0, 0.0, method));
        }
        let knots = merged_knots(&[forecast, truth], &[start]);
        let r = integrate_piecewise(
            |x| {
                let d = cdf_gap(forecast, truth, x);
                if with_entropy {
                    d * d + truth.cdf(x) * truth.sf(x)
                } else {
                    d * d
                }
            },
            lo,
            hi,
            &knots,
            step,
            cfg,
        );
        let r = finite_or_divergent(r, "expected score")?;
        Ok(ExpectedScore::exact(r.value, r.abs_error, method))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> ScoreEngine {
        ScoreEngine::default()
    }

    fn unif() -> Distribution {
        Distribution::uniform(0.0, 1.0).unwrap()
    }

    #[test]
    fn perfect_point_forecast_scores_zero() {
        let d = Distribution::point(1.25).unwrap();
        assert_eq!(engine().score_rule(&ScoringRule::Crps, &d, 1.25).unwrap(), 0.0);
    }

    #[test]
    fn crps_uniform_at_midpoint() {
        let v = engine().score_rule(&ScoringRule::Crps, &unif(), 0.5).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn crps_of_point_forecast_is_absolute_error() {
        let d = Distribution::point(1.0).unwrap();
        for y in [-2.0, 0.5, 1.0, 4.0] {
            let v = engine().score_rule(&ScoringRule::Crps, &d, y).unwrap();
            assert!((v - (y - 1.0f64).abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn crps_normal_closed_form() {
        // σ[z(2Φ(z) - 1) + 2φ(z) - 1/√π]
        let n = Distribution::normal(0.0, 1.0).unwrap();
        let std = Distribution::normal(0.0, 1.0).unwrap();
        for y in [-1.3f64, 0.0, 0.7, 2.5] {
            let phi = (-0.5 * y * y).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let expected = y * (2.0 * std.cdf(y) - 1.0) + 2.0 * phi - 1.0 / std::f64::consts::PI.sqrt();
            let v = engine().score_rule(&ScoringRule::Crps, &n, y).unwrap();
            assert!((v - expected).abs() < 1e-10, "{y}: {v} vs {expected}");
        }
    }

    #[test]
    fn wcrps_with_low_threshold_equals_crps() {
        let w = ScoringRule::wcrps(-1e6).unwrap();
        let a = engine().score_rule(&w, &unif(), 0.5).unwrap();
        let b = engine().score_rule(&ScoringRule::Crps, &unif(), 0.5).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn wcrps_below_threshold_observation() {
        // y below q: only ∫_q^∞ F̄² remains
        let w = ScoringRule::wcrps(0.5).unwrap();
        let v = engine().score_rule(&w, &unif(), 0.1).unwrap();
        assert!((v - 1.0 / 24.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn infinite_mean_forecast_is_rejected() {
        let p = Distribution::pareto(1.0, 1.0).unwrap();
        assert!(matches!(
            engine().score_rule(&ScoringRule::Crps, &p, 2.0),
            Err(Error::InfiniteMoment { .. })
        ));
        let g = Distribution::exponential(1.0).unwrap();
        assert!(engine().expected_score_rule(&ScoringRule::Crps, &g, &p).is_err());
        assert!(ScoringRule::wcrps(f64::INFINITY).is_err());
    }

    #[test]
    fn expected_crps_uniform_self() {
        let r = engine().expected_score_rule(&ScoringRule::Crps, &unif(), &unif()).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(r.method, Method::Quadrature);
        let z = Distribution::point(0.0).unwrap();
        let r = engine().expected_score_rule(&ScoringRule::Crps, &z, &z).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.method, Method::ClosedForm);
    }

    #[test]
    fn discrete_expected_scores_are_exact() {
        // F = δ0, G = ½δ0 + ½δ2: E|0 - Y| = 1
        let f = Distribution::point(0.0).unwrap();
        let g = Distribution::mix(&f, &Distribution::point(2.0).unwrap(), 0.5).unwrap();
        let r = engine().expected_score_rule(&ScoringRule::Crps, &f, &g).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn batch_matches_single_evaluations() {
        let e = engine();
        let f = Distribution::mix(
            &Distribution::exponential(1.0).unwrap(),
            &Distribution::pareto(2.5, 1.0).unwrap(),
            0.3,
        )
        .unwrap();
        let ys = [3.0, -1.0, 0.5, 0.5, 40.0, 1.0];
        for rule in [ScoringRule::Crps, ScoringRule::wcrps(0.8).unwrap()] {
            let batch = e.score_rule_batch(&rule, &f, &ys).unwrap();
            for (y, b) in ys.iter().zip(&batch) {
                let s = e.score_rule(&rule, &f, *y).unwrap();
                assert!((s - b).abs() < 1e-9, "{rule} {y}: {s} vs {b}");
            }
        }
        let d = Distribution::empirical(vec![0.0, 1.0, 1.0, 4.0]).unwrap();
        let batch = e.score_rule_batch(&ScoringRule::Crps, &d, &ys).unwrap();
        for (y, b) in ys.iter().zip(&batch) {
            let s = e.score_rule(&ScoringRule::Crps, &d, *y).unwrap();
            assert!((s - b).abs() < 1e-12);
        }
    }

    #[test]
    fn divergence_is_squared_cdf_distance() {
        // F = U(0,1), G = U(0,2): ∫0^1 (x/2)² + ∫1^2 (1 - x/2)² = 1/12 + 1/12
        let f = unif();
        let g = Distribution::uniform(0.0, 2.0).unwrap();
        let d = engine().score_divergence(&ScoringRule::Crps, &f, &g).unwrap();
        assert!((d.value - 1.0 / 6.0).abs() < 1e-12, "{}", d.value);
        let a = engine().expected_score_rule(&ScoringRule::Crps, &f, &g).unwrap();
        let b = engine().expected_score_rule(&ScoringRule::Crps, &g, &g).unwrap();
        assert!((a.value - b.value - d.value).abs() < 1e-12);
    }
}
