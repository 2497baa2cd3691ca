use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::scoring::{ExpectedScore, ScoringRule};
use crate::tail::{tail_compare, TailComparison};

use super::Lab;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub lambda: f64,
    /// `S̄(λF + (1-λ)G, G) - S̄(G, G)`
    pub gap: f64,
    /// `λ/(1-λ)·D`
    pub bound: f64,
    /// abs_error of the gap plus the bound's share of D's error.
    pub abs_error: f64,
    pub satisfied: bool,
}

/// Diagonal-continuity bound on a grid of mixing weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    /// `D = S̄(G, F) - S̄(F, F)`
    pub d: f64,
    pub d_abs_error: f64,
    pub slack_factor: f64,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }
}

/// A mixture `F_ε = λF + (1-λ)G` whose expected score is within `ε` of the
/// optimum while its tail follows `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonConstruction {
    pub epsilon: f64,
    pub d: f64,
    pub lambda_eps: f64,
    pub construct: Distribution,
    /// `S̄(F_ε, G) - S̄(G, G)` as a difference of two expected scores.
    pub measured_gap: f64,
    pub gap_abs_error: f64,
    pub within_epsilon: bool,
    pub functional: Functional,
    pub t_truth: Option<f64>,
    pub t_alt: Option<f64>,
    pub t_construct: Option<f64>,
    /// `F_ε` against `G`.
    pub tail_verdict: TailComparison,
    pub warning: Option<String>,
}

impl Lab {
    /// `D = S̄(G, F) - S̄(F, F)`, the bound's constant.
    ///
    /// For the CRPS family this is `∫ w (F - G)²`, integrated directly.
    pub fn bound_constant(&self, rule: &ScoringRule, f: &Distribution, g: &Distribution) -> Result<ExpectedScore> {
        self.engine.score_divergence(rule, g, f)
    }

    pub fn diagonal_bound_check(&self, rule: &ScoringRule, f: &Distribution, g: &Distribution, grid: &[f64]) -> Result<BoundReport> {
        for &l in grid {
            if !(0.0..1.0).contains(&l) {
                return Err(Error::Precondition(format!("bound grid needs λ in [0, 1), got {l}")));
            }
        }
        let d = self.bound_constant(rule, f, g)?;
        let mut rows = Vec::with_capacity(grid.len());
        for &l in grid {
            let mixed = Distribution::mix(g, f, l)?;
            let gap = self.engine.score_divergence(rule, &mixed, g)?;
            let factor = l / (1.0 - l);
            let bound = factor * d.value;
            let abs_error = gap.abs_error + factor * d.abs_error;
            rows.push(BoundRow {
                lambda: l,
                gap: gap.value,
                bound,
                abs_error,
                satisfied: gap.value <= bound + self.slack(abs_error),
            });
        }
        Ok(BoundReport {
            rows,
            d: d.value,
            d_abs_error: d.abs_error,
            slack_factor: self.slack_factor,
        })
    }

    /// `(λ, gap, bound)` rows; shares its computation with
    /// [`Lab::diagonal_bound_check`].
    pub fn score_gap_curve(&self, rule: &ScoringRule, f: &Distribution, g: &Distribution, grid: &[f64]) -> Result<Vec<BoundRow>> {
        Ok(self.diagonal_bound_check(rule, f, g, grid)?.rows)
    }

    /// Inverts the bound: `λ = ε / (ε + D)` keeps the score gap below `ε`.
    /// An infinite `ε` or `D = 0` returns `F` itself.
    pub fn epsilon_mixture(
        &self,
        rule: &ScoringRule,
        f: &Distribution,
        g: &Distribution,
        epsilon: f64,
        t: Functional,
    ) -> Result<EpsilonConstruction> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidParameter {
                name: "eps",
                value: epsilon,
                reason: "must be positive",
            });
        }
        let d = self.bound_constant(rule, f, g)?.value;
        let mut warning = None;
        let lambda_eps = if d == 0.0 {
            warning = Some("D = 0: the alternative already scores optimally, using λ = 1".to_string());
            1.0
        } else if epsilon.is_infinite() {
            1.0
        } else {
            epsilon / (epsilon + d)
        };
        let construct = Distribution::mix(g, f, lambda_eps)?;
        let s_mix = self.engine.expected_score_rule(rule, &construct, g)?;
        let s_opt = self.engine.expected_score_rule(rule, g, g)?;
        let measured_gap = s_mix.value - s_opt.value;
        let gap_abs_error = s_mix.abs_error + s_opt.abs_error;
        Ok(EpsilonConstruction {
            epsilon,
            d,
            lambda_eps,
            measured_gap,
            gap_abs_error,
            within_epsilon: measured_gap <= epsilon + self.slack(gap_abs_error),
            functional: t,
            t_truth: t.eval(g),
            t_alt: t.eval(f),
            t_construct: t.eval(&construct),
            tail_verdict: tail_compare(&construct, g),
            warning,
            construct,
        })
    }
}
