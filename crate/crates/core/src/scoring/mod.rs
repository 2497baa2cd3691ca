//! Scoring rules for distributional forecasts (CRPS and threshold-weighted
//! CRPS) and scoring functions for point forecasts, with expected-score
//! engines.
//!
//! Notation follows the usual convention: `S̄(F, G)` is the expected score
//! of forecast `F` when the observation is drawn from `G`, and
//! `S̄(x, G)` the same for a point forecast `x`.

mod functions;
mod monte_carlo;
mod rules;

use std::fmt;

pub use functions::score_fn;
pub(crate) use monte_carlo::mean_stderr;

use crate::error::{Error, Result};
use crate::quadrature::QuadConfig;

/// Scoring rule for a distributional forecast.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoringRule {
    /// `∫ (F(x) - 1{y ≤ x})² dx`
    Crps,
    /// `∫ 1{x ≥ threshold} (F(x) - 1{y ≤ x})² dx`
    Wcrps { threshold: f64 },
}

impl ScoringRule {
    pub fn wcrps(threshold: f64) -> Result<Self> {
        if threshold.is_finite() {
            Ok(ScoringRule::Wcrps { threshold })
        } else {
            Err(Error::InvalidParameter {
                name: "q",
                value: threshold,
                reason: "wCRPS threshold must be finite",
            })
        }
    }

    /// Left end of the weight's support.
    pub fn weight_start(&self) -> f64 {
        match self {
            ScoringRule::Crps => f64::NEG_INFINITY,
            ScoringRule::Wcrps { threshold } => *threshold,
        }
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringRule::Crps => f.write_str("crps"),
            ScoringRule::Wcrps { threshold } => write!(f, "wcrps(q={threshold})"),
        }
    }
}

/// Scoring function for a point forecast `x` of an observation `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoringFunction {
    /// `(x - y^power)²`, consistent for the moment `E[Y^power]`. Power 1 is
    /// the plain squared error.
    SquaredError { power: u32 },
    /// `(1{y ≤ x} - alpha)(x - y)`, consistent for the alpha-quantile.
    Pinball { alpha: f64 },
}

impl ScoringFunction {
    pub fn squared_error(power: u32) -> Result<Self> {
        if (1..=3).contains(&power) {
            Ok(ScoringFunction::SquaredError { power })
        } else {
            Err(Error::InvalidParameter {
                name: "k",
                value: f64::from(power),
                reason: "power must be 1, 2 or 3",
            })
        }
    }

    pub fn pinball(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(ScoringFunction::Pinball { alpha })
        } else {
            Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "pinball level must lie in (0, 1)",
            })
        }
    }
}

impl fmt::Display for ScoringFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringFunction::SquaredError { power } => write!(f, "se(k={power})"),
            ScoringFunction::Pinball { alpha } => write!(f, "pinball(alpha={alpha})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// A numerically computed expectation.
///
/// `stderr` and `n_samples` are present exactly when the method is Monte
/// Carlo, in which case `abs_error` equals the standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedScore {
    pub value: f64,
    pub abs_error: f64,
    pub method: Method,
    pub n_samples: Option<usize>,
    pub stderr: Option<f64>,
}

impl ExpectedScore {
    pub(crate) fn exact(value: f64, abs_error: f64, method: Method) -> Self {
        Self {
            value,
            abs_error,
            method,
            n_samples: None,
            stderr: None,
        }
    }
}

/// Expected-score engine; holds the quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScoreEngine {
    pub quad: QuadConfig,
}

impl ScoreEngine {
    pub fn new(quad: QuadConfig) -> Self {
        Self { quad }
    }
}
