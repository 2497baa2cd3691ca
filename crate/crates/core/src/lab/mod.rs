//! Numerical witnesses for the non-elicitability of tail max-functionals.
//!
//! Every check carries its numerical slack: `slack_factor` times the summed
//! `abs_error` of the expectations it compares. The factor defaults to 10.

mod bound;
mod crossing;
mod paths;
mod power;

pub use bound::{BoundReport, BoundRow, EpsilonConstruction};
pub use crossing::{AffinityRow, CrossingResult};
pub use paths::{level_set_convexity_check, mixture_continuity_probe, ContinuityReport, LevelSetReport, LevelSetStatus, PathClass};
pub use power::PowerRow;

use crate::scoring::ScoreEngine;

pub const DEFAULT_SLACK: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lab {
    pub engine: ScoreEngine,
    pub slack_factor: f64,
}

impl Default for Lab {
    fn default() -> Self {
        Self {
            engine: ScoreEngine::default(),
            slack_factor: DEFAULT_SLACK,
        }
    }
}

impl Lab {
    pub fn new(engine: ScoreEngine, slack_factor: f64) -> Self {
        Self { engine, slack_factor }
    }

    pub(crate) fn slack(&self, abs_error: f64) -> f64 {
        self.slack_factor * abs_error
    }
}
