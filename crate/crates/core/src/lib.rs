//! Proper scoring rules, tail max-functionals, and the constructions that
//! show the former cannot tell the latter apart.
//!
//! * [`distributions`]: parametric families, mixtures and empirical
//!   distributions with analytic tail characteristics.
//! * [`tail`]: tail order and tail equivalence, analytic and probed.
//! * [`scoring`]: CRPS / wCRPS and point-forecast scoring functions with
//!   quadrature and Monte-Carlo expected scores.
//! * [`lab`]: expected-score crossings, level-set and mixture-continuity
//!   checks, the diagonal-continuity bound and ε-close mixtures.
//! * [`cli`]: spec-string grammar and the CSV experiment runner behind
//!   the `tailscore` binary.

pub mod cli;
pub mod distributions;
pub mod error;
pub mod functional;
pub mod lab;
pub mod quadrature;
pub mod scoring;
pub mod tail;

pub use distributions::{Distribution, TailProfile};
pub use error::{Error, Result};
pub use functional::Functional;
pub use scoring::{ExpectedScore, Method, ScoreEngine, ScoringFunction, ScoringRule};
pub use tail::{tail_compare, tail_equivalent, TailComparison, TailVerdict};
