use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::functional::Functional;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSetStatus {
    /// `T(F_λ) = t` on the whole grid.
    Holds,
    Violated,
    /// Some `T(F_λ)` is undefined.
    Inconclusive,
    /// `T(F0) ≠ T(F1)` (or one is undefined), so there is no level set to test.
    NotApplicable,
}

impl LevelSetStatus {
    pub fn name(&self) -> &'static str {
        match self {
            LevelSetStatus::Holds => "holds",
            LevelSetStatus::Violated => "violated",
            LevelSetStatus::Inconclusive => "inconclusive",
            LevelSetStatus::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetReport {
    pub functional: Functional,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub rows: Vec<(f64, Option<f64>)>,
    pub status: LevelSetStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    Continuous,
    JumpAtZero,
    Inconclusive,
}

impl PathClass {
    pub fn name(&self) -> &'static str {
        match self {
            PathClass::Continuous => "continuous",
            PathClass::JumpAtZero => "jump_at_zero",
            PathClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub functional: Functional,
    /// `(λ, T(λF1 + (1-λ)F0))`, starting at `λ = 0`.
    pub rows: Vec<(f64, Option<f64>)>,
    /// Value at zero predicted from the two smallest positive weights.
    pub extrapolated: Option<f64>,
    pub class: PathClass,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    match grid.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        Some(&l) => Err(Error::MixingWeightOutOfRange(l)),
        None => Ok(()),
    }
}

fn path(t: Functional, f0: &Distribution, f1: &Distribution, grid: &[f64]) -> Result<Vec<(f64, Option<f64>)>> {
    grid.iter()
        .map(|&l| Ok((l, t.eval(&Distribution::mix(f0, f1, l)?))))
        .collect()
}

pub fn level_set_convexity_check(t: Functional, f0: &Distribution, f1: &Distribution, grid: &[f64]) -> Result<LevelSetReport> {
    check_grid(grid)?;
    let (t0, t1) = (t.eval(f0), t.eval(f1));
    let rows = path(t, f0, f1, grid)?;
    let status = match (t0, t1) {
        (Some(a), Some(b)) if t.agrees(a, b) => {
            if rows.iter().any(|r| r.1.is_none()) {
                LevelSetStatus::Inconclusive
            } else if rows.iter().all(|r| t.agrees(r.1.unwrap(), a)) {
                LevelSetStatus::Holds
            } else {
                LevelSetStatus::Violated
            }
        }
        _ => LevelSetStatus::NotApplicable,
    };
    Ok(LevelSetReport {
        functional: t,
        t0,
        t1,
        rows,
        status,
    })
}

/// Walks `λ ↦ T(λF1 + (1-λ)F0)` and decides whether the value at zero is
/// the limit of the values at small positive `λ`.
pub fn mixture_continuity_probe(t: Functional, f0: &Distribution, f1: &Distribution, grid: &[f64]) -> Result<ContinuityReport> {
    check_grid(grid)?;
    let mut lambdas: Vec<f64> = grid.iter().copied().filter(|&l| l > 0.0).collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    lambdas.insert(0, 0.0);
    let rows = path(t, f0, f1, &lambdas)?;

    let undefined = rows.iter().any(|r| r.1.is_none());
    let extrapolated = match rows.get(1..3) {
        _ if undefined => None,
        Some([(l1, Some(v1)), (l2, Some(v2))]) => Some(if v1 == v2 { *v1 } else { v1 - (v2 - v1) * l1 / (l2 - l1) }),
        _ => rows.get(1).and_then(|r| r.1),
    };
    let class = match (rows[0].1, extrapolated) {
        (Some(at_zero), Some(limit)) => {
            // infinite values (rapid variation, unbounded support) only match exactly
            let close = at_zero.is_finite()
                && limit.is_finite()
                && (at_zero - limit).abs() <= t.tolerance().max(1e-6) * at_zero.abs().max(1.0);
            if at_zero == limit || close {
                PathClass::Continuous
            } else {
                PathClass::JumpAtZero
            }
        }
        _ => PathClass::Inconclusive,
    };
    Ok(ContinuityReport {
        functional: t,
        rows,
        extrapolated,
        class,
    })
}
