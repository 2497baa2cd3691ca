use crate::error::{Error, Result};

use super::Distribution;

/// Finite mixture with strictly positive weights summing to one. Components
/// are never themselves mixtures: nested mixtures are flattened on entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    components: Vec<(f64, Distribution)>,
}

impl Mixture {
    pub fn new(components: Vec<(f64, Distribution)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyMixture);
        }
        for &(w, _) in &components {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    value: w,
                    reason: "mixture weights must be positive and finite",
                });
            }
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        let scale = if (total - 1.0).abs() <= 1e-12 { 1.0 } else { total };
        let mut flat = Vec::with_capacity(components.len());
        for (w, d) in components {
            push_flat(&mut flat, w / scale, d);
        }
        Ok(Self { components: flat })
    }

    /// `(1 - lambda)·f0 + lambda·f1` without renormalising, so the mixture
    /// CDF is the affine combination of the operands' CDFs term by term.
    pub(crate) fn affine(f0: Distribution, f1: Distribution, lambda: f64) -> Self {
        let mut flat = Vec::new();
        push_flat(&mut flat, 1.0 - lambda, f0);
        push_flat(&mut flat, lambda, f1);
        Self { components: flat }
    }

    pub fn components(&self) -> &[(f64, Distribution)] {
        &self.components
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.components.iter().map(|(w, _)| *w)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.components.iter().map(|(w, d)| w * d.cdf(x)).sum()
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.components.iter().map(|(w, d)| w * d.sf(x)).sum()
    }
}

fn push_flat(out: &mut Vec<(f64, Distribution)>, weight: f64, d: Distribution) {
    match d {
        Distribution::Mixture(m) => {
            for (w, c) in m.components {
                out.push((weight * w, c));
            }
        }
        other => out.push((weight, other)),
    }
}
