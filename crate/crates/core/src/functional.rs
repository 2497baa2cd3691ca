use std::fmt;
use std::str::FromStr;

use crate::distributions::Distribution;

/// Statistical functionals the crate can evaluate analytically (or, for
/// the M-index, by a converged probe).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Functional {
    UpperEndpoint,
    Evi,
    RvIndex,
    MIndex,
    Mean,
}

impl Functional {
    pub const ALL: [Functional; 5] = [
        Functional::UpperEndpoint,
        Functional::Evi,
        Functional::RvIndex,
        Functional::MIndex,
        Functional::Mean,
    ];

    pub fn eval(&self, d: &Distribution) -> Option<f64> {
        match self {
            Functional::UpperEndpoint => Some(d.upper_endpoint()),
            Functional::Evi => d.evi(),
            Functional::RvIndex => d.rv_index(),
            Functional::MIndex => d.m_index().value(),
            Functional::Mean => d.mean(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Functional::UpperEndpoint => "upper_endpoint",
            Functional::Evi => "evi",
            Functional::RvIndex => "rv_index",
            Functional::MIndex => "m_index",
            Functional::Mean => "mean",
        }
    }

    /// Relative tolerance for treating two values of this functional as
    /// equal. Zero for the analytic ones.
    pub fn tolerance(&self) -> f64 {
        match self {
            Functional::MIndex => 1e-3,
            Functional::Mean => 1e-12,
            _ => 0.0,
        }
    }

    pub fn agrees(&self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        if !a.is_finite() || !b.is_finite() {
            return false;
        }
        (a - b).abs() <= self.tolerance() * a.abs().max(b.abs()).max(1.0)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Functional {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Functional::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown functional {s:?}; expected one of upper_endpoint, evi, rv_index, m_index, mean"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Functional::ALL {
            assert_eq!(t.name().parse::<Functional>().unwrap(), t);
        }
        assert!("median".parse::<Functional>().is_err());
    }

    #[test]
    fn agreement_handles_infinities() {
        let t = Functional::RvIndex;
        assert!(t.agrees(f64::NEG_INFINITY, f64::NEG_INFINITY));
        assert!(!t.agrees(f64::NEG_INFINITY, -2.0));
        assert!(!t.agrees(-2.0, -2.0000001));
        assert!(Functional::MIndex.agrees(-2.0, -2.001));
    }
}
