//! Value-semantic univariate distributions.
//!
//! A [`Distribution`] is immutable once built; every query is a pure
//! function of its parameters. Survival functions are evaluated directly
//! (never as `1 - cdf`) so that tail probes stay accurate far beyond
//! `1e-12`.

mod empirical;
mod families;
mod mixture;

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use empirical::{Empirical, EmpiricalFileError};
pub use families::{Exponential, Gev, Gpd, Normal, Pareto, PointMass, Uniform};
pub use mixture::Mixture;

use crate::error::{Error, Result};
use crate::tail::{self, MIndex, TailShape};

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Pareto(Pareto),
    Gpd(Gpd),
    Gev(Gev),
    Exponential(Exponential),
    Uniform(Uniform),
    Normal(Normal),
    PointMass(PointMass),
    Mixture(Mixture),
    Empirical(Empirical),
}

/// Analytic tail characteristics of a distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProfile {
    pub upper_endpoint: f64,
    pub evi: Option<f64>,
    /// Index of regular variation of the survival function; `-∞` marks
    /// rapid variation.
    pub rv_index: Option<f64>,
    pub m_index: MIndex,
}

macro_rules! each_simple {
    ($self:ident, $d:ident => $body:expr, mix $m:ident => $mbody:expr) => {
        match $self {
            Distribution::Pareto($d) => $body,
            Distribution::Gpd($d) => $body,
            Distribution::Gev($d) => $body,
            Distribution::Exponential($d) => $body,
            Distribution::Uniform($d) => $body,
            Distribution::Normal($d) => $body,
            Distribution::PointMass($d) => $body,
            Distribution::Empirical($d) => $body,
            Distribution::Mixture($m) => $mbody,
        }
    };
}

impl Distribution {
    pub fn pareto(alpha: f64, scale: f64) -> Result<Self> {
        Pareto::new(alpha, scale).map(Self::Pareto)
    }

    pub fn gpd(gamma: f64, sigma: f64, mu: f64) -> Result<Self> {
        Gpd::new(gamma, sigma, mu).map(Self::Gpd)
    }

    pub fn gev(gamma: f64, mu: f64, sigma: f64) -> Result<Self> {
        Gev::new(gamma, mu, sigma).map(Self::Gev)
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Exponential::new(rate).map(Self::Exponential)
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Uniform::new(a, b).map(Self::Uniform)
    }

    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        Normal::new(mu, sigma).map(Self::Normal)
    }

    pub fn point(c: f64) -> Result<Self> {
        PointMass::new(c).map(Self::PointMass)
    }

    pub fn mixture(components: Vec<(f64, Distribution)>) -> Result<Self> {
        Mixture::new(components).map(Self::Mixture)
    }

    pub fn empirical(sample: Vec<f64>) -> Result<Self> {
        Empirical::new(sample).map(Self::Empirical)
    }

    /// `lambda·f1 + (1 - lambda)·f0`. The endpoints return the operands
    /// themselves.
    pub fn mix(f0: &Distribution, f1: &Distribution, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::MixingWeightOutOfRange(lambda));
        }
        if lambda == 0.0 {
            return Ok(f0.clone());
        }
        if lambda == 1.0 {
            return Ok(f1.clone());
        }
        Ok(Self::Mixture(Mixture::affine(f0.clone(), f1.clone(), lambda)))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        each_simple!(self, d => d.cdf(x), mix m => m.cdf(x))
    }

    /// Survival function `P(X > x)`.
    pub fn sf(&self, x: f64) -> f64 {
        each_simple!(self, d => d.sf(x), mix m => m.sf(x))
    }

    /// Generalised inverse `inf{x : F(x) ≥ p}` for `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(self.quantile_unchecked(p))
    }

    /// Inverse survival `inf{x : F̄(x) ≤ q}` for `q ∈ (0, 1)`; accurate for
    /// tiny `q` where `quantile(1 - q)` would lose the tail.
    pub fn isf(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::ProbabilityOutOfRange(q));
        }
        Ok(self.isf_unchecked(q))
    }

    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        match self {
            Distribution::Pareto(d) => d.quantile(p),
            Distribution::Gpd(d) => d.quantile(p),
            Distribution::Gev(d) => d.quantile(p),
            Distribution::Exponential(d) => d.quantile(p),
            Distribution::Uniform(d) => d.quantile(p),
            Distribution::Normal(d) => d.quantile(p),
            Distribution::PointMass(d) => d.c(),
            Distribution::Empirical(d) => d.quantile(p),
            Distribution::Mixture(m) => {
                let bracket = bracket(m, |c| c.quantile_unchecked(p));
                invert_monotone(bracket, |x| m.cdf(x) >= p)
            }
        }
    }

    pub(crate) fn isf_unchecked(&self, q: f64) -> f64 {
        match self {
            Distribution::Pareto(d) => d.isf(q),
            Distribution::Gpd(d) => d.isf(q),
            Distribution::Gev(d) => d.isf(q),
            Distribution::Exponential(d) => d.isf(q),
            Distribution::Uniform(d) => d.isf(q),
            Distribution::Normal(d) => d.isf(q),
            Distribution::PointMass(d) => d.c(),
            Distribution::Empirical(d) => d.quantile(1.0 - q),
            Distribution::Mixture(m) => {
                let bracket = bracket(m, |c| c.isf_unchecked(q));
                invert_monotone(bracket, |x| m.sf(x) <= q)
            }
        }
    }

    /// `n` draws, deterministic in `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        self.sample_stream(n, seed, 0)
    }

    /// `n` draws from substream `stream` of `seed`. Distinct streams are
    /// independent, so replication `i` can use stream `i` regardless of
    /// how replications are scheduled.
    pub fn sample_stream(&self, n: usize, seed: u64, stream: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        (0..n).map(|_| self.draw(&mut rng)).collect()
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Distribution::PointMass(d) => d.c(),
            Distribution::Mixture(m) => {
                // composition: pick a component, then invert its CDF
                let u: f64 = rng.sample(rand::distributions::Open01);
                let mut acc = 0.0;
                let last = m.components().len() - 1;
                for (i, (w, c)) in m.components().iter().enumerate() {
                    acc += w;
                    if u < acc || i == last {
                        return c.draw(rng);
                    }
                }
                unreachable!()
            }
            other => other.quantile_unchecked(rng.sample(rand::distributions::Open01)),
        }
    }

    /// Infimum of the support.
    pub fn lower_endpoint(&self) -> f64 {
        match self {
            Distribution::Pareto(d) => d.scale(),
            Distribution::Gpd(d) => d.mu(),
            Distribution::Gev(d) => d.lower_endpoint(),
            Distribution::Exponential(_) => 0.0,
            Distribution::Uniform(d) => d.a(),
            Distribution::Normal(_) => f64::NEG_INFINITY,
            Distribution::PointMass(d) => d.c(),
            Distribution::Empirical(d) => d.min(),
            Distribution::Mixture(m) => m
                .components()
                .iter()
                .map(|(_, c)| c.lower_endpoint())
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Supremum of the support, `x^F = sup{x : F(x) < 1}`.
    pub fn upper_endpoint(&self) -> f64 {
        match self {
            Distribution::Pareto(_) | Distribution::Exponential(_) | Distribution::Normal(_) => f64::INFINITY,
            Distribution::Gpd(d) => d.upper_endpoint(),
            Distribution::Gev(d) => d.upper_endpoint(),
            Distribution::Uniform(d) => d.b(),
            Distribution::PointMass(d) => d.c(),
            Distribution::Empirical(d) => d.max(),
            Distribution::Mixture(m) => m
                .components()
                .iter()
                .map(|(_, c)| c.upper_endpoint())
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Raw moment `E[X^k]`, `None` when it is infinite.
    pub fn moment(&self, k: u32) -> Option<f64> {
        match self {
            Distribution::Mixture(m) => m
                .components()
                .iter()
                .try_fold(0.0, |acc, (w, c)| c.moment(k).map(|mk| acc + w * mk)),
            other => each_simple!(other, d => d.moment(k), mix _m => unreachable!()),
        }
    }

    pub fn mean(&self) -> Option<f64> {
        self.moment(1)
    }

    pub fn has_finite_mean(&self) -> bool {
        self.mean().is_some()
    }

    /// True when the CDF is a step function (point masses, empirical
    /// distributions and mixtures of those).
    pub fn is_discrete(&self) -> bool {
        match self {
            Distribution::PointMass(_) | Distribution::Empirical(_) => true,
            Distribution::Mixture(m) => m.components().iter().all(|(_, c)| c.is_discrete()),
            _ => false,
        }
    }

    /// Atoms `(location, mass)` of a discrete distribution, sorted and
    /// merged. Continuous parts are ignored.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        self.collect_atoms(1.0, &mut out);
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(out.len());
        for (x, m) in out {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += m,
                _ => merged.push((x, m)),
            }
        }
        merged
    }

    fn collect_atoms(&self, weight: f64, out: &mut Vec<(f64, f64)>) {
        match self {
            Distribution::PointMass(d) => out.push((d.c(), weight)),
            Distribution::Empirical(d) => {
                let m = weight / d.len() as f64;
                out.extend(d.sample().iter().map(|&x| (x, m)));
            }
            Distribution::Mixture(mx) => {
                for (w, c) in mx.components() {
                    c.collect_atoms(weight * w, out);
                }
            }
            _ => {}
        }
    }

    /// Points where the CDF has a jump or kink, plus a few scale hints for
    /// continuous families with unbounded support.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_breakpoints(&mut out);
        out.retain(|x| x.is_finite());
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match self {
            Distribution::Pareto(d) => out.extend([d.scale(), 2.0 * d.scale(), 10.0 * d.scale()]),
            Distribution::Gpd(d) => out.extend([d.mu(), d.upper_endpoint(), d.quantile(0.5), d.quantile(0.99)]),
            Distribution::Gev(d) => out.extend([
                d.lower_endpoint(),
                d.upper_endpoint(),
                d.quantile(0.01),
                d.quantile(0.5),
                d.quantile(0.99),
            ]),
            Distribution::Exponential(d) => out.extend([0.0, 1.0 / d.rate(), 5.0 / d.rate()]),
            Distribution::Uniform(d) => out.extend([d.a(), d.b()]),
            Distribution::Normal(d) => out.extend([-3.0, 0.0, 3.0].map(|z| d.mu() + z * d.sigma())),
            Distribution::PointMass(d) => out.push(d.c()),
            Distribution::Empirical(d) => out.extend_from_slice(d.sample()),
            Distribution::Mixture(m) => {
                for (_, c) in m.components() {
                    c.collect_breakpoints(out);
                }
            }
        }
    }

    /// Leading-order description of `F̄` near the upper endpoint.
    pub fn tail_shape(&self) -> TailShape {
        match self {
            Distribution::Pareto(d) => d.tail_shape(),
            Distribution::Gpd(d) => d.tail_shape(),
            Distribution::Gev(d) => d.tail_shape(),
            Distribution::Exponential(d) => d.tail_shape(),
            Distribution::Uniform(d) => d.tail_shape(),
            Distribution::Normal(d) => d.tail_shape(),
            Distribution::PointMass(d) => d.tail_shape(),
            Distribution::Empirical(d) => d.tail_shape(),
            Distribution::Mixture(m) => tail::mixture_shape(m.components().iter().map(|(w, c)| (*w, c.tail_shape()))),
        }
    }

    /// Extreme value index γ.
    ///
    /// Mixtures follow the max rule when every component is heavy-tailed,
    /// the min rule when every component has γ < 0 and all share one upper
    /// endpoint, and otherwise take γ of the tail-dominant components when
    /// those agree. Anything else is undefined.
    pub fn evi(&self) -> Option<f64> {
        match self {
            Distribution::Pareto(d) => Some(1.0 / d.alpha()),
            Distribution::Gpd(d) => Some(d.gamma()),
            Distribution::Gev(d) => Some(d.gamma()),
            Distribution::Exponential(_) | Distribution::Normal(_) => Some(0.0),
            Distribution::Uniform(_) => Some(-1.0),
            Distribution::PointMass(_) | Distribution::Empirical(_) => None,
            Distribution::Mixture(m) => mixture_evi(m),
        }
    }

    /// Index of regular variation of `F̄`; `-∞` for rapidly varying tails,
    /// undefined for bounded support.
    pub fn rv_index(&self) -> Option<f64> {
        match self {
            Distribution::Pareto(d) => Some(-d.alpha()),
            Distribution::Gpd(d) => heavy_rv(d.gamma()),
            Distribution::Gev(d) => heavy_rv(d.gamma()),
            Distribution::Exponential(_) | Distribution::Normal(_) => Some(f64::NEG_INFINITY),
            Distribution::Uniform(_) | Distribution::PointMass(_) | Distribution::Empirical(_) => None,
            Distribution::Mixture(m) => {
                if self.upper_endpoint().is_finite() {
                    return None;
                }
                // bounded components vanish from the far tail
                m.components()
                    .iter()
                    .filter(|(_, c)| c.upper_endpoint() == f64::INFINITY)
                    .map(|(_, c)| c.rv_index())
                    .try_fold(f64::NEG_INFINITY, |acc, r| r.map(|r| acc.max(r)))
            }
        }
    }

    /// Numerically probed M-index; see [`tail::m_index`].
    pub fn m_index(&self) -> MIndex {
        tail::m_index(self)
    }

    pub fn tail_profile(&self) -> TailProfile {
        TailProfile {
            upper_endpoint: self.upper_endpoint(),
            evi: self.evi(),
            rv_index: self.rv_index(),
            m_index: self.m_index(),
        }
    }
}

fn heavy_rv(gamma: f64) -> Option<f64> {
    if gamma > 0.0 {
        Some(-1.0 / gamma)
    } else if gamma == 0.0 {
        Some(f64::NEG_INFINITY)
    } else {
        None
    }
}

fn mixture_evi(m: &Mixture) -> Option<f64> {
    let comps = m.components();
    let evis: Option<Vec<f64>> = comps.iter().map(|(_, c)| c.evi()).collect();
    if let Some(evis) = &evis {
        if evis.iter().all(|&g| g > 0.0) {
            return evis.iter().copied().reduce(f64::max);
        }
        let endpoint = comps[0].1.upper_endpoint();
        if evis.iter().all(|&g| g < 0.0) && comps.iter().all(|(_, c)| c.upper_endpoint() == endpoint) {
            return evis.iter().copied().reduce(f64::min);
        }
    }
    // tail-dominant components decide, provided they agree
    let shapes: Vec<TailShape> = comps.iter().map(|(_, c)| c.tail_shape()).collect();
    let mut dominant = None;
    for (i, (_, c)) in comps.iter().enumerate() {
        let dominated = shapes
            .iter()
            .enumerate()
            .any(|(j, s)| j != i && tail::compare_shapes(s, &shapes[i]) == tail::ShapeOrder::Heavier);
        if dominated {
            continue;
        }
        let g = c.evi()?;
        match dominant {
            None => dominant = Some(g),
            Some(prev) if prev == g => {}
            Some(_) => return None,
        }
    }
    dominant
}

fn bracket(m: &Mixture, f: impl Fn(&Distribution) -> f64) -> (f64, f64) {
    m.components()
        .iter()
        .map(|(_, c)| f(c))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// Smallest `x` in `[lo, hi]` with `pred(x)`, for a predicate that is
/// monotone false→true and true at `hi`.
fn invert_monotone((lo, hi): (f64, f64), pred: impl Fn(f64) -> bool) -> f64 {
    if pred(lo) {
        return lo;
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..2100 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Pareto(d) => write!(f, "pareto(alpha={},scale={})", d.alpha(), d.scale()),
            Distribution::Gpd(d) => write!(f, "gpd(gamma={},sigma={},mu={})", d.gamma(), d.sigma(), d.mu()),
            Distribution::Gev(d) => write!(f, "gev(gamma={},mu={},sigma={})", d.gamma(), d.mu(), d.sigma()),
            Distribution::Exponential(d) => write!(f, "exp(rate={})", d.rate()),
            Distribution::Uniform(d) => write!(f, "unif(a={},b={})", d.a(), d.b()),
            Distribution::Normal(d) => write!(f, "norm(mu={},sigma={})", d.mu(), d.sigma()),
            Distribution::PointMass(d) => write!(f, "point(c={})", d.c()),
            Distribution::Empirical(d) => write!(f, "emp(file={})", d.source().unwrap_or("<inline>")),
            Distribution::Mixture(m) => {
                f.write_str("mix(")?;
                for (i, (w, c)) in m.components().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}:{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
