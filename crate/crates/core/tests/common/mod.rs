//! Independent oracles for the integration tests: closed-form family
//! formulas written out here, and double-exponential quadrature from the
//! `quadrature` crate. Nothing in this module calls the library's scoring
//! engine.

#![allow(dead_code)]

use quadrature::double_exponential;
use statrs::function::erf::erfc;

use tailscore::Distribution;

const TARGET: f64 = 1e-13;

/// `∫_a^b f`, with infinite ends mapped onto `(0, 1)`.
pub fn de(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    de_dyn(&f, a, b)
}

fn de_dyn(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if !(a < b) {
        return 0.0;
    }
    let guard = |v: f64| if v.is_finite() { v } else { 0.0 };
    match (a.is_finite(), b.is_finite()) {
        (true, true) => double_exponential::integrate(|x| guard(f(x)), a, b, TARGET).integral,
        (true, false) => {
            double_exponential::integrate(
                |t| {
                    let s = 1.0 - t;
                    guard(f(a + t / s) / (s * s))
                },
                0.0,
                1.0,
                TARGET,
            )
            .integral
        }
        (false, true) => {
            double_exponential::integrate(
                |t| {
                    let s = 1.0 - t;
                    guard(f(b - t / s) / (s * s))
                },
                0.0,
                1.0,
                TARGET,
            )
            .integral
        }
        (false, false) => de_dyn(f, a, 0.0) + de_dyn(f, 0.0, b),
    }
}

/// [`de`] split at every knot strictly inside `(a, b)`.
pub fn de_split(f: impl Fn(f64) -> f64, a: f64, b: f64, knots: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = knots.iter().copied().filter(|k| *k > a && *k < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![a];
    edges.extend(cuts);
    edges.push(b);
    edges.windows(2).map(|w| de(&f, w[0], w[1])).sum()
}

/// A continuous family written out by hand.
pub struct Ref {
    pub lo: f64,
    pub hi: f64,
    pub cdf: Box<dyn Fn(f64) -> f64>,
    pub sf: Box<dyn Fn(f64) -> f64>,
    pub quantile: Box<dyn Fn(f64) -> f64>,
}

impl Ref {
    pub fn knots(&self) -> Vec<f64> {
        [self.lo, self.hi].into_iter().filter(|v| v.is_finite()).collect()
    }
}

pub fn r_unif(a: f64, b: f64) -> Ref {
    Ref {
        lo: a,
        hi: b,
        cdf: Box::new(move |x| ((x - a) / (b - a)).clamp(0.0, 1.0)),
        sf: Box::new(move |x| ((b - x) / (b - a)).clamp(0.0, 1.0)),
        quantile: Box::new(move |u| a + u * (b - a)),
    }
}

pub fn r_exp(rate: f64) -> Ref {
    Ref {
        lo: 0.0,
        hi: f64::INFINITY,
        cdf: Box::new(move |x| if x <= 0.0 { 0.0 } else { -(-rate * x).exp_m1() }),
        sf: Box::new(move |x| if x <= 0.0 { 1.0 } else { (-rate * x).exp() }),
        quantile: Box::new(move |u| -(-u).ln_1p() / rate),
    }
}

pub fn r_pareto(alpha: f64, scale: f64) -> Ref {
    Ref {
        lo: scale,
        hi: f64::INFINITY,
        cdf: Box::new(move |x| if x <= scale { 0.0 } else { 1.0 - (scale / x).powf(alpha) }),
        sf: Box::new(move |x| if x <= scale { 1.0 } else { (scale / x).powf(alpha) }),
        quantile: Box::new(move |u| scale * (1.0 - u).powf(-1.0 / alpha)),
    }
}

pub fn r_normal(mu: f64, sigma: f64) -> Ref {
    let z = move |x: f64| (x - mu) / (sigma * std::f64::consts::SQRT_2);
    Ref {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        cdf: Box::new(move |x| 0.5 * erfc(-z(x))),
        sf: Box::new(move |x| 0.5 * erfc(z(x))),
        quantile: Box::new(move |u| {
            // bisection on the hand-written cdf
            let cdf = |x: f64| 0.5 * erfc(-z(x));
            let (mut a, mut b) = (mu - 40.0 * sigma, mu + 40.0 * sigma);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if cdf(m) < u {
                    a = m;
                } else {
                    b = m;
                }
            }
            0.5 * (a + b)
        }),
    }
}

/// GPD with `gamma > 0`.
pub fn r_gpd(gamma: f64, sigma: f64, mu: f64) -> Ref {
    let sf = move |x: f64| if x <= mu { 1.0 } else { (1.0 + gamma * (x - mu) / sigma).powf(-1.0 / gamma) };
    Ref {
        lo: mu,
        hi: f64::INFINITY,
        cdf: Box::new(move |x| 1.0 - sf(x)),
        sf: Box::new(sf),
        quantile: Box::new(move |u| mu + sigma * ((1.0 - u).powf(-gamma) - 1.0) / gamma),
    }
}

/// `∫_{x ≥ q} (F(x) - 1{y ≤ x})² dx`; `q = -∞` gives the CRPS.
pub fn score(f: &Ref, y: f64, q: f64) -> f64 {
    let knots = f.knots();
    let below = if y > q { de_split(|x| (f.cdf)(x).powi(2), q, y, &knots) } else { 0.0 };
    let above = de_split(|x| (f.sf)(x).powi(2), y.max(q), f64::INFINITY, &knots);
    below + above
}

/// `E_G[score(F, Y)]` by integrating over the quantile function of `G`,
/// split where `Y` crosses the forecast's support ends or the threshold.
pub fn expected(f: &Ref, g: &Ref, q: f64) -> f64 {
    let mut cuts: Vec<f64> = f
        .knots()
        .into_iter()
        .chain(std::iter::once(q).filter(|v| v.is_finite()))
        .map(|k| (g.cdf)(k))
        .collect();
    cuts.push(0.0);
    cuts.push(1.0);
    de_split(|u| score(f, (g.quantile)(u), q), 0.0, 1.0, &cuts)
}

/// `∫_{x ≥ q} (F - G)²`, the score divergence.
pub fn divergence(f: &Ref, g: &Ref, q: f64) -> f64 {
    let mut knots = f.knots();
    knots.extend(g.knots());
    let lo = q.max(f.lo.min(g.lo));
    let hi = f.hi.max(g.hi);
    de_split(|x| ((f.cdf)(x) - (g.cdf)(x)).powi(2), lo, hi, &knots)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Shipped families with finite mean, used for property grids.
pub fn finite_mean_families() -> Vec<Distribution> {
    vec![
        Distribution::exponential(1.0).unwrap(),
        Distribution::exponential(2.0).unwrap(),
        Distribution::pareto(2.0, 1.0).unwrap(),
        Distribution::pareto(3.0, 1.0).unwrap(),
        Distribution::pareto(2.5, 2.0).unwrap(),
        Distribution::normal(0.0, 1.0).unwrap(),
        Distribution::normal(1.0, 2.0).unwrap(),
        Distribution::uniform(0.0, 1.0).unwrap(),
        Distribution::uniform(0.0, 2.0).unwrap(),
        Distribution::gpd(0.25, 1.0, 0.0).unwrap(),
        Distribution::gpd(-0.5, 1.0, 0.0).unwrap(),
        Distribution::gev(0.2, 0.0, 1.0).unwrap(),
        Distribution::gev(0.0, 0.0, 1.0).unwrap(),
        Distribution::gev(-0.3, 1.0, 0.5).unwrap(),
        Distribution::point(1.0).unwrap(),
        Distribution::mix(&Distribution::exponential(1.0).unwrap(), &Distribution::pareto(2.0, 1.0).unwrap(), 0.3)
            .unwrap(),
    ]
}

/// Pairs ordered by `<_t` or tail equivalent, each side analytic.
pub fn analytic_pairs() -> Vec<(Distribution, Distribution)> {
    let p = |a, s| Distribution::pareto(a, s).unwrap();
    let u = |a, b| Distribution::uniform(a, b).unwrap();
    let e = |r| Distribution::exponential(r).unwrap();
    let gpd = |g, s, m| Distribution::gpd(g, s, m).unwrap();
    let gev = |g, m, s| Distribution::gev(g, m, s).unwrap();
    let n = |m, s| Distribution::normal(m, s).unwrap();
    let pt = |c| Distribution::point(c).unwrap();
    vec![
        (p(2.0, 1.0), p(3.0, 1.0)),
        (p(3.0, 1.0), p(2.0, 1.0)),
        (p(2.0, 1.0), p(2.0, 2.0)),
        (p(2.0, 1.0), gpd(0.5, 1.0, 0.0)),
        (gev(0.5, 0.0, 1.0), p(2.0, 1.0)),
        (e(1.0), p(2.0, 1.0)),
        (p(3.0, 1.0), e(2.0)),
        (e(1.0), e(2.0)),
        (n(0.0, 1.0), e(1.0)),
        (u(0.0, 1.0), u(0.0, 2.0)),
        (u(0.0, 2.0), u(0.0, 1.0)),
        (u(0.0, 1.0), gpd(-0.5, 1.0, 0.0)),
        (pt(1.0), u(0.0, 2.0)),
        (gev(-0.5, 0.0, 1.0), u(0.0, 2.0)),
        (u(0.0, 1.0), p(2.0, 1.0)),
    ]
}
