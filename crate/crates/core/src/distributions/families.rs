//! Parametric families. Every family evaluates `cdf` and `sf` through its
//! own formula so that neither is ever obtained as `1 - other`.

use std::f64::consts::{PI, SQRT_2};

use statrs::function::erf::{erfc, erfc_inv};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::tail::TailShape;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
// ζ(2), …, ζ(6)
const ZETA: [f64; 5] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_369_9,
    1.017_343_061_984_449_1,
];

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `E[(loc + scale·Z)^k]` from the standard moments `E[Z^j]`, `j = 0..=k`.
fn location_scale_moment(loc: f64, scale: f64, k: u32, standard: impl Fn(u32) -> Option<f64>) -> Option<f64> {
    let mut total = 0.0;
    for j in 0..=k {
        let mz = standard(j)?;
        total += binomial(k, j) * loc.powi((k - j) as i32) * scale.powi(j as i32) * mz;
    }
    Some(total)
}

/// Raw moments from cumulants via the standard recursion.
fn raw_from_cumulants(cumulants: &[f64], k: u32) -> f64 {
    let k = k as usize;
    let mut raw = vec![1.0; k + 1];
    for n in 1..=k {
        let mut m = 0.0;
        for j in 1..=n {
            m += binomial((n - 1) as u32, (j - 1) as u32) * cumulants[j - 1] * raw[n - j];
        }
        raw[n] = m;
    }
    raw[k]
}

/// Pareto (type I): `F̄(x) = (scale / x)^alpha` for `x ≥ scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pareto {
    alpha: f64,
    scale: f64,
}

impl Pareto {
    pub fn new(alpha: f64, scale: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            scale: positive("scale", scale)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.scale {
            0.0
        } else {
            -(self.alpha * (self.scale / x).ln()).exp_m1()
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        if x <= self.scale {
            1.0
        } else {
            (self.scale / x).powf(self.alpha)
        }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.isf(1.0 - p)
    }

    pub fn isf(&self, q: f64) -> f64 {
        self.scale * q.powf(-1.0 / self.alpha)
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let k = f64::from(k);
        (self.alpha > k).then(|| self.alpha * self.scale.powf(k) / (self.alpha - k))
    }

    pub fn tail_shape(&self) -> TailShape {
        TailShape::PowerLaw {
            exponent: self.alpha,
            coef: self.scale.powf(self.alpha),
        }
    }
}

/// Generalised Pareto with shape `gamma`, scale `sigma`, location `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gpd {
    gamma: f64,
    sigma: f64,
    mu: f64,
}

impl Gpd {
    pub fn new(gamma: f64, sigma: f64, mu: f64) -> Result<Self> {
        Ok(Self {
            gamma: finite("gamma", gamma)?,
            sigma: positive("sigma", sigma)?,
            mu: finite("mu", mu)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `ln F̄(x)`, `-∞` above the endpoint.
    fn log_sf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        if z <= 0.0 {
            return 0.0;
        }
        if self.gamma == 0.0 {
            return -z;
        }
        let s = self.gamma * z;
        if s <= -1.0 {
            return f64::NEG_INFINITY;
        }
        -s.ln_1p() / self.gamma
    }

    pub fn cdf(&self, x: f64) -> f64 {
        -self.log_sf(x).exp_m1()
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.log_sf(x).exp()
    }

    pub fn quantile(&self, p: f64) -> f64 {
        // -ln(1 - p) computed without cancellation
        self.from_log_tail(-(-p).ln_1p())
    }

    pub fn isf(&self, q: f64) -> f64 {
        self.from_log_tail(-q.ln())
    }

    /// Invert `-ln F̄(x) = l`.
    fn from_log_tail(&self, l: f64) -> f64 {
        if self.gamma == 0.0 {
            self.mu + self.sigma * l
        } else {
            self.mu + self.sigma * (self.gamma * l).exp_m1() / self.gamma
        }
    }

    pub fn upper_endpoint(&self) -> f64 {
        if self.gamma < 0.0 {
            self.mu - self.sigma / self.gamma
        } else {
            f64::INFINITY
        }
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let g = self.gamma;
        location_scale_moment(self.mu, self.sigma, k, |j| {
            let mut m = 1.0;
            for i in 1..=j {
                let d = 1.0 - f64::from(i) * g;
                if d <= 0.0 {
                    return None;
                }
                m *= f64::from(i) / d;
            }
            Some(m)
        })
    }

    pub fn tail_shape(&self) -> TailShape {
        let g = self.gamma;
        if g > 0.0 {
            // (1 + g(x-mu)/sigma)^(-1/g) ~ (g/sigma)^(-1/g) x^(-1/g)
            TailShape::PowerLaw {
                exponent: 1.0 / g,
                coef: (g / self.sigma).powf(-1.0 / g),
            }
        } else if g == 0.0 {
            TailShape::ExpType {
                quad: 0.0,
                lin: 1.0 / self.sigma,
                power: 0.0,
                coef: (self.mu / self.sigma).exp(),
            }
        } else {
            TailShape::Bounded {
                endpoint: self.upper_endpoint(),
                exponent: -1.0 / g,
                coef: (-g / self.sigma).powf(-1.0 / g),
            }
        }
    }
}

/// Generalised extreme value distribution `exp{-(1 + gamma z)^(-1/gamma)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gev {
    gamma: f64,
    mu: f64,
    sigma: f64,
}

impl Gev {
    pub fn new(gamma: f64, mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            gamma: finite("gamma", gamma)?,
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `t(x)` with `F(x) = exp(-t(x))`; `+∞` below the support, `0` above it.
    fn t(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        if self.gamma == 0.0 {
            return (-z).exp();
        }
        let s = self.gamma * z;
        if s <= -1.0 {
            return if self.gamma > 0.0 { f64::INFINITY } else { 0.0 };
        }
        (-s.ln_1p() / self.gamma).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        (-self.t(x)).exp()
    }

    pub fn sf(&self, x: f64) -> f64 {
        -(-self.t(x)).exp_m1()
    }

    fn from_t(&self, t: f64) -> f64 {
        if self.gamma == 0.0 {
            self.mu - self.sigma * t.ln()
        } else {
            self.mu + self.sigma * (-self.gamma * t.ln()).exp_m1() / self.gamma
        }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.from_t(-p.ln())
    }

    pub fn isf(&self, q: f64) -> f64 {
        self.from_t(-(-q).ln_1p())
    }

    pub fn lower_endpoint(&self) -> f64 {
        if self.gamma > 0.0 {
            self.mu - self.sigma / self.gamma
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn upper_endpoint(&self) -> f64 {
        if self.gamma < 0.0 {
            self.mu - self.sigma / self.gamma
        } else {
            f64::INFINITY
        }
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let g = self.gamma;
        if g == 0.0 {
            let mut cumulants = vec![EULER_GAMMA];
            let mut fact = 1.0;
            for n in 2..=k.max(1) {
                fact *= f64::from(n - 1);
                cumulants.push(fact * ZETA[(n - 2) as usize]);
            }
            return location_scale_moment(self.mu, self.sigma, k, |j| Some(raw_from_cumulants(&cumulants, j)));
        }
        if f64::from(k) * g >= 1.0 {
            return None;
        }
        // Z = (T^(-g) - 1) / g with T ~ Exp(1), E[T^(-mg)] = Γ(1 - mg)
        location_scale_moment(self.mu, self.sigma, k, |j| {
            let mut s = 0.0;
            for m in 0..=j {
                let sign = if (j - m) % 2 == 0 { 1.0 } else { -1.0 };
                s += binomial(j, m) * sign * gamma(1.0 - f64::from(m) * g);
            }
            Some(s / g.powi(j as i32))
        })
    }

    pub fn tail_shape(&self) -> TailShape {
        let g = self.gamma;
        if g > 0.0 {
            TailShape::PowerLaw {
                exponent: 1.0 / g,
                coef: (g / self.sigma).powf(-1.0 / g),
            }
        } else if g == 0.0 {
            TailShape::ExpType {
                quad: 0.0,
                lin: 1.0 / self.sigma,
                power: 0.0,
                coef: (self.mu / self.sigma).exp(),
            }
        } else {
            TailShape::Bounded {
                endpoint: self.upper_endpoint(),
                exponent: -1.0 / g,
                coef: (-g / self.sigma).powf(-1.0 / g),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        Ok(Self {
            rate: positive("rate", rate)?,
        })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.rate * x).exp()
        }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        -(-p).ln_1p() / self.rate
    }

    pub fn isf(&self, q: f64) -> f64 {
        -q.ln() / self.rate
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let mut m = 1.0;
        for i in 1..=k {
            m *= f64::from(i) / self.rate;
        }
        Some(m)
    }

    pub fn tail_shape(&self) -> TailShape {
        TailShape::ExpType {
            quad: 0.0,
            lin: self.rate,
            power: 0.0,
            coef: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    a: f64,
    b: f64,
}

impl Uniform {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let a = finite("a", a)?;
        let b = finite("b", b)?;
        if a >= b {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "must exceed a",
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cdf(&self, x: f64) -> f64 {
        ((x - self.a) / (self.b - self.a)).clamp(0.0, 1.0)
    }

    pub fn sf(&self, x: f64) -> f64 {
        ((self.b - x) / (self.b - self.a)).clamp(0.0, 1.0)
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.a + p * (self.b - self.a)
    }

    pub fn isf(&self, q: f64) -> f64 {
        self.b - q * (self.b - self.a)
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let n = (k + 1) as i32;
        Some((self.b.powi(n) - self.a.powi(n)) / (f64::from(k + 1) * (self.b - self.a)))
    }

    pub fn tail_shape(&self) -> TailShape {
        TailShape::Bounded {
            endpoint: self.b,
            exponent: 1.0,
            coef: 1.0 / (self.b - self.a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    mu: f64,
    sigma: f64,
}

impl Normal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn cdf(&self, x: f64) -> f64 {
        0.5 * erfc(-(x - self.mu) / (self.sigma * SQRT_2))
    }

    pub fn sf(&self, x: f64) -> f64 {
        0.5 * erfc((x - self.mu) / (self.sigma * SQRT_2))
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.mu - self.sigma * SQRT_2 * erfc_inv(2.0 * p)
    }

    pub fn isf(&self, q: f64) -> f64 {
        self.mu + self.sigma * SQRT_2 * erfc_inv(2.0 * q)
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        location_scale_moment(self.mu, self.sigma, k, |j| {
            Some(if j % 2 == 1 {
                0.0
            } else {
                (1..j).step_by(2).map(f64::from).product()
            })
        })
    }

    pub fn tail_shape(&self) -> TailShape {
        // F̄(x) ~ σ/(x√(2π)) · exp(-(x-μ)²/(2σ²))
        let s2 = self.sigma * self.sigma;
        TailShape::ExpType {
            quad: 0.5 / s2,
            lin: -self.mu / s2,
            power: -1.0,
            coef: self.sigma / (2.0 * PI).sqrt() * (-0.5 * self.mu * self.mu / s2).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    c: f64,
}

impl PointMass {
    pub fn new(c: f64) -> Result<Self> {
        Ok(Self { c: finite("c", c)? })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x >= self.c {
            1.0
        } else {
            0.0
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        if x >= self.c {
            0.0
        } else {
            1.0
        }
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        Some(self.c.powi(k as i32))
    }

    pub fn tail_shape(&self) -> TailShape {
        TailShape::Bounded {
            endpoint: self.c,
            exponent: 0.0,
            coef: 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(Pareto::new(0.0, 1.0).is_err());
        assert!(Pareto::new(2.0, -1.0).is_err());
        assert!(Gpd::new(0.5, 0.0, 0.0).is_err());
        assert!(Gev::new(f64::NAN, 0.0, 1.0).is_err());
        assert!(Exponential::new(-1.0).is_err());
        assert!(Uniform::new(1.0, 1.0).is_err());
        assert!(Normal::new(0.0, f64::INFINITY).is_err());
        assert!(PointMass::new(f64::NAN).is_err());
    }

    #[test]
    fn pareto_cdf_at_two() {
        let p = Pareto::new(2.0, 1.0).unwrap();
        assert!((p.cdf(2.0) - 0.75).abs() < 1e-15);
        assert!((p.sf(2.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gpd_with_zero_shape_is_shifted_exponential() {
        let g = Gpd::new(0.0, 2.0, 1.0).unwrap();
        let e = Exponential::new(0.5).unwrap();
        for x in [1.5, 3.0, 10.0] {
            assert!((g.cdf(x) - e.cdf(x - 1.0)).abs() < 1e-15);
        }
        assert!((g.quantile(0.3) - 1.0 - e.quantile(0.3)).abs() < 1e-14);
    }

    #[test]
    fn gpd_negative_shape_endpoint() {
        let g = Gpd::new(-0.5, 1.0, 0.0).unwrap();
        assert_eq!(g.upper_endpoint(), 2.0);
        assert_eq!(g.sf(2.0), 0.0);
        assert_eq!(g.cdf(5.0), 1.0);
        // F̄(x) = (1 - x/2)^2
        assert!((g.sf(1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gev_quantile_inverts_cdf() {
        for g in [-0.4, 0.0, 0.3] {
            let d = Gev::new(g, 1.0, 2.0).unwrap();
            for p in [1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
                let x = d.quantile(p);
                assert!((d.cdf(x) - p).abs() < 1e-12 * p.max(1e-3), "{g} {p}");
            }
            for q in [1e-12, 1e-3, 0.5] {
                let x = d.isf(q);
                assert!((d.sf(x) / q - 1.0).abs() < 1e-9, "{g} {q}");
            }
        }
    }

    #[test]
    fn normal_tails_are_complement_aware() {
        let n = Normal::new(0.0, 1.0).unwrap();
        let x = n.isf(1e-15);
        assert!((n.sf(x) / 1e-15 - 1.0).abs() < 1e-8);
        assert!((n.cdf(0.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn closed_form_moments() {
        let n = Normal::new(1.0, 2.0).unwrap();
        assert!((n.moment(2).unwrap() - 5.0).abs() < 1e-12);
        assert!((n.moment(4).unwrap() - (1.0 + 6.0 * 4.0 + 3.0 * 16.0)).abs() < 1e-10);
        let e = Exponential::new(2.0).unwrap();
        assert!((e.moment(3).unwrap() - 6.0 / 8.0).abs() < 1e-15);
        let u = Uniform::new(0.0, 2.0).unwrap();
        assert!((u.moment(2).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let p = Pareto::new(3.0, 1.0).unwrap();
        assert!((p.moment(1).unwrap() - 1.5).abs() < 1e-15);
        assert!(p.moment(3).is_none());
        // GPD(γ) mean σ/(1-γ), second moment 2σ²/((1-γ)(1-2γ))
        let g = Gpd::new(0.25, 1.0, 0.0).unwrap();
        assert!((g.moment(1).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        assert!((g.moment(2).unwrap() - 2.0 / (0.75 * 0.5)).abs() < 1e-13);
        assert!(g.moment(4).is_none());
        // Gumbel mean and variance
        let gu = Gev::new(0.0, 0.0, 1.0).unwrap();
        let m1 = gu.moment(1).unwrap();
        let m2 = gu.moment(2).unwrap();
        assert!((m1 - EULER_GAMMA).abs() < 1e-15);
        assert!((m2 - m1 * m1 - PI * PI / 6.0).abs() < 1e-13);
        // GEV(γ) mean: μ + σ(Γ(1-γ) - 1)/γ
        let gv = Gev::new(0.2, 0.0, 1.0).unwrap();
        assert!((gv.moment(1).unwrap() - (gamma(0.8) - 1.0) / 0.2).abs() < 1e-12);
        assert!(gv.moment(5).is_none());
    }
}
