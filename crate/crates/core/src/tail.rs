//! Tail order `<_t`, tail equivalence `~_t`, and numeric tail probes.
//!
//! `G` has a heavier tail than `F` when `x^F < x^G`, or when the endpoints
//! coincide and `F̄(x)/Ḡ(x) → 0` at the common endpoint. `F` and `G` are
//! tail equivalent when the endpoints coincide and the ratio tends to a
//! limit in `(0, ∞)`.
//!
//! Every shipped family reports a [`TailShape`], the leading-order form of
//! its survival function, so comparisons between shipped families (and
//! mixtures of them) are decided analytically. The survival-ratio probe is
//! kept as an independent check and as the fallback for anything the
//! analytic table cannot order.

use std::cmp::Ordering;

use crate::distributions::Distribution;
use crate::functional::Functional;

/// Leading-order behaviour of `F̄` at the upper endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailShape {
    /// `F̄(x) ~ coef·(endpoint - x)^exponent` as `x ↑ endpoint`; exponent 0
    /// is an atom of mass `coef` at the endpoint.
    Bounded { endpoint: f64, exponent: f64, coef: f64 },
    /// `F̄(x) ~ coef·x^(-exponent)`.
    PowerLaw { exponent: f64, coef: f64 },
    /// `F̄(x) ~ coef·x^power·exp(-quad·x² - lin·x)`.
    ExpType { quad: f64, lin: f64, power: f64, coef: f64 },
}

/// How the first shape compares to the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeOrder {
    Heavier,
    Lighter,
    /// Tail equivalent with `lim F̄/Ḡ = ratio`.
    Equivalent(f64),
}

impl ShapeOrder {
    fn from_ordering(o: Ordering) -> Option<Self> {
        match o {
            Ordering::Greater => Some(ShapeOrder::Heavier),
            Ordering::Less => Some(ShapeOrder::Lighter),
            Ordering::Equal => None,
        }
    }
}

/// Compare two parameters where *larger* means heavier; values within a
/// relative `1e-12` count as equal so that e.g. `1/γ` and `α` tie.
fn heavier_if_larger(a: f64, b: f64) -> Ordering {
    if a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

fn rank(s: &TailShape) -> u8 {
    match s {
        TailShape::Bounded { .. } => 0,
        TailShape::ExpType { .. } => 1,
        TailShape::PowerLaw { .. } => 2,
    }
}

pub fn compare_shapes(a: &TailShape, b: &TailShape) -> ShapeOrder {
    use TailShape::*;
    match (a, b) {
        (
            Bounded { endpoint: e1, exponent: a1, coef: c1 },
            Bounded { endpoint: e2, exponent: a2, coef: c2 },
        ) => ShapeOrder::from_ordering(e1.total_cmp(e2))
            .or_else(|| ShapeOrder::from_ordering(heavier_if_larger(*a2, *a1)))
            .unwrap_or(ShapeOrder::Equivalent(c1 / c2)),
        (PowerLaw { exponent: a1, coef: c1 }, PowerLaw { exponent: a2, coef: c2 }) => {
            ShapeOrder::from_ordering(heavier_if_larger(*a2, *a1)).unwrap_or(ShapeOrder::Equivalent(c1 / c2))
        }
        (
            ExpType { quad: q1, lin: l1, power: p1, coef: c1 },
            ExpType { quad: q2, lin: l2, power: p2, coef: c2 },
        ) => ShapeOrder::from_ordering(heavier_if_larger(*q2, *q1))
            .or_else(|| ShapeOrder::from_ordering(heavier_if_larger(*l2, *l1)))
            .or_else(|| ShapeOrder::from_ordering(heavier_if_larger(*p1, *p2)))
            .unwrap_or(ShapeOrder::Equivalent(c1 / c2)),
        _ => match rank(a).cmp(&rank(b)) {
            Ordering::Greater => ShapeOrder::Heavier,
            Ordering::Less => ShapeOrder::Lighter,
            Ordering::Equal => unreachable!("same-kind pairs handled above"),
        },
    }
}

/// Shape of `Σ w_i F_i`: the heaviest components dominate and their
/// coefficients add up.
pub fn mixture_shape(parts: impl IntoIterator<Item = (f64, TailShape)>) -> TailShape {
    let mut best: Option<TailShape> = None;
    for (w, s) in parts {
        let s = scale_coef(s, w);
        best = Some(match best {
            None => s,
            Some(b) => match compare_shapes(&s, &b) {
                ShapeOrder::Heavier => s,
                ShapeOrder::Lighter => b,
                ShapeOrder::Equivalent(_) => scale_coef(b, 1.0 + coef(&s) / coef(&b)),
            },
        });
    }
    best.expect("mixtures are nonempty")
}

fn coef(s: &TailShape) -> f64 {
    match *s {
        TailShape::Bounded { coef, .. } | TailShape::PowerLaw { coef, .. } | TailShape::ExpType { coef, .. } => coef,
    }
}

fn scale_coef(s: TailShape, w: f64) -> TailShape {
    match s {
        TailShape::Bounded { endpoint, exponent, coef } => TailShape::Bounded {
            endpoint,
            exponent,
            coef: coef * w,
        },
        TailShape::PowerLaw { exponent, coef } => TailShape::PowerLaw { exponent, coef: coef * w },
        TailShape::ExpType { quad, lin, power, coef } => TailShape::ExpType {
            quad,
            lin,
            power,
            coef: coef * w,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailVerdict {
    FirstHeavier,
    SecondHeavier,
    TailEquivalent { ratio: f64 },
    Undetermined,
}

impl TailVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            TailVerdict::FirstHeavier => "first_heavier",
            TailVerdict::SecondHeavier => "second_heavier",
            TailVerdict::TailEquivalent { .. } => "tail_equivalent",
            TailVerdict::Undetermined => "undetermined",
        }
    }

    pub fn ratio(&self) -> Option<f64> {
        match self {
            TailVerdict::TailEquivalent { ratio } => Some(*ratio),
            _ => None,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            TailVerdict::FirstHeavier => TailVerdict::SecondHeavier,
            TailVerdict::SecondHeavier => TailVerdict::FirstHeavier,
            TailVerdict::TailEquivalent { ratio } => TailVerdict::TailEquivalent { ratio: 1.0 / ratio },
            TailVerdict::Undetermined => TailVerdict::Undetermined,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    Endpoint,
    Analytic,
    Numeric,
}

/// Outcome of comparing two tails, with the survival-ratio probe table
/// `(x_k, F̄(x_k)/Ḡ(x_k))` as evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct TailComparison {
    pub verdict: TailVerdict,
    pub method: TailMethod,
    pub evidence: Vec<(f64, f64)>,
}

/// Thresholds for classifying numeric probe tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub decades: u32,
    pub lighter_below: f64,
    pub heavier_above: f64,
    pub rel_change: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            decades: 12,
            lighter_below: 1e-6,
            heavier_above: 1e6,
            rel_change: 1e-3,
        }
    }
}

/// Compare tails: endpoints first, then the analytic shape table, then
/// the numeric probe.
pub fn tail_compare(f: &Distribution, g: &Distribution) -> TailComparison {
    let evidence = probe_ratios(f, g, &ProbeConfig::default());
    let (xf, xg) = (f.upper_endpoint(), g.upper_endpoint());
    if xf != xg {
        let verdict = if xf > xg {
            TailVerdict::FirstHeavier
        } else {
            TailVerdict::SecondHeavier
        };
        return TailComparison {
            verdict,
            method: TailMethod::Endpoint,
            evidence,
        };
    }
    let verdict = match compare_shapes(&f.tail_shape(), &g.tail_shape()) {
        ShapeOrder::Heavier => TailVerdict::FirstHeavier,
        ShapeOrder::Lighter => TailVerdict::SecondHeavier,
        ShapeOrder::Equivalent(ratio) if ratio.is_finite() && ratio > 0.0 => TailVerdict::TailEquivalent { ratio },
        ShapeOrder::Equivalent(_) => {
            return TailComparison {
                verdict: classify_probes(&evidence, &ProbeConfig::default()),
                method: TailMethod::Numeric,
                evidence,
            }
        }
    };
    TailComparison {
        verdict,
        method: TailMethod::Analytic,
        evidence,
    }
}

/// Endpoint comparison followed by survival-ratio probing only.
pub fn tail_compare_numeric(f: &Distribution, g: &Distribution, cfg: &ProbeConfig) -> TailComparison {
    let evidence = probe_ratios(f, g, cfg);
    let (xf, xg) = (f.upper_endpoint(), g.upper_endpoint());
    let (verdict, method) = if xf > xg {
        (TailVerdict::FirstHeavier, TailMethod::Endpoint)
    } else if xf < xg {
        (TailVerdict::SecondHeavier, TailMethod::Endpoint)
    } else {
        (classify_probes(&evidence, cfg), TailMethod::Numeric)
    };
    TailComparison {
        verdict,
        method,
        evidence,
    }
}

/// The ratio `c` of `F ~_t G`, if they are tail equivalent.
pub fn tail_equivalent(f: &Distribution, g: &Distribution) -> Option<f64> {
    tail_compare(f, g).verdict.ratio()
}

/// Probe points `x_k = isf(H, 10^-k)` on the heavier-looking operand `H`
/// and the ratios `F̄(x_k)/Ḡ(x_k)`. Points where both survivals vanish are
/// dropped.
pub fn probe_ratios(f: &Distribution, g: &Distribution, cfg: &ProbeConfig) -> Vec<(f64, f64)> {
    let candidate = if f.upper_endpoint() > g.upper_endpoint()
        || (f.upper_endpoint() == g.upper_endpoint() && f.isf_unchecked(1e-6) >= g.isf_unchecked(1e-6))
    {
        f
    } else {
        g
    };
    (1..=cfg.decades)
        .filter_map(|k| {
            let x = candidate.isf_unchecked(10f64.powi(-(k as i32)));
            let (sf, sg) = (f.sf(x), g.sf(x));
            if sf == 0.0 && sg == 0.0 {
                None
            } else {
                Some((x, sf / sg))
            }
        })
        .collect()
}

pub fn classify_probes(evidence: &[(f64, f64)], cfg: &ProbeConfig) -> TailVerdict {
    let Some(&(_, last)) = evidence.last() else {
        return TailVerdict::Undetermined;
    };
    if last < cfg.lighter_below {
        return TailVerdict::SecondHeavier;
    }
    if last > cfg.heavier_above {
        return TailVerdict::FirstHeavier;
    }
    if evidence.len() >= 3 {
        let tail = &evidence[evidence.len() - 3..];
        let stable = tail
            .windows(2)
            .all(|w| (w[1].1 - w[0].1).abs() <= cfg.rel_change * w[1].1.abs());
        if stable {
            return TailVerdict::TailEquivalent { ratio: last };
        }
    }
    TailVerdict::Undetermined
}

/// Numerically probed M-index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MIndex {
    Finite(f64),
    /// Survival decays faster than any power.
    NegInfinity,
    /// The probe sequence did not settle.
    Undetermined,
    /// Bounded support.
    Undefined,
}

impl MIndex {
    /// As an extended real; `None` unless the probe settled.
    pub fn value(&self) -> Option<f64> {
        match self {
            MIndex::Finite(v) => Some(*v),
            MIndex::NegInfinity => Some(f64::NEG_INFINITY),
            MIndex::Undetermined | MIndex::Undefined => None,
        }
    }
}

/// Local log-log slopes `Δ ln F̄ / Δ ln x` between successive probe points
/// `x_k = isf(F, 10^-k)`, `k = 1..=12`.
pub fn log_slopes(d: &Distribution) -> Vec<f64> {
    let pts: Vec<(f64, f64)> = (1..=12)
        .map(|k| {
            let x = d.isf_unchecked(10f64.powi(-k));
            (x, d.sf(x))
        })
        .filter(|&(x, s)| x > 0.0 && s > 0.0)
        .collect();
    pts.windows(2)
        .filter(|w| w[1].0 > w[0].0)
        .map(|w| (w[1].1.ln() - w[0].1.ln()) / (w[1].0.ln() - w[0].0.ln()))
        .collect()
}

/// The unique `ρ` separating the power laws that `F̄` eventually falls
/// below from those it eventually exceeds, estimated from the probe
/// slopes. Settles when the last two slopes agree to a relative `1e-3`;
/// reports `-∞` when the slopes keep falling without decelerating.
pub fn m_index(d: &Distribution) -> MIndex {
    if d.upper_endpoint().is_finite() {
        return MIndex::Undefined;
    }
    let s = log_slopes(d);
    let n = s.len();
    if n < 4 {
        return MIndex::Undetermined;
    }
    let (prev, last) = (s[n - 2], s[n - 1]);
    if (last - prev).abs() < 1e-3 * last.abs() {
        return MIndex::Finite(last);
    }
    let inc: Vec<f64> = s[n - 4..].windows(2).map(|w| w[1] - w[0]).collect();
    let falling = inc.iter().all(|&d| d < 0.0);
    let not_decelerating = inc.windows(2).all(|w| w[1].abs() >= 0.5 * w[0].abs());
    if falling && not_decelerating && last < -10.0 {
        MIndex::NegInfinity
    } else {
        MIndex::Undetermined
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderRow {
    pub first: String,
    pub second: String,
    pub verdict: TailVerdict,
    pub t_first: Option<f64>,
    pub t_second: Option<f64>,
    pub sign_ok: Option<bool>,
    /// `(λ, T(λ·second + (1-λ)·first), matches max)`
    pub max_rule: Vec<(f64, Option<f64>, bool)>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport {
    pub functional: Functional,
    pub rows: Vec<OrderRow>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }

    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

/// Checks that `T` respects `<_t` on each pair (`T(F) ≤ T(G)` when
/// `F <_t G`, equality when tail equivalent) and then the max rule on the
/// mixtures `λG + (1-λ)F` for every `λ` in `lambdas`.
pub fn tail_order_respect_check(t: Functional, pairs: &[(Distribution, Distribution)], lambdas: &[f64]) -> OrderReport {
    let rows = pairs
        .iter()
        .map(|(f, g)| {
            let verdict = tail_compare(f, g).verdict;
            let (tf, tg) = (t.eval(f), t.eval(g));
            let (Some(a), Some(b)) = (tf, tg) else {
                return OrderRow {
                    first: f.to_string(),
                    second: g.to_string(),
                    verdict,
                    t_first: tf,
                    t_second: tg,
                    sign_ok: None,
                    max_rule: Vec::new(),
                    status: RowStatus::Inconclusive,
                };
            };
            let sign_ok = match verdict {
                TailVerdict::FirstHeavier => Some(a >= b || t.agrees(a, b)),
                TailVerdict::SecondHeavier => Some(a <= b || t.agrees(a, b)),
                TailVerdict::TailEquivalent { .. } => Some(t.agrees(a, b)),
                TailVerdict::Undetermined => None,
            };
            let target = a.max(b);
            let max_rule: Vec<(f64, Option<f64>, bool)> = lambdas
                .iter()
                .map(|&l| {
                    let m = Distribution::mix(f, g, l).expect("λ in [0, 1]");
                    let v = t.eval(&m);
                    (l, v, v.is_some_and(|v| t.agrees(v, target)))
                })
                .collect();
            let status = match sign_ok {
                None => RowStatus::Inconclusive,
                Some(false) => RowStatus::Fail,
                Some(true) if max_rule.iter().any(|r| r.1.is_none()) => RowStatus::Inconclusive,
                Some(true) if max_rule.iter().all(|r| r.2) => RowStatus::Pass,
                Some(true) => RowStatus::Fail,
            };
            OrderRow {
                first: f.to_string(),
                second: g.to_string(),
                verdict,
                t_first: tf,
                t_second: tg,
                sign_ok,
                max_rule,
                status,
            }
        })
        .collect();
    OrderReport { functional: t, rows }
}
