//! Spec-string grammar.
//!
//! ```text
//! dist  := pareto(alpha=A,scale=S) | gpd(gamma=G,sigma=S,mu=M)
//!        | gev(gamma=G,mu=M,sigma=S) | exp(rate=R) | unif(a=A,b=B)
//!        | norm(mu=M,sigma=S) | point(c=C)
//!        | mix(W:dist, W:dist, ...) | emp(file=PATH)
//! rule  := crps | wcrps(q=Q)
//! func  := se(k=K) | pinball(alpha=A)
//! ```
//!
//! Keyword arguments may come in any order; whitespace between tokens is
//! ignored.

use std::fmt;

use crate::distributions::{Distribution, Empirical};
use crate::scoring::{ScoringFunction, ScoringRule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub token: String,
    /// Byte offset into the input.
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {} (token {:?})", self.message, self.position, self.token)
    }
}

impl std::error::Error for ParseError {}

/// Either kind of score accepted by `--score`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoreSpec {
    Rule(ScoringRule),
    Function(ScoringFunction),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, message: impl Into<String>, token: &str, position: usize) -> ParseError {
        ParseError {
            message: message.into(),
            token: if token.is_empty() { "<end of input>".into() } else { token.into() },
            position,
        }
    }

    /// The next token for error messages: an identifier/number run or a
    /// single character.
    fn peek_token(&self) -> &'a str {
        let rest = self.rest();
        let n = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '+' | '-')))
            .unwrap_or(rest.len());
        if n == 0 {
            rest.chars().next().map_or("", |c| &rest[..c.len_utf8()])
        } else {
            &rest[..n]
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'"), self.peek_token(), self.pos))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(&'a str, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let n = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if n == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error("expected a name", self.peek_token(), start));
        }
        self.pos += n;
        Ok((&rest[..n], start))
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let n = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '.' | '+' | '-')))
            .unwrap_or(rest.len());
        let tok = &rest[..n];
        match tok.parse::<f64>() {
            Ok(v) if !v.is_nan() => {
                self.pos += n;
                Ok(v)
            }
            _ => Err(self.error("expected a number", if n == 0 { self.peek_token() } else { tok }, start)),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input", self.peek_token(), self.pos))
        }
    }

    /// `(k=v, ...)` with exactly the keys in `names`, returned in that order.
    fn kwargs<const N: usize>(&mut self, names: [&str; N]) -> Result<[f64; N], ParseError> {
        self.expect('(')?;
        let mut values = [None; N];
        if !self.eat(')') {
            loop {
                let (key, at) = self.ident()?;
                let Some(i) = names.iter().position(|n| *n == key) else {
                    return Err(self.error(format!("unknown parameter, expected one of {}", names.join(", ")), key, at));
                };
                if values[i].is_some() {
                    return Err(self.error("duplicate parameter", key, at));
                }
                self.expect('=')?;
                values[i] = Some(self.number()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let close = self.pos;
        let mut out = [0.0; N];
        for (i, v) in values.into_iter().enumerate() {
            out[i] = v.ok_or_else(|| self.error(format!("missing parameter {}", names[i]), ")", close - 1))?;
        }
        Ok(out)
    }

    fn distribution(&mut self) -> Result<Distribution, ParseError> {
        let (name, at) = self.ident()?;
        let built = match name {
            "pareto" => {
                let [alpha, scale] = self.kwargs(["alpha", "scale"])?;
                Distribution::pareto(alpha, scale)
            }
            "gpd" => {
                let [gamma, sigma, mu] = self.kwargs(["gamma", "sigma", "mu"])?;
                Distribution::gpd(gamma, sigma, mu)
            }
            "gev" => {
                let [gamma, mu, sigma] = self.kwargs(["gamma", "mu", "sigma"])?;
                Distribution::gev(gamma, mu, sigma)
            }
            "exp" => {
                let [rate] = self.kwargs(["rate"])?;
                Distribution::exponential(rate)
            }
            "unif" => {
                let [a, b] = self.kwargs(["a", "b"])?;
                Distribution::uniform(a, b)
            }
            "norm" => {
                let [mu, sigma] = self.kwargs(["mu", "sigma"])?;
                Distribution::normal(mu, sigma)
            }
            "point" => {
                let [c] = self.kwargs(["c"])?;
                Distribution::point(c)
            }
            "mix" => {
                self.expect('(')?;
                let mut parts = Vec::new();
                loop {
                    let w = self.number()?;
                    self.expect(':')?;
                    parts.push((w, self.distribution()?));
                    if self.eat(')') {
                        break;
                    }
                    self.expect(',')?;
                }
                Distribution::mixture(parts)
            }
            "emp" => return self.empirical(at),
            _ => {
                return Err(self.error(
                    "unknown distribution, expected pareto, gpd, gev, exp, unif, norm, point, mix or emp",
                    name,
                    at,
                ))
            }
        };
        built.map_err(|e| self.error(e.to_string(), &self.src[at..self.pos], at))
    }

    fn empirical(&mut self, at: usize) -> Result<Distribution, ParseError> {
        self.expect('(')?;
        let (key, key_at) = self.ident()?;
        if key != "file" {
            return Err(self.error("expected file=PATH", key, key_at));
        }
        self.expect('=')?;
        self.skip_ws();
        let path_at = self.pos;
        let rest = self.rest();
        let Some(n) = rest.find(')') else {
            return Err(self.error("expected ')'", "", self.src.len()));
        };
        let path = rest[..n].trim();
        if path.is_empty() {
            return Err(self.error("empty file path", ")", path_at));
        }
        self.pos += n + 1;
        Empirical::from_file(path)
            .map(Distribution::Empirical)
            .map_err(|e| self.error(e.to_string(), &self.src[at..self.pos], path_at))
    }

    fn score(&mut self) -> Result<ScoreSpec, ParseError> {
        let (name, at) = self.ident()?;
        let built = match name {
            "crps" => return Ok(ScoreSpec::Rule(ScoringRule::Crps)),
            "wcrps" => {
                let [q] = self.kwargs(["q"])?;
                ScoringRule::wcrps(q).map(ScoreSpec::Rule)
            }
            "se" => {
                let [k] = self.kwargs(["k"])?;
                if k.fract() != 0.0 || !(1.0..=3.0).contains(&k) {
                    return Err(self.error("k must be 1, 2 or 3", &self.src[at..self.pos], at));
                }
                ScoringFunction::squared_error(k as u32).map(ScoreSpec::Function)
            }
            "pinball" => {
                let [alpha] = self.kwargs(["alpha"])?;
                ScoringFunction::pinball(alpha).map(ScoreSpec::Function)
            }
            _ => return Err(self.error("unknown score, expected crps, wcrps, se or pinball", name, at)),
        };
        built.map_err(|e| self.error(e.to_string(), &self.src[at..self.pos], at))
    }
}

pub fn parse_distribution(src: &str) -> Result<Distribution, ParseError> {
    let mut p = Parser::new(src);
    let d = p.distribution()?;
    p.finish()?;
    Ok(d)
}

pub fn parse_score(src: &str) -> Result<ScoreSpec, ParseError> {
    let mut p = Parser::new(src);
    let s = p.score()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_rule(src: &str) -> Result<ScoringRule, ParseError> {
    match parse_score(src)? {
        ScoreSpec::Rule(r) => Ok(r),
        ScoreSpec::Function(_) => Err(ParseError {
            message: "expected a scoring rule (crps or wcrps) for a distributional forecast".into(),
            token: src.trim().into(),
            position: src.len() - src.trim_start().len(),
        }),
    }
}

pub fn parse_function(src: &str) -> Result<ScoringFunction, ParseError> {
    match parse_score(src)? {
        ScoreSpec::Function(s) => Ok(s),
        ScoreSpec::Rule(_) => Err(ParseError {
            message: "expected a scoring function (se or pinball) for a point forecast".into(),
            token: src.trim().into(),
            position: src.len() - src.trim_start().len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(parse_distribution("pareto(alpha=2,scale=1)").unwrap(), Distribution::pareto(2.0, 1.0).unwrap());
        assert_eq!(parse_distribution(" exp( rate = 1.5 ) ").unwrap(), Distribution::exponential(1.5).unwrap());
        assert_eq!(parse_distribution("unif(b=2,a=0)").unwrap(), Distribution::uniform(0.0, 2.0).unwrap());
        assert_eq!(parse_distribution("gev(gamma=-0.5,mu=0,sigma=1)").unwrap(), Distribution::gev(-0.5, 0.0, 1.0).unwrap());
        assert_eq!(parse_distribution("point(c=-1e-3)").unwrap(), Distribution::point(-1e-3).unwrap());
    }

    #[test]
    fn nested_mixture() {
        let d = parse_distribution("mix(0.5:point(c=0), 0.5:mix(0.5:exp(rate=1),0.5:norm(mu=0,sigma=1)))").unwrap();
        let Distribution::Mixture(m) = &d else { panic!("{d}") };
        assert_eq!(m.components().len(), 3);
    }

    #[test]
    fn errors_name_token_and_position() {
        let e = parse_distribution("pareto(alpha=2,scal=1)").unwrap_err();
        assert_eq!(e.token, "scal");
        assert_eq!(e.position, 15);
        let e = parse_distribution("pareto(alpha=x,scale=1)").unwrap_err();
        assert_eq!(e.token, "x");
        assert_eq!(e.position, 13);
        let e = parse_distribution("weibull(k=1)").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("weibull", 0));
        let e = parse_distribution("exp(rate=1").unwrap_err();
        assert_eq!(e.position, 10);
        assert_eq!(e.token, "<end of input>");
        let e = parse_distribution("exp(rate=1) x").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("x", 12));
        let e = parse_distribution("exp(rate=1,rate=2)").unwrap_err();
        assert!(e.message.contains("duplicate"));
        let e = parse_distribution("unif(a=0)").unwrap_err();
        assert!(e.message.contains("missing parameter b"), "{e}");
    }

    #[test]
    fn invalid_parameters_are_parse_errors() {
        let e = parse_distribution("pareto(alpha=-1,scale=1)").unwrap_err();
        assert_eq!(e.position, 0);
        assert!(e.message.contains("alpha"), "{e}");
        assert!(parse_distribution("exp(rate=nan)").is_err());
        assert!(parse_distribution("mix(0:point(c=0))").is_err());
        assert!(parse_distribution("mix()").is_err());
    }

    #[test]
    fn scores() {
        assert_eq!(parse_rule("crps").unwrap(), ScoringRule::Crps);
        assert_eq!(parse_rule("wcrps(q=2.5)").unwrap(), ScoringRule::Wcrps { threshold: 2.5 });
        assert_eq!(parse_function("se(k=2)").unwrap(), ScoringFunction::SquaredError { power: 2 });
        assert_eq!(parse_function("pinball(alpha=0.9)").unwrap(), ScoringFunction::Pinball { alpha: 0.9 });
        assert!(parse_function("se(k=1.5)").is_err());
        assert!(parse_function("se(k=4)").is_err());
        assert!(parse_rule("se(k=1)").is_err());
        assert!(parse_function("crps").is_err());
        assert!(parse_rule("wcrps(q=inf)").is_err());
    }

    #[test]
    fn empirical_file() {
        let path = std::env::temp_dir().join(format!("tailscore-spec-{}.txt", std::process::id()));
        std::fs::write(&path, "1.5\n0.5\n\n2\n").unwrap();
        let src = format!("emp(file={})", path.display());
        let d = parse_distribution(&src).unwrap();
        assert_eq!(d.upper_endpoint(), 2.0);
        assert_eq!(d.to_string(), src);
        std::fs::write(&path, "1.5\nabc\n").unwrap();
        let e = parse_distribution(&src).unwrap_err();
        assert!(e.message.contains("line 2"), "{e}");
        std::fs::remove_file(&path).unwrap();
    }
}
