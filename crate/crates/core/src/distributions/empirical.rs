use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tail::TailShape;

/// Step distribution with an atom of mass `1/n` at each sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct Empirical {
    sample: Arc<[f64]>,
    source: Option<String>,
}

impl Empirical {
    pub fn new(mut sample: Vec<f64>) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&bad) = sample.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "sample",
                value: bad,
                reason: "sample values must be finite",
            });
        }
        sample.sort_by(f64::total_cmp);
        Ok(Self {
            sample: sample.into(),
            source: None,
        })
    }

    /// Read newline-separated decimals. Blank lines are skipped; anything
    /// else that does not parse is an error naming the 1-based line.
    pub fn from_file(path: impl AsRef<Path>) -> std::result::Result<Self, EmpiricalFileError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| EmpiricalFileError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(EmpiricalFileError::BadLine {
                        line: i + 1,
                        content: t.to_string(),
                    })
                }
            }
        }
        let mut emp = Empirical::new(values).map_err(|_| EmpiricalFileError::Empty)?;
        emp.source = Some(path.display().to_string());
        Ok(emp)
    }

    pub fn sample(&self) -> &[f64] {
        &self.sample
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sample.is_empty()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.sample.partition_point(|&s| s <= x);
        k as f64 / self.len() as f64
    }

    pub fn sf(&self, x: f64) -> f64 {
        let k = self.sample.partition_point(|&s| s <= x);
        (self.len() - k) as f64 / self.len() as f64
    }

    /// Left-continuous inverse: the smallest sample point with `F(x) ≥ p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.len();
        let k = ((p * n as f64).ceil() as usize).clamp(1, n);
        // guard against p·n rounding just above an integer
        let k = if k > 1 && (k - 1) as f64 / n as f64 >= p { k - 1 } else { k };
        self.sample[k - 1]
    }

    pub fn min(&self) -> f64 {
        self.sample[0]
    }

    pub fn max(&self) -> f64 {
        self.sample[self.len() - 1]
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        let n = self.len() as f64;
        Some(self.sample.iter().map(|x| x.powi(k as i32)).sum::<f64>() / n)
    }

    pub fn tail_shape(&self) -> TailShape {
        let top = self.max();
        let count = self.sample.iter().rev().take_while(|&&x| x == top).count();
        TailShape::Bounded {
            endpoint: top,
            exponent: 0.0,
            coef: count as f64 / self.len() as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmpiricalFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: not a decimal number: {content:?}")]
    BadLine { line: usize, content: String },
    #[error("file contains no values")]
    Empty,
}
