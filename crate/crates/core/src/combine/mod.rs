//! Sigmoid-gated combination of ESA with the WordNet path measure and the
//! mixed collocation index.

mod tune;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use tune::{tune, Bounds, TuneResult, TuneSettings};

/// `1 / (1 + exp(-(x - m) / s))`.
pub fn sigmoid(x: f64, m: f64, s: f64) -> f64 {
    1.0 / (1.0 + (-(x - m) / s).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombineParams {
    pub lambda: f64,
    pub m: f64,
    pub s: f64,
    pub lambda_prime: f64,
    pub m_prime: f64,
    pub s_prime: f64,
    pub xi: f64,
}

pub const PARAM_KEYS: [&str; 7] = ["lambda", "m", "s", "lambda_prime", "m_prime", "s_prime", "xi"];

impl Default for CombineParams {
    fn default() -> Self {
        CombineParams::tuned_ewc()
    }
}

impl CombineParams {
    /// Tuned values for the ESA + WordNet combination; the collocation gate
    /// is off.
    pub fn tuned_ew() -> Self {
        CombineParams {
            lambda: 4.665,
            m: 0.26,
            s: 0.05,
            lambda_prime: 0.0,
            m_prime: 0.19,
            s_prime: 0.05,
            xi: 0.55,
        }
    }

    /// Tuned values for the full combination.
    pub fn tuned_ewc() -> Self {
        CombineParams {
            lambda: 5.16,
            m: 0.25,
            s: 0.05,
            lambda_prime: 48.7,
            m_prime: 0.19,
            s_prime: 0.05,
            xi: 0.55,
        }
    }

    /// Both gates off: every combination reduces to ESA.
    pub fn identity() -> Self {
        CombineParams {
            lambda: 0.0,
            lambda_prime: 0.0,
            ..Self::tuned_ewc()
        }
    }

    pub fn to_array(&self) -> [f64; 7] {
        [self.lambda, self.m, self.s, self.lambda_prime, self.m_prime, self.s_prime, self.xi]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        CombineParams {
            lambda: a[0],
            m: a[1],
            s: a[2],
            lambda_prime: a[3],
            m_prime: a[4],
            s_prime: a[5],
            xi: a[6],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.to_array();
        if let Some(i) = a.iter().position(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!("{} must be finite", PARAM_KEYS[i])));
        }
        if self.s <= 0.0 || self.s_prime <= 0.0 {
            return Err(Error::Invalid("s and s_prime must be positive".into()));
        }
        if self.lambda < 0.0 || self.lambda_prime < 0.0 {
            return Err(Error::Invalid("lambda and lambda_prime must be non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(Error::Invalid("xi must lie in [0, 1]".into()));
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        PARAM_KEYS.iter().position(|k| *k == key).map(|i| self.to_array()[i])
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let i = PARAM_KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::UnknownKey(key.to_string()))?;
        let mut a = self.to_array();
        a[i] = value;
        *self = Self::from_array(a);
        Ok(())
    }
}

/// One `key=value` line per parameter; floats print in shortest
/// round-trip form.
impl fmt::Display for CombineParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in PARAM_KEYS.iter().zip(self.to_array()) {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Missing keys keep their default; unknown keys are errors. `#` starts a
/// comment line.
impl FromStr for CombineParams {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = CombineParams::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse("params", i + 1, "expected key=value"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::parse("params", i + 1, format!("bad number `{}`", v.trim())))?;
            p.set(k.trim(), v)?;
        }
        p.validate()?;
        Ok(p)
    }
}

/// `esa · (1 + λ·σ(wnp; m, s))`.
pub fn ew(esa: f64, wnp: f64, p: &CombineParams) -> f64 {
    esa * (1.0 + p.lambda * sigmoid(wnp, p.m, p.s))
}

/// `ew · (1 + λ′·σ(cξ; m′, s′))`.
pub fn ewc(esa: f64, wnp: f64, cxi: f64, p: &CombineParams) -> f64 {
    ew(esa, wnp, p) * (1.0 + p.lambda_prime * sigmoid(cxi, p.m_prime, p.s_prime))
}

/// Per-pair component scores, enough to re-score any parameter setting
/// without touching the underlying resources.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PairFeatures {
    pub esa: f64,
    pub wnp: f64,
    /// Collocation index of the pair in test-set order.
    pub colloc_direct: f64,
    /// Collocation index of the reversed pair.
    pub colloc_inverse: f64,
}

impl PairFeatures {
    pub fn cxi(&self, xi: f64) -> f64 {
        self.colloc_direct + xi * self.colloc_inverse
    }

    pub fn ew(&self, p: &CombineParams) -> f64 {
        ew(self.esa, self.wnp, p)
    }

    pub fn ewc(&self, p: &CombineParams) -> f64 {
        ewc(self.esa, self.wnp, self.cxi(p.xi), p)
    }
}
