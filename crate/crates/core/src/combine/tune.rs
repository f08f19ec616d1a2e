//! Derivative-free parameter search.
//!
//! Rank correlation is piecewise constant in the parameters, so instead of
//! following a gradient we probe each coordinate at `±step`, move to the
//! best strict improvement, and halve the steps once a full sweep finds
//! nothing. Extra starts are drawn uniformly inside the bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::CombineParams;

/// Search box. A coordinate whose lower and upper bounds coincide stays
/// fixed at that value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: CombineParams,
    pub upper: CombineParams,
}

impl Bounds {
    /// Box around the useful region of every parameter.
    pub fn wide() -> Self {
        Bounds {
            lower: CombineParams::from_array([0.0, 0.0, 0.01, 0.0, 0.0, 0.01, 0.0]),
            upper: CombineParams::from_array([10.0, 1.0, 0.5, 100.0, 1.0, 0.5, 1.0]),
        }
    }

    /// Same box with the collocation gate pinned off.
    pub fn ew_only() -> Self {
        let mut b = Self::wide();
        b.lower.lambda_prime = 0.0;
        b.upper.lambda_prime = 0.0;
        b.lower.xi = 0.55;
        b.upper.xi = 0.55;
        b
    }

    /// Pins `key` to `value`.
    pub fn fix(mut self, key: &str, value: f64) -> Result<Self> {
        self.lower.set(key, value)?;
        self.upper.set(key, value)?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.lower.to_array(), self.upper.to_array());
        if lo.iter().zip(&hi).any(|(l, h)| !(l <= h) || !l.is_finite() || !h.is_finite()) {
            return Err(Error::Invalid("tuning bounds must be finite with lower <= upper".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuneSettings {
    /// Random starts in addition to the initial point.
    pub restarts: usize,
    pub seed: u64,
    /// First probe step as a fraction of each coordinate's range.
    pub initial_step: f64,
    /// Search stops once every step falls below this fraction of the range.
    pub min_step: f64,
    /// Cap on score evaluations per start.
    pub max_evaluations: usize,
}

impl Default for TuneSettings {
    fn default() -> Self {
        TuneSettings {
            restarts: 8,
            seed: 42,
            initial_step: 0.1,
            min_step: 1e-6,
            max_evaluations: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuneResult {
    pub params: CombineParams,
    pub score: f64,
    pub evaluations: usize,
}

fn finite_or_discard(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::NEG_INFINITY
    }
}

fn ascend<F>(score: &F, start: [f64; 7], lo: &[f64; 7], hi: &[f64; 7], settings: &TuneSettings) -> TuneResult
where
    F: Fn(&CombineParams) -> f64,
{
    let eval = |x: &[f64; 7]| finite_or_discard(score(&CombineParams::from_array(*x)));
    let free: Vec<usize> = (0..7).filter(|&i| hi[i] > lo[i]).collect();
    let mut x = start;
    let mut best = eval(&x);
    let mut evaluations = 1;
    let mut step: Vec<f64> = (0..7).map(|i| settings.initial_step * (hi[i] - lo[i])).collect();
    while evaluations < settings.max_evaluations {
        let mut improved = false;
        for &i in &free {
            let mut candidate: Option<([f64; 7], f64)> = None;
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[i] = (x[i] + dir * step[i]).clamp(lo[i], hi[i]);
                if y[i] == x[i] {
                    continue;
                }
                let v = eval(&y);
                evaluations += 1;
                if v > best && candidate.is_none_or(|(_, c)| v > c) {
                    candidate = Some((y, v));
                }
            }
            if let Some((y, v)) = candidate {
                x = y;
                best = v;
                improved = true;
            }
        }
        if !improved {
            let mut all_small = true;
            for &i in &free {
                step[i] *= 0.5;
                if step[i] >= settings.min_step * (hi[i] - lo[i]) {
                    all_small = false;
                }
            }
            if all_small {
                break;
            }
        }
    }
    TuneResult {
        params: CombineParams::from_array(x),
        score: best,
        evaluations,
    }
}

fn lexicographic(a: &CombineParams, b: &CombineParams) -> std::cmp::Ordering {
    a.to_array()
        .iter()
        .zip(b.to_array().iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Maximizes `score` from `initial` plus `settings.restarts` seeded random
/// starts. Starts run in parallel; the result does not depend on thread
/// scheduling. The run from `initial` wins ties, remaining ties go to the
/// lexicographically smaller parameter vector.
pub fn tune<F>(score: F, initial: CombineParams, bounds: &Bounds, settings: &TuneSettings) -> Result<TuneResult>
where
    F: Fn(&CombineParams) -> f64 + Sync,
{
    bounds.validate()?;
    let (lo, hi) = (bounds.lower.to_array(), bounds.upper.to_array());
    let mut start0 = initial.to_array();
    for i in 0..7 {
        start0[i] = start0[i].clamp(lo[i], hi[i]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut starts = vec![start0];
    for _ in 0..settings.restarts {
        let mut s = [0.0; 7];
        for i in 0..7 {
            s[i] = if hi[i] > lo[i] { rng.gen_range(lo[i]..=hi[i]) } else { lo[i] };
        }
        starts.push(s);
    }
    let runs: Vec<TuneResult> = starts
        .par_iter()
        .map(|s| ascend(&score, *s, &lo, &hi, settings))
        .collect();
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let mut best = runs[0];
    for r in &runs[1..] {
        let better = r.score > best.score
            || (r.score == best.score
                && best.score > runs[0].score
                && lexicographic(&r.params, &best.params).is_lt());
        if better {
            best = *r;
        }
    }
    best.evaluations = evaluations;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_score_returns_initial() {
        let init = CombineParams::tuned_ew();
        let r = tune(|_| 0.5, init, &Bounds::wide(), &TuneSettings::default()).unwrap();
        assert_eq!(r.params, init);
        assert_eq!(r.score, 0.5);
    }

    #[test]
    fn quadratic_in_lambda() {
        let bounds = Bounds::wide();
        let mut b = bounds;
        for k in ["m", "s", "lambda_prime", "m_prime", "s_prime", "xi"] {
            b = b.fix(k, CombineParams::identity().get(k).unwrap()).unwrap();
        }
        let r = tune(
            |p| -(p.lambda - 2.0).powi(2),
            CombineParams::identity(),
            &b,
            &TuneSettings::default(),
        )
        .unwrap();
        assert!((r.params.lambda - 2.0).abs() < 1e-3, "{}", r.params.lambda);
    }

    #[test]
    fn non_finite_points_are_discarded() {
        let r = tune(
            |p| if p.lambda > 5.0 { f64::NAN } else { p.lambda },
            CombineParams::identity(),
            &Bounds::wide(),
            &TuneSettings::default(),
        )
        .unwrap();
        assert!(r.score.is_finite());
        assert!(r.params.lambda <= 5.0 && r.params.lambda > 4.99);
    }

    #[test]
    fn deterministic() {
        let f = |p: &CombineParams| -(p.m - 0.3).abs() - (p.xi - 0.7).abs();
        let s = TuneSettings::default();
        let a = tune(f, CombineParams::identity(), &Bounds::wide(), &s).unwrap();
        let b = tune(f, CombineParams::identity(), &Bounds::wide(), &s).unwrap();
        assert_eq!(a, b);
    }
}
