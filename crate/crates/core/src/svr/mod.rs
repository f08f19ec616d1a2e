//! Polynomial-kernel ε-support-vector regression with k-fold
//! cross-validation.

mod smo;

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::spearman;

pub const KKT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_SEED: u64 = 42;
const MAX_ITERATIONS: usize = 10_000_000;
const FORMAT_HEADER: &str = "relmix-svr 1";

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub features: Vec<f64>,
    pub target: f64,
}

impl FeatureRow {
    pub fn new(features: Vec<f64>, target: f64) -> Self {
        FeatureRow { features, target }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvrParams {
    pub degree: u32,
    pub c: f64,
    pub epsilon: f64,
}

impl Default for SvrParams {
    fn default() -> Self {
        SvrParams {
            degree: 4,
            c: 1.0,
            epsilon: 0.1,
        }
    }
}

/// Per-feature standardization. Constant features are only centred.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaling {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Scaling {
    pub fn fit(rows: &[FeatureRow]) -> Scaling {
        let dim = rows.first().map_or(0, |r| r.features.len());
        let n = rows.len() as f64;
        let mut mean = vec![0.0; dim];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(&r.features) {
                *m += v / n;
            }
        }
        let mut scale = vec![0.0; dim];
        for r in rows {
            for ((s, v), m) in scale.iter_mut().zip(&r.features).zip(&mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in &mut scale {
            *s = if *s > 0.0 { s.sqrt() } else { 1.0 };
        }
        Scaling { mean, scale }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

fn kernel(u: &[f64], v: &[f64], degree: u32) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    (dot + 1.0).powi(degree as i32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvrModel {
    pub params: SvrParams,
    pub scaling: Scaling,
    /// Standardized support vectors with their coefficients `α − α*`.
    pub support: Vec<(Vec<f64>, f64)>,
    pub bias: f64,
    /// Dual objective at the solution; 0 for a constant model.
    pub objective: f64,
    /// Maximal KKT violation at exit.
    pub kkt_gap: f64,
}

impl SvrModel {
    pub fn dimension(&self) -> usize {
        self.scaling.mean.len()
    }

    pub fn predict(&self, features: &[f64]) -> Result<f64> {
        if features.len() != self.dimension() {
            return Err(Error::Invalid(format!(
                "expected {} features, got {}",
                self.dimension(),
                features.len()
            )));
        }
        let x = self.scaling.apply(features);
        Ok(self
            .support
            .iter()
            .map(|(sv, a)| a * kernel(sv, &x, self.params.degree))
            .sum::<f64>()
            + self.bias)
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        writeln!(s, "{FORMAT_HEADER}").ok();
        writeln!(s, "degree {}", self.params.degree).ok();
        writeln!(s, "c {}", self.params.c).ok();
        writeln!(s, "epsilon {}", self.params.epsilon).ok();
        writeln!(s, "bias {}", self.bias).ok();
        writeln!(s, "objective {}", self.objective).ok();
        writeln!(s, "kkt_gap {}", self.kkt_gap).ok();
        writeln!(s, "features {}", self.dimension()).ok();
        writeln!(s, "mean {}", join(&self.scaling.mean)).ok();
        writeln!(s, "scale {}", join(&self.scaling.scale)).ok();
        writeln!(s, "support {}", self.support.len()).ok();
        for (sv, a) in &self.support {
            writeln!(s, "{a} {}", join(sv)).ok();
        }
        out.write_all(s.as_bytes())?;
        Ok(())
    }

    pub fn read<R: BufRead>(input: R, file: &str) -> Result<SvrModel> {
        let lines: Vec<String> = input.lines().collect::<std::io::Result<_>>()?;
        let mut it = lines
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 1, l.as_str()))
            .filter(|(_, l)| !l.starts_with('#'));
        let err = |line: usize, m: &str| Error::parse(file, line, m);
        let (ln, head) = it.next().ok_or_else(|| err(1, "empty model file"))?;
        if head.trim() != FORMAT_HEADER {
            return Err(err(ln, "not a relmix SVR model (version 1)"));
        }
        let mut field = |name: &str| -> Result<(usize, Vec<f64>)> {
            let (ln, line) = it.next().ok_or_else(|| err(0, &format!("missing `{name}`")))?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some(name) {
                return Err(err(ln, &format!("expected `{name}`")));
            }
            let vals = parts
                .map(|v| v.parse::<f64>().map_err(|_| err(ln, &format!("bad number `{v}`"))))
                .collect::<Result<Vec<f64>>>()?;
            Ok((ln, vals))
        };
        let one = |(ln, v): (usize, Vec<f64>)| -> Result<f64> {
            match v.as_slice() {
                [x] => Ok(*x),
                _ => Err(err(ln, "expected one value")),
            }
        };
        let degree = one(field("degree")?)?;
        let c = one(field("c")?)?;
        let epsilon = one(field("epsilon")?)?;
        let bias = one(field("bias")?)?;
        let objective = one(field("objective")?)?;
        let kkt_gap = one(field("kkt_gap")?)?;
        let dim = one(field("features")?)? as usize;
        let (ln_mean, mean) = field("mean")?;
        let (ln_scale, scale) = field("scale")?;
        if mean.len() != dim || scale.len() != dim {
            return Err(err(ln_mean.max(ln_scale), "scaling length does not match feature count"));
        }
        let count = one(field("support")?)? as usize;
        let mut support = Vec::with_capacity(count);
        for (ln, line) in it.by_ref().take(count) {
            let vals = line
                .split_whitespace()
                .map(|v| v.parse::<f64>().map_err(|_| err(ln, &format!("bad number `{v}`"))))
                .collect::<Result<Vec<f64>>>()?;
            if vals.len() != dim + 1 {
                return Err(err(ln, "support vector has wrong length"));
            }
            support.push((vals[1..].to_vec(), vals[0]));
        }
        if support.len() != count {
            return Err(err(lines.len(), "fewer support vectors than declared"));
        }
        Ok(SvrModel {
            params: SvrParams {
                degree: degree as u32,
                c,
                epsilon,
            },
            scaling: Scaling { mean, scale },
            support,
            bias,
            objective,
            kkt_gap,
        })
    }
}

/// Trains on `rows`; features are standardized with statistics of these
/// rows only. Equal targets give a constant model.
pub fn train_svr(rows: &[FeatureRow], params: &SvrParams) -> Result<SvrModel> {
    if rows.len() < 2 {
        return Err(Error::Invalid("SVR needs at least 2 training rows".into()));
    }
    if params.degree < 1 || !(params.c > 0.0) || !(params.epsilon >= 0.0) {
        return Err(Error::Invalid("SVR needs degree >= 1, C > 0, epsilon >= 0".into()));
    }
    let dim = rows[0].features.len();
    if rows.iter().any(|r| r.features.len() != dim) {
        return Err(Error::Invalid("feature rows differ in length".into()));
    }
    if rows
        .iter()
        .any(|r| !r.target.is_finite() || r.features.iter().any(|v| !v.is_finite()))
    {
        return Err(Error::Invalid("non-finite feature or target".into()));
    }
    let scaling = Scaling::fit(rows);
    if rows.iter().all(|r| r.target == rows[0].target) {
        return Ok(SvrModel {
            params: *params,
            scaling,
            support: Vec::new(),
            bias: rows[0].target,
            objective: 0.0,
            kkt_gap: 0.0,
        });
    }
    let xs: Vec<Vec<f64>> = rows.iter().map(|r| scaling.apply(&r.features)).collect();
    let targets: Vec<f64> = rows.iter().map(|r| r.target).collect();
    let gram: Vec<Vec<f64>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| kernel(a, b, params.degree)).collect())
        .collect();
    let sol = smo::solve(&gram, &targets, params.c, params.epsilon, KKT_TOLERANCE, MAX_ITERATIONS);
    let support = xs
        .into_iter()
        .zip(sol.coef)
        .filter(|(_, a)| *a != 0.0)
        .collect();
    Ok(SvrModel {
        params: *params,
        scaling,
        support,
        bias: -sol.rho,
        objective: sol.objective,
        kkt_gap: sol.gap,
    })
}

/// Fold index per row: a seeded shuffle cut into `folds` contiguous blocks
/// whose sizes differ by at most one.
pub fn fold_assignments(n: usize, folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 || folds > n {
        return Err(Error::Invalid(format!("cannot split {n} rows into {folds} folds")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut fold_of = vec![0; n];
    let (base, extra) = (n / folds, n % folds);
    let mut pos = 0;
    for f in 0..folds {
        let size = base + usize::from(f < extra);
        for &row in &order[pos..pos + size] {
            fold_of[row] = f;
        }
        pos += size;
    }
    Ok(fold_of)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    /// Out-of-fold prediction per row.
    pub predictions: Vec<f64>,
    pub fold_of: Vec<usize>,
    pub models: Vec<SvrModel>,
    pub rho: f64,
}

pub fn cross_validate(rows: &[FeatureRow], params: &SvrParams, folds: usize, seed: u64) -> Result<CvResult> {
    let fold_of = fold_assignments(rows.len(), folds, seed)?;
    let trained: Vec<Result<(SvrModel, Vec<(usize, f64)>)>> = (0..folds)
        .into_par_iter()
        .map(|f| {
            let train: Vec<FeatureRow> = rows
                .iter()
                .zip(&fold_of)
                .filter(|(_, k)| **k != f)
                .map(|(r, _)| r.clone())
                .collect();
            let model = train_svr(&train, params)?;
            let preds = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| fold_of[*i] == f)
                .map(|(i, r)| Ok((i, model.predict(&r.features)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((model, preds))
        })
        .collect();
    let mut predictions = vec![f64::NAN; rows.len()];
    let mut models = Vec::with_capacity(folds);
    for r in trained {
        let (model, preds) = r?;
        for (i, p) in preds {
            predictions[i] = p;
        }
        models.push(model);
    }
    let golds: Vec<f64> = rows.iter().map(|r| r.target).collect();
    let rho = spearman(&predictions, &golds)?;
    Ok(CvResult {
        predictions,
        fold_of,
        models,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_targets() {
        let rows: Vec<FeatureRow> = (0..5).map(|i| FeatureRow::new(vec![i as f64], 3.5)).collect();
        let m = train_svr(&rows, &SvrParams::default()).unwrap();
        assert!(m.support.is_empty());
        assert_eq!(m.predict(&[2.0]).unwrap(), 3.5);
        assert_eq!(m.predict(&[100.0]).unwrap(), 3.5);
    }

    #[test]
    fn linear_data_fits_in_tube() {
        let rows: Vec<FeatureRow> = (0..15)
            .map(|i| FeatureRow::new(vec![i as f64], 2.0 * i as f64 - 3.0))
            .collect();
        let p = SvrParams {
            degree: 1,
            c: 1000.0,
            epsilon: 0.01,
        };
        let m = train_svr(&rows, &p).unwrap();
        for r in &rows {
            assert!((m.predict(&r.features).unwrap() - r.target).abs() <= 0.01 + 1e-6);
        }
    }

    #[test]
    fn hand_expanded_prediction() {
        let m = SvrModel {
            params: SvrParams {
                degree: 2,
                c: 1.0,
                epsilon: 0.1,
            },
            scaling: Scaling {
                mean: vec![1.0, 0.0],
                scale: vec![2.0, 1.0],
            },
            support: vec![(vec![1.0, 0.0], 0.5), (vec![0.0, -1.0], -0.25)],
            bias: 0.1,
            objective: 0.0,
            kkt_gap: 0.0,
        };
        // x = (3, 2) scales to (1, 2): 0.5·(1+1)² − 0.25·(−2+1)² + 0.1.
        assert!((m.predict(&[3.0, 2.0]).unwrap() - (2.0 - 0.25 + 0.1)).abs() < 1e-15);
        assert!(m.predict(&[1.0]).is_err());
        let zero = SvrModel { support: vec![], ..m };
        assert_eq!(zero.predict(&[7.0, 7.0]).unwrap(), 0.1);
    }

    #[test]
    fn model_file_round_trip() {
        let rows: Vec<FeatureRow> = (0..12)
            .map(|i| FeatureRow::new(vec![i as f64, (i * i % 7) as f64], (i as f64).sin()))
            .collect();
        let m = train_svr(&rows, &SvrParams::default()).unwrap();
        let mut buf = Vec::new();
        m.write(&mut buf).unwrap();
        let back = SvrModel::read(&buf[..], "m.txt").unwrap();
        assert_eq!(back, m);
        assert!(SvrModel::read(&b"relmix-svr 2\n"[..], "m.txt").is_err());
    }

    #[test]
    fn folds_partition() {
        let f = fold_assignments(23, 10, 42).unwrap();
        let mut sizes = [0usize; 10];
        for k in &f {
            sizes[*k] += 1;
        }
        assert!(sizes.iter().all(|s| *s == 2 || *s == 3));
        assert_eq!(sizes.iter().sum::<usize>(), 23);
        assert!(fold_assignments(5, 10, 42).is_err());
    }
}
