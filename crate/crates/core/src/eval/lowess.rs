//! Robust locally weighted linear regression.
//!
//! For each point the `floor(span·n)` nearest neighbours in x form a window
//! that slides right along the sorted data; tricube weights are scaled by
//! the window's largest distance. Each robustness pass reweights points by
//! the bisquare of their residual over six median absolute residuals.

use crate::error::{Error, Result};

pub const DEFAULT_SPAN: f64 = 2.0 / 3.0;
pub const DEFAULT_ITERATIONS: usize = 3;

fn tricube(t: f64) -> f64 {
    let a = 1.0 - t.abs().powi(3);
    if a <= 0.0 {
        0.0
    } else {
        a * a * a
    }
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Weighted least-squares line through the window, evaluated at `x0`.
fn local_fit(xs: &[f64], ys: &[f64], w: &[f64], x0: f64) -> f64 {
    let sw: f64 = w.iter().sum();
    if sw <= 0.0 {
        return f64::NAN;
    }
    let xm = w.iter().zip(xs).map(|(w, x)| w * x).sum::<f64>() / sw;
    let ym = w.iter().zip(ys).map(|(w, y)| w * y).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for ((w, x), y) in w.iter().zip(xs).zip(ys) {
        sxx += w * (x - xm) * (x - xm);
        sxy += w * (x - xm) * (y - ym);
    }
    if sxx <= 0.0 {
        return ym;
    }
    ym + sxy / sxx * (x0 - xm)
}

/// Smoothed value for every input point, aligned with the input order.
pub fn lowess(points: &[(f64, f64)], span: f64, iterations: usize) -> Result<Vec<f64>> {
    if !(span > 0.0 && span <= 1.0) {
        return Err(Error::Stats(format!("span must lie in (0, 1], got {span}")));
    }
    let n = points.len();
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::Stats("non-finite point".into()));
    }
    if n < 2 || points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::Stats("need at least two distinct x values".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .0
            .total_cmp(&points[b].0)
            .then(points[a].1.total_cmp(&points[b].1))
    });
    let xs: Vec<f64> = order.iter().map(|&i| points[i].0).collect();
    let ys: Vec<f64> = order.iter().map(|&i| points[i].1).collect();
    let k = ((span * n as f64).floor() as usize).clamp(2, n);

    // Windows and distance weights are fixed across passes.
    let mut windows = Vec::with_capacity(n);
    let mut lo = 0usize;
    for i in 0..n {
        while lo + k < n && xs[lo + k] - xs[i] < xs[i] - xs[lo] {
            lo += 1;
        }
        let hi = lo + k;
        let width = (xs[i] - xs[lo]).max(xs[hi - 1] - xs[i]);
        let w: Vec<f64> = xs[lo..hi]
            .iter()
            .map(|x| if width > 0.0 { tricube((x - xs[i]) / width) } else { 1.0 })
            .collect();
        windows.push((lo, w));
    }

    let mut robust = vec![1.0; n];
    let mut fitted = vec![0.0; n];
    for pass in 0..=iterations {
        if pass > 0 {
            let mut resid: Vec<f64> = ys.iter().zip(&fitted).map(|(y, f)| (y - f).abs()).collect();
            let s = median(&mut resid.clone());
            if s == 0.0 {
                break;
            }
            for r in &mut resid {
                let u = *r / (6.0 * s);
                *r = if u >= 1.0 { 0.0 } else { (1.0 - u * u).powi(2) };
            }
            robust = resid;
        }
        for i in 0..n {
            let (lo, w) = &windows[i];
            let lo = *lo;
            let weights: Vec<f64> = w.iter().zip(&robust[lo..lo + k]).map(|(a, b)| a * b).collect();
            let v = local_fit(&xs[lo..lo + k], &ys[lo..lo + k], &weights, xs[i]);
            fitted[i] = if v.is_nan() { ys[i] } else { v };
        }
    }

    let mut out = vec![0.0; n];
    for (pos, &i) in order.iter().enumerate() {
        out[i] = fitted[pos];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_is_reproduced() {
        let pts: Vec<(f64, f64)> = (0..20).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        for span in [0.2, 0.5, 1.0] {
            let fit = lowess(&pts, span, 3).unwrap();
            for ((_, y), f) in pts.iter().zip(&fit) {
                assert!((y - f).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn constant_y() {
        let pts: Vec<(f64, f64)> = (0..15).map(|i| ((i * i) as f64, 2.5)).collect();
        assert!(lowess(&pts, 0.4, 2).unwrap().iter().all(|v| (v - 2.5).abs() < 1e-12));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(lowess(&[(1.0, 1.0), (1.0, 2.0)], 0.5, 1).is_err());
        assert!(lowess(&[(1.0, 1.0), (2.0, 2.0)], 0.0, 1).is_err());
        assert!(lowess(&[(1.0, 1.0)], 1.0, 1).is_err());
    }
}
