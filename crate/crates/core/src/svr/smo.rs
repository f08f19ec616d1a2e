//! SMO for the ε-SVR dual, following the LIBSVM formulation.
//!
//! Variables are `β = [α; α*]` with labels `y = [+1…; −1…]`, minimizing
//! `½ βᵀQβ + pᵀβ` subject to `yᵀβ = 0`, `0 ≤ β ≤ C`, where
//! `Q_st = y_s y_t K(s mod n, t mod n)` and `p = [ε − z; ε + z]`.

const TAU: f64 = 1e-12;

pub(crate) struct Solution {
    /// `α_i − α*_i` per training row.
    pub coef: Vec<f64>,
    /// Prediction is `Σ coef_i K(x_i, x) − rho`.
    pub rho: f64,
    pub objective: f64,
    /// Maximal violating-pair gap at exit.
    pub gap: f64,
}

pub(crate) fn solve(kernel: &[Vec<f64>], targets: &[f64], c: f64, epsilon: f64, tol: f64, max_iter: usize) -> Solution {
    let n = targets.len();
    let l = 2 * n;
    let y: Vec<f64> = (0..l).map(|t| if t < n { 1.0 } else { -1.0 }).collect();
    let p: Vec<f64> = (0..l)
        .map(|t| if t < n { epsilon - targets[t] } else { epsilon + targets[t - n] })
        .collect();
    let q = |s: usize, t: usize| y[s] * y[t] * kernel[s % n][t % n];
    let mut beta = vec![0.0; l];
    let mut grad = p.clone();

    let in_up = |t: usize, b: &[f64]| if y[t] > 0.0 { b[t] < c } else { b[t] > 0.0 };
    let in_low = |t: usize, b: &[f64]| if y[t] > 0.0 { b[t] > 0.0 } else { b[t] < c };

    let mut iterations = 0;
    let mut gap;
    loop {
        let mut gmax = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..l {
            if in_up(t, &beta) && -y[t] * grad[t] >= gmax {
                gmax = -y[t] * grad[t];
                i = t;
            }
        }
        let mut gmax2 = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut best_obj = f64::INFINITY;
        for t in 0..l {
            if !in_low(t, &beta) {
                continue;
            }
            gmax2 = gmax2.max(y[t] * grad[t]);
            if i == usize::MAX {
                continue;
            }
            let b = gmax + y[t] * grad[t];
            if b > 0.0 {
                let mut a = q(i, i) + q(t, t) - 2.0 * y[i] * y[t] * q(i, t);
                if a <= 0.0 {
                    a = TAU;
                }
                let obj = -(b * b) / a;
                if obj <= best_obj {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        gap = gmax + gmax2;
        if gap < tol || i == usize::MAX || j == usize::MAX || iterations >= max_iter {
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (beta[i], beta[j]);
        let (qii, qjj, qij) = (q(i, i), q(j, j), q(i, j));
        if y[i] != y[j] {
            let mut quad = qii + qjj + 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = beta[i] - beta[j];
            beta[i] += delta;
            beta[j] += delta;
            if diff > 0.0 {
                if beta[j] < 0.0 {
                    beta[j] = 0.0;
                    beta[i] = diff;
                }
            } else if beta[i] < 0.0 {
                beta[i] = 0.0;
                beta[j] = -diff;
            }
            if diff > 0.0 {
                if beta[i] > c {
                    beta[i] = c;
                    beta[j] = c - diff;
                }
            } else if beta[j] > c {
                beta[j] = c;
                beta[i] = c + diff;
            }
        } else {
            let mut quad = qii + qjj - 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (grad[i] - grad[j]) / quad;
            let sum = beta[i] + beta[j];
            beta[i] -= delta;
            beta[j] += delta;
            if sum > c {
                if beta[i] > c {
                    beta[i] = c;
                    beta[j] = sum - c;
                }
            } else if beta[j] < 0.0 {
                beta[j] = 0.0;
                beta[i] = sum;
            }
            if sum > c {
                if beta[j] > c {
                    beta[j] = c;
                    beta[i] = sum - c;
                }
            } else if beta[i] < 0.0 {
                beta[i] = 0.0;
                beta[j] = sum;
            }
        }
        let (di, dj) = (beta[i] - old_i, beta[j] - old_j);
        for t in 0..l {
            grad[t] += q(i, t) * di + q(j, t) * dj;
        }
    }

    // Offset from free variables, or the midpoint of the feasible range.
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut sum_free, mut n_free) = (0.0, 0usize);
    for t in 0..l {
        let yg = y[t] * grad[t];
        if beta[t] >= c {
            if y[t] < 0.0 { ub = ub.min(yg) } else { lb = lb.max(yg) }
        } else if beta[t] <= 0.0 {
            if y[t] > 0.0 { ub = ub.min(yg) } else { lb = lb.max(yg) }
        } else {
            n_free += 1;
            sum_free += yg;
        }
    }
    let rho = if n_free > 0 { sum_free / n_free as f64 } else { (ub + lb) / 2.0 };

    let objective = (0..l).map(|t| beta[t] * (grad[t] + p[t])).sum::<f64>() / 2.0;
    let coef = (0..n).map(|i| beta[i] - beta[i + n]).collect();
    Solution {
        coef,
        rho,
        objective,
        gap,
    }
}
