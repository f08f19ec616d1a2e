use crate::error::{Error, Result};

/// Average (fractional) ranks, 1-based.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Stats(format!("length mismatch: {} vs {}", xs.len(), ys.len())));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::Stats(format!("need at least 2 observations, got {n}")));
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Stats("zero variance, correlation undefined".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's ρ: Pearson correlation of average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Stats(format!("length mismatch: {} vs {}", xs.len(), ys.len())));
    }
    if xs.iter().chain(ys).any(|v| v.is_nan()) {
        return Err(Error::Stats("NaN in input".into()));
    }
    pearson(&average_ranks(xs), &average_ranks(ys))
}

fn check_len(scores: &[f64], golds: &[f64]) -> Result<()> {
    if scores.len() != golds.len() {
        return Err(Error::Stats(format!(
            "length mismatch: {} vs {}",
            scores.len(),
            golds.len()
        )));
    }
    if scores.len() < 3 {
        return Err(Error::Stats("need at least 3 pairs".into()));
    }
    Ok(())
}

/// `ρ(without i) − ρ(all)` for every pair i, aligned with the input.
pub fn leave_one_out_stability(scores: &[f64], golds: &[f64]) -> Result<Vec<f64>> {
    check_len(scores, golds)?;
    let full = spearman(scores, golds)?;
    let n = scores.len();
    let mut xs = Vec::with_capacity(n - 1);
    let mut ys = Vec::with_capacity(n - 1);
    (0..n)
        .map(|i| {
            xs.clear();
            ys.clear();
            for j in (0..n).filter(|&j| j != i) {
                xs.push(scores[j]);
                ys.push(golds[j]);
            }
            Ok(spearman(&xs, &ys)? - full)
        })
        .collect()
}

/// ρ after removing the `k` lowest-scoring pairs, for k = 0..=n−3. Equal
/// scores are removed in input order. Once the remaining scores or golds
/// are all tied, ρ is undefined and reported as NaN.
pub fn progressive_removal(scores: &[f64], golds: &[f64]) -> Result<Vec<(usize, f64)>> {
    check_len(scores, golds)?;
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut removed = vec![false; n];
    let mut curve = Vec::with_capacity(n - 2);
    for k in 0..=n - 3 {
        if k > 0 {
            removed[order[k - 1]] = true;
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = (0..n)
            .filter(|&j| !removed[j])
            .map(|j| (scores[j], golds[j]))
            .unzip();
        curve.push((k, spearman(&xs, &ys).unwrap_or(f64::NAN)));
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_with_ties() {
        assert_eq!(average_ranks(&[1.0, 2.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(average_ranks(&[3.0, 3.0, 3.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn spearman_basics() {
        let xs = [0.1, 0.5, 0.3, 0.9];
        assert!((spearman(&xs, &xs).unwrap() - 1.0).abs() < 1e-15);
        let rev: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert!((spearman(&xs, &rev).unwrap() + 1.0).abs() < 1e-15);
        assert!(spearman(&xs, &xs[..3]).is_err());
        assert!(spearman(&[1.0], &[1.0]).is_err());
        assert!(spearman(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn discordant_pair_removal_helps() {
        let scores = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let golds = [1.0, 2.0, 3.0, 4.0, 5.0, 0.0];
        let d = leave_one_out_stability(&scores, &golds).unwrap();
        assert!(d[5] > 0.0);
        let same = leave_one_out_stability(&scores, &scores).unwrap();
        assert!(same.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn removal_curve_shape() {
        let scores = [3.0, 1.0, 2.0, 5.0, 4.0];
        let c = progressive_removal(&scores, &scores).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|(_, r)| (*r - 1.0).abs() < 1e-15));
        let golds = [1.0, 3.0, 2.0, 5.0, 4.0];
        let c = progressive_removal(&scores, &golds).unwrap();
        assert_eq!(c[0].1, spearman(&scores, &golds).unwrap());
    }
}
