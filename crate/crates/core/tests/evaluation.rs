use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::eval::{
    evaluate_measure, leave_one_out_stability, lowess, progressive_removal, spearman, WordPair,
};

/// Rank by counting: #smaller + (#equal + 1) / 2.
fn count_ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|x| {
            let less = v.iter().filter(|y| *y < x).count() as f64;
            let eq = v.iter().filter(|y| *y == x).count() as f64;
            less + (eq + 1.0) / 2.0
        })
        .collect()
}

fn oracle_spearman(xs: &[f64], ys: &[f64]) -> f64 {
    let (rx, ry) = (count_ranks(xs), count_ranks(ys));
    let n = rx.len() as f64;
    let sx: f64 = rx.iter().sum();
    let sy: f64 = ry.iter().sum();
    let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| a * b).sum();
    let sxx: f64 = rx.iter().map(|a| a * a).sum();
    let syy: f64 = ry.iter().map(|a| a * a).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

#[test]
fn spearman_with_ties_matches_definition() {
    let xs = [1.0, 2.0, 2.0, 4.0];
    let ys = [1.0, 3.0, 2.0, 4.0];
    let got = spearman(&xs, &ys).unwrap();
    assert!((got - oracle_spearman(&xs, &ys)).abs() < 1e-12);
    // Ranks (1, 2.5, 2.5, 4) vs (1, 3, 2, 4).
    assert!((got - 0.9486832980505138).abs() < 1e-12);
}

fn random_data(n: usize, seed: u64, ties: bool) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..n)
        .map(|_| if ties { rng.gen_range(0..6) as f64 } else { rng.gen::<f64>() })
        .collect();
    let ys: Vec<f64> = xs.iter().map(|x| x + rng.gen_range(-1.0..1.0)).collect();
    (xs, ys)
}

#[test]
fn leave_one_out_matches_recomputation() {
    let (xs, ys) = random_data(10, 1, false);
    let full = oracle_spearman(&xs, &ys);
    let d = leave_one_out_stability(&xs, &ys).unwrap();
    for i in 0..10 {
        let rx: Vec<f64> = (0..10).filter(|&j| j != i).map(|j| xs[j]).collect();
        let ry: Vec<f64> = (0..10).filter(|&j| j != i).map(|j| ys[j]).collect();
        assert!((d[i] - (oracle_spearman(&rx, &ry) - full)).abs() < 1e-12);
    }
}

#[test]
fn removal_curve_matches_recomputation() {
    let (xs, ys) = random_data(20, 2, true);
    let curve = progressive_removal(&xs, &ys).unwrap();
    assert_eq!(curve.len(), 18);
    assert!(curve.iter().any(|(_, r)| r.is_nan()));
    // Stable ordering by score: equal scores leave in input order.
    let mut order: Vec<usize> = (0..20).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    for (k, rho) in curve {
        let gone = &order[..k];
        let rx: Vec<f64> = (0..20).filter(|j| !gone.contains(j)).map(|j| xs[j]).collect();
        let ry: Vec<f64> = (0..20).filter(|j| !gone.contains(j)).map(|j| ys[j]).collect();
        let want = oracle_spearman(&rx, &ry);
        if want.is_nan() {
            assert!(rho.is_nan(), "k={k}");
        } else {
            assert!((rho - want).abs() < 1e-12, "k={k}");
        }
    }
}

#[test]
fn lowess_matches_reference_fixture() {
    let text = include_str!("fixtures/lowess_reference.tsv");
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 50);
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
    for (col, span, iters) in [(2, 2.0 / 3.0, 3), (3, 0.3, 1), (4, 0.5, 0)] {
        let fit = lowess(&pts, span, iters).unwrap();
        for (r, f) in rows.iter().zip(&fit) {
            assert!((r[col] - f).abs() < 1e-6, "span {span}: {} vs {f}", r[col]);
        }
    }
}

#[test]
fn report_composes_the_parts() {
    let (xs, ys) = random_data(15, 9, false);
    let pairs: Vec<WordPair> = ys
        .iter()
        .enumerate()
        .map(|(i, g)| WordPair::new(&format!("a{i}"), "b", *g))
        .collect();
    let r = evaluate_measure(&pairs, |p| Ok(xs[p.w1[1..].parse::<usize>().unwrap()]), false).unwrap();
    assert!((r.rho - oracle_spearman(&xs, &ys)).abs() < 1e-12);
    assert_eq!(r.stability, leave_one_out_stability(&xs, &ys).unwrap());
    assert_eq!(r.removal_curve, progressive_removal(&xs, &ys).unwrap());
}

proptest! {
    #[test]
    fn spearman_rank_invariance(seed in 0u64..10_000, n in 3usize..40, ties in any::<bool>()) {
        let (xs, ys) = random_data(n, seed, ties);
        let (Ok(a), Ok(b)) = (spearman(&xs, &ys), spearman(&ys, &xs)) else {
            return Ok(());
        };
        prop_assert!((a - b).abs() < 1e-12);
        let tx: Vec<f64> = xs.iter().map(|x| (3.0 * x).exp() + 1.0).collect();
        prop_assert!((spearman(&tx, &ys).unwrap() - a).abs() < 1e-12);
        prop_assert!((a - oracle_spearman(&xs, &ys)).abs() < 1e-9);
    }

    #[test]
    fn analyses_are_pure(seed in 0u64..1000) {
        let (xs, ys) = random_data(12, seed, false);
        prop_assert_eq!(leave_one_out_stability(&xs, &ys).unwrap(), leave_one_out_stability(&xs, &ys).unwrap());
        prop_assert_eq!(format!("{:?}", progressive_removal(&xs, &ys).unwrap()), format!("{:?}", progressive_removal(&xs, &ys).unwrap()));
    }

    #[test]
    fn lowess_reorder_invariant(seed in 0u64..1000, shift in 1usize..30) {
        let (xs, ys) = random_data(30, seed, true);
        let pts: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
        let Ok(fit) = lowess(&pts, 0.5, 2) else { return Ok(()); };
        let mut rotated = pts.clone();
        rotated.rotate_left(shift);
        let fit2 = lowess(&rotated, 0.5, 2).unwrap();
        for i in 0..30 {
            prop_assert!((fit[(i + shift) % 30] - fit2[i]).abs() < 1e-12);
        }
    }
}
