mod common;

use common::{ewc_generated_set, oracle_spearman};
use proptest::prelude::*;
use relmix::combine::{ew, ewc, sigmoid, tune, Bounds, CombineParams, TuneSettings};

fn params() -> impl Strategy<Value = CombineParams> {
    (0.0..10.0, 0.0..1.0, 0.01..0.5, 0.0..100.0, 0.0..1.0, 0.01..0.5, 0.0..1.0f64).prop_map(
        |(l, m, s, lp, mp, sp, xi)| CombineParams {
            lambda: l,
            m,
            s,
            lambda_prime: lp,
            m_prime: mp,
            s_prime: sp,
            xi,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn zero_gates_leave_esa_unchanged(esa in 0.0..1.0f64, wnp in 0.0..1.0f64, c in 0.0..2.0f64, mut p in params()) {
        p.lambda = 0.0;
        p.lambda_prime = 0.0;
        prop_assert_eq!(ewc(esa, wnp, c, &p), esa);
        prop_assert_eq!(ew(esa, wnp, &p), esa);
    }

    #[test]
    fn monotone_in_each_argument(esa in 0.0..1.0f64, wnp in 0.0..1.0f64, c in 0.0..2.0f64, h in 1e-6..0.1f64, p in params()) {
        let base = ewc(esa, wnp, c, &p);
        prop_assert!(ewc(esa + h, wnp, c, &p) >= base);
        prop_assert!(ewc(esa, wnp + h, c, &p) >= base);
        prop_assert!(ewc(esa, wnp, c + h, &p) >= base);
    }

    #[test]
    fn params_file_round_trips(p in params()) {
        let back: CombineParams = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn sigmoid_midpoint_and_limits() {
    assert_eq!(sigmoid(0.3, 0.3, 0.05), 0.5);
    assert!(sigmoid(10.0, 0.3, 0.05) > 1.0 - 1e-12);
    assert!(sigmoid(-10.0, 0.3, 0.05) < 1e-12);
}

#[test]
fn tuner_recovers_generating_ranking() {
    let truth = CombineParams::tuned_ewc();
    let (feats, gold) = ewc_generated_set(21, &truth);
    let score = |p: &CombineParams| {
        let s: Vec<f64> = feats.iter().map(|f| f.ewc(p)).collect();
        oracle_spearman(&s, &gold)
    };
    let start = CombineParams::identity();
    let r = tune(score, start, &Bounds::wide(), &TuneSettings::default()).unwrap();
    assert!(r.score >= score(&start));
    assert!(r.score >= 0.95, "rho {}", r.score);
    assert!((r.score - score(&r.params)).abs() < 1e-12);
}
