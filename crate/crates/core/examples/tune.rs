//! Fit the combination parameters on a set whose ratings were generated by
//! a hidden parameter setting, starting from the identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::combine::{tune, Bounds, CombineParams, PairFeatures, TuneSettings};
use relmix::eval::spearman;

fn main() -> relmix::Result<()> {
    let hidden = CombineParams::tuned_ewc();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let feats: Vec<PairFeatures> = (0..60)
        .map(|_| PairFeatures {
            esa: rng.gen_range(0.0..0.6),
            wnp: rng.gen_range(0.0..1.0),
            colloc_direct: rng.gen_range(0.0..0.3),
            colloc_inverse: rng.gen_range(0.0..0.3),
        })
        .collect();
    let gold: Vec<f64> = feats.iter().map(|f| f.ewc(&hidden)).collect();

    let score = |p: &CombineParams| {
        let s: Vec<f64> = feats.iter().map(|f| f.ewc(p)).collect();
        spearman(&s, &gold).unwrap_or(f64::NAN)
    };
    let start = CombineParams::identity();
    println!("rho at identity {:.4}", score(&start));
    let r = tune(score, start, &Bounds::wide(), &TuneSettings::default())?;
    println!("rho tuned {:.4} after {} evaluations", r.score, r.evaluations);
    println!("hidden {:?}", hidden.to_array());
    println!("found  {:?}", r.params.to_array());
    Ok(())
}
