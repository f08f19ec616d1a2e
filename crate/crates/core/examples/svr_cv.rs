//! Cross-validated polynomial SVR on component scores, then save and
//! reload the model trained on all rows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::svr::{cross_validate, train_svr, FeatureRow, SvrModel, SvrParams};

fn main() -> relmix::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rows: Vec<FeatureRow> = (0..120)
        .map(|_| {
            let esa: f64 = rng.gen_range(0.0..0.5);
            let wnp: f64 = rng.gen_range(0.0..1.0);
            let cd: f64 = rng.gen_range(0.0..0.2);
            let ci: f64 = rng.gen_range(0.0..0.2);
            let gold = 10.0 * (esa + 0.3 * wnp * wnp + cd).min(1.0) + rng.gen_range(-0.5..0.5);
            FeatureRow::new(vec![esa, wnp, cd, ci], gold)
        })
        .collect();

    for degree in 1..=4 {
        let params = SvrParams { degree, ..SvrParams::default() };
        let cv = cross_validate(&rows, &params, 10, 42)?;
        let worst_gap = cv.models.iter().map(|m| m.kkt_gap).fold(0.0, f64::max);
        println!("degree {degree}: rho {:.4}  max KKT gap {worst_gap:.1e}", cv.rho);
    }

    let model = train_svr(&rows, &SvrParams::default())?;
    let mut buf = Vec::new();
    model.write(&mut buf)?;
    let back = SvrModel::read(buf.as_slice(), "memory")?;
    let x = [0.3, 0.8, 0.1, 0.0];
    println!("{} support vectors; f({x:?}) = {:.3}", back.support.len(), back.predict(&x)?);
    Ok(())
}
