//! Score a test set, then write the stability table, removal curve and
//! LOWESS scatter plot. Scores here are a noisy copy of the gold ratings.
//!
//!     cargo run --example evaluate -- pairs.tsv

use std::fs::File;
use std::io::BufReader;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::eval::{evaluate_measure, load_test_set, write_curve_svg, write_scatter_svg, DEFAULT_ITERATIONS, DEFAULT_SPAN};

const PAIRS: &str = "Word 1\tWord 2\tHuman (mean)
tiger\tcat\t7.35
book\tpaper\t7.46
computer\tkeyboard\t7.62
plane\tcar\t5.77
train\tcar\t6.31
telephone\tcommunication\t7.50
television\tradio\t6.77
drug\tabuse\t6.85
bread\tbutter\t6.19
cucumber\tpotato\t5.92
doctor\tnurse\t7.00
professor\tdoctor\t6.62
student\tprofessor\t6.81
smart\tstupid\t5.81
wood\tforest\t7.73
money\tcash\t9.15
king\tcabbage\t0.23
noon\tstring\t0.54
rooster\tvoyage\t0.62
chord\tsmile\t0.54
";

fn main() -> relmix::Result<()> {
    let set = match std::env::args().nth(1) {
        Some(path) => load_test_set(BufReader::new(File::open(&path)?), &path)?,
        None => load_test_set(PAIRS.as_bytes(), "inline")?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let noisy: Vec<f64> = set.pairs.iter().map(|p| p.gold / 10.0 + rng.gen_range(-0.25..0.25)).collect();
    let report = evaluate_measure(
        &set.pairs,
        |p| {
            let i = set.pairs.iter().position(|q| q == p).unwrap();
            Ok(noisy[i])
        },
        false,
    )?;
    println!("rho {:.4} over {} pairs", report.rho, report.pairs.len());

    println!("pairs whose removal raises rho most:");
    for &i in report.ranked_stability().iter().take(5) {
        let p = &report.pairs[i];
        println!("  {:<12} {:<14} {:+.4}", p.w1, p.w2, report.stability[i]);
    }

    let dir = std::env::temp_dir().join("relmix-example");
    std::fs::create_dir_all(&dir)?;
    report.write_stability_csv(File::create(dir.join("stability.csv"))?, &[])?;
    report.write_removal_csv(File::create(dir.join("removal_curve.csv"))?, &[])?;
    let rows = report.lowess_points(DEFAULT_SPAN, DEFAULT_ITERATIONS)?;
    write_scatter_svg(File::create(dir.join("scatter.svg"))?, &rows, "noisy scores")?;
    let curve: Vec<(f64, f64)> = report.removal_curve.iter().map(|(k, r)| (*k as f64, *r)).collect();
    write_curve_svg(File::create(dir.join("removal.svg"))?, &curve, "removal", "pairs removed", "rho")?;
    println!("artifacts in {}", dir.display());
    Ok(())
}
