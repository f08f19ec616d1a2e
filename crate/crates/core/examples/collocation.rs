//! Collocation indices from n-gram count files in the Google Books layout.

use relmix::collocation::{NgramTable, Vocabulary};

const UNIGRAMS: &str = "\
coffee\t1995\t900\t50
coffee\t2004\t1100\t60
cup\t2004\t1500\t70
cup\t1960\t800\t40
tea\t2004\t700\t30
";

const BIGRAMS: &str = "\
coffee cup\t2004\t120\t9
cup coffee\t2003\t15\t2
cup tea\t2001\t40\t5
coffee cup\t1950\t999\t9
";

fn main() -> relmix::Result<()> {
    let mut table = NgramTable::new(1970);
    let vocab = Vocabulary::from_words(["coffee", "cup", "tea"]);
    let u = table.ingest_unigrams(UNIGRAMS.as_bytes(), &vocab)?;
    let b = table.ingest_bigrams(BIGRAMS.as_bytes(), &vocab)?;
    println!("unigram lines {u:?}");
    println!("bigram lines {b:?}");

    for (a, c) in [("coffee", "cup"), ("cup", "coffee"), ("tea", "cup"), ("coffee", "tea")] {
        let direct = table.collocation_index(a, c)?;
        println!(
            "{a} {c}: C = {direct:.4}  C_0.55 = {:.4}  C_1 = {:.4}",
            table.mixed_collocation(a, c, 0.55)?,
            table.mixed_collocation(a, c, 1.0)?
        );
    }
    Ok(())
}
