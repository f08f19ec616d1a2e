use std::collections::HashMap;
use std::fmt::Write as _;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::collocation::{load_ngrams, NgramTable, Vocabulary};

const WORDS: [&str; 8] = ["tiger", "cat", "bank", "teller", "Stock", "market", "car", "auto"];

fn synthetic_rows(n: usize, seed: u64) -> (String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uni = String::new();
    let mut bi = String::new();
    for _ in 0..n {
        let year = rng.gen_range(1900..2010);
        let count = rng.gen_range(0..1000u64);
        let w1 = WORDS[rng.gen_range(0..WORDS.len())];
        if rng.gen_bool(0.5) {
            writeln!(uni, "{w1}\t{year}\t{count}\t{}", count / 2 + 1).unwrap();
        } else {
            let w2 = WORDS[rng.gen_range(0..WORDS.len())];
            writeln!(bi, "{w1} {w2}\t{year}\t{count}\t1").unwrap();
        }
    }
    (uni, bi)
}

#[test]
fn million_rows_match_streaming_sum() {
    let (uni, bi) = synthetic_rows(1_000_000, 99);
    let (table, diag) = load_ngrams(uni.as_bytes(), bi.as_bytes(), 1970, &Vocabulary::all()).unwrap();
    assert_eq!(diag.rows_read, 1_000_000);
    assert_eq!(diag.malformed_rows, 0);

    let mut expect_uni: HashMap<String, u64> = HashMap::new();
    for line in uni.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        if f[1].parse::<i32>().unwrap() > 1970 {
            *expect_uni.entry(f[0].to_lowercase()).or_default() += f[2].parse::<u64>().unwrap();
        }
    }
    let mut expect_bi: HashMap<String, u64> = HashMap::new();
    for line in bi.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        if f[1].parse::<i32>().unwrap() > 1970 {
            *expect_bi.entry(f[0].to_lowercase()).or_default() += f[2].parse::<u64>().unwrap();
        }
    }
    for (w, c) in &expect_uni {
        assert_eq!(table.unigram_count(w), *c, "{w}");
    }
    assert_eq!(table.unigram_len(), expect_uni.len());
    for (pair, c) in &expect_bi {
        let (a, b) = pair.split_once(' ').unwrap();
        assert_eq!(table.bigram_count(a, b), *c, "{pair}");
    }
    assert_eq!(table.bigram_len(), expect_bi.len());
}

#[test]
fn row_order_does_not_matter() {
    let (uni, bi) = synthetic_rows(5_000, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut u: Vec<&str> = uni.lines().collect();
    let mut b: Vec<&str> = bi.lines().collect();
    u.shuffle(&mut rng);
    b.shuffle(&mut rng);
    let (u, b) = (u.join("\n"), b.join("\n"));
    let (t1, _) = load_ngrams(uni.as_bytes(), bi.as_bytes(), 1970, &Vocabulary::all()).unwrap();
    let (t2, _) = load_ngrams(u.as_bytes(), b.as_bytes(), 1970, &Vocabulary::all()).unwrap();
    assert_eq!(t1, t2);
}

fn table(c1: u64, c2: u64, direct: u64, inverse: u64) -> NgramTable {
    let mut t = NgramTable::new(1970);
    t.add_unigram("a", c1);
    t.add_unigram("b", c2);
    t.add_bigram("a", "b", direct);
    t.add_bigram("b", "a", inverse);
    t
}

proptest! {
    #[test]
    fn xi_one_is_symmetric(c1 in 0u64..1000, c2 in 1u64..1000, d in 0u64..500, i in 0u64..500) {
        let t = table(c1, c2, d, i);
        let x = t.mixed_collocation("a", "b", 1.0).unwrap();
        let y = t.mixed_collocation("b", "a", 1.0).unwrap();
        prop_assert!((x - y).abs() <= 1e-15 * x.abs().max(1.0));
    }

    #[test]
    fn monotone_in_xi(c1 in 1u64..1000, c2 in 0u64..1000, d in 0u64..500, i in 0u64..500,
                      x1 in 0.0f64..1.0, x2 in 0.0f64..1.0) {
        let t = table(c1, c2, d, i);
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        let a = t.mixed_collocation("a", "b", lo).unwrap();
        let b = t.mixed_collocation("a", "b", hi).unwrap();
        prop_assert!(a >= 0.0 && a <= b);
    }
}
