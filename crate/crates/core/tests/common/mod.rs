//! Oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmix::corpus::synthetic::synthetic_word;
use relmix::esa::ConceptDoc;
use relmix::text::{stemmed_terms, StopWords, Term};

/// A random corpus over words whose stems are pairwise distinct, so every
/// query word maps to exactly one index term.
pub struct RandomCorpus {
    pub docs: Vec<ConceptDoc>,
    pub words: Vec<String>,
    /// `counts[d][w]`: occurrences of word `w` in document `d`.
    pub counts: Vec<Vec<f64>>,
}

pub fn random_corpus(seed: u64, pages: usize, vocab: usize) -> RandomCorpus {
    let sw = StopWords::english();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = Vec::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut i = 0;
    while words.len() < vocab {
        let w = synthetic_word(i);
        i += 1;
        let t = stemmed_terms(&w, &sw);
        if t.len() == 1 && !terms.contains(&t[0]) {
            terms.push(t[0].clone());
            words.push(w);
        }
    }
    let mut counts = vec![vec![0.0; vocab]; pages];
    let mut docs = Vec::with_capacity(pages);
    for (d, row) in counts.iter_mut().enumerate() {
        let len = rng.gen_range(1..40);
        let mut c = BTreeMap::new();
        for _ in 0..len {
            // Skewed toward low word ids so some terms are near-ubiquitous.
            let w = (rng.gen::<f64>().powi(2) * vocab as f64) as usize;
            row[w] += 1.0;
            *c.entry(terms[w].clone()).or_insert(0.0) += 1.0;
        }
        // Word 0 appears everywhere, so its idf is zero.
        if row[0] == 0.0 {
            row[0] = 1.0;
            c.insert(terms[0].clone(), 1.0);
        }
        docs.push(ConceptDoc {
            page_id: d as u64 + 1,
            title: format!("Doc {d}"),
            counts: c,
        });
    }
    RandomCorpus { docs, words, counts }
}

/// Dense tf·idf with unit-length concept columns; returns one row per word.
pub fn dense_esa_rows(counts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = counts.len();
    let v = counts[0].len();
    let df: Vec<usize> = (0..v).map(|w| (0..n).filter(|d| counts[*d][w] > 0.0).count()).collect();
    let mut m = vec![vec![0.0; n]; v];
    for d in 0..n {
        let col: Vec<f64> = (0..v)
            .map(|w| if df[w] == 0 { 0.0 } else { counts[d][w] * (n as f64 / df[w] as f64).ln() })
            .collect();
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        for w in 0..v {
            m[w][d] = if norm > 0.0 { col[w] / norm } else { 0.0 };
        }
    }
    m
}

pub fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

/// Ranks by counting: #smaller + (#equal + 1) / 2.
pub fn count_ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|x| {
            let less = v.iter().filter(|y| *y < x).count() as f64;
            let eq = v.iter().filter(|y| *y == x).count() as f64;
            less + (eq + 1.0) / 2.0
        })
        .collect()
}

pub fn oracle_spearman(xs: &[f64], ys: &[f64]) -> f64 {
    let (rx, ry) = (count_ranks(xs), count_ranks(ys));
    let n = rx.len() as f64;
    let sx: f64 = rx.iter().sum();
    let sy: f64 = ry.iter().sum();
    let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| a * b).sum();
    let sxx: f64 = rx.iter().map(|a| a * a).sum();
    let syy: f64 = ry.iter().map(|a| a * a).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// Fifty random pairs whose gold score is `ewc` under `truth`.
pub fn ewc_generated_set(seed: u64, truth: &relmix::combine::CombineParams) -> (Vec<relmix::combine::PairFeatures>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let feats: Vec<relmix::combine::PairFeatures> = (0..50)
        .map(|_| relmix::combine::PairFeatures {
            esa: rng.gen_range(0.0..1.0),
            wnp: rng.gen_range(0.0..1.0),
            colloc_direct: rng.gen_range(0.0..0.5),
            colloc_inverse: rng.gen_range(0.0..0.5),
        })
        .collect();
    let gold = feats.iter().map(|f| f.ewc(truth)).collect();
    (feats, gold)
}
