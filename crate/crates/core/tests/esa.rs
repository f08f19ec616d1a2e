mod common;

use std::collections::BTreeMap;

use common::{dense_cosine, dense_esa_rows, random_corpus};
use relmix::esa::format::{read_index, write_index};
use relmix::esa::{build_index, BuildSettings, ConceptDoc};
use relmix::text::{stemmed_terms, StopWords};

fn doc(id: u64, words: &[&str]) -> ConceptDoc {
    let sw = StopWords::english();
    ConceptDoc::from_terms(id, &format!("D{id}"), words.iter().flat_map(|w| stemmed_terms(w, &sw)))
}

#[test]
fn index_weights_match_dense_oracle() {
    let sw = StopWords::english();
    let corpus = random_corpus(11, 1000, 150);
    let index = build_index(&corpus.docs, &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
    let rows = dense_esa_rows(&corpus.counts);
    for (w, row) in corpus.words.iter().zip(&rows) {
        let term = &stemmed_terms(w, &sw)[0];
        let dense_nonzero = row.iter().filter(|x| **x > 0.0).count();
        match index.term_vector(term.as_str()) {
            None => assert_eq!(dense_nonzero, 0, "{w}"),
            Some(v) => {
                assert_eq!(v.len(), dense_nonzero, "{w}");
                for (c, x) in v.entries() {
                    assert!((row[*c as usize] - x).abs() < 1e-9, "{w} concept {c}");
                }
            }
        }
    }
    assert!(index.term_vector(stemmed_terms(&corpus.words[0], &sw)[0].as_str()).is_none());
}

#[test]
fn esa_matches_dense_cosine() {
    let sw = StopWords::english();
    let corpus = random_corpus(12, 400, 80);
    let index = build_index(&corpus.docs, &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
    let rows = dense_esa_rows(&corpus.counts);
    for (i, a) in corpus.words.iter().enumerate() {
        for (j, b) in corpus.words.iter().enumerate() {
            let got = index.esa(a, b);
            assert!((got - dense_cosine(&rows[i], &rows[j])).abs() < 1e-9, "{a} {b}");
            assert_eq!(got.to_bits(), index.esa(b, a).to_bits());
        }
    }
}

#[test]
fn three_page_toy_corpus() {
    let sw = StopWords::english();
    let docs = vec![doc(1, &["cat", "sat"]), doc(2, &["cat", "ran"]), doc(3, &["dog", "ran"])];
    let index = build_index(&docs, &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
    assert_eq!(index.document_frequency("cat"), 2);
    // Page 1: cat idf ln(3/2), sat idf ln 3, column normalized.
    let (a, b) = ((1.5f64).ln(), 3f64.ln());
    let v = index.concept_vector("cat");
    let w0 = v.entries().iter().find(|(c, _)| *c == 0).unwrap().1;
    assert!((w0 - a / (a * a + b * b).sqrt()).abs() < 1e-12);
    assert_eq!(index.esa("cats", "cat"), 1.0);
    assert_eq!(index.esa("cat", "unknownword"), 0.0);
    assert_eq!(index.esa("sat", "dog"), 0.0);
    let stats = index.stats();
    assert_eq!(stats.concept_count, 3);
    assert_eq!(stats.term_count, 4);
    assert!((stats.terms_per_concept - 2.0).abs() < 1e-12);
    assert!((stats.mean_document_frequency - 1.5).abs() < 1e-12);
    assert!((stats.term_density - 0.5).abs() < 1e-12);

    let everywhere = vec![doc(1, &["cat", "sat"]), doc(2, &["cat", "ran"])];
    let ix = build_index(&everywhere, &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
    assert!(ix.term_vector("cat").is_none());
    assert!(build_index(&[], &BuildSettings::default(), &sw, BTreeMap::new()).is_err());
    let single = build_index(&[doc(1, &["cat", "sat"])], &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
    assert_eq!(single.stats().term_density, 1.0);
}

#[test]
fn serialized_index_round_trips() {
    let sw = StopWords::english();
    let corpus = random_corpus(13, 300, 60);
    let mut meta = BTreeMap::new();
    meta.insert("k".to_string(), "v".to_string());
    let index = build_index(&corpus.docs, &BuildSettings::default(), &sw, meta).unwrap();
    let mut bytes = Vec::new();
    write_index(&index, &mut bytes).unwrap();
    let back = read_index(bytes.as_slice()).unwrap();
    assert_eq!(back, index);
    let mut again = Vec::new();
    write_index(&back, &mut again).unwrap();
    assert_eq!(again, bytes);
}
