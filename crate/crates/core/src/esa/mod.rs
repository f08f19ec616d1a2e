//! Explicit semantic analysis: a tfidf inverted index from terms to concept
//! vectors, and the cosine relatedness between two words.
//!
//! With the default settings the weight of term `t` in concept `c` is
//! `tf(t, c) * ln(N / df(t))`, each concept's weight column is scaled to unit
//! L2 norm, and the matrix is then read row-wise (term -> concepts). Terms
//! present in every concept have zero idf and are left out.

pub mod extract;
pub mod format;
mod vector;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::text::{self, PipelineMode, StopWords, Term};

pub use extract::{documents_from_pages, ExtractSettings};
pub use vector::SparseVector;

/// How raw term counts turn into tf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TfMode {
    /// The (sentence-weighted) count itself.
    #[default]
    Raw,
    /// `1 + ln(count)`.
    Log,
}

/// Which vectors are scaled to unit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Each concept's column over all terms.
    #[default]
    Concept,
    /// Each term's concept vector.
    Term,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BuildSettings {
    pub mode: PipelineMode,
    pub tf: TfMode,
    pub normalization: Normalization,
    /// Keep only the k heaviest concepts per term.
    pub top_k: Option<usize>,
}

impl TfMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TfMode::Raw => "raw",
            TfMode::Log => "log",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(TfMode::Raw),
            "log" => Ok(TfMode::Log),
            _ => Err(Error::Invalid(format!("unknown tf mode `{s}`"))),
        }
    }
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Concept => "concept",
            Normalization::Term => "term",
            Normalization::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "concept" => Ok(Normalization::Concept),
            "term" => Ok(Normalization::Term),
            "none" => Ok(Normalization::None),
            _ => Err(Error::Invalid(format!("unknown normalization `{s}`"))),
        }
    }
}

/// One concept ready for indexing: its (weighted) term counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptDoc {
    pub page_id: u64,
    pub title: String,
    pub counts: BTreeMap<Term, f64>,
}

impl ConceptDoc {
    pub fn from_terms<I: IntoIterator<Item = Term>>(page_id: u64, title: &str, terms: I) -> Self {
        let mut counts = BTreeMap::new();
        for t in terms {
            *counts.entry(t).or_insert(0.0) += 1.0;
        }
        ConceptDoc {
            page_id,
            title: title.to_string(),
            counts,
        }
    }
}

/// Corpus statistics in the layout of the index-statistics report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexStats {
    pub concept_count: u64,
    /// Mean number of distinct terms per concept.
    pub terms_per_concept: f64,
    /// Distinct terms in the corpus.
    pub term_count: u64,
    /// Mean document frequency over those terms.
    pub mean_document_frequency: f64,
    /// `mean_document_frequency / concept_count`.
    pub term_density: f64,
}

impl IndexStats {
    pub(crate) fn from_counts(concepts: u64, terms: u64, postings: u64) -> Self {
        let per_concept = if concepts == 0 { 0.0 } else { postings as f64 / concepts as f64 };
        let mean_df = if terms == 0 { 0.0 } else { postings as f64 / terms as f64 };
        IndexStats {
            concept_count: concepts,
            terms_per_concept: per_concept,
            term_count: terms,
            mean_document_frequency: mean_df,
            term_density: if concepts == 0 { 0.0 } else { mean_df / concepts as f64 },
        }
    }

    /// Two-column report, one statistic per line.
    pub fn report(&self) -> String {
        format!(
            "#concepts\t{}\n#terms/concept\t{:.4}\n#terms\t{}\nmean df\t{:.4}\nterm density\t{:.5}\n",
            self.concept_count,
            self.terms_per_concept,
            self.term_count,
            self.mean_document_frequency,
            self.term_density
        )
    }
}

/// An immutable term -> concept-vector index.
#[derive(Debug, Clone, PartialEq)]
pub struct InvertedIndex {
    pub(crate) settings: BuildSettings,
    pub(crate) stopwords: StopWords,
    pub(crate) metadata: BTreeMap<String, String>,
    pub(crate) concepts: Vec<(u64, String)>,
    pub(crate) postings: BTreeMap<String, SparseVector>,
    /// Raw corpus counts before zero-idf pruning: (terms, postings).
    pub(crate) corpus_terms: u64,
    pub(crate) corpus_postings: u64,
}

impl InvertedIndex {
    pub fn concept_count(&self) -> usize {
        self.concepts.len()
    }

    /// Number of terms with a non-empty vector.
    pub fn term_count(&self) -> usize {
        self.postings.len()
    }

    pub fn settings(&self) -> &BuildSettings {
        &self.settings
    }

    pub fn stopwords(&self) -> &StopWords {
        &self.stopwords
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata.get(key).map(String::as_str)
    }

    /// (page id, title) of concept `id`.
    pub fn concept(&self, id: u32) -> Option<(u64, &str)> {
        self.concepts.get(id as usize).map(|(p, t)| (*p, t.as_str()))
    }

    /// Stored vector of an already-normalized term.
    pub fn term_vector(&self, term: &str) -> Option<&SparseVector> {
        self.postings.get(term)
    }

    pub fn document_frequency(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, SparseVector::len)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &SparseVector)> {
        self.postings.iter().map(|(t, v)| (t.as_str(), v))
    }

    /// Index terms for a query word, using the pipeline the index was built
    /// with. Lemma-based indexes expect the word in lemma form.
    pub fn query_terms(&self, word: &str) -> Vec<String> {
        match self.settings.mode {
            PipelineMode::Stemmed => text::stemmed_terms(word, &self.stopwords)
                .into_iter()
                .map(|t| t.0)
                .collect(),
            PipelineMode::PosNoun | PipelineMode::PosAll => text::tokenize(word)
                .into_iter()
                .map(|t| t.surface)
                .collect(),
        }
    }

    /// Concept vector of a word; the sum of its terms' vectors when the word
    /// yields several terms, empty when unknown.
    pub fn concept_vector(&self, word: &str) -> SparseVector {
        let terms = self.query_terms(word);
        let mut vectors = terms.iter().filter_map(|t| self.postings.get(t));
        match (vectors.next(), vectors.next()) {
            (None, _) => SparseVector::default(),
            (Some(v), None) => v.clone(),
            (Some(v), Some(w)) => vectors.fold(v.add(w), |acc, x| acc.add(x)),
        }
    }

    /// Cosine of the two words' concept vectors, in [0, 1].
    pub fn esa(&self, w1: &str, w2: &str) -> f64 {
        self.concept_vector(w1).cosine(&self.concept_vector(w2))
    }

    /// Statistics of the indexed corpus (all distinct terms, including those
    /// dropped for zero idf).
    pub fn stats(&self) -> IndexStats {
        IndexStats::from_counts(
            self.concepts.len() as u64,
            self.corpus_terms,
            self.corpus_postings,
        )
    }
}

/// Builds the index. Concept ids follow the order of `docs`.
pub fn build_index(
    docs: &[ConceptDoc],
    settings: &BuildSettings,
    stopwords: &StopWords,
    metadata: BTreeMap<String, String>,
) -> Result<InvertedIndex> {
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n = docs.len() as f64;

    let mut df: HashMap<&str, u32> = HashMap::new();
    let mut corpus_postings = 0u64;
    for doc in docs {
        for (term, count) in &doc.counts {
            if *count > 0.0 {
                *df.entry(term.as_str()).or_insert(0) += 1;
                corpus_postings += 1;
            }
        }
    }
    let corpus_terms = df.len() as u64;
    let idf: HashMap<&str, f64> = df
        .iter()
        .filter(|(_, d)| f64::from(**d) < n)
        .map(|(t, d)| (*t, (n / f64::from(*d)).ln()))
        .collect();

    // Per-concept weight columns in term order; summation order is fixed so
    // the result does not depend on the number of workers.
    let columns: Vec<Vec<(&str, f64)>> = docs
        .par_iter()
        .map(|doc| {
            let mut col: Vec<(&str, f64)> = doc
                .counts
                .iter()
                .filter(|(_, c)| **c > 0.0)
                .filter_map(|(t, c)| {
                    let idf = *idf.get(t.as_str())?;
                    let tf = match settings.tf {
                        TfMode::Raw => *c,
                        TfMode::Log => 1.0 + c.ln(),
                    };
                    let w = tf * idf;
                    (w > 0.0).then_some((t.as_str(), w))
                })
                .collect();
            if settings.normalization == Normalization::Concept {
                let norm = col.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for (_, w) in &mut col {
                        *w /= norm;
                    }
                }
            }
            col
        })
        .collect();

    let mut rows: BTreeMap<String, Vec<(u32, f64)>> = BTreeMap::new();
    for (cid, col) in columns.iter().enumerate() {
        for (t, w) in col {
            rows.entry((*t).to_string()).or_default().push((cid as u32, *w));
        }
    }
    let postings: BTreeMap<String, SparseVector> = rows
        .into_par_iter()
        .map(|(t, entries)| {
            let mut v = SparseVector::from_sorted_unchecked(entries);
            if settings.normalization == Normalization::Term {
                let norm = v.norm();
                if norm > 0.0 {
                    v.scale(1.0 / norm);
                }
            }
            if let Some(k) = settings.top_k {
                v.truncate_top_k(k);
            }
            (t, v)
        })
        .collect();

    let mut metadata = metadata;
    metadata.insert("pipeline".into(), settings.mode.as_str().into());
    metadata.insert("tf".into(), settings.tf.as_str().into());
    metadata.insert("normalization".into(), settings.normalization.as_str().into());
    metadata.insert(
        "top_k".into(),
        settings.top_k.map_or("off".into(), |k| k.to_string()),
    );
    metadata.insert("idf".into(), "ln(N/df)".into());
    metadata.insert("tokenizer".into(), text::TOKENIZER_ID.into());
    metadata.insert("stopwords".into(), stopwords.id().into());

    Ok(InvertedIndex {
        settings: settings.clone(),
        stopwords: stopwords.clone(),
        metadata,
        concepts: docs.iter().map(|d| (d.page_id, d.title.clone())).collect(),
        postings,
        corpus_terms,
        corpus_postings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(texts: &[&str]) -> Vec<ConceptDoc> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                ConceptDoc::from_terms(i as u64, &format!("P{i}"), t.split(' ').map(|w| Term(w.into())))
            })
            .collect()
    }

    fn build(texts: &[&str]) -> InvertedIndex {
        let sw = StopWords::from_words("none", Vec::<&str>::new());
        build_index(&docs(texts), &BuildSettings::default(), &sw, BTreeMap::new()).unwrap()
    }

    #[test]
    fn toy_corpus_weights() {
        let idx = build(&["cat sat", "cat ran", "dog ran"]);
        assert_eq!(idx.document_frequency("cat"), 2);
        let l32 = (3.0f64 / 2.0).ln();
        let l3 = 3.0f64.ln();
        // Concept 0: cat=l32, sat=l3, normalized by sqrt(l32^2+l3^2).
        let norm0 = (l32 * l32 + l3 * l3).sqrt();
        let cat = idx.term_vector("cat").unwrap();
        assert!((cat.entries()[0].1 - l32 / norm0).abs() < 1e-12);
        assert_eq!(cat.entries()[0].0, 0);
        assert_eq!(cat.entries()[1].0, 1);
    }

    #[test]
    fn ubiquitous_term_dropped() {
        let idx = build(&["cat a", "cat b", "cat c"]);
        assert!(idx.term_vector("cat").is_none());
        assert_eq!(idx.term_count(), 3);
    }

    #[test]
    fn empty_corpus_is_error() {
        let sw = StopWords::english();
        assert!(matches!(
            build_index(&[], &BuildSettings::default(), &sw, BTreeMap::new()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn single_page_density_is_one() {
        let s = build(&["alpha beta gamma"]).stats();
        assert_eq!(s.concept_count, 1);
        assert_eq!(s.term_count, 3);
        assert_eq!(s.term_density, 1.0);
    }

    #[test]
    fn toy_stats_by_hand() {
        // df: cat 2, sat 1, ran 2, dog 1 -> 6 postings over 4 terms, 3 concepts.
        let s = build(&["cat sat", "cat ran", "dog ran"]).stats();
        assert_eq!(s.concept_count, 3);
        assert_eq!(s.terms_per_concept, 2.0);
        assert_eq!(s.term_count, 4);
        assert_eq!(s.mean_document_frequency, 1.5);
        assert_eq!(s.term_density, 0.5);
    }

    #[test]
    fn self_similarity_and_unknown() {
        let sw = StopWords::english();
        let d = vec![
            ConceptDoc::from_terms(1, "a", text::stemmed_terms("cats purr loudly", &sw)),
            ConceptDoc::from_terms(2, "b", text::stemmed_terms("dogs bark loudly", &sw)),
        ];
        let idx = build_index(&d, &BuildSettings::default(), &sw, BTreeMap::new()).unwrap();
        assert!((idx.esa("cat", "cat") - 1.0).abs() < 1e-12);
        assert_eq!(idx.concept_vector("cats"), idx.concept_vector("cat"));
        assert!(idx.concept_vector("zebra").is_empty());
        assert_eq!(idx.esa("cat", "dog"), 0.0);
        assert_eq!(idx.esa("zebra", "cat"), 0.0);
    }
}
