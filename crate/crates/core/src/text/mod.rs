//! Text normalization: tokenization, stop words, the triple-Porter stemmed
//! pipeline and the lemma/POS-filtered alternative.

pub mod porter;
pub mod pos;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

pub use pos::{parse_pos_sentences, PosDiagnostics, PosMode, PosToken};

/// Number of consecutive Porter passes applied by the stemmed pipeline.
pub const STEM_PASSES: usize = 3;

/// Minimum term length kept by the stemmed pipeline.
pub const MIN_TERM_LEN: usize = 3;

/// Identifier of the tokenization rule, recorded in index metadata.
pub const TOKENIZER_ID: &str = "alpha-lower-v1";

const STOPWORDS_V1: &str = include_str!("../../data/stopwords_en_v1.txt");

/// How page text becomes index terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PipelineMode {
    /// Stop words and short words removed, triple Porter stemming.
    #[default]
    Stemmed,
    /// Lemmas of nouns and proper nouns from external POS annotations.
    PosNoun,
    /// Lemmas of nouns, verbs and adjectives from external POS annotations.
    PosAll,
}

impl PipelineMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PipelineMode::Stemmed => "stemmed",
            PipelineMode::PosNoun => "pos-noun",
            PipelineMode::PosAll => "pos-all",
        }
    }

    pub fn pos_mode(self) -> Option<PosMode> {
        match self {
            PipelineMode::Stemmed => None,
            PipelineMode::PosNoun => Some(PosMode::NounOnly),
            PipelineMode::PosAll => Some(PosMode::NounVerbAdj),
        }
    }
}

impl std::str::FromStr for PipelineMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "stemmed" => Ok(PipelineMode::Stemmed),
            "pos-noun" => Ok(PipelineMode::PosNoun),
            "pos-all" => Ok(PipelineMode::PosAll),
            other => Err(crate::Error::Invalid(format!(
                "unknown pipeline mode `{other}` (expected stemmed, pos-noun or pos-all)"
            ))),
        }
    }
}

impl std::fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A lowercase alphabetic token with its ordinal in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

/// An index term: a stemmed or lemmatized word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Term(pub String);

impl Term {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits plain text on every non-letter character and lowercases the pieces.
/// Digits and punctuation never appear in the output.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(position, s)| Token {
            surface: s.to_lowercase(),
            position,
        })
        .collect()
}

/// A named, versioned stop-word list.
#[derive(Debug, Clone)]
pub struct StopWords {
    id: String,
    words: HashSet<String>,
}

impl StopWords {
    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse("en-v1", STOPWORDS_V1)
    }

    /// Parses one word per line; `#` starts a comment line.
    pub fn parse(id: &str, text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        StopWords {
            id: id.to_string(),
            words,
        }
    }

    pub fn from_words<I, S>(id: &str, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopWords {
            id: id.to_string(),
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Words in sorted order.
    pub fn sorted_words(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.words.iter().map(String::as_str).collect();
        v.sort_unstable();
        v
    }
}

impl PartialEq for StopWords {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.words == other.words
    }
}

/// Maps a single lowercase word to its term, or `None` if the word is a stop
/// word or too short either before or after stemming.
pub fn stem_word(word: &str, stopwords: &StopWords) -> Option<Term> {
    if word.chars().count() < MIN_TERM_LEN || stopwords.contains(word) {
        return None;
    }
    let stemmed = cached_stem(word);
    if stemmed.chars().count() < MIN_TERM_LEN || stopwords.contains(&stemmed) {
        return None;
    }
    Some(Term(stemmed))
}

/// Triple stem through a bounded per-thread memo.
fn cached_stem(word: &str) -> String {
    const CAPACITY: usize = 200_000;
    thread_local! {
        static MEMO: std::cell::RefCell<HashMap<String, String>> = std::cell::RefCell::new(HashMap::new());
    }
    MEMO.with(|m| {
        if let Some(s) = m.borrow().get(word) {
            return s.clone();
        }
        let stemmed = porter::stem_n(word, STEM_PASSES);
        let mut m = m.borrow_mut();
        if m.len() >= CAPACITY {
            m.clear();
        }
        m.insert(word.to_string(), stemmed.clone());
        stemmed
    })
}

/// Stop-word and short-word removal followed by three Porter passes.
///
/// The length and stop-word filters are applied again to the stem, so a
/// word such as "ties" (stem "ti") does not leak a two-letter term.
pub fn normalize_stemmed(tokens: &[Token], stopwords: &StopWords) -> Vec<Term> {
    tokens
        .iter()
        .filter_map(|t| stem_word(&t.surface, stopwords))
        .collect()
}

/// Tokenizes and stems in one go.
pub fn stemmed_terms(text: &str, stopwords: &StopWords) -> Vec<Term> {
    normalize_stemmed(&tokenize(text), stopwords)
}

/// Keeps lemmas of tokens whose tag passes `mode`.
pub fn normalize_pos(tokens: &[PosToken], mode: PosMode, diag: &mut PosDiagnostics) -> Vec<Term> {
    let mut out = Vec::new();
    for t in tokens {
        if !pos::is_penn_tag(&t.tag) {
            diag.unknown_tags += 1;
            continue;
        }
        if mode.keeps(&t.tag) {
            let lemma = t.lemma.to_lowercase();
            if !lemma.is_empty() {
                out.push(Term(lemma));
            }
        }
    }
    out
}
