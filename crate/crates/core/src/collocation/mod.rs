//! N-gram frequency tables and the collocation indices built on them.
//!
//! Words are matched as raw lowercase surface forms, never stemmed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Year filter used for the reference runs: only rows after 1970 count.
pub const DEFAULT_MIN_YEAR: i32 = 1970;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct NgramTable {
    unigram: HashMap<String, u64>,
    bigram: HashMap<(String, String), u64>,
    min_year: i32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestDiagnostics {
    pub rows_read: u64,
    pub rows_kept: u64,
    pub malformed_rows: u64,
}

/// Optional word filter applied at ingest. Bigrams are kept only when both
/// words pass.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary(Option<HashSet<String>>);

impl Vocabulary {
    pub fn all() -> Self {
        Vocabulary(None)
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Vocabulary(Some(words.into_iter().map(|w| w.as_ref().to_lowercase()).collect()))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.as_ref().is_none_or(|v| v.contains(word))
    }
}

struct Row {
    words: Vec<String>,
    year: i32,
    count: u64,
}

fn parse_row(line: &str) -> Option<Row> {
    let mut f = line.splitn(4, '\t');
    let ngram = f.next()?;
    let year = f.next()?.trim().parse().ok()?;
    let count = f.next()?.trim().parse().ok()?;
    let words: Vec<String> = ngram.split(' ').filter(|w| !w.is_empty()).map(str::to_lowercase).collect();
    Some(Row { words, year, count })
}

impl NgramTable {
    pub fn new(min_year: i32) -> Self {
        NgramTable {
            min_year,
            ..Self::default()
        }
    }

    pub fn min_year(&self) -> i32 {
        self.min_year
    }

    pub fn unigram_count(&self, w: &str) -> u64 {
        self.unigram.get(w).copied().unwrap_or(0)
    }

    pub fn bigram_count(&self, w1: &str, w2: &str) -> u64 {
        self.bigram
            .get(&(w1.to_string(), w2.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn unigram_len(&self) -> usize {
        self.unigram.len()
    }

    pub fn bigram_len(&self) -> usize {
        self.bigram.len()
    }

    pub fn add_unigram(&mut self, w: &str, count: u64) {
        *self.unigram.entry(w.to_lowercase()).or_insert(0) += count;
    }

    pub fn add_bigram(&mut self, w1: &str, w2: &str, count: u64) {
        *self
            .bigram
            .entry((w1.to_lowercase(), w2.to_lowercase()))
            .or_insert(0) += count;
    }

    /// Adds unigram rows (`ngram<TAB>year<TAB>match_count<TAB>...`).
    pub fn ingest_unigrams<R: BufRead>(&mut self, input: R, vocab: &Vocabulary) -> Result<IngestDiagnostics> {
        self.ingest(input, vocab, 1)
    }

    /// Adds bigram rows in the same layout, the ngram being `w1 w2`.
    pub fn ingest_bigrams<R: BufRead>(&mut self, input: R, vocab: &Vocabulary) -> Result<IngestDiagnostics> {
        self.ingest(input, vocab, 2)
    }

    fn ingest<R: BufRead>(&mut self, input: R, vocab: &Vocabulary, n: usize) -> Result<IngestDiagnostics> {
        let mut diag = IngestDiagnostics::default();
        for line in input.lines() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            diag.rows_read += 1;
            let Some(row) = parse_row(&line).filter(|r| r.words.len() == n) else {
                diag.malformed_rows += 1;
                continue;
            };
            if row.year <= self.min_year || !row.words.iter().all(|w| vocab.contains(w)) {
                continue;
            }
            diag.rows_kept += 1;
            if n == 1 {
                *self.unigram.entry(row.words[0].clone()).or_insert(0) += row.count;
            } else {
                let mut it = row.words.into_iter();
                let key = (it.next().unwrap_or_default(), it.next().unwrap_or_default());
                *self.bigram.entry(key).or_insert(0) += row.count;
            }
        }
        Ok(diag)
    }

    fn denominator(&self, w1: &str, w2: &str) -> Result<f64> {
        let d = self.unigram_count(w1) + self.unigram_count(w2);
        if d == 0 {
            return Err(Error::UndefinedCollocation(w1.to_string(), w2.to_string()));
        }
        Ok(d as f64)
    }

    /// `2·#(w1 w2) / (#w1 + #w2)` over the ordered bigram.
    pub fn collocation_index(&self, w1: &str, w2: &str) -> Result<f64> {
        let (w1, w2) = (w1.to_lowercase(), w2.to_lowercase());
        let d = self.denominator(&w1, &w2)?;
        Ok(2.0 * self.bigram_count(&w1, &w2) as f64 / d)
    }

    /// Collocation index plus `xi` times the index of the reversed bigram.
    /// Only `xi = 1` is symmetric in its arguments.
    pub fn mixed_collocation(&self, w1: &str, w2: &str, xi: f64) -> Result<f64> {
        let (w1, w2) = (w1.to_lowercase(), w2.to_lowercase());
        let d = self.denominator(&w1, &w2)?;
        let direct = self.bigram_count(&w1, &w2) as f64;
        let inverse = self.bigram_count(&w2, &w1) as f64;
        Ok(2.0 * direct / d + xi * 2.0 * inverse / d)
    }

    /// Audit export: `w1 w2<TAB>count`, sorted.
    pub fn write_bigrams<W: Write>(&self, mut out: W) -> Result<()> {
        let sorted: BTreeMap<_, _> = self.bigram.iter().collect();
        for ((w1, w2), c) in sorted {
            writeln!(out, "{w1} {w2}\t{c}")?;
        }
        Ok(())
    }

    /// Audit export: `w<TAB>count`, sorted.
    pub fn write_unigrams<W: Write>(&self, mut out: W) -> Result<()> {
        let sorted: BTreeMap<_, _> = self.unigram.iter().collect();
        for (w, c) in sorted {
            writeln!(out, "{w}\t{c}")?;
        }
        Ok(())
    }
}

/// Loads both streams into one table.
pub fn load_ngrams<U: BufRead, B: BufRead>(
    unigrams: U,
    bigrams: B,
    min_year: i32,
    vocab: &Vocabulary,
) -> Result<(NgramTable, IngestDiagnostics)> {
    let mut table = NgramTable::new(min_year);
    let a = table.ingest_unigrams(unigrams, vocab)?;
    let b = table.ingest_bigrams(bigrams, vocab)?;
    Ok((
        table,
        IngestDiagnostics {
            rows_read: a.rows_read + b.rows_read,
            rows_kept: a.rows_kept + b.rows_kept,
            malformed_rows: a.malformed_rows + b.malformed_rows,
        },
    ))
}
