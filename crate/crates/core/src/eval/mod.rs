//! Test sets, rank correlation and the robustness analyses built on it.

mod lowess;
mod plot;
mod stats;

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use lowess::{lowess, DEFAULT_ITERATIONS, DEFAULT_SPAN};
pub use plot::{write_curve_svg, write_scatter_svg};
pub use stats::{average_ranks, leave_one_out_stability, pearson, progressive_removal, spearman};

#[derive(Debug, Clone, PartialEq)]
pub struct WordPair {
    pub w1: String,
    pub w2: String,
    pub gold: f64,
}

impl WordPair {
    pub fn new(w1: &str, w2: &str, gold: f64) -> Self {
        WordPair {
            w1: w1.to_string(),
            w2: w2.to_string(),
            gold,
        }
    }

    /// Order-insensitive, case-insensitive identity used for duplicate
    /// detection.
    pub fn key(&self) -> (String, String) {
        let (a, b) = (self.w1.to_lowercase(), self.w2.to_lowercase());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSet {
    pub pairs: Vec<WordPair>,
    /// `(first, repeat)` row indices (0-based) of repeated pairs.
    pub duplicates: Vec<(usize, usize)>,
}

impl TestSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Keeps the first occurrence of every pair.
    pub fn dedupe(&self) -> TestSet {
        let drop: std::collections::HashSet<usize> = self.duplicates.iter().map(|(_, d)| *d).collect();
        TestSet {
            pairs: self
                .pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, p)| p.clone())
                .collect(),
            duplicates: Vec::new(),
        }
    }

    pub fn golds(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.gold).collect()
    }

    /// Distinct lowercase words of the set.
    pub fn vocabulary(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .pairs
            .iter()
            .flat_map(|p| [p.w1.to_lowercase(), p.w2.to_lowercase()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Reads `word1<TAB>word2<TAB>score` rows. A first line whose score column
/// is not a number is taken as a header. Extra columns are ignored.
pub fn load_test_set<R: BufRead>(input: R, file: &str) -> Result<TestSet> {
    let mut pairs = Vec::new();
    let mut seen: HashMap<(String, String), usize> = HashMap::new();
    let mut duplicates = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = trimmed.split('\t').collect();
        if f.len() < 3 {
            return Err(Error::parse(file, lineno, "expected word1<TAB>word2<TAB>score"));
        }
        let gold = match f[2].trim().parse::<f64>() {
            Ok(g) if g.is_finite() => g,
            _ if pairs.is_empty() && lineno == 1 => continue,
            _ => return Err(Error::parse(file, lineno, format!("bad score `{}`", f[2].trim()))),
        };
        let (w1, w2) = (f[0].trim(), f[1].trim());
        if w1.is_empty() || w2.is_empty() {
            return Err(Error::parse(file, lineno, "empty word"));
        }
        let pair = WordPair::new(w1, w2, gold);
        let idx = pairs.len();
        match seen.get(&pair.key()) {
            Some(&first) => duplicates.push((first, idx)),
            None => {
                seen.insert(pair.key(), idx);
            }
        }
        pairs.push(pair);
    }
    if pairs.is_empty() {
        return Err(Error::parse(file, 0, "test set has no rows"));
    }
    Ok(TestSet { pairs, duplicates })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Pairs that were scored, in test-set order.
    pub pairs: Vec<WordPair>,
    pub scores: Vec<f64>,
    pub rho: f64,
    /// Δρ per pair, aligned with `pairs`.
    pub stability: Vec<f64>,
    /// `(removed count, ρ)`.
    pub removal_curve: Vec<(usize, f64)>,
    /// Pairs whose scoring failed, with the error text.
    pub skipped: Vec<(WordPair, String)>,
}

impl EvalReport {
    /// Builds a report from precomputed scores aligned with `pairs`.
    pub fn from_scores(pairs: Vec<WordPair>, scores: Vec<f64>) -> Result<Self> {
        let golds: Vec<f64> = pairs.iter().map(|p| p.gold).collect();
        let rho = spearman(&scores, &golds)?;
        let stability = leave_one_out_stability(&scores, &golds)?;
        let removal_curve = progressive_removal(&scores, &golds)?;
        Ok(EvalReport {
            pairs,
            scores,
            rho,
            stability,
            removal_curve,
            skipped: Vec::new(),
        })
    }

    /// Indices sorted by decreasing Δρ: the pairs whose removal helps most
    /// come first.
    pub fn ranked_stability(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.pairs.len()).collect();
        idx.sort_by(|&a, &b| self.stability[b].total_cmp(&self.stability[a]).then(a.cmp(&b)));
        idx
    }

    pub fn golds(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.gold).collect()
    }

    /// `pair,score,gold,delta_rho`, ordered by decreasing Δρ.
    pub fn write_stability_csv<W: Write>(&self, mut out: W, comments: &[String]) -> Result<()> {
        write_comments(&mut out, comments)?;
        writeln!(out, "pair,score,gold,delta_rho")?;
        for i in self.ranked_stability() {
            let p = &self.pairs[i];
            writeln!(
                out,
                "{},{},{},{}",
                csv_field(&format!("{}/{}", p.w1, p.w2)),
                self.scores[i],
                p.gold,
                self.stability[i]
            )?;
        }
        Ok(())
    }

    /// `k,rho`.
    pub fn write_removal_csv<W: Write>(&self, mut out: W, comments: &[String]) -> Result<()> {
        write_comments(&mut out, comments)?;
        writeln!(out, "k,rho")?;
        for (k, rho) in &self.removal_curve {
            writeln!(out, "{k},{rho}")?;
        }
        Ok(())
    }

    /// LOWESS fit of gold (y) against score (x).
    pub fn lowess_points(&self, span: f64, iterations: usize) -> Result<Vec<(f64, f64, f64)>> {
        let pts: Vec<(f64, f64)> = self.scores.iter().copied().zip(self.golds()).collect();
        let fit = lowess(&pts, span, iterations)?;
        let mut rows: Vec<(f64, f64, f64)> = pts.iter().zip(fit).map(|((x, y), f)| (*x, *y, f)).collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        Ok(rows)
    }

    /// `x,y,yhat` sorted by x; span and iteration count go in a comment.
    pub fn write_lowess_csv<W: Write>(&self, mut out: W, comments: &[String], span: f64, iterations: usize) -> Result<()> {
        let rows = self.lowess_points(span, iterations)?;
        write_comments(&mut out, comments)?;
        writeln!(out, "# lowess span={span} iterations={iterations}")?;
        writeln!(out, "x,y,yhat")?;
        for (x, y, f) in rows {
            writeln!(out, "{x},{y},{f}")?;
        }
        Ok(())
    }
}

fn write_comments<W: Write>(out: &mut W, comments: &[String]) -> Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Scores every pair (in parallel), then computes ρ, Δρ and the removal
/// curve on the ordered scores. With `skip_failures`, pairs whose scoring
/// fails are dropped and listed in the report; otherwise the first failure
/// in test-set order is returned.
pub fn evaluate_measure<F>(pairs: &[WordPair], score: F, skip_failures: bool) -> Result<EvalReport>
where
    F: Fn(&WordPair) -> Result<f64> + Sync,
{
    let results: Vec<Result<f64>> = pairs.par_iter().map(&score).collect();
    let mut kept = Vec::with_capacity(pairs.len());
    let mut scores = Vec::with_capacity(pairs.len());
    let mut skipped = Vec::new();
    for (p, r) in pairs.iter().zip(results) {
        match r {
            Ok(v) if v.is_finite() => {
                kept.push(p.clone());
                scores.push(v);
            }
            Ok(v) => {
                let msg = format!("non-finite score {v}");
                if !skip_failures {
                    return Err(Error::Scoring {
                        w1: p.w1.clone(),
                        w2: p.w2.clone(),
                        message: msg,
                    });
                }
                skipped.push((p.clone(), msg));
            }
            Err(e) => {
                if !skip_failures {
                    return Err(Error::Scoring {
                        w1: p.w1.clone(),
                        w2: p.w2.clone(),
                        message: e.to_string(),
                    });
                }
                skipped.push((p.clone(), e.to_string()));
            }
        }
    }
    let mut report = EvalReport::from_scores(kept, scores)?;
    report.skipped = skipped;
    Ok(report)
}
