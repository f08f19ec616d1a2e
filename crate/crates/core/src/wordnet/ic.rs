//! Corpus-derived information content.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::{Pos, SynsetId, WordnetGraph};

/// IC value per synset of one graph, indexed by [`SynsetId`].
#[derive(Debug, Clone, PartialEq)]
pub struct IcTable {
    values: Vec<f64>,
}

impl IcTable {
    pub fn get(&self, id: SynsetId) -> f64 {
        self.values[id.idx()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Computes IC from lemma frequencies.
///
/// Each lemma's count is split evenly over its senses. Synsets with lemmas
/// but no observed frequency get a count of 1. Counts propagate to every
/// ancestor once, and `IC(s) = -ln(count(s) / total)` where `total` is the
/// virtual root's count (nouns, verbs) or the summed count of the part of
/// speech (adjectives, adverbs).
pub fn compute_ic(graph: &WordnetGraph, counts: &HashMap<String, f64>) -> Result<IcTable> {
    if !counts.values().any(|c| *c > 0.0) {
        return Err(Error::EmptyCounts);
    }
    let n = graph.len();
    let mut own = vec![0.0f64; n];
    for (lemma, &count) in counts {
        if count <= 0.0 {
            continue;
        }
        let senses: Vec<SynsetId> = graph
            .lemma_index
            .get(&super::normalize_lemma(lemma))
            .cloned()
            .unwrap_or_default();
        if senses.is_empty() {
            continue;
        }
        let share = count / senses.len() as f64;
        for s in senses {
            own[s.idx()] += share;
        }
    }
    for (i, s) in graph.synsets.iter().enumerate() {
        if own[i] == 0.0 && !s.lemmas.is_empty() {
            own[i] = 1.0;
        }
    }

    let mut cum = vec![0.0f64; n];
    for id in graph.ids() {
        let w = own[id.idx()];
        if w == 0.0 {
            continue;
        }
        for anc in graph.ancestors(id).into_keys() {
            cum[anc.idx()] += w;
        }
    }

    let mut totals: HashMap<Pos, f64> = HashMap::new();
    for (i, s) in graph.synsets.iter().enumerate() {
        *totals.entry(s.pos).or_insert(0.0) += own[i];
    }
    let values = graph
        .synsets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let total = graph.root(s.pos).map_or(totals[&s.pos], |r| cum[r.idx()]);
            if cum[i] <= 0.0 || total <= 0.0 {
                0.0
            } else {
                (-(cum[i] / total).ln()).max(0.0)
            }
        })
        .collect();
    Ok(IcTable { values })
}

/// Writes `synsetKey<TAB>ic` lines in synset order.
pub fn write_ic<W: Write>(graph: &WordnetGraph, table: &IcTable, mut out: W) -> Result<()> {
    for id in graph.ids() {
        writeln!(out, "{}\t{}", graph.synset(id).key, table.get(id))?;
    }
    Ok(())
}

/// Reads a table written by [`write_ic`]. Every synset of `graph` must
/// appear exactly once.
pub fn read_ic<R: BufRead>(graph: &WordnetGraph, input: R, file: &str) -> Result<IcTable> {
    let mut values = vec![f64::NAN; graph.len()];
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(file, lineno, "expected `synset<TAB>ic`"))?;
        let id = graph
            .id(key)
            .ok_or_else(|| Error::parse(file, lineno, format!("unknown synset `{key}`")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::parse(file, lineno, format!("bad IC value `{value}`")))?;
        if !values[id.idx()].is_nan() {
            return Err(Error::parse(file, lineno, format!("duplicate synset `{key}`")));
        }
        values[id.idx()] = v;
    }
    if let Some(missing) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::Parse {
            file: file.to_string(),
            line: 0,
            message: format!("no IC value for `{}`", graph.synsets[missing].key),
        });
    }
    Ok(IcTable { values })
}
