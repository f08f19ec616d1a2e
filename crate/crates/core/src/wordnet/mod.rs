//! WordNet hypernym graph and the path, depth and information-content
//! similarity measures over it.
//!
//! Noun and verb hierarchies get a virtual root above all their top-level
//! synsets, so any two synsets of the same part of speech have a common
//! subsumer. Adjectives and adverbs have no hypernyms; only identical
//! synsets are connected there.

mod ic;
mod load;
mod morph;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub use ic::{compute_ic, read_ic, write_ic, IcTable};
pub use load::load_wordnet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv];

    pub fn from_char(c: char) -> Option<Pos> {
        match c {
            'n' => Some(Pos::Noun),
            'v' => Some(Pos::Verb),
            'a' | 's' => Some(Pos::Adj),
            'r' => Some(Pos::Adv),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adj => 'a',
            Pos::Adv => 'r',
        }
    }
}

/// Dense handle of a synset inside one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId(pub u32);

impl SynsetId {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synset {
    /// Stable external key, `<pos>:<offset>` for database synsets.
    pub key: String,
    pub pos: Pos,
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
}

/// The measures supported by [`WordnetGraph::synset_measure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// `1 / (1 + shortest path length)`.
    Wnp,
    /// Wu & Palmer.
    Wup,
    /// Leacock & Chodorow.
    Lch,
    /// Resnik.
    Res,
    /// Jiang & Conrath.
    Jcn,
    /// Lin.
    Lin,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 6] = [
        MeasureKind::Wnp,
        MeasureKind::Wup,
        MeasureKind::Lch,
        MeasureKind::Res,
        MeasureKind::Jcn,
        MeasureKind::Lin,
    ];

    pub fn needs_ic(self) -> bool {
        matches!(self, MeasureKind::Res | MeasureKind::Jcn | MeasureKind::Lin)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::Wnp => "wnp",
            MeasureKind::Wup => "wup",
            MeasureKind::Lch => "lch",
            MeasureKind::Res => "res",
            MeasureKind::Jcn => "jcn",
            MeasureKind::Lin => "lin",
        }
    }
}

impl std::str::FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown WordNet measure `{s}`")))
    }
}

/// Value returned by JCN when the IC distance is zero.
pub const DEFAULT_JCN_CEILING: f64 = 1e6;

/// Collects synsets by key and resolves hypernym references on `build`.
#[derive(Debug, Default)]
pub struct WordnetBuilder {
    synsets: Vec<(String, Pos, Vec<String>, Vec<String>)>,
}

impl WordnetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn synset(&mut self, key: &str, pos: Pos, lemmas: &[&str], hypernyms: &[&str]) -> &mut Self {
        self.synsets.push((
            key.to_string(),
            pos,
            lemmas.iter().map(|l| normalize_lemma(l)).collect(),
            hypernyms.iter().map(|h| h.to_string()).collect(),
        ));
        self
    }

    pub(crate) fn push_owned(&mut self, key: String, pos: Pos, lemmas: Vec<String>, hypernyms: Vec<String>) {
        self.synsets.push((key, pos, lemmas, hypernyms));
    }

    pub fn build(self) -> Result<WordnetGraph> {
        WordnetGraph::from_parts(self.synsets, None)
    }
}

pub(crate) fn normalize_lemma(word: &str) -> String {
    word.trim().to_lowercase().replace(' ', "_")
}

#[derive(Debug, Clone)]
pub struct WordnetGraph {
    synsets: Vec<Synset>,
    by_key: HashMap<String, SynsetId>,
    lemma_index: HashMap<String, Vec<SynsetId>>,
    hyponyms: Vec<Vec<SynsetId>>,
    depth: Vec<u32>,
    /// Deepest synset per part of speech, counted in nodes.
    max_depth_nodes: HashMap<Pos, u32>,
    roots: HashMap<Pos, SynsetId>,
    exceptions: HashMap<Pos, HashMap<String, Vec<String>>>,
    ic: Option<IcTable>,
    jcn_ceiling: f64,
}

impl WordnetGraph {
    pub(crate) fn from_parts(
        raw: Vec<(String, Pos, Vec<String>, Vec<String>)>,
        lemma_order: Option<HashMap<String, Vec<String>>>,
    ) -> Result<Self> {
        let mut synsets = Vec::with_capacity(raw.len() + 2);
        let mut by_key = HashMap::with_capacity(raw.len() + 2);
        for (key, pos, lemmas, _) in &raw {
            if by_key.insert(key.clone(), SynsetId(synsets.len() as u32)).is_some() {
                return Err(Error::Invalid(format!("duplicate synset `{key}`")));
            }
            synsets.push(Synset {
                key: key.clone(),
                pos: *pos,
                lemmas: lemmas.clone(),
                hypernyms: Vec::new(),
            });
        }
        for (i, (key, pos, _, hypers)) in raw.iter().enumerate() {
            for h in hypers {
                let target = *by_key.get(h).ok_or_else(|| {
                    Error::Invalid(format!("synset `{key}` names unknown hypernym `{h}`"))
                })?;
                if synsets[target.idx()].pos != *pos {
                    return Err(Error::Invalid(format!(
                        "synset `{key}` has a hypernym of another part of speech"
                    )));
                }
                if !synsets[i].hypernyms.contains(&target) {
                    synsets[i].hypernyms.push(target);
                }
            }
        }
        let mut roots = HashMap::new();
        for pos in [Pos::Noun, Pos::Verb] {
            let tops: Vec<usize> = (0..synsets.len())
                .filter(|&i| synsets[i].pos == pos && synsets[i].hypernyms.is_empty())
                .collect();
            if tops.is_empty() {
                continue;
            }
            let root = SynsetId(synsets.len() as u32);
            let key = format!("{}:ROOT", pos.as_char());
            by_key.insert(key.clone(), root);
            synsets.push(Synset {
                key,
                pos,
                lemmas: Vec::new(),
                hypernyms: Vec::new(),
            });
            for t in tops {
                synsets[t].hypernyms.push(root);
            }
            roots.insert(pos, root);
        }

        let mut hyponyms = vec![Vec::new(); synsets.len()];
        for (i, s) in synsets.iter().enumerate() {
            for h in &s.hypernyms {
                hyponyms[h.idx()].push(SynsetId(i as u32));
            }
        }
        let depth = compute_depths(&synsets, &hyponyms)?;
        let mut max_depth_nodes = HashMap::new();
        for (s, d) in synsets.iter().zip(&depth) {
            let e = max_depth_nodes.entry(s.pos).or_insert(1);
            *e = (*e).max(d + 1);
        }

        let mut lemma_index: HashMap<String, Vec<SynsetId>> = HashMap::new();
        match lemma_order {
            Some(order) => {
                for (lemma, keys) in order {
                    let ids: Vec<SynsetId> = keys.iter().filter_map(|k| by_key.get(k).copied()).collect();
                    lemma_index.insert(lemma, ids);
                }
            }
            None => {
                for (i, s) in synsets.iter().enumerate() {
                    for l in &s.lemmas {
                        let e = lemma_index.entry(l.clone()).or_default();
                        if !e.contains(&SynsetId(i as u32)) {
                            e.push(SynsetId(i as u32));
                        }
                    }
                }
            }
        }

        Ok(WordnetGraph {
            synsets,
            by_key,
            lemma_index,
            hyponyms,
            depth,
            max_depth_nodes,
            roots,
            exceptions: HashMap::new(),
            ic: None,
            jcn_ceiling: DEFAULT_JCN_CEILING,
        })
    }

    pub(crate) fn set_exceptions(&mut self, exceptions: HashMap<Pos, HashMap<String, Vec<String>>>) {
        self.exceptions = exceptions;
    }

    pub fn with_ic(mut self, ic: IcTable) -> Self {
        self.ic = Some(ic);
        self
    }

    pub fn set_ic(&mut self, ic: IcTable) {
        self.ic = Some(ic);
    }

    pub fn ic_table(&self) -> Option<&IcTable> {
        self.ic.as_ref()
    }

    pub fn with_jcn_ceiling(mut self, ceiling: f64) -> Self {
        self.jcn_ceiling = ceiling;
        self
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    /// Number of database synsets of `pos`, virtual root excluded.
    pub fn count(&self, pos: Pos) -> usize {
        self.synsets
            .iter()
            .enumerate()
            .filter(|(i, s)| s.pos == pos && !self.is_virtual_root(SynsetId(*i as u32)))
            .count()
    }

    pub fn synset(&self, id: SynsetId) -> &Synset {
        &self.synsets[id.idx()]
    }

    pub fn ids(&self) -> impl Iterator<Item = SynsetId> {
        (0..self.synsets.len() as u32).map(SynsetId)
    }

    pub fn id(&self, key: &str) -> Option<SynsetId> {
        self.by_key.get(key).copied()
    }

    pub fn root(&self, pos: Pos) -> Option<SynsetId> {
        self.roots.get(&pos).copied()
    }

    pub fn is_virtual_root(&self, id: SynsetId) -> bool {
        self.roots.values().any(|r| *r == id)
    }

    pub fn hyponyms(&self, id: SynsetId) -> &[SynsetId] {
        &self.hyponyms[id.idx()]
    }

    /// Edges on the shortest upward path to a top synset.
    pub fn depth(&self, id: SynsetId) -> u32 {
        self.depth[id.idx()]
    }

    /// Synsets of a word across all parts of speech, falling back to
    /// exception lists and suffix rules when the exact lemma is unknown.
    pub fn lookup(&self, word: &str) -> Vec<SynsetId> {
        let lemma = normalize_lemma(word);
        if lemma.is_empty() {
            return Vec::new();
        }
        if let Some(ids) = self.lemma_index.get(&lemma) {
            return ids.clone();
        }
        let mut out = Vec::new();
        for pos in Pos::ALL {
            for base in morph::base_forms(&lemma, pos, self.exceptions.get(&pos)) {
                if let Some(ids) = self.lemma_index.get(&base) {
                    for id in ids {
                        if self.synsets[id.idx()].pos == pos && !out.contains(id) {
                            out.push(*id);
                        }
                    }
                }
            }
        }
        out
    }

    /// Ancestors (self included) with their upward distance.
    pub fn ancestors(&self, id: SynsetId) -> HashMap<SynsetId, u32> {
        let mut dist = HashMap::new();
        dist.insert(id, 0);
        let mut queue = VecDeque::from([id]);
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            for h in &self.synsets[cur.idx()].hypernyms {
                if !dist.contains_key(h) {
                    dist.insert(*h, d + 1);
                    queue.push_back(*h);
                }
            }
        }
        dist
    }

    /// Fewest hypernym edges, traversed in either direction, between two
    /// synsets; `None` when disconnected.
    pub fn path_length(&self, a: SynsetId, b: SynsetId) -> Option<u32> {
        if a == b {
            return Some(0);
        }
        if self.synsets[a.idx()].pos != self.synsets[b.idx()].pos {
            return None;
        }
        // Bidirectional BFS over the undirected edge set.
        let mut seen_a: HashMap<SynsetId, u32> = HashMap::from([(a, 0)]);
        let mut seen_b: HashMap<SynsetId, u32> = HashMap::from([(b, 0)]);
        let mut frontier_a = vec![a];
        let mut frontier_b = vec![b];
        let mut best: Option<u32> = None;
        let mut level_a = 0u32;
        let mut level_b = 0u32;
        while !frontier_a.is_empty() && !frontier_b.is_empty() {
            if best.is_some_and(|bst| bst <= level_a + level_b + 1) {
                break;
            }
            let expand_a = frontier_a.len() <= frontier_b.len();
            let (frontier, seen, other, level) = if expand_a {
                (&mut frontier_a, &mut seen_a, &seen_b, &mut level_a)
            } else {
                (&mut frontier_b, &mut seen_b, &seen_a, &mut level_b)
            };
            *level += 1;
            let mut next = Vec::new();
            for cur in frontier.drain(..) {
                let s = &self.synsets[cur.idx()];
                for n in s.hypernyms.iter().chain(&self.hyponyms[cur.idx()]) {
                    if seen.contains_key(n) {
                        continue;
                    }
                    seen.insert(*n, *level);
                    if let Some(d) = other.get(n) {
                        let total = *level + d;
                        best = Some(best.map_or(total, |b| b.min(total)));
                    }
                    next.push(*n);
                }
            }
            *frontier = next;
        }
        best
    }

    /// Deepest common ancestor-or-self; ties go to the lower id.
    pub fn lowest_common_subsumer(&self, a: SynsetId, b: SynsetId) -> Option<SynsetId> {
        let up_a = self.ancestors(a);
        let up_b = self.ancestors(b);
        up_a.keys()
            .filter(|k| up_b.contains_key(k))
            .max_by(|x, y| self.depth(**x).cmp(&self.depth(**y)).then(y.cmp(x)))
            .copied()
    }

    fn ic_of(&self, id: SynsetId) -> Result<f64> {
        self.ic
            .as_ref()
            .map(|t| t.get(id))
            .ok_or_else(|| Error::Invalid("measure needs an information-content table".into()))
    }

    /// Synset-level similarity. Pairs of different parts of speech or with
    /// no common subsumer score 0.
    pub fn synset_measure(&self, kind: MeasureKind, a: SynsetId, b: SynsetId) -> Result<f64> {
        if kind.needs_ic() && self.ic.is_none() {
            return Err(Error::Invalid(format!(
                "{} needs an information-content table",
                kind.as_str()
            )));
        }
        let pos = self.synsets[a.idx()].pos;
        if pos != self.synsets[b.idx()].pos {
            return Ok(0.0);
        }
        match kind {
            MeasureKind::Wnp => Ok(self
                .path_length(a, b)
                .map_or(0.0, |d| 1.0 / (1.0 + f64::from(d)))),
            MeasureKind::Lch => Ok(match self.path_length(a, b) {
                Some(d) => {
                    let max_nodes = f64::from(self.max_depth_nodes[&pos]);
                    -((f64::from(d) + 1.0) / (2.0 * max_nodes)).ln()
                }
                None => 0.0,
            }),
            MeasureKind::Wup => {
                let Some(lcs) = self.lowest_common_subsumer(a, b) else {
                    return Ok(0.0);
                };
                let denom = f64::from(self.depth(a) + self.depth(b));
                Ok(if denom == 0.0 {
                    if a == b { 1.0 } else { 0.0 }
                } else {
                    2.0 * f64::from(self.depth(lcs)) / denom
                })
            }
            MeasureKind::Res => match self.lowest_common_subsumer_ic(a, b)? {
                Some((_, ic_lcs)) => Ok(ic_lcs),
                None => Ok(0.0),
            },
            MeasureKind::Lin => match self.lowest_common_subsumer_ic(a, b)? {
                Some((_, ic_lcs)) => {
                    let denom = self.ic_of(a)? + self.ic_of(b)?;
                    Ok(if denom == 0.0 {
                        if a == b { 1.0 } else { 0.0 }
                    } else {
                        2.0 * ic_lcs / denom
                    })
                }
                None => Ok(0.0),
            },
            MeasureKind::Jcn => match self.lowest_common_subsumer_ic(a, b)? {
                Some((_, ic_lcs)) => {
                    let dist = self.ic_of(a)? + self.ic_of(b)? - 2.0 * ic_lcs;
                    Ok(if dist <= 0.0 { self.jcn_ceiling } else { 1.0 / dist })
                }
                None => Ok(0.0),
            },
        }
    }

    /// For information-content measures the subsumer is the common ancestor
    /// with the highest IC.
    fn lowest_common_subsumer_ic(&self, a: SynsetId, b: SynsetId) -> Result<Option<(SynsetId, f64)>> {
        let up_a = self.ancestors(a);
        let up_b = self.ancestors(b);
        let mut best: Option<(SynsetId, f64)> = None;
        let mut common: Vec<SynsetId> = up_a.keys().filter(|k| up_b.contains_key(k)).copied().collect();
        common.sort();
        for c in common {
            let ic = self.ic_of(c)?;
            if best.is_none_or(|(_, b)| ic > b) {
                best = Some((c, ic));
            }
        }
        Ok(best)
    }

    /// Word-level similarity: the best synset pair over all senses of both
    /// words, 0 when either word is unknown.
    pub fn word_measure(&self, kind: MeasureKind, w1: &str, w2: &str) -> Result<f64> {
        let s1 = self.lookup(w1);
        let s2 = self.lookup(w2);
        let mut best = 0.0f64;
        for a in &s1 {
            for b in &s2 {
                best = best.max(self.synset_measure(kind, *a, *b)?);
            }
        }
        Ok(best)
    }
}

fn compute_depths(synsets: &[Synset], hyponyms: &[Vec<SynsetId>]) -> Result<Vec<u32>> {
    // Kahn's order from the tops doubles as the cycle check.
    let n = synsets.len();
    let mut pending: Vec<usize> = synsets.iter().map(|s| s.hypernyms.len()).collect();
    let mut depth = vec![u32::MAX; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    for &i in &queue {
        depth[i] = 0;
    }
    let mut visited = 0;
    while let Some(cur) = queue.pop_front() {
        visited += 1;
        for child in &hyponyms[cur] {
            let c = child.idx();
            depth[c] = depth[c].min(depth[cur] + 1);
            pending[c] -= 1;
            if pending[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if visited != n {
        let bad = (0..n).find(|&i| pending[i] > 0).map(|i| synsets[i].key.clone());
        return Err(Error::Invalid(format!(
            "hypernym graph has a cycle through `{}`",
            bad.unwrap_or_default()
        )));
    }
    Ok(depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// entity > organism > animal > bird > cock ; animal > mammal ;
    /// plus a second tree: time_period > year, time_period > century.
    pub(crate) fn fixture() -> WordnetGraph {
        let mut b = WordnetBuilder::new();
        b.synset("n:1", Pos::Noun, &["entity"], &[])
            .synset("n:2", Pos::Noun, &["organism", "being"], &["n:1"])
            .synset("n:3", Pos::Noun, &["animal"], &["n:2"])
            .synset("n:4", Pos::Noun, &["bird"], &["n:3"])
            .synset("n:5", Pos::Noun, &["cock", "rooster"], &["n:4"])
            .synset("n:6", Pos::Noun, &["mammal"], &["n:3"])
            .synset("n:7", Pos::Noun, &["wood", "forest"], &["n:1"])
            .synset("n:8", Pos::Noun, &["time_period"], &[])
            .synset("n:9", Pos::Noun, &["year"], &["n:8"])
            .synset("n:10", Pos::Noun, &["century"], &["n:8"])
            .synset("v:1", Pos::Verb, &["run"], &[])
            .synset("a:1", Pos::Adj, &["quick"], &[]);
        b.build().unwrap()
    }

    fn id(g: &WordnetGraph, k: &str) -> SynsetId {
        g.id(k).unwrap()
    }

    #[test]
    fn virtual_root_and_depths() {
        let g = fixture();
        let root = g.root(Pos::Noun).unwrap();
        assert_eq!(g.depth(root), 0);
        assert_eq!(g.depth(id(&g, "n:1")), 1);
        assert_eq!(g.depth(id(&g, "n:5")), 5);
        assert_eq!(g.count(Pos::Noun), 10);
        assert!(g.root(Pos::Adj).is_none());
    }

    #[test]
    fn path_lengths() {
        let g = fixture();
        assert_eq!(g.path_length(id(&g, "n:5"), id(&g, "n:5")), Some(0));
        assert_eq!(g.path_length(id(&g, "n:5"), id(&g, "n:4")), Some(1));
        assert_eq!(g.path_length(id(&g, "n:9"), id(&g, "n:10")), Some(2));
        assert_eq!(g.path_length(id(&g, "n:5"), id(&g, "n:6")), Some(3));
        // cock up to entity (4), root (5), time_period (6), year (7).
        assert_eq!(g.path_length(id(&g, "n:5"), id(&g, "n:9")), Some(7));
        assert_eq!(g.path_length(id(&g, "n:5"), id(&g, "v:1")), None);
    }

    #[test]
    fn wnp_worked_values() {
        let g = fixture();
        let wnp = |a, b| g.word_measure(MeasureKind::Wnp, a, b).unwrap();
        assert_eq!(wnp("wood", "forest"), 1.0);
        assert_eq!(wnp("bird", "cock"), 0.5);
        assert!((wnp("century", "year") - 0.33).abs() < 0.005);
        assert_eq!(wnp("cock", "mammal"), 0.25);
        assert_eq!(wnp("cock", "unknownword"), 0.0);
        assert_eq!(wnp("quick", "quick"), 1.0);
        assert_eq!(wnp("quick", "run"), 0.0);
    }

    #[test]
    fn wup_and_lch() {
        let g = fixture();
        let (a, b) = (id(&g, "n:5"), id(&g, "n:6"));
        // lcs animal depth 3; cock 5, mammal 4.
        assert_eq!(g.lowest_common_subsumer(a, b), Some(id(&g, "n:3")));
        let wup = g.synset_measure(MeasureKind::Wup, a, b).unwrap();
        assert!((wup - 6.0 / 9.0).abs() < 1e-12);
        // deepest noun: cock, 5 edges -> 6 nodes; path 3 edges -> 4 nodes.
        let lch = g.synset_measure(MeasureKind::Lch, a, b).unwrap();
        assert!((lch - -(4.0f64 / 12.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn ic_measures_need_table() {
        let g = fixture();
        let a = id(&g, "n:5");
        assert!(g.synset_measure(MeasureKind::Res, a, a).is_err());
    }

    #[test]
    fn cycle_rejected() {
        let mut b = WordnetBuilder::new();
        b.synset("n:1", Pos::Noun, &["a"], &["n:2"])
            .synset("n:2", Pos::Noun, &["b"], &["n:1"]);
        assert!(b.build().is_err());
    }

    #[test]
    fn lookup_handles_case_spaces_and_plurals() {
        let g = fixture();
        assert_eq!(g.lookup("Time Period"), vec![id(&g, "n:8")]);
        assert_eq!(g.lookup("birds"), vec![id(&g, "n:4")]);
        assert_eq!(g.lookup("centuries"), vec![id(&g, "n:10")]);
        assert!(g.lookup("").is_empty());
    }
}
