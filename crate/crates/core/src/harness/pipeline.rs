//! End-to-end steps shared by the CLI and the examples.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::collocation::{load_ngrams, NgramTable, Vocabulary};
use crate::combine::{CombineParams, PairFeatures};
use crate::corpus::{self, store, Page, PosAnnotations};
use crate::error::{Error, Result};
use crate::esa::format::{read_index, write_index};
use crate::esa::{build_index, documents_from_pages, ExtractSettings, InvertedIndex};
use crate::eval::WordPair;
use crate::text::StopWords;
use crate::wordnet::{load_wordnet, MeasureKind, WordnetGraph};

use super::RunConfig;

/// Environment variable naming a directory for cached intermediate pages.
pub const CACHE_ENV: &str = "RELMIX_CACHE_DIR";
/// Index metadata key holding the build hash.
pub const HASH_KEY: &str = "config_hash";

/// Counters from one `build_index_from_dump` run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildReport {
    pub pages_read: usize,
    pub pages_kept: usize,
    /// `None` when pages came from the cache.
    pub redirects: Option<usize>,
    pub markup_diagnostics: Option<usize>,
    pub unknown_pos_tags: usize,
    pub from_cache: bool,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::file(path, e))
}

fn required<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::Invalid(format!("no {what} configured")))
}

fn cache_file(dir: &Path, dump: &Path) -> Result<PathBuf> {
    let meta = std::fs::metadata(dump).map_err(|e| Error::file(dump, e))?;
    let mtime = meta
        .modified()
        .ok()
        .and_then(|t| t.duration_since(std::time::UNIX_EPOCH).ok())
        .map_or(0, |d| d.as_nanos());
    let canon = dump.canonicalize().unwrap_or_else(|_| dump.to_path_buf());
    let mut h = Sha256::new();
    h.update(format!("pages-v1\0{}\0{}\0{}", canon.display(), meta.len(), mtime));
    let hex: String = h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect();
    Ok(dir.join(format!("pages-{hex}.ndjson")))
}

/// Cleaned pages of the dump, through the cache when one is configured.
pub fn ingest_pages(dump: &Path, cache_dir: Option<&Path>) -> Result<(Vec<Page>, BuildReport)> {
    let cached = match cache_dir {
        Some(dir) => Some(cache_file(dir, dump)?),
        None => None,
    };
    if let Some(path) = cached.as_ref().filter(|p| p.exists()) {
        let file = path.display().to_string();
        let pages = store::read_pages(open(path)?, &file).collect::<Result<Vec<Page>>>()?;
        let report = BuildReport {
            pages_read: pages.len(),
            from_cache: true,
            ..BuildReport::default()
        };
        return Ok((pages, report));
    }
    let ingested = corpus::ingest(open(dump)?)?;
    if let Some(path) = &cached {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
        }
        let tmp = path.with_extension("tmp");
        let mut out = BufWriter::new(File::create(&tmp).map_err(|e| Error::file(&tmp, e))?);
        store::write_pages(&mut out, &ingested.pages)?;
        out.flush().map_err(|e| Error::file(&tmp, e))?;
        drop(out);
        std::fs::rename(&tmp, path).map_err(|e| Error::file(path, e))?;
    }
    let report = BuildReport {
        pages_read: ingested.pages.len(),
        redirects: Some(ingested.redirect_count),
        markup_diagnostics: Some(ingested.markup_diagnostics),
        ..BuildReport::default()
    };
    Ok((ingested.pages, report))
}

/// Dump -> filtered pages -> concept documents -> index. The build hash of
/// `cfg` is stored in the index metadata.
pub fn build_index_from_dump(cfg: &RunConfig, cache_dir: Option<&Path>) -> Result<(InvertedIndex, BuildReport)> {
    let dump = required(&cfg.dump, "dump")?;
    if cfg.mode.pos_mode().is_some() && cfg.annotations.is_none() {
        return Err(Error::Invalid(format!(
            "mode {} needs a POS annotation file",
            cfg.mode.as_str()
        )));
    }
    let annotations = match &cfg.annotations {
        Some(p) => Some(PosAnnotations::read(open(p)?, &p.display().to_string())?),
        None => None,
    };
    let (pages, mut report) = ingest_pages(dump, cache_dir)?;
    let stopwords = StopWords::english();
    let pages = corpus::filter_pages(pages, cfg.filter, &stopwords);
    report.pages_kept = pages.len();
    let extract = ExtractSettings {
        mode: cfg.mode,
        sentence_weight: cfg.sentence_weight,
        prune: cfg.prune_settings(),
        stopwords: stopwords.clone(),
    };
    let (docs, diag) = documents_from_pages(&pages, &extract, annotations.as_ref());
    report.unknown_pos_tags = diag.unknown_tags;
    let mut metadata = BTreeMap::new();
    metadata.insert(HASH_KEY.to_string(), cfg.build_hash());
    metadata.insert("mode".to_string(), cfg.mode.as_str().to_string());
    metadata.insert("min_terms".to_string(), cfg.filter.min_terms.to_string());
    metadata.insert("min_links".to_string(), cfg.filter.min_links.to_string());
    let index = build_index(&docs, &cfg.build_settings(), &stopwords, metadata)?;
    Ok((index, report))
}

/// Writes through a temporary file so a failed run leaves no partial index.
pub fn save_index(index: &InvertedIndex, path: &Path) -> Result<()> {
    let tmp = path.with_extension("partial");
    let file = File::create(&tmp).map_err(|e| Error::file(&tmp, e))?;
    let mut out = BufWriter::new(file);
    write_index(index, &mut out)?;
    out.flush().map_err(|e| Error::file(&tmp, e))?;
    drop(out);
    std::fs::rename(&tmp, path).map_err(|e| Error::file(path, e))
}

pub fn load_index(path: &Path) -> Result<InvertedIndex> {
    read_index(open(path)?)
}

/// Refuses an index built under different build settings unless `force`.
/// Returns whether the hashes differed.
pub fn check_index_hash(index: &InvertedIndex, cfg: &RunConfig, force: bool) -> Result<bool> {
    let want = cfg.build_hash();
    let have = index.metadata_value(HASH_KEY).unwrap_or("none").to_string();
    if have == want {
        return Ok(false);
    }
    if force {
        Ok(true)
    } else {
        Err(Error::HashMismatch { index: have, config: want })
    }
}

/// Measures a CLI run can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Esa,
    Wordnet(MeasureKind),
    Cxi,
    Ew,
    Ewc,
    /// The gold score itself; useful for checking the evaluation plumbing.
    Gold,
}

impl Measure {
    pub fn needs_index(self) -> bool {
        matches!(self, Measure::Esa | Measure::Ew | Measure::Ewc)
    }

    pub fn needs_wordnet(self) -> bool {
        matches!(self, Measure::Wordnet(_) | Measure::Ew | Measure::Ewc)
    }

    pub fn needs_ngrams(self) -> bool {
        matches!(self, Measure::Cxi | Measure::Ewc)
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Esa => "esa",
            Measure::Wordnet(k) => k.as_str(),
            Measure::Cxi => "cxi",
            Measure::Ew => "ew",
            Measure::Ewc => "ewc",
            Measure::Gold => "gold",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "esa" => Measure::Esa,
            "cxi" => Measure::Cxi,
            "ew" => Measure::Ew,
            "ewc" => Measure::Ewc,
            "gold" => Measure::Gold,
            other => {
                let kind: MeasureKind = other
                    .parse()
                    .map_err(|_| Error::Invalid(format!("unknown measure `{s}`")))?;
                if kind.needs_ic() {
                    return Err(Error::Invalid(format!(
                        "measure `{s}` needs information content, which the CLI does not load"
                    )));
                }
                Measure::Wordnet(kind)
            }
        })
    }
}

/// Whatever knowledge sources a run has loaded.
#[derive(Default)]
pub struct Resources {
    pub index: Option<InvertedIndex>,
    pub wordnet: Option<WordnetGraph>,
    pub ngrams: Option<NgramTable>,
}

impl Resources {
    /// Loads the sources `measure` needs. N-gram rows are restricted to
    /// `vocabulary`.
    pub fn for_measure(cfg: &RunConfig, measure: Measure, vocabulary: &[String]) -> Result<Self> {
        let mut r = Resources::default();
        if measure.needs_index() {
            r.index = Some(load_index(required(&cfg.index, "index")?)?);
        }
        if measure.needs_wordnet() {
            r.wordnet = Some(load_wordnet(required(&cfg.wordnet_dir, "WordNet directory")?)?);
        }
        if measure.needs_ngrams() {
            r.ngrams = Some(load_ngram_files(cfg, vocabulary)?);
        }
        Ok(r)
    }

    /// Every source that is configured.
    pub fn available(cfg: &RunConfig, vocabulary: &[String]) -> Result<Self> {
        let mut r = Resources::default();
        if let Some(p) = &cfg.index {
            r.index = Some(load_index(p)?);
        }
        if let Some(p) = &cfg.wordnet_dir {
            r.wordnet = Some(load_wordnet(p)?);
        }
        if cfg.ngrams_uni.is_some() || cfg.ngrams_bi.is_some() {
            r.ngrams = Some(load_ngram_files(cfg, vocabulary)?);
        }
        Ok(r)
    }

    /// Component scores; a missing source or an undefined collocation
    /// index contributes 0.
    pub fn features(&self, w1: &str, w2: &str) -> Result<PairFeatures> {
        let esa = self.index.as_ref().map_or(0.0, |ix| ix.esa(w1, w2));
        let wnp = match &self.wordnet {
            Some(g) => g.word_measure(MeasureKind::Wnp, w1, w2)?,
            None => 0.0,
        };
        let colloc = |a: &str, b: &str| match &self.ngrams {
            Some(t) => t.collocation_index(a, b).unwrap_or(0.0),
            None => 0.0,
        };
        Ok(PairFeatures {
            esa,
            wnp,
            colloc_direct: colloc(w1, w2),
            colloc_inverse: colloc(w2, w1),
        })
    }

    pub fn score(&self, measure: Measure, pair: &WordPair, params: &CombineParams) -> Result<f64> {
        Ok(match measure {
            Measure::Gold => pair.gold,
            Measure::Wordnet(k) => match &self.wordnet {
                Some(g) => g.word_measure(k, &pair.w1, &pair.w2)?,
                None => return Err(Error::Invalid("no WordNet loaded".into())),
            },
            Measure::Esa => self.features(&pair.w1, &pair.w2)?.esa,
            Measure::Cxi => self.features(&pair.w1, &pair.w2)?.cxi(params.xi),
            Measure::Ew => self.features(&pair.w1, &pair.w2)?.ew(params),
            Measure::Ewc => self.features(&pair.w1, &pair.w2)?.ewc(params),
        })
    }

    /// Features of every pair, in order.
    pub fn pair_features(&self, pairs: &[WordPair]) -> Result<Vec<PairFeatures>> {
        pairs
            .par_iter()
            .map(|p| self.features(&p.w1, &p.w2))
            .collect()
    }
}

fn load_ngram_files(cfg: &RunConfig, vocabulary: &[String]) -> Result<NgramTable> {
    let uni = required(&cfg.ngrams_uni, "unigram file")?;
    let bi = required(&cfg.ngrams_bi, "bigram file")?;
    let vocab = Vocabulary::from_words(vocabulary);
    let (table, _) = load_ngrams(open(uni)?, open(bi)?, cfg.min_year, &vocab)?;
    Ok(table)
}
