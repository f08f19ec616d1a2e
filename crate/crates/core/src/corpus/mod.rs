//! From a MediaWiki dump to cleaned, filtered concept pages.
//!
//! The flow is two-pass: [`dump`] + [`wikitext`] turn each `<page>` into a
//! [`Page`] and collect redirects; [`links::link_stats`] needs every page
//! before it can count in-links. After that, pages are filtered
//! ([`filter_pages`]) and optionally reshaped by sentence weighting
//! ([`weights`]) or section pruning ([`prune`]).

pub mod annotations;
pub mod dump;
pub mod links;
pub mod prune;
pub mod store;
pub mod synthetic;
pub mod weights;
pub mod wikitext;

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::text::{self, StopWords};

pub use annotations::{PageAnnotation, PosAnnotations};
pub use dump::{DumpReader, DumpRecord};
pub use links::{link_stats, LinkCounts};
pub use prune::{prune_sections, PruneSettings, DEFAULT_BANNED_HEADINGS};
pub use weights::weight_sentences;
pub use wikitext::{clean_wikitext, normalize_title, Cleaned, Link};

/// One block of a page under a heading; the lead section has an empty heading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub heading: String,
    pub sentences: Vec<String>,
    /// Share of past-tense verbs (VBD) among verbs (VB*); `None` without
    /// annotations or when the section has no verbs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub past_tense_ratio: Option<f64>,
}

impl Section {
    pub fn new(heading: &str) -> Self {
        Section {
            heading: heading.to_string(),
            sentences: Vec::new(),
            past_tense_ratio: None,
        }
    }
}

/// A main-namespace article: one concept of the semantic space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Page {
    pub id: u64,
    pub title: String,
    pub namespace: i64,
    pub sections: Vec<Section>,
    /// Outgoing links as written (targets normalized, not yet resolved).
    pub links: Vec<Link>,
    /// Anchor texts of resolved links pointing at this page, sorted, distinct.
    pub anchors_in: Vec<String>,
    pub links_in: u32,
    pub links_out: u32,
}

impl Page {
    /// Builds a page from a raw dump record; link statistics start at zero.
    pub fn from_record(record: &DumpRecord) -> (Self, usize) {
        let cleaned = clean_wikitext(&record.text);
        let page = Page {
            id: record.id,
            title: record.title.clone(),
            namespace: record.namespace,
            sections: cleaned.sections,
            links: cleaned.links,
            anchors_in: Vec::new(),
            links_in: 0,
            links_out: 0,
        };
        (page, cleaned.diagnostics)
    }

    pub fn sentences(&self) -> impl Iterator<Item = &str> {
        self.sections
            .iter()
            .flat_map(|s| s.sentences.iter().map(String::as_str))
    }

    /// Number of distinct stemmed terms over the whole page.
    pub fn distinct_terms(&self, stopwords: &StopWords) -> usize {
        let mut set = BTreeSet::new();
        for sentence in self.sentences() {
            set.extend(text::stemmed_terms(sentence, stopwords));
        }
        set.len()
    }

    pub fn total_links(&self) -> u64 {
        u64::from(self.links_in) + u64::from(self.links_out)
    }
}

/// Minimum page size and connectivity for a page to become a concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterCriteria {
    /// Distinct stemmed terms.
    pub min_terms: usize,
    /// In-links plus out-links.
    pub min_links: u64,
}

impl FilterCriteria {
    /// Thresholds of the original 2005 setup.
    pub const ORIGINAL: FilterCriteria = FilterCriteria {
        min_terms: 100,
        min_links: 5,
    };
    /// Thresholds adapted to the 2011 dump.
    pub const ADAPTED_2011: FilterCriteria = FilterCriteria {
        min_terms: 200,
        min_links: 14,
    };

    pub fn accepts(&self, distinct_terms: usize, links: u64) -> bool {
        distinct_terms >= self.min_terms && links >= self.min_links
    }
}

/// Keeps pages with at least `min_terms` distinct stemmed terms and at least
/// `min_links` in- plus outgoing links. Order is preserved.
pub fn filter_pages(pages: Vec<Page>, criteria: FilterCriteria, stopwords: &StopWords) -> Vec<Page> {
    use rayon::prelude::*;
    let keep: Vec<bool> = pages
        .par_iter()
        .map(|p| criteria.accepts(p.distinct_terms(stopwords), p.total_links()))
        .collect();
    pages
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Result of the first pass over a dump.
#[derive(Debug, Default)]
pub struct Ingested {
    /// Main-namespace non-redirect pages, sorted by id.
    pub pages: Vec<Page>,
    /// Redirect title -> target title, both normalized.
    pub redirects: HashMap<String, String>,
    pub redirect_count: usize,
    pub skipped_other_namespaces: usize,
    pub markup_diagnostics: usize,
}

/// Reads a whole dump, cleans every main-namespace page and computes link
/// statistics. Cleaning runs in parallel over batches of pages; results are
/// ordered by page id regardless of scheduling.
pub fn ingest<R: BufRead>(input: R) -> Result<Ingested> {
    use rayon::prelude::*;
    const BATCH: usize = 512;

    let mut out = Ingested::default();
    let mut batch: Vec<DumpRecord> = Vec::with_capacity(BATCH);
    let flush = |batch: &mut Vec<DumpRecord>, out: &mut Ingested| {
        let cleaned: Vec<(Page, usize)> = batch.par_iter().map(Page::from_record).collect();
        for (page, diag) in cleaned {
            out.markup_diagnostics += diag;
            out.pages.push(page);
        }
        batch.clear();
    };
    for record in DumpReader::new(input) {
        let record = record?;
        if record.namespace != 0 {
            out.skipped_other_namespaces += 1;
            continue;
        }
        if let Some(target) = &record.redirect {
            out.redirect_count += 1;
            out.redirects
                .insert(normalize_title(&record.title), normalize_title(target));
            continue;
        }
        batch.push(record);
        if batch.len() == BATCH {
            flush(&mut batch, &mut out);
        }
    }
    flush(&mut batch, &mut out);
    out.pages.sort_by_key(|p| p.id);
    let counts = link_stats(&out.pages, &out.redirects);
    for (page, c) in out.pages.iter_mut().zip(counts) {
        page.links_in = c.links_in;
        page.links_out = c.links_out;
        page.anchors_in = c.anchors_in;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page_with_terms(n: usize, links: u32) -> Page {
        // Vowel-free words are left untouched by the stemmer.
        let words: Vec<String> = (0..n).map(|i| format!("zq{}", consonants(i))).collect();
        Page {
            id: 1,
            title: "T".into(),
            namespace: 0,
            sections: vec![Section {
                heading: String::new(),
                sentences: vec![words.join(" ")],
                past_tense_ratio: None,
            }],
            links: vec![],
            anchors_in: vec![],
            links_in: links,
            links_out: 0,
        }
    }

    fn consonants(mut i: usize) -> String {
        const LETTERS: &[u8] = b"bcdfghjkmnpqrtvwxz";
        let mut s = String::new();
        loop {
            s.push(LETTERS[i % LETTERS.len()] as char);
            i /= LETTERS.len();
            if i == 0 {
                return s;
            }
        }
    }

    #[test]
    fn threshold_is_inclusive_minimum() {
        let sw = StopWords::english();
        let p199 = page_with_terms(199, 50);
        let p200 = page_with_terms(200, 14);
        assert_eq!(p199.distinct_terms(&sw), 199);
        assert_eq!(p200.distinct_terms(&sw), 200);
        let kept = filter_pages(vec![p199, p200], FilterCriteria::ADAPTED_2011, &sw);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].total_links(), 14);
    }

    #[test]
    fn criteria_constants() {
        assert_eq!((FilterCriteria::ORIGINAL.min_terms, FilterCriteria::ORIGINAL.min_links), (100, 5));
        assert_eq!(
            (FilterCriteria::ADAPTED_2011.min_terms, FilterCriteria::ADAPTED_2011.min_links),
            (200, 14)
        );
    }

    #[test]
    fn ingest_separates_redirects() {
        let xml = "<mediawiki>\
            <page><title>A</title><ns>0</ns><id>1</id><revision><text>See [[B]].</text></revision></page>\
            <page><title>R</title><ns>0</ns><id>2</id><redirect title=\"B\"/><revision><text>#REDIRECT [[B]]</text></revision></page>\
            <page><title>B</title><ns>0</ns><id>3</id><revision><text>Back to [[A]] via [[R|r]].</text></revision></page>\
            <page><title>Talk:A</title><ns>1</ns><id>4</id><revision><text>x</text></revision></page>\
            </mediawiki>";
        let ing = ingest(xml.as_bytes()).unwrap();
        assert_eq!(ing.pages.len(), 2);
        assert_eq!(ing.redirect_count, 1);
        assert_eq!(ing.skipped_other_namespaces, 1);
        let b = &ing.pages[1];
        assert_eq!((b.links_in, b.links_out), (1, 1));
        assert_eq!(ing.pages[0].anchors_in, vec!["A".to_string()]);
        assert_eq!(b.anchors_in, vec!["B".to_string()]);
    }
}
