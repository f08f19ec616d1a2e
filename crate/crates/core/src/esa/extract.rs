//! Page -> weighted term counts, honouring the pipeline mode, sentence
//! weighting and section pruning.

use rayon::prelude::*;

use crate::corpus::weights::SubjectMatcher;
use crate::corpus::{prune_sections, Page, PosAnnotations, PruneSettings};
use crate::text::{self, PipelineMode, PosDiagnostics, StopWords};

use super::ConceptDoc;

#[derive(Debug, Clone)]
pub struct ExtractSettings {
    pub mode: PipelineMode,
    /// Weight of sentences mentioning the page subject; 1 disables.
    pub sentence_weight: u32,
    pub prune: Option<PruneSettings>,
    pub stopwords: StopWords,
}

impl Default for ExtractSettings {
    fn default() -> Self {
        ExtractSettings {
            mode: PipelineMode::Stemmed,
            sentence_weight: 1,
            prune: None,
            stopwords: StopWords::english(),
        }
    }
}

/// One document per page, in page order. Pages without annotations yield
/// empty documents in the POS modes.
pub fn documents_from_pages(
    pages: &[Page],
    settings: &ExtractSettings,
    annotations: Option<&PosAnnotations>,
) -> (Vec<ConceptDoc>, PosDiagnostics) {
    let results: Vec<(ConceptDoc, PosDiagnostics)> = pages
        .par_iter()
        .map(|page| page_document(page, settings, annotations))
        .collect();
    let mut diag = PosDiagnostics::default();
    let docs = results
        .into_iter()
        .map(|(doc, d)| {
            diag.unknown_tags += d.unknown_tags;
            doc
        })
        .collect();
    (docs, diag)
}

fn page_document(
    page: &Page,
    settings: &ExtractSettings,
    annotations: Option<&PosAnnotations>,
) -> (ConceptDoc, PosDiagnostics) {
    let annotation = annotations.and_then(|a| a.get(page.id));
    let (page, kept) = match &settings.prune {
        Some(p) => prune_sections(page, p, annotation),
        None => (page.clone(), (0..page.sections.len()).collect()),
    };
    let sw = &settings.stopwords;
    let matcher = (settings.sentence_weight != 1)
        .then(|| SubjectMatcher::new(&page.title, &page.anchors_in, sw));
    let weight_of = |sentence: &str| -> f64 {
        match &matcher {
            Some(m) if m.matches(sentence) => f64::from(settings.sentence_weight),
            _ => 1.0,
        }
    };

    let mut doc = ConceptDoc::from_terms(page.id, &page.title, std::iter::empty());
    let mut diag = PosDiagnostics::default();
    match settings.mode.pos_mode() {
        None => {
            for sentence in page.sentences() {
                let w = weight_of(sentence);
                for term in text::stemmed_terms(sentence, sw) {
                    *doc.counts.entry(term).or_insert(0.0) += w;
                }
            }
        }
        Some(pos_mode) => {
            if let Some(ann) = annotation {
                for &orig in &kept {
                    for sentence in ann.section(orig) {
                        let surface: Vec<&str> = sentence.iter().map(|t| t.surface.as_str()).collect();
                        let w = weight_of(&surface.join(" "));
                        for term in text::normalize_pos(sentence, pos_mode, &mut diag) {
                            *doc.counts.entry(term).or_insert(0.0) += w;
                        }
                    }
                }
            }
        }
    }
    (doc, diag)
}
