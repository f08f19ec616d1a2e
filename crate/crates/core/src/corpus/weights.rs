//! Up-weighting of sentences that mention the page's own subject.
//!
//! A sentence is selected when, after tokenizing and stemming, it contains
//! the full title as a contiguous phrase, any non-stop word of the title, or
//! any incoming anchor text as a contiguous phrase.

use std::collections::HashSet;

use crate::text::{porter, stem_word, tokenize, StopWords, STEM_PASSES};

use super::Page;

fn phrase(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .map(|t| porter::stem_n(&t.surface, STEM_PASSES))
        .collect()
}

fn contains_phrase(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Matcher for one page's title and anchors.
pub struct SubjectMatcher {
    phrases: Vec<Vec<String>>,
    title_words: HashSet<String>,
}

impl SubjectMatcher {
    pub fn new(title: &str, anchors: &[String], stopwords: &StopWords) -> Self {
        let mut phrases = vec![phrase(title)];
        phrases.extend(anchors.iter().map(|a| phrase(a)));
        phrases.retain(|p| !p.is_empty());
        let title_words = tokenize(title)
            .iter()
            .filter_map(|t| stem_word(&t.surface, stopwords))
            .map(|t| t.0)
            .collect();
        SubjectMatcher {
            phrases,
            title_words,
        }
    }

    pub fn matches(&self, sentence: &str) -> bool {
        let tokens = phrase(sentence);
        tokens.iter().any(|t| self.title_words.contains(t))
            || self.phrases.iter().any(|p| contains_phrase(&tokens, p))
    }
}

/// Per-section, per-sentence weights: `factor` for selected sentences, 1
/// otherwise. Term counts are later multiplied by these weights.
pub fn weight_sentences(page: &Page, factor: u32, stopwords: &StopWords) -> Vec<Vec<u32>> {
    let matcher = SubjectMatcher::new(&page.title, &page.anchors_in, stopwords);
    page.sections
        .iter()
        .map(|s| {
            s.sentences
                .iter()
                .map(|sentence| {
                    if factor != 1 && matcher.matches(sentence) {
                        factor
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect()
}
