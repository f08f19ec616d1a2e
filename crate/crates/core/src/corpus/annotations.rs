//! Sidecar POS annotations keyed by page id.
//!
//! ```text
//! #page<TAB>12
//! #section<TAB>0
//! The<TAB>DT<TAB>the
//! cat<TAB>NN<TAB>cat
//!
//! It<TAB>PRP<TAB>it
//! #section<TAB>1
//! ...
//! ```
//!
//! Token lines follow the token-per-line format of [`crate::text::pos`];
//! `#section` indexes the page's sections in order (lead = 0) and defaults to
//! 0 when omitted.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::text::pos::parse_pos_line;
use crate::text::PosToken;

/// Tagged sentences per section of one page.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PageAnnotation {
    pub sections: Vec<Vec<Vec<PosToken>>>,
}

impl PageAnnotation {
    pub fn section(&self, index: usize) -> &[Vec<PosToken>] {
        self.sections.get(index).map_or(&[], Vec::as_slice)
    }

    /// (past-tense verbs, all verbs) in a section.
    pub fn verb_counts(&self, index: usize) -> (usize, usize) {
        verb_counts(self.section(index).iter().flatten())
    }

    pub fn page_verb_counts(&self) -> (usize, usize) {
        verb_counts(self.sections.iter().flatten().flatten())
    }
}

fn verb_counts<'a>(tokens: impl Iterator<Item = &'a PosToken>) -> (usize, usize) {
    tokens.fold((0, 0), |(past, all), t| {
        if t.is_verb() {
            (past + usize::from(t.is_past_tense()), all + 1)
        } else {
            (past, all)
        }
    })
}

/// Past-tense share, undefined without verbs.
pub fn past_tense_ratio((past, all): (usize, usize)) -> Option<f64> {
    (all > 0).then(|| past as f64 / all as f64)
}

#[derive(Debug, Clone, Default)]
pub struct PosAnnotations {
    pages: HashMap<u64, PageAnnotation>,
}

impl PosAnnotations {
    pub fn get(&self, page_id: u64) -> Option<&PageAnnotation> {
        self.pages.get(&page_id)
    }

    pub fn insert(&mut self, page_id: u64, annotation: PageAnnotation) {
        self.pages.insert(page_id, annotation);
    }

    pub fn len(&self) -> usize {
        self.pages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn read<R: BufRead>(input: R, file: &str) -> Result<Self> {
        let mut out = PosAnnotations::default();
        let mut current: Option<(u64, PageAnnotation)> = None;
        let mut section = 0usize;
        let mut sentence: Vec<PosToken> = Vec::new();

        fn close_sentence(
            current: &mut Option<(u64, PageAnnotation)>,
            section: usize,
            sentence: &mut Vec<PosToken>,
        ) {
            if sentence.is_empty() {
                return;
            }
            if let Some((_, ann)) = current {
                if ann.sections.len() <= section {
                    ann.sections.resize(section + 1, Vec::new());
                }
                ann.sections[section].push(std::mem::take(sentence));
            }
        }

        for (i, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::file(file, e))?;
            let lineno = i + 1;
            let line = line.trim_end_matches('\r');
            if let Some(rest) = line.strip_prefix("#page\t") {
                close_sentence(&mut current, section, &mut sentence);
                if let Some((id, ann)) = current.take() {
                    out.pages.insert(id, ann);
                }
                let id = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(file, lineno, "bad page id"))?;
                current = Some((id, PageAnnotation::default()));
                section = 0;
            } else if let Some(rest) = line.strip_prefix("#section\t") {
                close_sentence(&mut current, section, &mut sentence);
                section = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(file, lineno, "bad section index"))?;
            } else if line.trim().is_empty() {
                close_sentence(&mut current, section, &mut sentence);
            } else {
                if current.is_none() {
                    return Err(Error::parse(file, lineno, "token before any #page line"));
                }
                let tok = parse_pos_line(line).ok_or_else(|| {
                    Error::parse(file, lineno, "expected surface<TAB>tag<TAB>lemma")
                })?;
                sentence.push(tok);
            }
        }
        close_sentence(&mut current, section, &mut sentence);
        if let Some((id, ann)) = current.take() {
            out.pages.insert(id, ann);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_pages_sections_sentences() {
        let text = "#page\t7\nIt\tPRP\tit\nwas\tVBD\tbe\n\nIt\tPRP\tit\nis\tVBZ\tbe\n#section\t2\nran\tVBD\trun\n#page\t9\ncat\tNN\tcat\n";
        let a = PosAnnotations::read(text.as_bytes(), "ann").unwrap();
        assert_eq!(a.len(), 2);
        let p = a.get(7).unwrap();
        assert_eq!(p.sections.len(), 3);
        assert_eq!(p.section(0).len(), 2);
        assert!(p.section(1).is_empty());
        assert_eq!(p.verb_counts(0), (1, 2));
        assert_eq!(p.page_verb_counts(), (2, 3));
        assert_eq!(past_tense_ratio(a.get(9).unwrap().page_verb_counts()), None);
    }

    #[test]
    fn errors_carry_line() {
        let err = PosAnnotations::read("cat\tNN\tcat\n".as_bytes(), "ann").unwrap_err();
        assert!(err.to_string().starts_with("ann:1"));
        let err = PosAnnotations::read("#page\tx\n".as_bytes(), "ann").unwrap_err();
        assert!(err.to_string().contains("page id"));
    }
}
