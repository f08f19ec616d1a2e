//! Removal of "historical" and boilerplate sections.
//!
//! A section is dropped when its past-tense ratio reaches the threshold while
//! the page as a whole stays below it, or when its heading is banned.

use std::collections::BTreeSet;

use super::annotations::{past_tense_ratio, PageAnnotation};
use super::Page;

pub const DEFAULT_BANNED_HEADINGS: &[&str] = &[
    "History",
    "External links",
    "References",
    "See also",
    "Further reading",
    "Bibliography",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PruneSettings {
    pub threshold: f64,
    /// Compared case-insensitively against trimmed headings.
    pub banned_headings: BTreeSet<String>,
}

impl Default for PruneSettings {
    fn default() -> Self {
        PruneSettings {
            threshold: 0.8,
            banned_headings: DEFAULT_BANNED_HEADINGS.iter().map(|h| h.to_string()).collect(),
        }
    }
}

impl PruneSettings {
    fn is_banned(&self, heading: &str) -> bool {
        let h = heading.trim();
        !h.is_empty() && self.banned_headings.iter().any(|b| b.eq_ignore_ascii_case(h))
    }
}

/// Returns the page without pruned sections, plus the surviving sections'
/// original indices (needed to keep annotation alignment). Each kept section
/// carries its past-tense ratio when an annotation is given.
pub fn prune_sections(
    page: &Page,
    settings: &PruneSettings,
    annotation: Option<&PageAnnotation>,
) -> (Page, Vec<usize>) {
    let page_ratio = annotation.and_then(|a| past_tense_ratio(a.page_verb_counts()));
    let mut out = page.clone();
    out.sections.clear();
    let mut kept = Vec::new();
    for (i, section) in page.sections.iter().enumerate() {
        let ratio = annotation.and_then(|a| past_tense_ratio(a.verb_counts(i)));
        let historical = match (ratio, page_ratio) {
            (Some(r), Some(p)) => r >= settings.threshold && p < settings.threshold,
            _ => false,
        };
        if historical || settings.is_banned(&section.heading) {
            continue;
        }
        let mut s = section.clone();
        s.past_tense_ratio = ratio;
        out.sections.push(s);
        kept.push(i);
    }
    (out, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Section;
    use crate::text::PosToken;

    fn verbs(past: usize, present: usize) -> Vec<Vec<PosToken>> {
        let mut s = Vec::new();
        s.extend((0..past).map(|_| PosToken::new("was", "VBD", "be")));
        s.extend((0..present).map(|_| PosToken::new("is", "VBZ", "be")));
        vec![s]
    }

    fn page(headings: &[&str]) -> Page {
        Page {
            id: 1,
            title: "P".into(),
            namespace: 0,
            sections: headings
                .iter()
                .map(|h| Section {
                    heading: h.to_string(),
                    sentences: vec![format!("{h} text.")],
                    past_tense_ratio: None,
                })
                .collect(),
            links: vec![],
            anchors_in: vec![],
            links_in: 0,
            links_out: 0,
        }
    }

    #[test]
    fn historical_section_in_present_tense_page() {
        // page: 9 past / 18 verbs = 0.5; section 1: 9/10 = 0.9
        let ann = PageAnnotation {
            sections: vec![verbs(0, 8), verbs(9, 1)],
        };
        let (out, kept) = prune_sections(&page(&["", "Origins"]), &PruneSettings::default(), Some(&ann));
        assert_eq!(kept, vec![0]);
        assert_eq!(out.sections[0].past_tense_ratio, Some(0.0));
    }

    #[test]
    fn historical_page_keeps_sections() {
        // page: 17/20 = 0.85; section 1: 9/10
        let ann = PageAnnotation {
            sections: vec![verbs(8, 2), verbs(9, 1)],
        };
        let (_, kept) = prune_sections(&page(&["", "Origins"]), &PruneSettings::default(), Some(&ann));
        assert_eq!(kept, vec![0, 1]);
    }

    #[test]
    fn banned_headings_regardless_of_ratio() {
        let (out, kept) = prune_sections(
            &page(&["", "references", "Usage", "See also"]),
            &PruneSettings::default(),
            None,
        );
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(out.sections[1].heading, "Usage");
    }

    #[test]
    fn no_verbs_never_pruned_by_ratio() {
        let ann = PageAnnotation {
            sections: vec![verbs(0, 0), verbs(0, 0)],
        };
        let (_, kept) = prune_sections(&page(&["", "List"]), &PruneSettings::default(), Some(&ann));
        assert_eq!(kept, vec![0, 1]);
    }

    #[test]
    fn lead_never_banned() {
        let mut s = PruneSettings::default();
        s.banned_headings.insert(String::new());
        let (_, kept) = prune_sections(&page(&[""]), &s, None);
        assert_eq!(kept, vec![0]);
    }
}
