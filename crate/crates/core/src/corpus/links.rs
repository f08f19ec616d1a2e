//! In/out link counts over the whole page set.
//!
//! Each link target is resolved through at most [`MAX_REDIRECT_HOPS`]
//! redirects. Links to missing pages, self-links, and repeated links from the
//! same source to the same target are not counted, so the total of
//! `links_out` always equals the total of `links_in`.

use std::collections::{BTreeSet, HashMap};

use super::{normalize_title, Page};

pub const MAX_REDIRECT_HOPS: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkCounts {
    pub links_in: u32,
    pub links_out: u32,
    pub anchors_in: Vec<String>,
}

/// Follows redirects from `title`; `None` if the chain is longer than the hop
/// limit or loops.
pub fn resolve<'a>(title: &'a str, redirects: &'a HashMap<String, String>) -> Option<&'a str> {
    let mut current = title;
    for _ in 0..MAX_REDIRECT_HOPS {
        match redirects.get(current) {
            Some(next) => current = next,
            None => return Some(current),
        }
    }
    if redirects.contains_key(current) {
        None
    } else {
        Some(current)
    }
}

/// Counts aligned with `pages`.
pub fn link_stats(pages: &[Page], redirects: &HashMap<String, String>) -> Vec<LinkCounts> {
    let by_title: HashMap<String, usize> = pages
        .iter()
        .enumerate()
        .map(|(i, p)| (normalize_title(&p.title), i))
        .collect();
    let mut counts = vec![LinkCounts::default(); pages.len()];
    let mut anchors: Vec<BTreeSet<String>> = vec![BTreeSet::new(); pages.len()];
    for (src, page) in pages.iter().enumerate() {
        let mut targets = BTreeSet::new();
        for link in &page.links {
            let Some(resolved) = resolve(&link.target, redirects) else {
                continue;
            };
            let Some(&dst) = by_title.get(resolved) else {
                continue;
            };
            if dst == src {
                continue;
            }
            targets.insert(dst);
            if !link.anchor.is_empty() {
                anchors[dst].insert(link.anchor.clone());
            }
        }
        counts[src].links_out = targets.len() as u32;
        for dst in targets {
            counts[dst].links_in += 1;
        }
    }
    for (c, a) in counts.iter_mut().zip(anchors) {
        c.anchors_in = a.into_iter().collect();
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Link;

    fn page(title: &str, targets: &[&str]) -> Page {
        Page {
            id: 0,
            title: title.into(),
            namespace: 0,
            sections: vec![],
            links: targets
                .iter()
                .map(|t| Link {
                    target: t.to_string(),
                    anchor: t.to_lowercase(),
                })
                .collect(),
            anchors_in: vec![],
            links_in: 0,
            links_out: 0,
        }
    }

    #[test]
    fn mutual_links() {
        let c = link_stats(&[page("A", &["B"]), page("B", &["A"])], &HashMap::new());
        assert_eq!((c[0].links_in, c[0].links_out), (1, 1));
        assert_eq!((c[1].links_in, c[1].links_out), (1, 1));
    }

    #[test]
    fn through_redirect() {
        let mut r = HashMap::new();
        r.insert("R".to_string(), "B".to_string());
        let c = link_stats(&[page("A", &["R"]), page("B", &[])], &r);
        assert_eq!(c[1].links_in, 1);
        assert_eq!(c[1].anchors_in, vec!["r".to_string()]);
    }

    #[test]
    fn self_missing_and_long_chains_ignored() {
        let mut r = HashMap::new();
        for (a, b) in [("R1", "R2"), ("R2", "R3"), ("R3", "R4"), ("R4", "B"), ("L", "L")] {
            r.insert(a.to_string(), b.to_string());
        }
        assert_eq!(resolve("R2", &r), Some("B"));
        assert_eq!(resolve("R1", &r), None);
        assert_eq!(resolve("L", &r), None);
        let c = link_stats(
            &[page("A", &["A", "Nowhere", "R1", "L", "B", "B"]), page("B", &[])],
            &r,
        );
        assert_eq!(c[0].links_out, 1);
        assert_eq!(c[1].links_in, 1);
    }
}
