//! Best-effort wikitext to plain text conversion.
//!
//! Templates, tables, references, categories, file inclusions, comments and
//! interlanguage links are dropped. Internal links contribute their anchor
//! text to the output and their target to the outgoing link list. `== X ==`
//! headings open a new section. Unbalanced constructs are skipped and counted
//! in [`Cleaned::diagnostics`].

use serde::{Deserialize, Serialize};

use super::Section;

/// An internal link as written in the markup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub target: String,
    pub anchor: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Cleaned {
    pub sections: Vec<Section>,
    pub links: Vec<Link>,
    /// Unbalanced or unrecognised constructs encountered.
    pub diagnostics: usize,
}

impl Cleaned {
    pub fn plain_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for sentence in &s.sentences {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(sentence);
            }
        }
        out
    }
}

const DROPPED_NAMESPACES: &[&str] = &[
    "file", "image", "category", "media", "wikipedia", "wp", "template", "help", "portal", "wikt",
    "wiktionary", "special", "user", "talk", "s", "q", "commons", "meta",
];

const DROPPED_TAGS: &[&str] = &[
    "ref", "math", "gallery", "timeline", "score", "syntaxhighlight", "source", "imagemap",
    "chem", "hiero", "graph", "templatedata", "mapframe",
];

/// Canonical page title: underscores as spaces, collapsed whitespace, first
/// letter uppercased, `#fragment` removed.
pub fn normalize_title(raw: &str) -> String {
    let no_frag = raw.split('#').next().unwrap_or("");
    let collapsed = no_frag
        .replace('_', " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ");
    let mut chars = collapsed.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn clean_wikitext(markup: &str) -> Cleaned {
    let mut diag = 0;
    let mut links = Vec::new();
    let without_comments = strip_comments(markup, &mut diag);
    let inline = strip_inline(&without_comments, &mut links, &mut diag);
    let text = decode_entities(&inline);
    let sections = split_sections(&text);
    Cleaned {
        sections,
        links,
        diagnostics: diag,
    }
}

fn strip_comments(s: &str, diag: &mut usize) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = rest.find("<!--") {
        out.push_str(&rest[..start]);
        match rest[start + 4..].find("-->") {
            Some(end) => rest = &rest[start + 4 + end + 3..],
            None => {
                *diag += 1;
                rest = "";
            }
        }
    }
    out.push_str(rest);
    out
}

/// Byte offset just past the balanced closing delimiter for an opener at
/// `start`, counting nested openers.
fn find_balanced(s: &str, start: usize, open: &str, close: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0usize;
    let mut i = start;
    while i < bytes.len() {
        if s[i..].starts_with(open) {
            depth += 1;
            i += open.len();
        } else if s[i..].starts_with(close) {
            depth -= 1;
            i += close.len();
            if depth == 0 {
                return Some(i);
            }
        } else {
            i += 1;
        }
    }
    None
}

fn at_line_start(s: &str, i: usize) -> bool {
    s[..i]
        .chars()
        .rev()
        .take_while(|c| *c != '\n')
        .all(|c| c == ' ' || c == '\t')
}

fn line_end(s: &str, i: usize) -> usize {
    s[i..].find('\n').map_or(s.len(), |p| i + p)
}

fn is_dropped_target(target: &str) -> bool {
    let t = target.trim_start_matches(':').trim();
    match t.split_once(':') {
        Some((prefix, _)) => {
            let p = prefix.trim().to_lowercase();
            DROPPED_NAMESPACES.contains(&p.as_str())
                || (p.len() >= 2
                    && p.len() <= 3
                    && p.chars().all(|c| c.is_ascii_lowercase())
                    && prefix.trim() == p)
                || (p.contains('-') && p.chars().all(|c| c.is_ascii_lowercase() || c == '-'))
        }
        None => false,
    }
}

/// Parses an HTML-like tag at `i`, returning (name lowercased, closing?,
/// self-closing?, end offset).
fn parse_tag(s: &str, i: usize) -> Option<(String, bool, bool, usize)> {
    let rest = &s[i + 1..];
    let (closing, body_start) = if rest.starts_with('/') { (true, 1) } else { (false, 0) };
    let body = &rest[body_start..];
    let first = body.chars().next()?;
    if !first.is_ascii_alphabetic() {
        return None;
    }
    let end_rel = rest.find('>')?;
    let inner = &rest[..end_rel];
    if inner.contains('<') || inner.contains('\n') && inner.len() > 500 {
        return None;
    }
    let name: String = body
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_lowercase();
    let self_closing = inner.trim_end().ends_with('/');
    Some((name, closing, self_closing, i + 1 + end_rel + 1))
}

fn find_closing_tag(s: &str, from: usize, name: &str) -> Option<usize> {
    let lower = s[from..].to_ascii_lowercase();
    let needle = format!("</{name}");
    let pos = lower.find(&needle)?;
    let after = from + pos;
    s[after..].find('>').map(|e| after + e + 1)
}

fn strip_inline(s: &str, links: &mut Vec<Link>, diag: &mut usize) -> String {
    let mut out = String::with_capacity(s.len());
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &s[i..];
        if rest.starts_with("{{") {
            match find_balanced(s, i, "{{", "}}") {
                Some(end) => i = end,
                None => {
                    *diag += 1;
                    i += 2;
                }
            }
        } else if rest.starts_with("{|") && at_line_start(s, i) {
            match find_balanced(s, i, "{|", "|}") {
                Some(end) => i = end,
                None => {
                    *diag += 1;
                    i = line_end(s, i);
                }
            }
        } else if rest.starts_with("[[") {
            match find_balanced(s, i, "[[", "]]") {
                Some(end) => {
                    let inner = &s[i + 2..end - 2];
                    i = end;
                    if is_dropped_target(inner.split('|').next().unwrap_or("")) {
                        continue;
                    }
                    let (target, anchor_markup) = match inner.split_once('|') {
                        Some((t, a)) => (t, a.rsplit('|').next().unwrap_or(a)),
                        None => (inner, inner),
                    };
                    let anchor_markup = if anchor_markup.trim().is_empty() {
                        target
                    } else {
                        anchor_markup
                    };
                    let mut anchor = strip_inline(anchor_markup, links, diag).trim().to_string();
                    // Blend trailing letters: [[cat]]s -> "cats".
                    let trail: String = s[i..].chars().take_while(|c| c.is_alphabetic()).collect();
                    i += trail.len();
                    anchor.push_str(&trail);
                    let target = normalize_title(target.trim_start_matches(':'));
                    if !target.is_empty() {
                        links.push(Link {
                            target,
                            anchor: anchor.clone(),
                        });
                    }
                    out.push_str(&anchor);
                }
                None => {
                    *diag += 1;
                    i += 2;
                }
            }
        } else if rest.starts_with('[')
            && ["http://", "https://", "ftp://", "//"]
                .iter()
                .any(|p| rest[1..].starts_with(p))
        {
            let end = rest.find(']').filter(|e| !rest[..*e].contains('\n'));
            match end {
                Some(e) => {
                    let inner = &rest[1..e];
                    if let Some((_, label)) = inner.split_once(' ') {
                        out.push_str(&strip_inline(label, links, diag));
                    }
                    i += e + 1;
                }
                None => {
                    *diag += 1;
                    i = line_end(s, i);
                }
            }
        } else if rest.starts_with('<') {
            match parse_tag(s, i) {
                Some((name, closing, self_closing, end)) => {
                    if !closing && !self_closing && DROPPED_TAGS.contains(&name.as_str()) {
                        match find_closing_tag(s, end, &name) {
                            Some(close_end) => i = close_end,
                            None => {
                                *diag += 1;
                                i = end;
                            }
                        }
                    } else {
                        if matches!(name.as_str(), "br" | "p" | "div") {
                            out.push('\n');
                        }
                        i = end;
                    }
                }
                None => {
                    out.push('<');
                    i += 1;
                }
            }
        } else if rest.starts_with("''") {
            i += rest.chars().take_while(|c| *c == '\'').count();
        } else if rest.starts_with("__") {
            let word: String = rest[2..].chars().take_while(|c| c.is_ascii_uppercase()).collect();
            if !word.is_empty() && rest[2 + word.len()..].starts_with("__") {
                i += word.len() + 4;
            } else {
                out.push('_');
                i += 1;
            }
        } else {
            let ch = rest.chars().next().unwrap();
            out.push(ch);
            i += ch.len_utf8();
        }
    }
    out
}

fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    s.replace("&nbsp;", " ")
        .replace("&ndash;", " ")
        .replace("&mdash;", " ")
        .replace("&quot;", "\"")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&amp;", "&")
}

fn heading(line: &str) -> Option<String> {
    let t = line.trim();
    let level = t.chars().take_while(|c| *c == '=').count();
    if level == 0 || level > 6 || t.len() < 2 * level + 1 {
        return None;
    }
    let trailing = t.chars().rev().take_while(|c| *c == '=').count();
    if trailing < level {
        return None;
    }
    let inner = t[level..t.len() - level].trim().trim_matches('=').trim();
    if inner.is_empty() {
        None
    } else {
        Some(inner.to_string())
    }
}

fn split_sections(text: &str) -> Vec<Section> {
    let mut sections = vec![Section::new("")];
    for line in text.lines() {
        if let Some(h) = heading(line) {
            sections.push(Section::new(&h));
            continue;
        }
        let body = line
            .trim_start_matches(['*', '#', ':', ';', ' ', '\t'])
            .trim();
        if body.is_empty() || body.starts_with('|') || body.starts_with('!') {
            continue;
        }
        let current = sections.last_mut().expect("lead section");
        current.sentences.extend(split_sentences(body));
    }
    sections
}

/// Splits on `.`, `!` or `?` followed by whitespace or end of text. Pieces
/// without any letter or digit are dropped.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (k, &(pos, ch)) in chars.iter().enumerate() {
        if matches!(ch, '.' | '!' | '?') {
            let next_is_break = chars.get(k + 1).is_none_or(|(_, c)| c.is_whitespace());
            if next_is_break {
                push_sentence(&mut out, &text[start..pos + ch.len_utf8()]);
                start = pos + ch.len_utf8();
            }
        }
    }
    push_sentence(&mut out, &text[start..]);
    out
}

fn push_sentence(out: &mut Vec<String>, piece: &str) {
    let t = piece.split_whitespace().collect::<Vec<_>>().join(" ");
    if t.chars().any(char::is_alphanumeric) {
        out.push(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piped_link() {
        let c = clean_wikitext("[[Paris|the capital]]");
        assert_eq!(c.plain_text(), "the capital");
        assert_eq!(
            c.links,
            vec![Link {
                target: "Paris".into(),
                anchor: "the capital".into()
            }]
        );
    }

    #[test]
    fn heading_opens_section() {
        let c = clean_wikitext("Lead text.\n== History ==\nIt was.");
        assert_eq!(c.sections.len(), 2);
        assert_eq!(c.sections[0].heading, "");
        assert_eq!(c.sections[1].heading, "History");
        assert_eq!(c.sections[1].sentences, vec!["It was."]);
    }

    #[test]
    fn drops_noise() {
        let c = clean_wikitext(
            "{{Infobox|a={{b}}}}A cat<ref name=x>cite</ref> sat<ref name=y/>.\n\
             {|\n| cell\n|}\n[[Category:Cats]][[File:C.jpg|thumb|a [[dog]]]]<!-- hidden -->",
        );
        assert_eq!(c.plain_text(), "A cat sat.");
        assert!(c.links.is_empty());
        assert_eq!(c.diagnostics, 0);
    }

    #[test]
    fn unbalanced_is_counted() {
        let c = clean_wikitext("Start {{broken template. End [[dangling");
        assert!(c.diagnostics >= 2);
        assert!(c.plain_text().contains("Start"));
    }

    #[test]
    fn blend_and_title_normalization() {
        let c = clean_wikitext("Many [[domestic_cat]]s here.");
        assert_eq!(c.plain_text(), "Many domestic_cats here.");
        assert_eq!(c.links[0].target, "Domestic cat");
        assert_eq!(normalize_title("  foo_bar#Section"), "Foo bar");
    }

    #[test]
    fn sentences() {
        assert_eq!(
            split_sentences("One. Two! Three? 3.5 stays. ..."),
            vec!["One.", "Two!", "Three?", "3.5 stays."]
        );
    }
}
