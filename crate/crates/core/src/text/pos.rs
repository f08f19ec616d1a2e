//! Externally tagged tokens in the token-per-line format
//! `surface<TAB>tag<TAB>lemma`, with a blank line between sentences.

use crate::error::{Error, Result};

const PENN_TAGS: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP", "NNPS",
    "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG",
    "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", "#", "$", ".", ",", ":", "(", ")", "``", "''",
    "-LRB-", "-RRB-",
];

pub fn is_penn_tag(tag: &str) -> bool {
    PENN_TAGS.contains(&tag)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosToken {
    pub surface: String,
    pub lemma: String,
    pub tag: String,
}

impl PosToken {
    pub fn new(surface: &str, tag: &str, lemma: &str) -> Self {
        PosToken {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            tag: tag.to_string(),
        }
    }

    pub fn is_verb(&self) -> bool {
        self.tag.starts_with("VB")
    }

    pub fn is_past_tense(&self) -> bool {
        self.tag == "VBD"
    }
}

/// Which tags survive lemma-based normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosMode {
    /// NN, NNS, NNP, NNPS.
    NounOnly,
    /// Any tag starting with NN, NNP, VB or JJ.
    NounVerbAdj,
}

impl PosMode {
    pub fn keeps(self, tag: &str) -> bool {
        match self {
            PosMode::NounOnly => matches!(tag, "NN" | "NNS" | "NNP" | "NNPS"),
            PosMode::NounVerbAdj => ["NN", "NNP", "VB", "JJ"].iter().any(|p| tag.starts_with(p)),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PosDiagnostics {
    pub unknown_tags: usize,
}

/// Parses one token per line into sentences. `file` labels error messages;
/// `first_line` is the 1-based line number of `text` within that file.
pub fn parse_pos_sentences(text: &str, file: &str, first_line: usize) -> Result<Vec<Vec<PosToken>>> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.push(parse_pos_line(line).ok_or_else(|| {
            Error::parse(file, first_line + i, "expected surface<TAB>tag<TAB>lemma")
        })?);
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

pub(crate) fn parse_pos_line(line: &str) -> Option<PosToken> {
    let mut cols = line.split('\t');
    let surface = cols.next()?;
    let tag = cols.next()?;
    let lemma = cols.next()?;
    if cols.next().is_some() || surface.is_empty() || tag.is_empty() {
        return None;
    }
    Some(PosToken::new(surface, tag, lemma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sentences() {
        let text = "The\tDT\tthe\ncat\tNN\tcat\n\nIt\tPRP\tit\nran\tVBD\trun\n";
        let s = parse_pos_sentences(text, "x", 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1][1], PosToken::new("ran", "VBD", "run"));
        assert!(s[1][1].is_past_tense());
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse_pos_sentences("a\tDT\ta\nbroken\n", "f.pos", 10).unwrap_err();
        assert!(err.to_string().contains("f.pos:11"), "{err}");
    }

    #[test]
    fn mode_tags() {
        assert!(PosMode::NounOnly.keeps("NNPS"));
        assert!(!PosMode::NounOnly.keeps("JJ"));
        assert!(PosMode::NounVerbAdj.keeps("JJR"));
        assert!(PosMode::NounVerbAdj.keeps("VBZ"));
        assert!(!PosMode::NounVerbAdj.keeps("RB"));
    }
}
