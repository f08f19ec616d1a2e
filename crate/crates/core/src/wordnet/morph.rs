//! Inflection fallback: exception lists first, then detachment rules.

use std::collections::HashMap;

use super::Pos;

const NOUN_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

const VERB_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("ed", "e"),
    ("ed", ""),
    ("ing", "e"),
    ("ing", ""),
];

const ADJ_RULES: &[(&str, &str)] = &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")];

/// Candidate base forms for `word`, in rule order, without duplicates.
pub(crate) fn base_forms(
    word: &str,
    pos: Pos,
    exceptions: Option<&HashMap<String, Vec<String>>>,
) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    if let Some(bases) = exceptions.and_then(|e| e.get(word)) {
        out.extend(bases.iter().cloned());
    }
    let rules = match pos {
        Pos::Noun => NOUN_RULES,
        Pos::Verb => VERB_RULES,
        Pos::Adj => ADJ_RULES,
        Pos::Adv => &[],
    };
    for (suffix, replacement) in rules {
        if let Some(stem) = word.strip_suffix(suffix) {
            if stem.is_empty() {
                continue;
            }
            let base = format!("{stem}{replacement}");
            if !out.contains(&base) {
                out.push(base);
            }
        }
    }
    out
}
