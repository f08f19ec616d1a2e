//! The Porter (1980) suffix-stripping stemmer, original rule set.
//!
//! Operates on lowercase words. Within each rule list the first rule whose
//! suffix matches (longest suffix first) is the only one considered; if its
//! condition fails the step leaves the word alone.

use std::sync::OnceLock;

/// Stems a lowercase word with a single pass of the algorithm.
pub fn stem(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    step1a(&mut w);
    if w.is_empty() {
        return String::new();
    }
    step1b(&mut w);
    step1c(&mut w);
    step2(&mut w);
    step3(&mut w);
    step4(&mut w);
    step5a(&mut w);
    step5b(&mut w);
    w.into_iter().collect()
}

/// Applies [`stem`] `passes` times.
pub fn stem_n(word: &str, passes: usize) -> String {
    let mut out = word.to_string();
    for _ in 0..passes {
        out = stem(&out);
    }
    out
}

fn is_consonant(w: &[char], i: usize) -> bool {
    match w[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => false,
        'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// m in [C](VC)^m[V] for the prefix `w`.
fn measure(w: &[char]) -> usize {
    let n = w.len();
    let mut i = 0;
    while i < n && is_consonant(w, i) {
        i += 1;
    }
    let mut m = 0;
    loop {
        while i < n && !is_consonant(w, i) {
            i += 1;
        }
        if i >= n {
            return m;
        }
        while i < n && is_consonant(w, i) {
            i += 1;
        }
        m += 1;
        if i >= n {
            return m;
        }
    }
}

fn has_vowel(w: &[char]) -> bool {
    (0..w.len()).any(|i| !is_consonant(w, i))
}

fn ends_double_consonant(w: &[char]) -> bool {
    let n = w.len();
    n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1)
}

/// *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
fn ends_cvc(w: &[char]) -> bool {
    let n = w.len();
    n >= 3
        && is_consonant(w, n - 3)
        && !is_consonant(w, n - 2)
        && is_consonant(w, n - 1)
        && !matches!(w[n - 1], 'w' | 'x' | 'y')
}

/// Suffixes are ASCII, so byte length equals char count.
fn ends_with(w: &[char], suffix: &str) -> bool {
    let n = suffix.len();
    w.len() >= n && w[w.len() - n..].iter().zip(suffix.chars()).all(|(a, b)| *a == b)
}

fn replace_suffix(w: &mut Vec<char>, suffix_len: usize, replacement: &str) {
    w.truncate(w.len() - suffix_len);
    w.extend(replacement.chars());
}

/// Applies the first rule in `rules` whose suffix matches, provided the stem
/// satisfies `cond`. Returns true if some suffix matched.
fn apply_rules(
    w: &mut Vec<char>,
    rules: &[(&str, &str)],
    cond: impl Fn(&[char], &str) -> bool,
) -> bool {
    for (suffix, repl) in rules {
        if ends_with(w, suffix) {
            let stem_len = w.len() - suffix.chars().count();
            if cond(&w[..stem_len], suffix) {
                replace_suffix(w, suffix.chars().count(), repl);
            }
            return true;
        }
    }
    false
}

fn step1a(w: &mut Vec<char>) {
    apply_rules(
        w,
        &[("sses", "ss"), ("ies", "i"), ("ss", "ss"), ("s", "")],
        |_, _| true,
    );
}

fn step1b(w: &mut Vec<char>) {
    if ends_with(w, "eed") {
        if measure(&w[..w.len() - 3]) > 0 {
            w.pop();
        }
        return;
    }
    let removed = ["ed", "ing"].iter().any(|suffix| {
        let len = suffix.len();
        if ends_with(w, suffix) && has_vowel(&w[..w.len() - len]) {
            w.truncate(w.len() - len);
            true
        } else {
            false
        }
    });
    if !removed {
        return;
    }
    if ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz") {
        w.push('e');
    } else if ends_double_consonant(w) && !matches!(w[w.len() - 1], 'l' | 's' | 'z') {
        w.pop();
    } else if measure(w) == 1 && ends_cvc(w) {
        w.push('e');
    }
}

fn step1c(w: &mut Vec<char>) {
    let n = w.len();
    if w[n - 1] == 'y' && has_vowel(&w[..n - 1]) {
        w[n - 1] = 'i';
    }
}

const STEP2: &[(&str, &str)] = &[
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
];

const STEP3: &[(&str, &str)] = &[
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
];

const STEP4: &[&str] = &[
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ion", "ou",
    "ism", "ate", "iti", "ous", "ive", "ize",
];

fn longest_first(rules: &[(&'static str, &'static str)]) -> Vec<(&'static str, &'static str)> {
    let mut rules = rules.to_vec();
    rules.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
    rules
}

fn step2(w: &mut Vec<char>) {
    static RULES: OnceLock<Vec<(&str, &str)>> = OnceLock::new();
    let rules = RULES.get_or_init(|| longest_first(STEP2));
    apply_rules(w, rules, |stem, _| measure(stem) > 0);
}

fn step3(w: &mut Vec<char>) {
    static RULES: OnceLock<Vec<(&str, &str)>> = OnceLock::new();
    let rules = RULES.get_or_init(|| longest_first(STEP3));
    apply_rules(w, rules, |stem, _| measure(stem) > 0);
}

fn step4(w: &mut Vec<char>) {
    static RULES: OnceLock<Vec<(&str, &str)>> = OnceLock::new();
    let rules = RULES.get_or_init(|| {
        let plain: Vec<(&str, &str)> = STEP4.iter().map(|s| (*s, "")).collect();
        longest_first(&plain)
    });
    apply_rules(w, rules, |stem, suffix| {
        if measure(stem) <= 1 {
            return false;
        }
        if suffix == "ion" {
            matches!(stem.last(), Some('s') | Some('t'))
        } else {
            true
        }
    });
}

fn step5a(w: &mut Vec<char>) {
    if w.last() == Some(&'e') {
        let stem = &w[..w.len() - 1];
        let m = measure(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            w.pop();
        }
    }
}

fn step5b(w: &mut Vec<char>) {
    if measure(w) > 1 && ends_double_consonant(w) && w.last() == Some(&'l') {
        w.pop();
    }
}
