//! Deterministic synthetic MediaWiki dumps for tests and demos.
//!
//! Words are built from syllables so that no generated word is an English
//! stop word. Word frequencies follow a rough Zipf law, page lengths and
//! link counts vary widely, and a share of pages are redirects or live
//! outside the main namespace.

use std::fmt::Write as _;
use std::io::Write;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::text::StopWords;

const ONSETS: &[&str] = &["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "kr", "st"];
const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];
const CODAS: &[&str] = &["", "n", "r", "l", "x", "m"];

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDump {
    pub pages: usize,
    pub vocabulary: usize,
    pub seed: u64,
    /// Every n-th page is written as a redirect to an earlier article.
    pub redirect_every: usize,
    /// Every n-th page lives in a talk namespace.
    pub talk_every: usize,
    /// Word count range of an article body.
    pub min_words: usize,
    pub max_words: usize,
}

impl Default for SyntheticDump {
    fn default() -> Self {
        SyntheticDump {
            pages: 1000,
            vocabulary: 5000,
            seed: 7,
            redirect_every: 17,
            talk_every: 29,
            min_words: 40,
            max_words: 600,
        }
    }
}

/// The `i`-th synthetic word; distinct for distinct `i`.
pub fn synthetic_word(mut i: usize) -> String {
    let mut w = String::new();
    loop {
        let syl = i % (ONSETS.len() * VOWELS.len());
        w.push_str(ONSETS[syl / VOWELS.len()]);
        w.push_str(VOWELS[syl % VOWELS.len()]);
        i /= ONSETS.len() * VOWELS.len();
        if i == 0 {
            break;
        }
        i -= 1;
    }
    // A coda keeps short words at three letters or more.
    let coda = CODAS[w.len() % CODAS.len()];
    if w.len() < 3 && coda.is_empty() {
        w.push('x');
    } else {
        w.push_str(coda);
    }
    static STOP: OnceLock<StopWords> = OnceLock::new();
    if STOP.get_or_init(StopWords::english).contains(&w) {
        w.push('x');
    }
    w
}

pub fn article_title(i: usize) -> String {
    format!("Topic {i}")
}

impl SyntheticDump {
    /// Number of `<page>` elements `write` emits.
    pub fn page_elements(&self) -> usize {
        self.pages
    }

    fn kind(&self, i: usize) -> PageKind {
        if i > 0 && self.redirect_every > 0 && i % self.redirect_every == 0 {
            PageKind::Redirect
        } else if i > 0 && self.talk_every > 0 && i % self.talk_every == 0 {
            PageKind::Talk
        } else {
            PageKind::Article
        }
    }

    /// Ids (1-based) of the main-namespace, non-redirect pages.
    pub fn article_ids(&self) -> Vec<u64> {
        (0..self.pages)
            .filter(|i| self.kind(*i) == PageKind::Article)
            .map(|i| i as u64 + 1)
            .collect()
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let words: Vec<String> = (0..self.vocabulary.max(1)).map(synthetic_word).collect();
        // Zipf-like cumulative weights.
        let mut cum = Vec::with_capacity(words.len());
        let mut total = 0.0;
        for r in 0..words.len() {
            total += 1.0 / (r as f64 + 1.0);
            cum.push(total);
        }
        let pick = |rng: &mut ChaCha8Rng| {
            let u = rng.gen::<f64>() * total;
            &words[cum.partition_point(|c| *c < u).min(words.len() - 1)]
        };

        writeln!(out, "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" xml:lang=\"en\">")?;
        writeln!(out, "  <siteinfo><sitename>Synthetic</sitename></siteinfo>")?;
        let mut body = String::new();
        for i in 0..self.pages {
            body.clear();
            let kind = self.kind(i);
            let (ns, title) = match kind {
                PageKind::Talk => (1, format!("Talk:{}", article_title(i))),
                _ => (0, article_title(i)),
            };
            let mut redirect = String::new();
            match kind {
                PageKind::Redirect => {
                    let target = article_title(rng.gen_range(0..i));
                    redirect = format!("    <redirect title=\"{target}\" />\n");
                    write!(body, "#REDIRECT [[{target}]]").ok();
                }
                PageKind::Talk | PageKind::Article => {
                    let n_words = rng.gen_range(self.min_words..=self.max_words.max(self.min_words));
                    let n_links = rng.gen_range(0..=n_words / 15);
                    let mut since_stop = 0;
                    for w in 0..n_words {
                        if w > 0 && w % 97 == 0 {
                            write!(body, "\n\n== {} ==\n", pick(&mut rng)).ok();
                        }
                        if rng.gen_ratio(n_links as u32, n_words as u32) {
                            let target = article_title(rng.gen_range(0..self.pages));
                            if rng.gen_bool(0.5) {
                                write!(body, "[[{target}|{}]] ", pick(&mut rng)).ok();
                            } else {
                                write!(body, "[[{target}]] ").ok();
                            }
                        }
                        body.push_str(pick(&mut rng));
                        since_stop += 1;
                        if since_stop > 6 && rng.gen_bool(0.15) {
                            body.push_str(". ");
                            since_stop = 0;
                        } else {
                            body.push(' ');
                        }
                        if rng.gen_ratio(1, 200) {
                            body.push_str("{{cite web|url=http://example.org}} ");
                        }
                        if rng.gen_ratio(1, 300) {
                            body.push_str("<ref>source text</ref> ");
                        }
                    }
                    body.push_str(".\n[[Category:Synthetic]]");
                }
            }
            writeln!(out, "  <page>")?;
            writeln!(out, "    <title>{title}</title>")?;
            writeln!(out, "    <ns>{ns}</ns>")?;
            writeln!(out, "    <id>{}</id>", i + 1)?;
            out.write_all(redirect.as_bytes())?;
            writeln!(out, "    <revision>")?;
            writeln!(out, "      <id>{}</id>", 100_000 + i)?;
            writeln!(
                out,
                "      <text xml:space=\"preserve\">{}</text>",
                body.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
            )?;
            writeln!(out, "    </revision>")?;
            writeln!(out, "  </page>")?;
        }
        writeln!(out, "</mediawiki>")?;
        Ok(())
    }

    pub fn to_string(&self) -> String {
        let mut v = Vec::new();
        self.write(&mut v).expect("writing to memory");
        String::from_utf8(v).expect("generated dump is UTF-8")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PageKind {
    Article,
    Redirect,
    Talk,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn words_are_distinct_and_not_stop_words() {
        let sw = StopWords::english();
        let words: Vec<String> = (0..20_000).map(synthetic_word).collect();
        let set: HashSet<&String> = words.iter().collect();
        assert_eq!(set.len(), words.len());
        assert!(words.iter().all(|w| w.len() >= 3 && !sw.contains(w)));
    }

    #[test]
    fn deterministic() {
        let d = SyntheticDump { pages: 50, ..SyntheticDump::default() };
        assert_eq!(d.to_string(), d.to_string());
        assert_eq!(d.to_string().matches("<page>").count(), 50);
    }
}
