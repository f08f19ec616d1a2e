//! Reader for the WordNet flat database (`data.*`, `index.*`, `*.exc`).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};

use super::{normalize_lemma, Pos, WordnetBuilder, WordnetGraph};

const FILE_STEMS: [(&str, Pos); 4] = [
    ("noun", Pos::Noun),
    ("verb", Pos::Verb),
    ("adj", Pos::Adj),
    ("adv", Pos::Adv),
];

fn synset_key(pos: Pos, offset: &str) -> String {
    format!("{}:{offset}", pos.as_char())
}

/// Parses one `data.*` line into (offset, words, hypernym keys).
pub(crate) fn parse_data_line(line: &str) -> std::result::Result<(String, Pos, Vec<String>, Vec<String>), String> {
    let body = line.split(" | ").next().unwrap_or(line);
    let mut f = body.split_whitespace();
    let mut next = |what: &str| f.next().ok_or_else(|| format!("missing {what}"));
    let offset = next("synset offset")?.to_string();
    if offset.len() != 8 || !offset.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad synset offset `{offset}`"));
    }
    next("lexicographer file number")?;
    let ss_type = next("synset type")?;
    let pos = ss_type
        .chars()
        .next()
        .and_then(Pos::from_char)
        .filter(|_| ss_type.len() == 1)
        .ok_or_else(|| format!("bad synset type `{ss_type}`"))?;
    let w_cnt = next("word count")?;
    let w_cnt = usize::from_str_radix(w_cnt, 16).map_err(|_| format!("bad word count `{w_cnt}`"))?;
    let mut words = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        next("lex id")?;
        // Adjective position markers such as `(a)` or `(ip)`.
        let word = match word.find('(') {
            Some(i) if word.ends_with(')') => &word[..i],
            _ => word,
        };
        words.push(normalize_lemma(word));
    }
    let p_cnt = next("pointer count")?;
    let p_cnt: usize = p_cnt.parse().map_err(|_| format!("bad pointer count `{p_cnt}`"))?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = next("pointer symbol")?;
        let target = next("pointer offset")?;
        let tpos = next("pointer part of speech")?;
        next("pointer source/target")?;
        if symbol == "@" || symbol == "@i" {
            let tpos = tpos
                .chars()
                .next()
                .and_then(Pos::from_char)
                .ok_or_else(|| format!("bad pointer part of speech `{tpos}`"))?;
            hypernyms.push(synset_key(tpos, target));
        }
    }
    Ok((synset_key(pos, &offset), pos, words, hypernyms))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::file(path, e))
}

fn is_license_line(line: &str) -> bool {
    line.starts_with("  ")
}

/// Loads a WordNet database directory. `data.noun` and `data.verb` are
/// required; adjective and adverb files, `index.*` sense orderings and
/// `*.exc` exception lists are used when present.
pub fn load_wordnet(dir: &Path) -> Result<WordnetGraph> {
    let mut builder = WordnetBuilder::new();
    let mut order: HashMap<String, Vec<String>> = HashMap::new();
    let mut have_index = false;
    let mut exceptions = HashMap::new();
    for (stem, pos) in FILE_STEMS {
        let data_path = dir.join(format!("data.{stem}"));
        if !data_path.exists() {
            if matches!(pos, Pos::Noun | Pos::Verb) {
                return Err(Error::file(
                    &data_path,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "missing WordNet data file"),
                ));
            }
            continue;
        }
        let file = data_path.display().to_string();
        for (i, line) in open(&data_path)?.lines().enumerate() {
            let line = line.map_err(|e| Error::file(&data_path, e))?;
            if is_license_line(&line) || line.trim().is_empty() {
                continue;
            }
            let (key, spos, words, hypers) =
                parse_data_line(&line).map_err(|m| Error::parse(&file, i + 1, m))?;
            if spos != pos {
                return Err(Error::parse(&file, i + 1, "synset type does not match file"));
            }
            builder.push_owned(key, spos, words, hypers);
        }

        let index_path = dir.join(format!("index.{stem}"));
        if index_path.exists() {
            have_index = true;
            let file = index_path.display().to_string();
            for (i, line) in open(&index_path)?.lines().enumerate() {
                let line = line.map_err(|e| Error::file(&index_path, e))?;
                if is_license_line(&line) || line.trim().is_empty() {
                    continue;
                }
                let (lemma, keys) =
                    parse_index_line(&line, pos).map_err(|m| Error::parse(&file, i + 1, m))?;
                order.entry(lemma).or_default().extend(keys);
            }
        }

        let exc_path = dir.join(format!("{stem}.exc"));
        if exc_path.exists() {
            let mut table: HashMap<String, Vec<String>> = HashMap::new();
            for line in open(&exc_path)?.lines() {
                let line = line.map_err(|e| Error::file(&exc_path, e))?;
                let mut parts = line.split_whitespace();
                if let Some(inflected) = parts.next() {
                    table
                        .entry(inflected.to_string())
                        .or_default()
                        .extend(parts.map(str::to_string));
                }
            }
            exceptions.insert(pos, table);
        }
    }
    let mut graph = WordnetGraph::from_parts(builder.synsets, have_index.then_some(order))?;
    graph.set_exceptions(exceptions);
    Ok(graph)
}

/// `lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt offsets...`
fn parse_index_line(line: &str, pos: Pos) -> std::result::Result<(String, Vec<String>), String> {
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() < 4 {
        return Err("truncated index line".into());
    }
    let synset_cnt: usize = f[2].parse().map_err(|_| format!("bad synset count `{}`", f[2]))?;
    let p_cnt: usize = f[3].parse().map_err(|_| format!("bad pointer count `{}`", f[3]))?;
    let start = 4 + p_cnt + 2;
    if f.len() < start + synset_cnt {
        return Err("index line lists fewer offsets than declared".into());
    }
    let keys = f[start..start + synset_cnt]
        .iter()
        .map(|o| synset_key(pos, o))
        .collect();
    Ok((normalize_lemma(f[0]), keys))
}
