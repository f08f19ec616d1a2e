//! On-disk index format, all integers and floats little-endian:
//!
//! ```text
//! magic      8 bytes  "RELMIXIX"
//! version    u32      1
//! metadata   u32 n, then n × (str key, str value)       sorted by key
//! stopwords  str id, u32 n, then n × str                 sorted
//! corpus     u64 distinct terms, u64 postings           before idf pruning
//! concepts   u32 n, then n × (u64 page id, str title)   concept id = position
//! terms      u32 n, then n × (str term, u32 m, m × (u32 concept, f64 weight))
//! ```
//!
//! `str` is a u32 byte length followed by UTF-8 bytes. Identical indexes
//! serialize to identical bytes.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::text::{PipelineMode, StopWords};

use super::{BuildSettings, InvertedIndex, Normalization, SparseVector, TfMode};

pub const MAGIC: &[u8; 8] = b"RELMIXIX";
pub const VERSION: u32 = 1;

struct Writer<W: Write>(W);

impl<W: Write> Writer<W> {
    fn u32(&mut self, v: u32) -> Result<()> {
        Ok(self.0.write_all(&v.to_le_bytes())?)
    }
    fn u64(&mut self, v: u64) -> Result<()> {
        Ok(self.0.write_all(&v.to_le_bytes())?)
    }
    fn f64(&mut self, v: f64) -> Result<()> {
        Ok(self.0.write_all(&v.to_le_bytes())?)
    }
    fn len(&mut self, n: usize) -> Result<()> {
        let n = u32::try_from(n).map_err(|_| Error::IndexFormat("section too large".into()))?;
        self.u32(n)
    }
    fn str(&mut self, s: &str) -> Result<()> {
        self.len(s.len())?;
        Ok(self.0.write_all(s.as_bytes())?)
    }
}

struct Reader<R: Read>(R);

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut b = [0u8; N];
        self.0
            .read_exact(&mut b)
            .map_err(|e| Error::IndexFormat(format!("unexpected end of file: {e}")))?;
        Ok(b)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }
    fn str(&mut self) -> Result<String> {
        let n = self.u32()? as usize;
        let mut buf = vec![0u8; n];
        self.0
            .read_exact(&mut buf)
            .map_err(|e| Error::IndexFormat(format!("unexpected end of file: {e}")))?;
        String::from_utf8(buf).map_err(|_| Error::IndexFormat("invalid UTF-8 string".into()))
    }
}

pub fn write_index<W: Write>(index: &InvertedIndex, out: W) -> Result<()> {
    let mut w = Writer(out);
    w.0.write_all(MAGIC)?;
    w.u32(VERSION)?;
    w.len(index.metadata.len())?;
    for (k, v) in &index.metadata {
        w.str(k)?;
        w.str(v)?;
    }
    w.str(index.stopwords.id())?;
    let words = index.stopwords.sorted_words();
    w.len(words.len())?;
    for word in words {
        w.str(word)?;
    }
    w.u64(index.corpus_terms)?;
    w.u64(index.corpus_postings)?;
    w.len(index.concepts.len())?;
    for (page, title) in &index.concepts {
        w.u64(*page)?;
        w.str(title)?;
    }
    w.len(index.postings.len())?;
    for (term, vector) in &index.postings {
        w.str(term)?;
        w.len(vector.len())?;
        for (c, weight) in vector.entries() {
            w.u32(*c)?;
            w.f64(*weight)?;
        }
    }
    w.0.flush()?;
    Ok(())
}

fn settings_from_metadata(meta: &BTreeMap<String, String>) -> Result<BuildSettings> {
    let get = |k: &str| {
        meta.get(k)
            .ok_or_else(|| Error::IndexFormat(format!("missing metadata key `{k}`")))
    };
    let top_k = match get("top_k")?.as_str() {
        "off" => None,
        v => Some(
            v.parse()
                .map_err(|_| Error::IndexFormat(format!("bad top_k `{v}`")))?,
        ),
    };
    Ok(BuildSettings {
        mode: get("pipeline")?.parse::<PipelineMode>()?,
        tf: TfMode::parse(get("tf")?)?,
        normalization: Normalization::parse(get("normalization")?)?,
        top_k,
    })
}

pub fn read_index<R: Read>(input: R) -> Result<InvertedIndex> {
    let mut r = Reader(input);
    let magic: [u8; 8] = r.bytes()?;
    if &magic != MAGIC {
        return Err(Error::IndexFormat("bad magic bytes".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::IndexFormat(format!("unsupported version {version}")));
    }
    let mut metadata = BTreeMap::new();
    for _ in 0..r.u32()? {
        let k = r.str()?;
        let v = r.str()?;
        metadata.insert(k, v);
    }
    let sw_id = r.str()?;
    let n = r.u32()?;
    let mut words = Vec::with_capacity(n as usize);
    for _ in 0..n {
        words.push(r.str()?);
    }
    let stopwords = StopWords::from_words(&sw_id, words);
    let corpus_terms = r.u64()?;
    let corpus_postings = r.u64()?;
    let n = r.u32()?;
    let mut concepts = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let page = r.u64()?;
        concepts.push((page, r.str()?));
    }
    let mut postings = BTreeMap::new();
    let mut prev: Option<String> = None;
    for _ in 0..r.u32()? {
        let term = r.str()?;
        if prev.as_deref().is_some_and(|p| p >= term.as_str()) {
            return Err(Error::IndexFormat(format!("terms out of order at `{term}`")));
        }
        let m = r.u32()?;
        let mut entries = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let c = r.u32()?;
            let w = r.f64()?;
            if c as usize >= concepts.len() || !(w > 0.0) {
                return Err(Error::IndexFormat(format!("bad posting for `{term}`")));
            }
            if entries.last().is_some_and(|(p, _): &(u32, f64)| *p >= c) {
                return Err(Error::IndexFormat(format!("unsorted postings for `{term}`")));
            }
            entries.push((c, w));
        }
        postings.insert(term.clone(), SparseVector::from_sorted_unchecked(entries));
        prev = Some(term);
    }
    let mut rest = [0u8; 1];
    if r.0.read(&mut rest)? != 0 {
        return Err(Error::IndexFormat("trailing bytes".into()));
    }
    Ok(InvertedIndex {
        settings: settings_from_metadata(&metadata)?,
        stopwords,
        metadata,
        concepts,
        postings,
        corpus_terms,
        corpus_postings,
    })
}

/// Debug export: `term<TAB>conceptId:weight,...`, one term per line.
pub fn write_text_export<W: Write>(index: &InvertedIndex, mut out: W) -> Result<()> {
    for (term, vector) in &index.postings {
        let body: Vec<String> = vector
            .entries()
            .iter()
            .map(|(c, w)| format!("{c}:{w}"))
            .collect();
        writeln!(out, "{term}\t{}", body.join(","))?;
    }
    Ok(())
}
