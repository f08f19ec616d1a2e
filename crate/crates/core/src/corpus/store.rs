//! Intermediate page store: one JSON object per line, UTF-8.
//!
//! Field order is fixed: `id`, `title`, `namespace`, `sections` (each with
//! `heading`, `sentences` and, when known, `past_tense_ratio`), `links`
//! (`target`, `anchor`), `anchors_in`, `links_in`, `links_out`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::Page;

pub fn write_pages<'a, W: Write>(out: &mut W, pages: impl IntoIterator<Item = &'a Page>) -> Result<()> {
    for page in pages {
        serde_json::to_writer(&mut *out, page).map_err(|e| Error::Invalid(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Streams pages back; blank lines are ignored.
pub fn read_pages<R: BufRead>(input: R, file: &str) -> impl Iterator<Item = Result<Page>> {
    let file = file.to_string();
    input.lines().enumerate().filter_map(move |(i, line)| match line {
        Err(e) => Some(Err(Error::file(&file, e))),
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(serde_json::from_str(&l).map_err(|e| Error::parse(&file, i + 1, e.to_string()))),
    })
}
