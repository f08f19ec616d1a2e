//! Streaming reader for MediaWiki XML exports.
//!
//! Yields one [`DumpRecord`] per `<page>` element while holding at most one
//! page in memory. Only the first revision's text is read.

use std::io::BufRead;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::error::{Error, Result};

/// A raw `<page>` element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DumpRecord {
    pub id: u64,
    pub title: String,
    pub namespace: i64,
    /// Target title when the page is a redirect.
    pub redirect: Option<String>,
    pub text: String,
}

impl DumpRecord {
    pub fn is_redirect(&self) -> bool {
        self.redirect.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    None,
    Title,
    Ns,
    Id,
    Text,
}

pub struct DumpReader<R: BufRead> {
    reader: Reader<R>,
    buf: Vec<u8>,
    depth: usize,
    pages: usize,
    finished: bool,
}

impl<R: BufRead> DumpReader<R> {
    pub fn new(input: R) -> Self {
        let mut reader = Reader::from_reader(input);
        reader.config_mut().check_end_names = true;
        DumpReader {
            reader,
            buf: Vec::with_capacity(64 * 1024),
            depth: 0,
            pages: 0,
            finished: false,
        }
    }

    /// Complete pages yielded so far.
    pub fn pages_read(&self) -> usize {
        self.pages
    }

    fn xml_error(&self, err: impl std::fmt::Display) -> Error {
        Error::Xml {
            offset: self.reader.error_position(),
            message: err.to_string(),
        }
    }

    fn truncated(&self) -> Error {
        Error::TruncatedDump {
            pages: self.pages,
            offset: self.reader.buffer_position(),
        }
    }

    fn redirect_title(&self, e: &BytesStart<'_>) -> Result<String> {
        match e.try_get_attribute("title").map_err(|err| self.xml_error(err))? {
            Some(attr) => Ok(attr
                .unescape_value()
                .map_err(|err| self.xml_error(err))?
                .into_owned()),
            None => Ok(String::new()),
        }
    }

    fn read_page(&mut self) -> Result<DumpRecord> {
        let page_depth = self.depth;
        let mut record = DumpRecord::default();
        let mut field = Field::None;
        let mut id_seen = false;
        let mut text_seen = false;
        let mut revision_depth = None;
        let mut scratch = String::new();
        loop {
            self.buf.clear();
            let event = match self.reader.read_event_into(&mut self.buf) {
                Ok(ev) => ev.into_owned(),
                Err(err) => return Err(self.xml_error(err)),
            };
            match event {
                Event::Start(e) => {
                    self.depth += 1;
                    let direct_child = self.depth == page_depth + 1;
                    field = match e.local_name().as_ref() {
                        b"title" if direct_child => Field::Title,
                        b"ns" if direct_child => Field::Ns,
                        b"id" if direct_child && !id_seen => Field::Id,
                        b"text" if revision_depth.is_some() && !text_seen => Field::Text,
                        b"revision" if direct_child => {
                            revision_depth = Some(self.depth);
                            Field::None
                        }
                        b"redirect" if direct_child => {
                            record.redirect = Some(self.redirect_title(&e)?);
                            Field::None
                        }
                        _ => Field::None,
                    };
                    scratch.clear();
                }
                Event::Empty(e) => {
                    if e.local_name().as_ref() == b"redirect" && self.depth == page_depth {
                        record.redirect = Some(self.redirect_title(&e)?);
                    }
                }
                Event::Text(t) => {
                    if field != Field::None {
                        scratch.push_str(&t.unescape().map_err(|err| self.xml_error(err))?);
                    }
                }
                Event::CData(t) => {
                    if field != Field::None {
                        scratch.push_str(&String::from_utf8_lossy(&t));
                    }
                }
                Event::End(e) => {
                    match field {
                        Field::Title => record.title = std::mem::take(&mut scratch),
                        Field::Ns => {
                            record.namespace = scratch.trim().parse().map_err(|_| Error::Xml {
                                offset: self.reader.buffer_position(),
                                message: format!("bad <ns> value `{scratch}`"),
                            })?
                        }
                        Field::Id => {
                            record.id = scratch.trim().parse().map_err(|_| Error::Xml {
                                offset: self.reader.buffer_position(),
                                message: format!("bad <id> value `{scratch}`"),
                            })?;
                            id_seen = true;
                        }
                        Field::Text => {
                            record.text = std::mem::take(&mut scratch);
                            text_seen = true;
                        }
                        Field::None => {}
                    }
                    field = Field::None;
                    if revision_depth == Some(self.depth) && e.local_name().as_ref() == b"revision" {
                        revision_depth = None;
                    }
                    self.depth -= 1;
                    if self.depth < page_depth {
                        return Ok(record);
                    }
                }
                Event::Eof => return Err(self.truncated()),
                _ => {}
            }
        }
    }
}

impl<R: BufRead> Iterator for DumpReader<R> {
    type Item = Result<DumpRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        loop {
            self.buf.clear();
            let event = match self.reader.read_event_into(&mut self.buf) {
                Ok(ev) => ev,
                Err(err) => {
                    self.finished = true;
                    return Some(Err(self.xml_error(err)));
                }
            };
            match event {
                Event::Start(e) => {
                    self.depth += 1;
                    if e.local_name().as_ref() == b"page" {
                        let result = self.read_page();
                        match result {
                            Ok(record) => {
                                self.pages += 1;
                                return Some(Ok(record));
                            }
                            Err(err) => {
                                self.finished = true;
                                return Some(Err(err));
                            }
                        }
                    }
                }
                Event::End(_) => self.depth -= 1,
                Event::Eof => {
                    self.finished = true;
                    if self.depth > 0 {
                        return Some(Err(self.truncated()));
                    }
                    return None;
                }
                _ => {}
            }
        }
    }
}
