//! Reading text files into documents.
//!
//! A file can be ingested two ways: as one whole buffer, or as an ordered
//! list of records (one per line). Both carry the same text; the split only
//! decides which counting strategy applies downstream.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Which shape a [`Document`] holds its text in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentMode {
    WholeBuffer,
    Records,
}

/// The text content of a document, in exactly one of the two shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentContent {
    WholeBuffer(String),
    /// One record per source line. Records never contain `\n` or a trailing `\r`.
    Records(Vec<String>),
}

/// Raw text plus source metadata.
///
/// Immutable after construction and safe to share between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    source_id: String,
    content: DocumentContent,
    byte_len: u64,
    replaced_sequences: usize,
}

impl Document {
    /// Builds a whole-buffer document from in-memory text.
    pub fn from_buffer(source_id: impl Into<String>, buffer: impl Into<String>) -> Self {
        let buffer = buffer.into();
        let byte_len = buffer.len() as u64;
        Document {
            source_id: source_id.into(),
            content: DocumentContent::WholeBuffer(buffer),
            byte_len,
            replaced_sequences: 0,
        }
    }

    /// Builds a records-mode document from in-memory records.
    ///
    /// Panics if any record contains a line terminator, which would make the
    /// record list ambiguous.
    pub fn from_records(source_id: impl Into<String>, records: Vec<String>) -> Self {
        assert!(
            records.iter().all(|r| !r.contains(['\n', '\r'])),
            "records must not contain line terminators"
        );
        // Canonical on-disk size: every record followed by one LF.
        let byte_len = records.iter().map(|r| r.len() as u64 + 1).sum();
        Document {
            source_id: source_id.into(),
            content: DocumentContent::Records(records),
            byte_len,
            replaced_sequences: 0,
        }
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn mode(&self) -> DocumentMode {
        match self.content {
            DocumentContent::WholeBuffer(_) => DocumentMode::WholeBuffer,
            DocumentContent::Records(_) => DocumentMode::Records,
        }
    }

    pub fn content(&self) -> &DocumentContent {
        &self.content
    }

    /// The whole-buffer text, if this document is in whole-buffer mode.
    pub fn buffer(&self) -> Option<&str> {
        match &self.content {
            DocumentContent::WholeBuffer(b) => Some(b),
            DocumentContent::Records(_) => None,
        }
    }

    /// The record list, if this document is in records mode.
    pub fn records(&self) -> Option<&[String]> {
        match &self.content {
            DocumentContent::Records(r) => Some(r),
            DocumentContent::WholeBuffer(_) => None,
        }
    }

    /// Total size in bytes of the text content read.
    pub fn byte_len(&self) -> u64 {
        self.byte_len
    }

    /// How many invalid UTF-8 byte sequences were replaced during decoding.
    pub fn replaced_sequences(&self) -> usize {
        self.replaced_sequences
    }
}

/// Reads a file into a single whole-text buffer.
///
/// Decoding is UTF-8 with each invalid byte sequence replaced by U+FFFD; the
/// number of replacements is recorded on the document rather than treated as
/// an error.
pub fn read_text(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    let (text, replaced) = decode_utf8_lossy_counted(&bytes);
    Ok(Document {
        source_id: path.display().to_string(),
        content: DocumentContent::WholeBuffer(text),
        byte_len: bytes.len() as u64,
        replaced_sequences: replaced,
    })
}

/// Reads a file as an ordered list of records, one per line.
///
/// Lines are split on LF with a trailing CR stripped from each record. A
/// final empty record produced by a terminating newline is dropped; empty
/// interior lines are kept.
pub fn read_records(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    let (text, replaced) = decode_utf8_lossy_counted(&bytes);
    Ok(Document {
        source_id: path.display().to_string(),
        content: DocumentContent::Records(split_records(&text)),
        byte_len: bytes.len() as u64,
        replaced_sequences: replaced,
    })
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::FileNotFound {
        path: path.to_path_buf(),
        source,
    })
}

/// Splits text into line records per the rules of [`read_records`].
pub fn split_records(text: &str) -> Vec<String> {
    if text.is_empty() {
        return Vec::new();
    }
    let mut records: Vec<String> = text
        .split('\n')
        .map(|line| line.strip_suffix('\r').unwrap_or(line).to_owned())
        .collect();
    if text.ends_with('\n') {
        records.pop();
    }
    records
}

/// UTF-8 decode that replaces invalid sequences with U+FFFD and counts them.
fn decode_utf8_lossy_counted(bytes: &[u8]) -> (String, usize) {
    match std::str::from_utf8(bytes) {
        Ok(s) => (s.to_owned(), 0),
        Err(_) => {
            let mut out = String::with_capacity(bytes.len());
            let mut replaced = 0;
            let mut rest = bytes;
            loop {
                match std::str::from_utf8(rest) {
                    Ok(s) => {
                        out.push_str(s);
                        break;
                    }
                    Err(e) => {
                        let valid = e.valid_up_to();
                        out.push_str(std::str::from_utf8(&rest[..valid]).expect("validated"));
                        out.push(char::REPLACEMENT_CHARACTER);
                        replaced += 1;
                        let skip = e.error_len().unwrap_or(rest.len() - valid);
                        rest = &rest[valid + skip..];
                    }
                }
            }
            (out, replaced)
        }
    }
}
