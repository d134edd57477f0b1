//! Tokenization and word-frequency tabulation.
//!
//! Two counting strategies produce identical tables: [`count_onepass`] scans
//! one token stream accumulating into a dictionary, and [`count_sharded`]
//! counts each record of a document independently and combines the partial
//! tables with [`merge_tables`]. Because `(FrequencyTable, merge_tables,
//! empty)` is a commutative monoid, the sharded result does not depend on
//! how records are partitioned across workers or in which order partial
//! tables are merged.

use std::collections::HashMap;
use std::thread;

use crate::error::{Error, Result};
use crate::ingest::Document;

/// Whitespace for tokenization purposes: space, TAB, LF, CR.
fn is_separator(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r')
}

/// An ordered list of non-empty tokens borrowed from the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream<'a> {
    tokens: Vec<&'a str>,
}

impl<'a> TokenStream<'a> {
    pub fn tokens(&self) -> &[&'a str] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl<'a, 'b> IntoIterator for &'b TokenStream<'a> {
    type Item = &'a str;
    type IntoIter = std::iter::Copied<std::slice::Iter<'b, &'a str>>;

    fn into_iter(self) -> Self::IntoIter {
        self.tokens.iter().copied()
    }
}

/// Splits text into maximal runs of non-whitespace characters.
///
/// Whitespace here is space, TAB, LF, and CR — exactly the characters the
/// normalization stage turns into spaces, so tokenizing normalized text and
/// tokenizing raw text with embedded newlines agree.
pub fn tokenize(text: &str) -> TokenStream<'_> {
    TokenStream {
        tokens: text.split(is_separator).filter(|t| !t.is_empty()).collect(),
    }
}

/// A mapping from word to occurrence count.
///
/// Stored counts are always ≥ 1 and `total_tokens` always equals their sum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    entries: HashMap<String, u64>,
    total_tokens: u64,
}

/// Orderings for [`FrequencyTable::sorted_view`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortKey {
    /// Ascending lexicographic by code point.
    #[default]
    Alpha,
    /// Descending count, ties broken ascending-alphabetically.
    CountDesc,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from explicit `(word, count)` pairs, summing duplicate
    /// words and skipping zero counts.
    pub fn from_pairs<I, W>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (W, u64)>,
        W: Into<String>,
    {
        let mut table = FrequencyTable::new();
        for (word, count) in pairs {
            if count > 0 {
                *table.entries.entry(word.into()).or_insert(0) += count;
                table.total_tokens += count;
            }
        }
        table
    }

    /// Occurrences of `word`, 0 if absent.
    pub fn get(&self, word: &str) -> u64 {
        self.entries.get(word).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    /// Number of distinct words.
    pub fn distinct_words(&self) -> usize {
        self.entries.len()
    }

    /// Sum of all counts.
    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Iterates entries in unspecified order; use [`Self::sorted_view`] for
    /// deterministic output.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(w, c)| (w.as_str(), *c))
    }

    /// Entries as an ordered list of `(word, count)`.
    pub fn sorted_view(&self, key: SortKey) -> Vec<(&str, u64)> {
        let mut view: Vec<(&str, u64)> = self.iter().collect();
        match key {
            SortKey::Alpha => view.sort_unstable_by(|a, b| a.0.cmp(b.0)),
            SortKey::CountDesc => {
                view.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)))
            }
        }
        view
    }

    fn add(&mut self, word: &str) {
        match self.entries.get_mut(word) {
            Some(count) => *count += 1,
            None => {
                self.entries.insert(word.to_owned(), 1);
            }
        }
        self.total_tokens += 1;
    }

    fn absorb(&mut self, other: FrequencyTable) {
        for (word, count) in other.entries {
            *self.entries.entry(word).or_insert(0) += count;
        }
        self.total_tokens += other.total_tokens;
    }
}

/// Counts a token stream in a single dictionary-accumulation pass.
pub fn count_onepass(tokens: &TokenStream<'_>) -> FrequencyTable {
    let mut table = FrequencyTable::new();
    for token in tokens {
        table.add(token);
    }
    table
}

/// Counts a records-mode document by tabulating each record independently
/// and combining the per-record tables with [`merge_tables`].
///
/// Records are fanned out across up to `jobs` worker threads. The result is
/// identical for every `jobs` value, including 1.
pub fn count_sharded(doc: &Document, jobs: usize) -> Result<FrequencyTable> {
    let records = doc.records().ok_or_else(|| Error::WrongMode {
        source_id: doc.source_id().to_owned(),
        expected: "records",
    })?;
    let jobs = jobs.max(1);
    if jobs == 1 || records.len() < 2 {
        return Ok(count_record_slice(records));
    }
    let chunk_size = records.len().div_ceil(jobs);
    Ok(thread::scope(|scope| {
        let workers: Vec<_> = records
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(|| count_record_slice(chunk)))
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("counting worker panicked"))
            .fold(FrequencyTable::new(), merge_tables)
    }))
}

fn count_record_slice(records: &[String]) -> FrequencyTable {
    records
        .iter()
        .map(|record| count_onepass(&tokenize(record)))
        .fold(FrequencyTable::new(), merge_tables)
}

/// Combines two tables by per-word count sum; `total_tokens` is additive.
///
/// Commutative and associative, with the empty table as identity.
pub fn merge_tables(a: FrequencyTable, b: FrequencyTable) -> FrequencyTable {
    // Absorb the smaller map into the larger; the result is order-independent.
    let (mut big, small) = if a.entries.len() >= b.entries.len() {
        (a, b)
    } else {
        (b, a)
    };
    big.absorb(small);
    big
}
