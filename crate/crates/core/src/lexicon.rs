//! Scoring frequency tables against categorized word lists.
//!
//! A lexicon maps category names (e.g. `positive`, `negative`) to word sets.
//! Scores are occurrence-weighted: a word counted five times contributes
//! five to its categories, not one.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::freq::{tokenize, FrequencyTable};
use crate::normalize::{lowercase, strip_punctuation};

/// Named categories, each an exact-match set of normalized words.
///
/// Every stored word is lowercase, punctuation-free, and a single token —
/// the loader normalizes entries with the same pipeline that documents go
/// through, so lookups are exact matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    categories: BTreeMap<String, BTreeSet<String>>,
}

impl Lexicon {
    /// Builds a lexicon from `(word, category)` entries, normalizing each
    /// word and collapsing duplicates.
    ///
    /// `row` in errors is the 1-based position of the offending entry.
    pub fn from_entries<I, W, C>(name: impl Into<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, C)>,
        W: AsRef<str>,
        C: Into<String>,
    {
        let name = name.into();
        let mut categories: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (row, (word, category)) in entries.into_iter().enumerate() {
            let normalized = normalize_entry(word.as_ref(), row + 1, &name)?;
            categories.entry(category.into()).or_default().insert(normalized);
        }
        Ok(Lexicon { name, categories })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The word set of one category, if it exists.
    pub fn category(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.categories.get(name)
    }

    /// Category names in ascending order.
    pub fn category_names(&self) -> impl Iterator<Item = &str> {
        self.categories.keys().map(String::as_str)
    }

    pub fn categories(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.categories
    }
}

fn normalize_entry(word: &str, row: usize, lexicon: &str) -> Result<String> {
    let normalized = strip_punctuation(&lowercase(word));
    let stream = tokenize(&normalized);
    match stream.tokens() {
        [single] => Ok((*single).to_owned()),
        tokens => Err(Error::MultiTokenWord {
            path: Path::new(lexicon).to_path_buf(),
            row,
            word: word.to_owned(),
            tokens: tokens.len(),
        }),
    }
}

/// Loads a lexicon from a two-column CSV file with header `word,category`.
///
/// Duplicate `(word, category)` rows collapse into one entry. Row numbers in
/// errors count data rows, starting at 1 for the row after the header.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => Error::FileNotFound {
                path: path.to_path_buf(),
                source,
            },
            other => Error::MalformedRow {
                path: path.to_path_buf(),
                row: 0,
                reason: format!("{other:?}"),
            },
        })?;

    let headers = reader.headers().map_err(|e| Error::MalformedRow {
        path: path.to_path_buf(),
        row: 0,
        reason: e.to_string(),
    })?;
    let header_fields: Vec<&str> = headers.iter().map(str::trim).collect();
    if header_fields != ["word", "category"] {
        return Err(Error::MalformedRow {
            path: path.to_path_buf(),
            row: 0,
            reason: format!("expected header `word,category`, found {header_fields:?}"),
        });
    }

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());

    let mut categories: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| Error::MalformedRow {
            path: path.to_path_buf(),
            row,
            reason: e.to_string(),
        })?;
        if record.len() != 2 {
            return Err(Error::MalformedRow {
                path: path.to_path_buf(),
                row,
                reason: format!("expected 2 columns, found {}", record.len()),
            });
        }
        let word = record[0].trim();
        let category = record[1].trim();
        let normalized = normalize_entry(word, row, &path.display().to_string())?;
        categories.entry(category.to_owned()).or_default().insert(normalized);
    }
    Ok(Lexicon { name, categories })
}

/// Sums table counts over each category's word set.
///
/// Occurrence-weighted: the result for category `C` is Σ table\[w\] over
/// w ∈ C, with absent words contributing 0.
pub fn category_counts(table: &FrequencyTable, lexicon: &Lexicon) -> BTreeMap<String, u64> {
    lexicon
        .categories
        .iter()
        .map(|(name, words)| {
            let count = words.iter().map(|w| table.get(w)).sum();
            (name.clone(), count)
        })
        .collect()
}

/// Net tone of a document against one positive and one negative category.
#[derive(Debug, Clone, PartialEq)]
pub struct ToneScore {
    /// Occurrence counts for every category of the lexicon.
    pub category_counts: BTreeMap<String, u64>,
    /// `(pos − neg) / (pos + neg)`, or `None` when no positive or negative
    /// word occurred. Kept distinct from 0.0: "no sentiment words" is not
    /// the same observation as "perfectly balanced".
    pub tone: Option<f64>,
    /// Sum of all category counts.
    pub matched_total: u64,
}

/// Scores a table against a lexicon's positive and negative categories.
pub fn tone(
    table: &FrequencyTable,
    lexicon: &Lexicon,
    pos_name: &str,
    neg_name: &str,
) -> Result<ToneScore> {
    for name in [pos_name, neg_name] {
        if lexicon.category(name).is_none() {
            return Err(Error::UnknownCategory {
                lexicon: lexicon.name.clone(),
                name: name.to_owned(),
            });
        }
    }
    let counts = category_counts(table, lexicon);
    let pos = counts[pos_name];
    let neg = counts[neg_name];
    let tone = if pos + neg == 0 {
        None
    } else {
        Some((pos as f64 - neg as f64) / (pos + neg) as f64)
    };
    Ok(ToneScore {
        matched_total: counts.values().sum(),
        category_counts: counts,
        tone,
    })
}

/// For each term set, whether at least one of its words occurs in the table.
pub fn term_hits(table: &FrequencyTable, term_sets: &[HashSet<String>]) -> Vec<bool> {
    term_sets
        .iter()
        .map(|set| set.iter().any(|w| table.get(w) >= 1))
        .collect()
}
