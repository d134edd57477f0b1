//! Crate-wide error type.

use std::path::PathBuf;

use crate::vectorize::VectorKind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The path is missing or unreadable.
    #[error("cannot read {path}")]
    FileNotFound {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A document was passed to an operation that requires the other mode.
    #[error("document {source_id} is not in {expected} mode")]
    WrongMode {
        source_id: String,
        expected: &'static str,
    },

    /// A lexicon row did not have exactly `word,category` columns.
    #[error("{path}: row {row}: {reason}")]
    MalformedRow {
        path: PathBuf,
        row: usize,
        reason: String,
    },

    /// A lexicon word does not normalize to exactly one token.
    #[error("{path}: row {row}: word {word:?} normalizes to {tokens} tokens, expected 1")]
    MultiTokenWord {
        path: PathBuf,
        row: usize,
        word: String,
        tokens: usize,
    },

    /// A category name was requested that the lexicon does not define.
    #[error("lexicon {lexicon:?} has no category {name:?}")]
    UnknownCategory { lexicon: String, name: String },

    /// A frequency table contains a word the vocabulary was not built from.
    #[error("word {word:?} is not in the vocabulary")]
    OutOfVocabulary { word: String },

    /// Vectors built against different vocabularies were combined.
    #[error("vectors were built against different vocabularies")]
    MixedVocabulary,

    /// Vectors of different kinds were compared.
    #[error("cannot compare a {a:?} vector with a {b:?} vector")]
    MixedKind { a: VectorKind, b: VectorKind },

    /// An operation received a vector of the wrong kind.
    #[error("expected a {expected:?} vector, found {found:?}")]
    WrongKind {
        expected: VectorKind,
        found: VectorKind,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
