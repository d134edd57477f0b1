#![forbid(unsafe_code)]

//! A word-frequency and text-metrics toolkit.
//!
//! The library implements a deterministic ingest → lowercase → de-punctuate →
//! tokenize → count pipeline with two equivalent counting strategies (a
//! one-pass dictionary scan over a whole buffer, and per-record counting
//! merged shard-by-shard), plus the downstream constructions built on word
//! counts: lexicon-based tone scoring, count/binary/TF-IDF document vectors
//! with cosine similarity, and a per-stage timing harness.
//!
//! All operations are pure functions over immutable inputs; results never
//! depend on thread count or hash-map iteration order.

pub mod error;
pub mod freq;
pub mod ingest;
pub mod lexicon;
pub mod normalize;
pub mod timing;
pub mod vectorize;

pub use error::{Error, Result};
pub use freq::{
    count_onepass, count_sharded, merge_tables, tokenize, FrequencyTable, SortKey, TokenStream,
};
pub use ingest::{read_records, read_text, Document, DocumentContent, DocumentMode};
pub use lexicon::{
    category_counts, load_lexicon, term_hits, tone, Lexicon, ToneScore,
};
pub use normalize::{
    lowercase, nfc, strip_punctuation, strip_punctuation_with, NormalizeOptions, PunctPreset,
};
pub use timing::{
    format_report, format_report_json, parse_report_json, run_bench, BenchReport, CountMode,
    Stage, StageTiming,
};
pub use vectorize::{
    binary_vector, build_vocabulary, cosine, count_vector, tfidf_weight, DocumentVector,
    VectorKind, Vocabulary,
};
