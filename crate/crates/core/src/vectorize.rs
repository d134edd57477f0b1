//! Document vectors over a shared vocabulary, TF-IDF weighting, and cosine
//! similarity.
//!
//! Vectors are dense `f64` slices whose coordinates follow the vocabulary's
//! sorted word order. All floating-point accumulation runs in ascending
//! index order, so results are bit-reproducible across runs and thread
//! counts.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freq::FrequencyTable;

/// An ordered shared coordinate system: unique words, ascending by code
/// point, with a reverse index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }
}

/// Builds the sorted union of all words appearing in any table.
pub fn build_vocabulary(tables: &[FrequencyTable]) -> Arc<Vocabulary> {
    let unique: BTreeSet<&str> = tables
        .iter()
        .flat_map(|t| t.iter().map(|(w, _)| w))
        .collect();
    let words: Vec<String> = unique.into_iter().map(str::to_owned).collect();
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Arc::new(Vocabulary { words, index })
}

/// How a document vector's entries were derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorKind {
    /// Raw occurrence counts.
    Count,
    /// Presence indicators in {0, 1}.
    Binary,
    /// Length-normalized term frequency × smoothed inverse document frequency.
    TfIdf,
}

/// A dense numeric vector over one shared [`Vocabulary`].
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentVector {
    vocab: Arc<Vocabulary>,
    values: Vec<f64>,
    kind: VectorKind,
}

impl DocumentVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn same_vocabulary(a: &DocumentVector, b: &DocumentVector) -> bool {
    Arc::ptr_eq(&a.vocab, &b.vocab) || a.vocab == b.vocab
}

fn place(table: &FrequencyTable, vocab: &Arc<Vocabulary>) -> Result<Vec<f64>> {
    let mut values = vec![0.0; vocab.len()];
    for (word, count) in table.iter() {
        match vocab.index_of(word) {
            Some(i) => values[i] = count as f64,
            None => {
                return Err(Error::OutOfVocabulary {
                    word: word.to_owned(),
                })
            }
        }
    }
    Ok(values)
}

/// Places a table's counts into vocabulary order.
///
/// A table word missing from the vocabulary is an error: it means the
/// vocabulary was built from a different corpus.
pub fn count_vector(table: &FrequencyTable, vocab: &Arc<Vocabulary>) -> Result<DocumentVector> {
    Ok(DocumentVector {
        vocab: Arc::clone(vocab),
        values: place(table, vocab)?,
        kind: VectorKind::Count,
    })
}

/// As [`count_vector`], with every present word clamped to 1.
pub fn binary_vector(table: &FrequencyTable, vocab: &Arc<Vocabulary>) -> Result<DocumentVector> {
    let mut values = place(table, vocab)?;
    for v in &mut values {
        if *v > 0.0 {
            *v = 1.0;
        }
    }
    Ok(DocumentVector {
        vocab: Arc::clone(vocab),
        values,
        kind: VectorKind::Binary,
    })
}

/// Reweights count vectors by TF-IDF.
///
/// `tf(d, i)` is the count divided by the document's total count (0 for an
/// empty document); `idf(i) = ln((1 + N) / (1 + df(i))) + 1`, where `df(i)`
/// counts the documents in which word `i` occurs. The smoothing keeps every
/// idf strictly positive, so ubiquitous terms are dampened but never erased.
pub fn tfidf_weight(vectors: &[DocumentVector]) -> Result<Vec<DocumentVector>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    for v in vectors {
        if v.kind != VectorKind::Count {
            return Err(Error::WrongKind {
                expected: VectorKind::Count,
                found: v.kind,
            });
        }
        if !same_vocabulary(first, v) {
            return Err(Error::MixedVocabulary);
        }
    }

    let n_docs = vectors.len() as f64;
    let width = first.values.len();
    let mut idf = vec![0.0; width];
    for (i, weight) in idf.iter_mut().enumerate() {
        let df = vectors.iter().filter(|v| v.values[i] > 0.0).count() as f64;
        *weight = ((1.0 + n_docs) / (1.0 + df)).ln() + 1.0;
    }

    Ok(vectors
        .iter()
        .map(|v| {
            let total: f64 = v.values.iter().sum();
            let values = v
                .values
                .iter()
                .zip(&idf)
                .map(|(&count, &idf)| {
                    if total == 0.0 {
                        0.0
                    } else {
                        (count / total) * idf
                    }
                })
                .collect();
            DocumentVector {
                vocab: Arc::clone(&v.vocab),
                values,
                kind: VectorKind::TfIdf,
            }
        })
        .collect())
}

/// Cosine similarity: `dot(a, b) / (‖a‖₂ ‖b‖₂)`.
///
/// Returns `Ok(None)` when either vector has zero norm — an empty document
/// has no direction, which is not the same as being orthogonal.
pub fn cosine(a: &DocumentVector, b: &DocumentVector) -> Result<Option<f64>> {
    if !same_vocabulary(a, b) {
        return Err(Error::MixedVocabulary);
    }
    if a.kind != b.kind {
        return Err(Error::MixedKind {
            a: a.kind,
            b: b.kind,
        });
    }
    let mut dot = 0.0;
    let mut norm_a = 0.0;
    let mut norm_b = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        dot += x * y;
        norm_a += x * x;
        norm_b += y * y;
    }
    if norm_a == 0.0 || norm_b == 0.0 {
        return Ok(None);
    }
    // Entries are non-negative, so the true value lies in [0, 1]; clamp the
    // ulp-level float overshoot (e.g. self-similarity at 1.0000000000000002).
    Ok(Some((dot / (norm_a.sqrt() * norm_b.sqrt())).min(1.0)))
}
