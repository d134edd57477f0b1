//! Acceptance suite: one test per shipped guarantee, library and binary.
//!
//! Each test prints as its own pass/fail line; run with
//! `cargo test -p textmetrics-cli --test acceptance`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use textmetrics::{
    count_onepass, count_sharded, lowercase, merge_tables, read_records, read_text, run_bench,
    strip_punctuation, tokenize, tone, CountMode, Document, FrequencyTable, Lexicon, SortKey,
    Stage,
};

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/hamlet.txt")
}

fn manifest_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json")
}

fn normalize(text: &str) -> String {
    strip_punctuation(&lowercase(text))
}

fn pipeline_table(text: &str) -> FrequencyTable {
    count_onepass(&tokenize(&normalize(text)))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_textmetrics"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let output = cmd.output().expect("binary runs");
    assert!(
        output.status.success(),
        "command failed: {:?}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

/// Sharded counting (any worker count) and one-pass counting produce
/// key-by-key identical tables on the bundled corpus.
#[test]
fn c1_cross_algorithm_equivalence() {
    let whole = read_text(corpus_path()).unwrap();
    let onepass = pipeline_table(whole.buffer().unwrap());
    assert!(onepass.total_tokens() > 0);

    let records_doc = read_records(corpus_path()).unwrap();
    let normalized: Vec<String> = records_doc
        .records()
        .unwrap()
        .iter()
        .map(|r| normalize(r))
        .collect();
    let sharded_input = Document::from_records("hamlet", normalized);

    for jobs in [1, 4] {
        let sharded = count_sharded(&sharded_input, jobs).unwrap();
        assert_eq!(sharded, onepass, "jobs = {jobs}");
        assert_eq!(
            sharded.sorted_view(SortKey::Alpha),
            onepass.sorted_view(SortKey::Alpha),
            "jobs = {jobs}"
        );
    }
}

/// The bundled corpus is byte-pinned and its record count equals the
/// line count recorded in the fixture manifest at fixture-creation time.
#[test]
fn c2_record_count_matches_pinned_fixture() {
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest_path()).unwrap()).unwrap();
    let bytes = std::fs::read(corpus_path()).unwrap();

    // The file is the pinned one.
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, manifest["sha256"].as_str().unwrap());
    assert_eq!(bytes.len() as u64, manifest["byte_len"].as_u64().unwrap());

    // Independent line-count oracle: LF count plus a final unterminated line.
    let lf = bytes.iter().filter(|&&b| b == b'\n').count() as u64;
    let oracle = lf + u64::from(!bytes.is_empty() && *bytes.last().unwrap() != b'\n');
    assert_eq!(oracle, manifest["line_count"].as_u64().unwrap());

    let doc = read_records(corpus_path()).unwrap();
    assert_eq!(doc.records().unwrap().len() as u64, oracle);
    assert_eq!(doc.byte_len(), bytes.len() as u64);
}

fn random_text(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    // Letters, digits, the full punctuation set, whitespace, and two
    // already-lowercase non-ASCII letters.
    const POOL: &[char] = &[
        'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'Z', 'Y', 'X', 'W', 'Q', 'M', '0', '7', '!', '"',
        '#', '$', '%', '&', '\'', '(', ')', '*', '+', ',', '-', '.', '/', ':', ';', '<', '=', '>',
        '?', '@', '[', '\\', ']', '^', '_', '`', '{', '|', '}', '~', ' ', ' ', ' ', ' ', '\t',
        '\n', '\u{e9}', '\u{df}',
    ];
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *POOL.choose(rng).unwrap()).collect()
}

/// Independent end-to-end oracle: its own normalization rules, its own
/// token scanner, and a quadratic count.
fn oracle_counts(text: &str) -> Vec<(String, u64)> {
    const ORACLE_PUNCT: [char; 32] = [
        '!', '"', '#', '$', '%', '&', '\'', '(', ')', '*', '+', ',', '-', '.', '/', ':', ';', '<',
        '=', '>', '?', '@', '[', '\\', ']', '^', '_', '`', '{', '|', '}', '~',
    ];
    let mut words: Vec<String> = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        let c = c.to_ascii_lowercase();
        if c == ' ' || c == '\t' || c == '\n' || c == '\r' || ORACLE_PUNCT.contains(&c) {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
        } else {
            current.push(c);
        }
    }
    if !current.is_empty() {
        words.push(current);
    }

    let mut table: Vec<(String, u64)> = Vec::new();
    for word in &words {
        if table.iter().any(|(seen, _)| seen == word) {
            continue;
        }
        let count = words.iter().filter(|w| *w == word).count() as u64;
        table.push((word.clone(), count));
    }
    table
}

/// On 1,000 random strings the full pipeline agrees exactly with the
/// quadratic oracle.
#[test]
fn c3_pipeline_matches_quadratic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for case in 0..1000 {
        let text = random_text(&mut rng, 200);
        let table = pipeline_table(&text);
        let oracle = oracle_counts(&text);

        assert_eq!(table.distinct_words(), oracle.len(), "case {case}: {text:?}");
        let mut total = 0;
        for (word, count) in &oracle {
            assert_eq!(table.get(word), *count, "case {case}: word {word:?} in {text:?}");
            total += count;
        }
        assert_eq!(table.total_tokens(), total, "case {case}");
    }
}

fn random_table(rng: &mut ChaCha8Rng) -> FrequencyTable {
    let n = rng.gen_range(0..30);
    let tokens: Vec<String> = (0..n).map(|_| format!("w{}", rng.gen_range(0..10))).collect();
    let text = tokens.join(" ");
    count_onepass(&tokenize(&text))
}

/// Merging is a commutative monoid (500 random triples, checked against a
/// brute-force multiset union) and counting is invariant under 100 random
/// re-partitions of a token stream.
#[test]
fn c4_merge_monoid_and_sharding_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);

    for case in 0..500 {
        let a = random_table(&mut rng);
        let b = random_table(&mut rng);
        let c = random_table(&mut rng);

        let ab_c = merge_tables(merge_tables(a.clone(), b.clone()), c.clone());
        let a_bc = merge_tables(a.clone(), merge_tables(b.clone(), c.clone()));
        assert_eq!(ab_c, a_bc, "associativity, case {case}");

        assert_eq!(
            merge_tables(a.clone(), b.clone()),
            merge_tables(b.clone(), a.clone()),
            "commutativity, case {case}"
        );

        assert_eq!(
            merge_tables(a.clone(), FrequencyTable::new()),
            a,
            "identity, case {case}"
        );

        // Brute-force multiset union.
        let mut expected: HashMap<String, u64> = HashMap::new();
        for table in [&a, &b, &c] {
            for (word, count) in table.iter() {
                *expected.entry(word.to_owned()).or_insert(0) += count;
            }
        }
        assert_eq!(ab_c.distinct_words(), expected.len(), "case {case}");
        for (word, count) in &expected {
            assert_eq!(ab_c.get(word), *count, "case {case}: word {word}");
        }
    }

    for case in 0..100 {
        let n = rng.gen_range(0..60);
        let tokens: Vec<String> = (0..n).map(|_| format!("w{}", rng.gen_range(0..8))).collect();
        let whole = count_onepass(&tokenize(&tokens.join(" ")));

        // Random cut points re-partition the stream into records.
        let mut cuts: Vec<usize> = (0..rng.gen_range(0..6))
            .map(|_| rng.gen_range(0..=tokens.len()))
            .collect();
        cuts.push(0);
        cuts.push(tokens.len());
        cuts.sort_unstable();
        let records: Vec<String> = cuts
            .windows(2)
            .map(|w| tokens[w[0]..w[1]].join(" "))
            .collect();
        let doc = Document::from_records("partition", records);

        for jobs in [1, 4] {
            assert_eq!(
                count_sharded(&doc, jobs).unwrap(),
                whole,
                "case {case}, jobs {jobs}"
            );
        }
    }
}

/// Idempotence, character-count preservation, and commutation of the two
/// normalization steps, over 1,000 random strings.
#[test]
fn c5_normalization_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let forbidden = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~\t\n\r";
    for case in 0..1000 {
        let text = random_text(&mut rng, 200);

        let lowered = lowercase(&text);
        assert_eq!(lowercase(&lowered), lowered, "lowercase idempotence, case {case}");

        let stripped = strip_punctuation(&text);
        assert_eq!(
            strip_punctuation(&stripped),
            stripped,
            "strip idempotence, case {case}"
        );

        assert_eq!(
            stripped.chars().count(),
            text.chars().count(),
            "char-count preservation, case {case}"
        );

        assert!(
            !stripped.contains(|c| forbidden.contains(c)),
            "forbidden characters survived, case {case}: {stripped:?}"
        );

        assert_eq!(
            lowercase(&strip_punctuation(&text)),
            strip_punctuation(&lowercase(&text)),
            "commutation, case {case}"
        );
    }
}

/// Tone is (pos − neg)/(pos + neg), exactly, with the no-match case kept
/// distinct from zero and printed as NA.
#[test]
fn c6_tone_correctness() {
    let lexicon =
        Lexicon::from_entries("sentiment", [("good", "positive"), ("loss", "negative")]).unwrap();

    let score = tone(
        &pipeline_table("Good, good; good! One loss. The rest is noise."),
        &lexicon,
        "positive",
        "negative",
    )
    .unwrap();
    assert_eq!(score.category_counts["positive"], 3);
    assert_eq!(score.category_counts["negative"], 1);
    assert_eq!(score.tone, Some(0.5));

    let balanced = tone(&pipeline_table("good loss"), &lexicon, "positive", "negative").unwrap();
    assert_eq!(balanced.tone, Some(0.0));

    let silent = tone(&pipeline_table("nothing here"), &lexicon, "positive", "negative").unwrap();
    assert_eq!(silent.tone, None);

    // The CLI prints the undefined case as NA.
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("neutral.txt");
    std::fs::write(&doc, "nothing to feel here\n").unwrap();
    let lex = dir.path().join("lex.csv");
    std::fs::write(&lex, "word,category\ngood,positive\nloss,negative\n").unwrap();

    let output = run_ok(bin().args([
        "tone",
        doc.to_str().unwrap(),
        "--lexicon",
        lex.to_str().unwrap(),
        "--pos",
        "positive",
        "--neg",
        "negative",
    ]));
    let stdout = String::from_utf8(output.stdout).unwrap();
    let row = stdout.lines().nth(1).expect("one row after the header");
    assert!(row.ends_with("\t0\t0\tNA"), "row: {row}");
}

fn oracle_cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        None
    } else {
        Some(dot / (na * nb))
    }
}

fn oracle_tfidf(counts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = counts.len() as f64;
    let width = counts.first().map_or(0, Vec::len);
    let mut idf = vec![0.0; width];
    for (i, w) in idf.iter_mut().enumerate() {
        let df = counts.iter().filter(|doc| doc[i] > 0.0).count() as f64;
        *w = ((1.0 + n) / (1.0 + df)).ln() + 1.0;
    }
    counts
        .iter()
        .map(|doc| {
            let total: f64 = doc.iter().sum();
            doc.iter()
                .zip(&idf)
                .map(|(&c, &w)| if total == 0.0 { 0.0 } else { (c / total) * w })
                .collect()
        })
        .collect()
}

/// Cosine fixed points, plus TF-IDF cosine against a direct-formula oracle
/// on random small corpora.
#[test]
fn c7_vector_similarity_checks() {
    use textmetrics::{build_vocabulary, cosine, count_vector, tfidf_weight};

    // Fixed cases.
    let tables = [
        pipeline_table("alpha beta"),
        pipeline_table("alpha"),
        pipeline_table("beta"),
    ];
    let vocab = build_vocabulary(&tables);
    let both = count_vector(&tables[0], &vocab).unwrap();
    let only_a = count_vector(&tables[1], &vocab).unwrap();
    let only_b = count_vector(&tables[2], &vocab).unwrap();

    let self_sim = cosine(&both, &both).unwrap().unwrap();
    assert!((self_sim - 1.0).abs() <= 1e-12);

    assert_eq!(cosine(&only_a, &only_b).unwrap(), Some(0.0));

    let mixed = cosine(&both, &only_a).unwrap().unwrap();
    assert!((mixed - 0.7071067811865475).abs() <= 1e-12);

    // Random corpora of up to 5 documents over up to 10 words.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for case in 0..200 {
        let n_docs = rng.gen_range(1..=5);
        let n_words = rng.gen_range(1..=10);
        let tables: Vec<FrequencyTable> = (0..n_docs)
            .map(|_| {
                FrequencyTable::from_pairs(
                    (0..n_words).map(|w| (format!("t{w}"), rng.gen_range(0..4u64))),
                )
            })
            .collect();

        let vocab = build_vocabulary(&tables);
        let count_vectors: Vec<_> = tables
            .iter()
            .map(|t| count_vector(t, &vocab).unwrap())
            .collect();
        let weighted = tfidf_weight(&count_vectors).unwrap();

        let count_matrix: Vec<Vec<f64>> = count_vectors
            .iter()
            .map(|v| v.values().to_vec())
            .collect();
        let expected = oracle_tfidf(&count_matrix);

        for (doc, (got, want)) in weighted.iter().zip(&expected).enumerate() {
            for (i, (g, w)) in got.values().iter().zip(want).enumerate() {
                assert!(
                    (g - w).abs() <= 1e-9,
                    "case {case}, doc {doc}, word {i}: {g} vs {w}"
                );
            }
        }

        for i in 0..weighted.len() {
            for j in 0..weighted.len() {
                let got = cosine(&weighted[i], &weighted[j]).unwrap();
                let want = oracle_cosine(&expected[i], &expected[j]);
                match (got, want) {
                    (Some(g), Some(w)) => assert!(
                        (g - w).abs() <= 1e-9,
                        "case {case}, pair ({i},{j}): {g} vs {w}"
                    ),
                    (g, w) => assert_eq!(g, w, "case {case}, pair ({i},{j})"),
                }
            }
        }
    }
}

/// The timing harness takes three measurements per stage by default, keeps
/// the four stages in pipeline order, and both counting modes report the
/// same word count.
#[test]
fn c8_timing_protocol() {
    let onepass = run_bench(corpus_path(), CountMode::OnePass, 3, 1).unwrap();
    let order: Vec<Stage> = onepass.stages.iter().map(|s| s.stage).collect();
    assert_eq!(order, Stage::PIPELINE);
    for timing in &onepass.stages {
        assert_eq!(timing.runs_seconds.len(), 3);
        let mean = timing.runs_seconds.iter().sum::<f64>() / 3.0;
        assert_eq!(timing.mean_seconds, mean);
        assert!(timing.runs_seconds.iter().all(|&s| s >= 0.0));
    }

    let sharded = run_bench(corpus_path(), CountMode::Sharded, 3, 4).unwrap();
    assert_eq!(onepass.result_word_count, sharded.result_word_count);
    assert!(onepass.result_word_count > 0);
}

/// Byte-identical output across repeated invocations and across --jobs.
#[test]
fn c9_cli_determinism() {
    let corpus = corpus_path();
    let corpus = corpus.to_str().unwrap();

    let first = run_ok(bin().args(["freq", corpus]));
    let second = run_ok(bin().args(["freq", corpus]));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let jobs_1 = run_ok(bin().args(["freq", corpus, "--mode", "sharded", "--jobs", "1"]));
    let jobs_8 = run_ok(bin().args(["freq", corpus, "--mode", "sharded", "--jobs", "8"]));
    assert_eq!(jobs_1.stdout, jobs_8.stdout);

    // Sharded and one-pass agree on the rendered table too.
    assert_eq!(first.stdout, jobs_1.stdout);
}
