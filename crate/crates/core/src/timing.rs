//! Per-stage timing harness.
//!
//! Times each pipeline stage separately — read, lowercase, punctuation
//! stripping, tokenize-and-count — averaging wall-clock seconds over
//! repeated runs (three by default). Each stage's input is materialized
//! once before timing starts, so a stage's measurement never includes its
//! predecessors, and one untimed warm-up run precedes the timed repetitions
//! so first-touch effects don't dominate sub-millisecond stages.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::freq::{count_onepass, count_sharded, tokenize};
use crate::ingest::{read_records, read_text, Document};
use crate::normalize::{lowercase, strip_punctuation};

/// Default repetition count.
pub const DEFAULT_REPS: usize = 3;

/// The four timed pipeline stages, in pipeline order.
///
/// Tokenization and counting are timed together: they form one stage of the
/// measured pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Read,
    Lowercase,
    StripPunct,
    TokenizeCount,
}

impl Stage {
    /// All stages in pipeline order.
    pub const PIPELINE: [Stage; 4] = [
        Stage::Read,
        Stage::Lowercase,
        Stage::StripPunct,
        Stage::TokenizeCount,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Stage::Read => "read",
            Stage::Lowercase => "lowercase",
            Stage::StripPunct => "strip-punct",
            Stage::TokenizeCount => "tokenize-count",
        }
    }
}

/// Which counting strategy a benchmark run exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    OnePass,
    Sharded,
}

impl CountMode {
    pub fn label(self) -> &'static str {
        match self {
            CountMode::OnePass => "onepass",
            CountMode::Sharded => "sharded",
        }
    }
}

/// Wall-clock measurements for one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: Stage,
    /// One duration per timed repetition, in seconds.
    pub runs_seconds: Vec<f64>,
    pub mean_seconds: f64,
    pub min_seconds: f64,
    pub max_seconds: f64,
}

impl StageTiming {
    pub fn from_runs(stage: Stage, runs_seconds: Vec<f64>) -> Self {
        assert!(!runs_seconds.is_empty(), "at least one run is required");
        let mean = runs_seconds.iter().sum::<f64>() / runs_seconds.len() as f64;
        let min = runs_seconds.iter().copied().fold(f64::INFINITY, f64::min);
        let max = runs_seconds.iter().copied().fold(0.0, f64::max);
        StageTiming {
            stage,
            runs_seconds,
            mean_seconds: mean,
            min_seconds: min,
            max_seconds: max,
        }
    }
}

/// Per-stage timing statistics for one corpus and counting mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub corpus_id: String,
    pub mode: CountMode,
    pub jobs: usize,
    /// Exactly the four pipeline stages, in pipeline order.
    pub stages: Vec<StageTiming>,
    /// Distinct words in the final table, proof the timed run produced real
    /// output.
    pub result_word_count: usize,
}

fn time_stage<T>(stage: Stage, reps: usize, mut run: impl FnMut() -> T) -> (StageTiming, T) {
    let _warm_up = run();
    let mut runs_seconds = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let started = Instant::now();
        let output = run();
        runs_seconds.push(started.elapsed().as_secs_f64());
        last = Some(output);
    }
    (
        StageTiming::from_runs(stage, runs_seconds),
        last.expect("reps >= 1"),
    )
}

/// Times every pipeline stage on `path`, `reps` repetitions per stage.
///
/// In `Sharded` mode the counting stage fans records across `jobs` worker
/// threads; `jobs` has no effect on any other stage or on `OnePass` runs,
/// and never changes the resulting table.
pub fn run_bench(
    path: impl AsRef<Path>,
    mode: CountMode,
    reps: usize,
    jobs: usize,
) -> Result<BenchReport> {
    let path = path.as_ref();
    let reps = reps.max(1);
    let jobs = jobs.max(1);

    // Fail early on unreadable input, outside the timed region.
    let probe = read_text(path)?;
    let corpus_id = probe.source_id().to_owned();
    drop(probe);

    let (stages, table) = match mode {
        CountMode::OnePass => {
            let (read_timing, doc) = time_stage(Stage::Read, reps, || {
                read_text(path).expect("input disappeared mid-benchmark")
            });
            let buffer = doc.buffer().expect("whole-buffer mode").to_owned();

            let (lower_timing, lowered) =
                time_stage(Stage::Lowercase, reps, || lowercase(&buffer));
            let (strip_timing, stripped) =
                time_stage(Stage::StripPunct, reps, || strip_punctuation(&lowered));
            let (count_timing, table) = time_stage(Stage::TokenizeCount, reps, || {
                count_onepass(&tokenize(&stripped))
            });
            (
                vec![read_timing, lower_timing, strip_timing, count_timing],
                table,
            )
        }
        CountMode::Sharded => {
            let (read_timing, doc) = time_stage(Stage::Read, reps, || {
                read_records(path).expect("input disappeared mid-benchmark")
            });
            let records = doc.records().expect("records mode").to_vec();

            let (lower_timing, lowered) = time_stage(Stage::Lowercase, reps, || {
                records.iter().map(|r| lowercase(r)).collect::<Vec<_>>()
            });
            let (strip_timing, stripped) = time_stage(Stage::StripPunct, reps, || {
                lowered.iter().map(|r| strip_punctuation(r)).collect::<Vec<_>>()
            });
            let sharded_doc = Document::from_records(corpus_id.clone(), stripped);
            let (count_timing, table) = time_stage(Stage::TokenizeCount, reps, || {
                count_sharded(&sharded_doc, jobs).expect("document is in records mode")
            });
            (
                vec![read_timing, lower_timing, strip_timing, count_timing],
                table,
            )
        }
    };

    Ok(BenchReport {
        corpus_id,
        mode,
        jobs,
        stages,
        result_word_count: table.distinct_words(),
    })
}

/// Renders a report as an aligned text table, one row per stage.
pub fn format_report(report: &BenchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "corpus: {}", report.corpus_id);
    let _ = writeln!(out, "mode: {}  jobs: {}", report.mode.label(), report.jobs);
    let _ = writeln!(out, "{:<16}{:>10}{:>6}", "stage", "mean (s)", "reps");
    for timing in &report.stages {
        let _ = writeln!(
            out,
            "{:<16}{:>10.3}{:>6}",
            timing.stage.label(),
            timing.mean_seconds,
            timing.runs_seconds.len()
        );
    }
    let _ = writeln!(out, "distinct words: {}", report.result_word_count);
    out
}

/// Machine-readable JSON emission, including min/max per stage.
pub fn format_report_json(report: &BenchReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

/// Parses JSON produced by [`format_report_json`].
pub fn parse_report_json(json: &str) -> serde_json::Result<BenchReport> {
    serde_json::from_str(json)
}
