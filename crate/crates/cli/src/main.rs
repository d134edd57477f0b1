//! Command-line driver for the textmetrics toolkit.
//!
//! A thin sequential wrapper over the library: every subcommand reads its
//! inputs, runs the pipeline, and prints deterministic, script-friendly
//! output. Parallelism exists only behind `--jobs` in the sharded counting
//! stage and never changes output bytes.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/IO error.

use std::borrow::Cow;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use textmetrics::{
    binary_vector, build_vocabulary, cosine, count_onepass, count_sharded, count_vector,
    format_report, format_report_json, lowercase, nfc, read_records, read_text, run_bench,
    strip_punctuation_with, tfidf_weight, tokenize, tone, CountMode, Document, DocumentVector,
    FrequencyTable, NormalizeOptions, PunctPreset, SortKey,
};

#[derive(Parser)]
#[command(
    name = "textmetrics",
    version,
    about = "Word-frequency and text-metrics toolkit",
    long_about = "Counts word frequencies over plain-text files and builds the metrics that \
                  sit on top of word counts: lexicon tone scores, document vectors, cosine \
                  similarity, and per-stage pipeline timings.\n\n\
                  All output is deterministic: identical inputs and flags produce identical \
                  bytes, regardless of --jobs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a word/count table for each input file
    Freq(FreqArgs),
    /// Score each input file against a sentiment lexicon
    Tone(ToneArgs),
    /// Print a document-term matrix over the inputs' shared vocabulary
    Vectorize(VectorizeArgs),
    /// Print the pairwise cosine-similarity matrix of the input files
    Similarity(SimilarityArgs),
    /// Time each pipeline stage, averaged over repeated runs
    Bench(BenchArgs),
}

/// Normalization flags shared by the text-processing subcommands.
#[derive(Args, Clone, Copy)]
struct NormalizeFlags {
    /// Punctuation set replaced by spaces
    #[arg(long = "punct-set", value_enum, default_value_t)]
    punct_set: PunctSetArg,
    /// Also strip Unicode punctuation categories (curly quotes, dashes, ...)
    #[arg(long = "unicode-punct", value_enum, default_value_t)]
    unicode_punct: ToggleArg,
    /// Apply NFC composition before normalizing
    #[arg(long)]
    nfc: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Default)]
enum PunctSetArg {
    /// All 32 ASCII punctuation characters
    #[default]
    Full,
    /// The Stata reference set (omits `"` and `|`)
    PaperStata,
    /// The Python reference set (omits `$` and `|`)
    PaperPython,
}

impl From<PunctSetArg> for PunctPreset {
    fn from(arg: PunctSetArg) -> Self {
        match arg {
            PunctSetArg::Full => PunctPreset::Full,
            PunctSetArg::PaperStata => PunctPreset::PaperStata,
            PunctSetArg::PaperPython => PunctPreset::PaperPython,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Default)]
enum ToggleArg {
    #[default]
    Off,
    On,
}

#[derive(ValueEnum, Clone, Copy, Default)]
enum SortArg {
    /// Ascending alphabetic
    #[default]
    Alpha,
    /// Descending count, alphabetic tie-break
    Count,
}

impl From<SortArg> for SortKey {
    fn from(arg: SortArg) -> Self {
        match arg {
            SortArg::Alpha => SortKey::Alpha,
            SortArg::Count => SortKey::CountDesc,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Default)]
enum FormatArg {
    #[default]
    Tsv,
    Csv,
    Jsonl,
}

#[derive(ValueEnum, Clone, Copy, Default)]
enum ModeArg {
    /// One dictionary pass over the whole buffer
    #[default]
    Onepass,
    /// Count each line separately, then merge
    Sharded,
}

impl From<ModeArg> for CountMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Onepass => CountMode::OnePass,
            ModeArg::Sharded => CountMode::Sharded,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Default)]
enum KindArg {
    #[default]
    Count,
    Binary,
    Tfidf,
}

#[derive(Args)]
struct FreqArgs {
    /// Input text files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    normalize: NormalizeFlags,
    /// Row order
    #[arg(long, value_enum, default_value_t)]
    sort: SortArg,
    /// Output format (field names: word, count, source_id)
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// Counting strategy
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
    /// Worker threads for sharded counting (output is identical for any value)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Args)]
struct ToneArgs {
    /// Input text files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Lexicon CSV with header `word,category`
    #[arg(long)]
    lexicon: PathBuf,
    /// Name of the positive category
    #[arg(long)]
    pos: String,
    /// Name of the negative category
    #[arg(long)]
    neg: String,
    #[command(flatten)]
    normalize: NormalizeFlags,
}

#[derive(Args)]
struct VectorizeArgs {
    /// Input text files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Vector weighting
    #[arg(long, value_enum, default_value_t)]
    kind: KindArg,
    #[command(flatten)]
    normalize: NormalizeFlags,
}

#[derive(Args)]
struct SimilarityArgs {
    /// Input text files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Vector weighting the similarity is computed over
    #[arg(long, value_enum, default_value_t)]
    kind: KindArg,
    #[command(flatten)]
    normalize: NormalizeFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Input text file
    input: PathBuf,
    /// Counting strategy to benchmark
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
    /// Timed repetitions per stage
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    /// Worker threads for the sharded counting stage
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Also write the report as JSON to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout().lock();
    let mut out = BufWriter::new(stdout);
    match cli.command {
        Command::Freq(args) => run_freq(args, &mut out)?,
        Command::Tone(args) => run_tone(args, &mut out)?,
        Command::Vectorize(args) => run_vectorize(args, &mut out)?,
        Command::Similarity(args) => run_similarity(args, &mut out)?,
        Command::Bench(args) => run_bench_cmd(args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

// ---------- shared pipeline steps ----------

fn normalize_text(text: &str, flags: &NormalizeFlags) -> String {
    let opts = NormalizeOptions {
        preset: flags.punct_set.into(),
        unicode_punct: flags.unicode_punct == ToggleArg::On,
    };
    let text: Cow<'_, str> = if flags.nfc {
        Cow::Owned(nfc(text))
    } else {
        Cow::Borrowed(text)
    };
    strip_punctuation_with(&lowercase(&text), &opts)
}

fn warn_replaced(doc: &Document) {
    let replaced = doc.replaced_sequences();
    if replaced > 0 {
        eprintln!(
            "warning: {}: replaced {replaced} invalid UTF-8 sequence(s)",
            doc.source_id()
        );
    }
}

/// Reads and counts one file with the selected strategy.
fn count_file(
    path: &PathBuf,
    flags: &NormalizeFlags,
    mode: ModeArg,
    jobs: usize,
) -> Result<(String, FrequencyTable)> {
    match mode {
        ModeArg::Onepass => {
            let doc = read_text(path)?;
            warn_replaced(&doc);
            let text = normalize_text(doc.buffer().expect("whole-buffer mode"), flags);
            Ok((doc.source_id().to_owned(), count_onepass(&tokenize(&text))))
        }
        ModeArg::Sharded => {
            let doc = read_records(path)?;
            warn_replaced(&doc);
            let records = doc
                .records()
                .expect("records mode")
                .iter()
                .map(|r| normalize_text(r, flags))
                .collect();
            let normalized = Document::from_records(doc.source_id(), records);
            let table = count_sharded(&normalized, jobs)?;
            Ok((doc.source_id().to_owned(), table))
        }
    }
}

/// Whole-buffer table for subcommands that don't expose a counting mode.
fn table_for(path: &PathBuf, flags: &NormalizeFlags) -> Result<(String, FrequencyTable)> {
    count_file(path, flags, ModeArg::Onepass, 1)
}

/// Shortest-round-trip float formatting: deterministic and lossless.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

// ---------- freq ----------

#[derive(Serialize)]
struct FreqRow<'a> {
    source_id: &'a str,
    word: &'a str,
    count: u64,
}

fn run_freq(args: FreqArgs, out: &mut impl Write) -> Result<()> {
    let multi = args.inputs.len() > 1;
    for (i, path) in args.inputs.iter().enumerate() {
        let (source_id, table) = count_file(path, &args.normalize, args.mode, args.jobs as usize)?;
        let rows = table.sorted_view(args.sort.into());
        if i > 0 {
            writeln!(out)?;
        }
        match args.format {
            FormatArg::Tsv => {
                if multi {
                    writeln!(out, "# {source_id}")?;
                }
                writeln!(out, "word\tcount")?;
                for (word, count) in rows {
                    writeln!(out, "{word}\t{count}")?;
                }
            }
            FormatArg::Csv => {
                if multi {
                    writeln!(out, "# {source_id}")?;
                }
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer.write_record(["word", "count"])?;
                for (word, count) in rows {
                    writer.write_record([word, &count.to_string()])?;
                }
                let block = writer.into_inner().context("flushing csv block")?;
                out.write_all(&block)?;
            }
            FormatArg::Jsonl => {
                for (word, count) in rows {
                    let row = FreqRow {
                        source_id: &source_id,
                        word,
                        count,
                    };
                    writeln!(out, "{}", serde_json::to_string(&row)?)?;
                }
            }
        }
    }
    Ok(())
}

// ---------- tone ----------

fn run_tone(args: ToneArgs, out: &mut impl Write) -> Result<()> {
    let lexicon = textmetrics::load_lexicon(&args.lexicon)?;
    writeln!(out, "source_id\tpos\tneg\ttone")?;
    for path in &args.inputs {
        let (source_id, table) = table_for(path, &args.normalize)?;
        let score = tone(&table, &lexicon, &args.pos, &args.neg)?;
        let pos = score.category_counts[&args.pos];
        let neg = score.category_counts[&args.neg];
        let tone_cell = match score.tone {
            Some(t) => fmt_f64(t),
            None => "NA".to_owned(),
        };
        writeln!(out, "{source_id}\t{pos}\t{neg}\t{tone_cell}")?;
    }
    Ok(())
}

// ---------- vectorize / similarity ----------

fn vectors_for(
    inputs: &[PathBuf],
    flags: &NormalizeFlags,
    kind: KindArg,
) -> Result<(Vec<String>, Vec<DocumentVector>)> {
    let mut source_ids = Vec::with_capacity(inputs.len());
    let mut tables = Vec::with_capacity(inputs.len());
    for path in inputs {
        let (source_id, table) = table_for(path, flags)?;
        source_ids.push(source_id);
        tables.push(table);
    }
    let vocab = build_vocabulary(&tables);
    let vectors = match kind {
        KindArg::Count => tables
            .iter()
            .map(|t| count_vector(t, &vocab))
            .collect::<textmetrics::Result<Vec<_>>>()?,
        KindArg::Binary => tables
            .iter()
            .map(|t| binary_vector(t, &vocab))
            .collect::<textmetrics::Result<Vec<_>>>()?,
        KindArg::Tfidf => {
            let counts = tables
                .iter()
                .map(|t| count_vector(t, &vocab))
                .collect::<textmetrics::Result<Vec<_>>>()?;
            tfidf_weight(&counts)?
        }
    };
    Ok((source_ids, vectors))
}

fn run_vectorize(args: VectorizeArgs, out: &mut impl Write) -> Result<()> {
    let (source_ids, vectors) = vectors_for(&args.inputs, &args.normalize, args.kind)?;
    let vocab: &[String] = vectors
        .first()
        .map(|v| v.vocabulary().words())
        .unwrap_or(&[]);

    write!(out, "source_id")?;
    for word in vocab {
        write!(out, "\t{word}")?;
    }
    writeln!(out)?;

    for (source_id, vector) in source_ids.iter().zip(&vectors) {
        write!(out, "{source_id}")?;
        for value in vector.values() {
            write!(out, "\t{}", fmt_f64(*value))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn run_similarity(args: SimilarityArgs, out: &mut impl Write) -> Result<()> {
    let (source_ids, vectors) = vectors_for(&args.inputs, &args.normalize, args.kind)?;

    write!(out, "source_id")?;
    for source_id in &source_ids {
        write!(out, "\t{source_id}")?;
    }
    writeln!(out)?;

    for (source_id, a) in source_ids.iter().zip(&vectors) {
        write!(out, "{source_id}")?;
        for b in &vectors {
            let cell = match cosine(a, b)? {
                Some(sim) => fmt_f64(sim),
                None => "NA".to_owned(),
            };
            write!(out, "\t{cell}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

// ---------- bench ----------

fn run_bench_cmd(args: BenchArgs, out: &mut impl Write) -> Result<()> {
    let report = run_bench(
        &args.input,
        args.mode.into(),
        args.reps as usize,
        args.jobs as usize,
    )?;
    write!(out, "{}", format_report(&report))?;
    if let Some(path) = &args.json {
        let mut json = format_report_json(&report);
        json.push('\n');
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
