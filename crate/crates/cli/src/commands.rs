use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use editsimp::backends::Backends;
use editsimp::ccd;
use editsimp::metrics::{corpus_sari, cwi_eval, fkgl, mean_length, parse_cwi, write_cwi, CwiResult, SariResult};
use editsimp::search::OpSet;
use editsimp::text::is_punctuation;
use editsimp::{Engine, EngineConfig, Sentence, TraceRecord};

use crate::error::CliError;
use crate::input::{parse_input, parse_lines, read_file};
use crate::spec::BackendSpec;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Path of the manifest written next to a trace file.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[derive(Debug, Clone)]
pub struct SimplifyArgs {
    pub input: PathBuf,
    pub output: PathBuf,
    pub ops: OpSet,
    pub config: Option<PathBuf>,
    pub backends: BackendSpec,
    pub workers: usize,
    pub seedless: bool,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub version: &'static str,
    pub config: EngineConfig,
    pub config_source: Option<PathBuf>,
    pub ops: String,
    pub backend_spec: BackendSpec,
    pub backends: BTreeMap<&'static str, String>,
    pub input: PathBuf,
    pub output: PathBuf,
    pub sentences: usize,
    pub steps: usize,
    pub terminations: BTreeMap<String, usize>,
    pub workers: usize,
    pub seedless: bool,
    pub wall_clock_ms: u128,
}

/// Runs the search over every input sentence and writes the trace JSONL plus
/// its manifest. Nothing is written if any sentence fails.
pub fn simplify(args: &SimplifyArgs) -> Result<RunManifest, CliError> {
    let started = Instant::now();
    if args.seedless && !args.backends.is_seedless() {
        return Err(CliError::validation(
            "--seedless requires deterministic (mock) backends",
        ));
    }
    if args.workers == 0 {
        return Err(CliError::validation("--workers must be at least 1"));
    }
    let config = match &args.config {
        Some(p) => EngineConfig::load(p).map_err(|e| match e {
            editsimp::config::ConfigError::Io { source, .. } => CliError::io(p, source),
            other => CliError::validation(format!("{}: {other}", p.display())),
        })?,
        None => EngineConfig::default(),
    };
    let inputs = parse_input(&read_file(&args.input)?)?;
    let trees = inputs
        .iter()
        .filter_map(|i| i.tree.clone().map(|t| (i.sentence.clone(), t)))
        .collect();
    let backends = args.backends.build(trees)?;
    let engine = Engine::new(backends.clone(), config).with_ops(args.ops);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
        .map_err(|e| CliError::validation(format!("worker pool: {e}")))?;
    let results: Vec<Result<TraceRecord, CliError>> = pool.install(|| {
        inputs
            .par_iter()
            .map(|i| Ok(engine.simplify(&i.sentence)?.to_record()))
            .collect()
    });
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut out = String::new();
    let mut terminations = BTreeMap::new();
    let mut steps = 0;
    for r in &records {
        out.push_str(&r.to_json_line());
        out.push('\n');
        steps += r.steps.len();
        let key = serde_json::to_value(r.termination)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        *terminations.entry(key).or_insert(0) += 1;
    }
    write_file(&args.output, &out)?;

    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION"),
        config,
        config_source: args.config.clone(),
        ops: args.ops.to_string(),
        backend_spec: args.backends.clone(),
        backends: ids(&backends),
        input: args.input.clone(),
        output: args.output.clone(),
        sentences: records.len(),
        steps,
        terminations,
        workers: args.workers,
        seedless: args.seedless,
        wall_clock_ms: started.elapsed().as_millis(),
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&manifest_path(&args.output), &(json + "\n"))?;
    Ok(manifest)
}

fn ids(b: &Backends) -> BTreeMap<&'static str, String> {
    b.ids().into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct EvaluateArgs {
    pub source: PathBuf,
    pub output: PathBuf,
    pub refs: Vec<PathBuf>,
    pub keep_case: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvaluateReport {
    pub sari: f64,
    pub add: f64,
    pub keep: f64,
    pub delete: f64,
    pub fkgl: f64,
    pub mean_len: f64,
}

/// Corpus SARI against line-aligned reference files, plus FKGL and mean
/// length of the outputs.
pub fn evaluate(args: &EvaluateArgs) -> Result<EvaluateReport, CliError> {
    if args.refs.is_empty() {
        return Err(CliError::validation("at least one reference file is required"));
    }
    let lower = !args.keep_case;
    let source = parse_lines(&read_file(&args.source)?, "source", lower)?;
    let output = parse_lines(&read_file(&args.output)?, "output", lower)?;
    let mut ref_files = Vec::new();
    for p in &args.refs {
        ref_files.push((p, parse_lines(&read_file(p)?, "reference", lower)?));
    }
    if output.len() != source.len() {
        return Err(CliError::validation(format!(
            "{} output lines for {} source lines",
            output.len(),
            source.len()
        )));
    }
    for (p, r) in &ref_files {
        if r.len() != source.len() {
            return Err(CliError::validation(format!(
                "{}: {} reference lines for {} source lines",
                p.display(),
                r.len(),
                source.len()
            )));
        }
    }
    let refs: Vec<Vec<Sentence>> = (0..source.len())
        .map(|i| ref_files.iter().map(|(_, r)| r[i].clone()).collect())
        .collect();
    let SariResult {
        overall,
        add,
        keep,
        delete,
    } = corpus_sari(&source, &output, &refs)?;
    Ok(EvaluateReport {
        sari: overall,
        add,
        keep,
        delete,
        fkgl: fkgl(&output)?,
        mean_len: mean_length(&output),
    })
}

#[derive(Debug, Clone)]
pub struct CcdEvalArgs {
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub backends: BackendSpec,
}

/// Word-level complexity predictions for one gold sentence: CCD flags with
/// stopwords and punctuation never predicted complex.
pub fn predict_complex_words(words: &[String], backends: &Backends) -> Result<Vec<bool>, CliError> {
    let s = Sentence::from_tokens("cwi", words)
        .map_err(|e| CliError::validation(e.to_string()))?;
    if s.len() != words.len() {
        return Err(CliError::validation(format!("CWI words must be single tokens: {words:?}")));
    }
    let judgment = backends.simplicity.classify_simplicity(&s)?;
    let marking = ccd::detect(&judgment.attention, &s)
        .map_err(|e| CliError::Contract(e.to_string()))?;
    Ok(words
        .iter()
        .zip(&marking.word_flags)
        .map(|(w, &f)| f && !ccd::is_stopword(w) && !is_punctuation(w))
        .collect())
}

pub fn ccd_eval(args: &CcdEvalArgs) -> Result<CwiResult, CliError> {
    let gold = parse_cwi(&read_file(&args.input)?)?;
    let backends = args.backends.build(Vec::new())?;
    let mut predicted = Vec::new();
    let mut all_pred = Vec::new();
    let mut all_gold = Vec::new();
    for sentence in &gold {
        let words: Vec<String> = sentence.iter().map(|(w, _)| w.clone()).collect();
        let flags = predict_complex_words(&words, &backends)?;
        all_pred.extend(&flags);
        all_gold.extend(sentence.iter().map(|(_, g)| *g));
        predicted.push(words.into_iter().zip(flags).collect());
    }
    if let Some(p) = &args.output {
        write_file(p, &write_cwi(&predicted))?;
    }
    Ok(cwi_eval(&all_pred, &all_gold)?)
}

/// Renders a value as one line of JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    let _ = writeln!(s);
    s
}
