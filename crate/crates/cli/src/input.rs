//! Input formats: sentence JSONL for `simplify`, plain line files for `evaluate`.

use std::path::Path;

use serde::Deserialize;

use editsimp::backends::Tree;
use editsimp::Sentence;

use crate::error::CliError;

/// One input line: `{"id": ..., "text": ..., "tree": "(S ...)"?}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputRecord {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub tree: Option<String>,
}

#[derive(Debug, Clone)]
pub struct InputSentence {
    pub sentence: Sentence,
    pub tree: Option<Tree>,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Parses sentence JSONL. Blank lines are skipped; ids must be unique.
pub fn parse_input(text: &str) -> Result<Vec<InputSentence>, CliError> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let at = |msg: String| CliError::validation(format!("input line {}: {msg}", i + 1));
        let rec: InputRecord = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
        if !seen.insert(rec.id.clone()) {
            return Err(at(format!("duplicate id {:?}", rec.id)));
        }
        let sentence = Sentence::new(rec.id, &rec.text).map_err(|e| at(e.to_string()))?;
        let tree = rec
            .tree
            .as_deref()
            .map(Tree::parse)
            .transpose()
            .map_err(|e| at(format!("tree: {e}")))?;
        if let Some(t) = &tree {
            t.constituents(sentence.tokens())
                .map_err(|e| at(format!("tree does not match text: {e}")))?;
        }
        out.push(InputSentence { sentence, tree });
    }
    if out.is_empty() {
        return Err(CliError::validation("input contains no sentences"));
    }
    Ok(out)
}

/// One sentence per line; empty lines are errors because they would misalign
/// the corpora.
pub fn parse_lines(text: &str, what: &str, lowercase: bool) -> Result<Vec<Sentence>, CliError> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let line = if lowercase { line.to_lowercase() } else { line.to_owned() };
            Sentence::new(format!("{}", i + 1), &line)
                .map_err(|e| CliError::validation(format!("{what} line {}: {e}", i + 1)))
        })
        .collect()
}
