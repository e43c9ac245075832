//! Complex word identification: file format and binary classification scores.
//!
//! File format: one `word<TAB>0|1` line per token, a blank line between sentences.

use serde::{Deserialize, Serialize};

use super::MetricsError;

/// All values on the 0–100 scale, "complex" being the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CwiResult {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn cwi_eval(predictions: &[bool], gold: &[bool]) -> Result<CwiResult, MetricsError> {
    if predictions.len() != gold.len() {
        return Err(MetricsError::Validation(format!(
            "{} predictions for {} gold labels",
            predictions.len(),
            gold.len()
        )));
    }
    if gold.is_empty() {
        return Err(MetricsError::Validation("no labelled words".into()));
    }
    let (mut tp, mut fp, mut fneg, mut tn) = (0usize, 0usize, 0usize, 0usize);
    for (&p, &g) in predictions.iter().zip(gold) {
        match (p, g) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fneg += 1,
            (false, false) => tn += 1,
        }
    }
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { 100.0 * num as f64 / den as f64 };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fneg);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(CwiResult {
        accuracy: ratio(tp + tn, tp + fp + fneg + tn),
        precision,
        recall,
        f1,
    })
}

pub type CwiSentence = Vec<(String, bool)>;

pub fn parse_cwi(text: &str) -> Result<Vec<CwiSentence>, MetricsError> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        let err = |message: &str| MetricsError::Format {
            line: i + 1,
            message: message.to_owned(),
        };
        let (word, label) = line
            .split_once('\t')
            .ok_or_else(|| err("expected word<TAB>label"))?;
        if word.trim().is_empty() || word.split_whitespace().count() != 1 {
            return Err(err("word must be a single non-empty token"));
        }
        let label = match label.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(err("label must be 0 or 1")),
        };
        current.push((word.trim().to_owned(), label));
    }
    if !current.is_empty() {
        out.push(current);
    }
    if out.is_empty() {
        return Err(MetricsError::Validation("CWI file contains no sentences".into()));
    }
    Ok(out)
}

pub fn write_cwi(sentences: &[CwiSentence]) -> String {
    let mut out = String::new();
    for (i, s) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for (w, l) in s {
            out.push_str(w);
            out.push('\t');
            out.push(if *l { '1' } else { '0' });
            out.push('\n');
        }
    }
    out
}
