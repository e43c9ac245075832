//! Candidate generation: one CCD-guided paraphrase and constituent deletions.

use std::collections::{BTreeMap, BTreeSet};

use tracing::warn;

use crate::backends::tree::check_well_nested;
use crate::backends::{BackendError, Backends};
use crate::ccd;
use crate::text::{is_punctuation, Sentence};
use crate::trace::{DeletionMode, DeletionOrigin, EditKind, Provenance};

/// Shortest constituent considered for deletion.
pub const MIN_DELETION_SPAN: usize = 2;

/// An unscored candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub sentence: Sentence,
    pub kind: EditKind,
    pub provenance: Provenance,
}

/// Asks the CCD for negative constraints and paraphrases once with them.
///
/// Returns `Ok(None)` when there are no usable constraints, the paraphraser
/// reports the constraints unsatisfiable or fails, or the output equals the
/// input. Contract violations are returned as errors.
pub fn generate_paraphrase_candidate(
    s: &Sentence,
    backends: &Backends,
) -> Result<Option<Proposal>, BackendError> {
    let judgment = match backends.simplicity.classify_simplicity(s) {
        Ok(j) => j,
        Err(e) if e.is_contract_violation() => return Err(e),
        Err(e) => {
            warn!(sentence = s.id(), error = %e, "simplicity classifier failed; no paraphrase");
            return Ok(None);
        }
    };
    let marking = ccd::detect(&judgment.attention, s)
        .map_err(|e| BackendError::contract(&backends.simplicity.id(), s, e.to_string()))?;
    paraphrase_with(s, &marking.constraint_words, backends)
}

/// Paraphrases `s` under `constraints`, re-checking the output.
pub fn paraphrase_with(
    s: &Sentence,
    constraints: &BTreeSet<String>,
    backends: &Backends,
) -> Result<Option<Proposal>, BackendError> {
    if constraints.is_empty() {
        return Ok(None);
    }
    let out = match backends.paraphraser.paraphrase(s, constraints) {
        Ok(out) => out,
        Err(e) if e.is_contract_violation() => return Err(e),
        Err(e) => {
            tracing::debug!(sentence = s.id(), error = %e, "no paraphrase this iteration");
            return Ok(None);
        }
    };
    if let Some(bad) = out.lowercase_tokens().find(|t| constraints.contains(t)) {
        return Err(BackendError::contract(
            &backends.paraphraser.id(),
            s,
            format!("output contains negative constraint {bad:?}"),
        ));
    }
    if out.key() == s.key() {
        return Ok(None);
    }
    Ok(Some(Proposal {
        sentence: out.with_id(s.id()),
        kind: EditKind::Paraphrase,
        provenance: Provenance::Paraphrase {
            constraints: constraints.iter().cloned().collect(),
        },
    }))
}

fn is_clause_punct(t: &str) -> bool {
    matches!(t, "," | ";" | ":")
}

fn closes(open: &str, close: &str) -> bool {
    matches!((open, close), ("(", ")") | ("[", "]") | ("{", "}"))
}

/// Cleans up the surface after a removal: drops punctuation stranded at the
/// start, clause punctuation followed by other punctuation or the end of the
/// sentence, and empty bracket pairs.
pub fn repair_removal(tokens: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(tokens.len());
    for tok in tokens {
        if out.is_empty() && is_punctuation(&tok) && !matches!(tok.as_str(), "(" | "[" | "{" | "\"" | "'") {
            continue;
        }
        if is_punctuation(&tok) {
            if out.last().is_some_and(|p| is_clause_punct(p)) {
                out.pop();
            }
            if out.last().is_some_and(|p| closes(p, &tok)) {
                out.pop();
                continue;
            }
        }
        out.push(tok);
    }
    while out.last().is_some_and(|p| is_clause_punct(p)) {
        out.pop();
    }
    out
}

/// Removal and extraction candidates for every proper constituent of at least
/// [`MIN_DELETION_SPAN`] tokens, ordered by `(depth, start)`. Candidates with the
/// same text are merged; the first origin in that order decides the kind.
pub fn generate_deletion_candidates(
    s: &Sentence,
    backends: &Backends,
) -> Result<Vec<Proposal>, BackendError> {
    let spans = match backends.parser.parse_constituents(s) {
        Ok(spans) => spans,
        Err(e) if e.is_contract_violation() => return Err(e),
        Err(e) => {
            warn!(sentence = s.id(), error = %e, "parser failed; no deletion candidates");
            return Ok(Vec::new());
        }
    };
    let n = s.len();
    check_well_nested(&spans, n)
        .map_err(|msg| BackendError::contract(&backends.parser.id(), s, msg))?;

    let mut origins: Vec<DeletionOrigin> = Vec::new();
    for c in spans.iter().filter(|c| c.len() >= MIN_DELETION_SPAN && c.len() < n) {
        for mode in [DeletionMode::Removal, DeletionMode::Extraction] {
            origins.push(DeletionOrigin {
                span: [c.start, c.end],
                label: c.label.clone(),
                mode,
                depth: c.depth,
            });
        }
    }
    origins.sort_by_key(DeletionOrigin::order_key);
    origins.dedup();

    let input_key = s.key();
    let tokens = s.tokens();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut out: Vec<(Sentence, Vec<DeletionOrigin>)> = Vec::new();
    for origin in origins {
        let [start, end] = origin.span;
        let result: Vec<String> = match origin.mode {
            DeletionMode::Removal => repair_removal(
                tokens[..start].iter().chain(&tokens[end..]).cloned().collect(),
            ),
            DeletionMode::Extraction => tokens[start..end].to_vec(),
        };
        let Ok(sentence) = Sentence::from_tokens(s.id(), &result) else {
            continue;
        };
        let key = sentence.key();
        if key == input_key {
            continue;
        }
        match index.get(&key) {
            Some(&i) => out[i].1.push(origin),
            None => {
                index.insert(key, out.len());
                out.push((sentence, vec![origin]));
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|(sentence, mut origins)| {
            let primary = origins.remove(0);
            Proposal {
                sentence,
                kind: primary.mode.kind(),
                provenance: Provenance::Deletion {
                    origin: primary,
                    merged: origins,
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::mock::{MockBackends, MockTables};
    use crate::backends::Tree;
    use crate::text::tokenize_str;
    use proptest::prelude::*;

    fn sent(s: &str) -> Sentence {
        Sentence::new("t", s).unwrap()
    }

    fn texts(ps: &[Proposal]) -> Vec<String> {
        ps.iter().map(|p| p.sentence.surface().to_owned()).collect()
    }

    #[test]
    fn dog_barked_enumeration() {
        let s = sent("the dog barked.");
        let b = MockBackends::new(MockTables::builtin())
            .tree(s.clone(), Tree::parse("(S (NP the dog) (VP barked))").unwrap())
            .build();
        let got = generate_deletion_candidates(&s, &b).unwrap();
        // enumeration: NP(0,2) removal "barked.", NP extraction "the dog",
        // VP(2,4) removal "the dog", VP extraction "barked."
        assert_eq!(texts(&got), ["barked.", "the dog"]);
        assert_eq!(got[0].kind, EditKind::DeleteRemoval);
        assert_eq!(got[1].kind, EditKind::DeleteExtraction);
        for p in &got {
            let Provenance::Deletion { merged, .. } = &p.provenance else {
                panic!("wrong provenance")
            };
            assert_eq!(merged.len(), 1);
        }
    }

    #[test]
    fn root_only_sentence_has_no_deletions() {
        let s = sent("hello there");
        let b = MockBackends::new(MockTables::builtin())
            .tree(s.clone(), Tree::parse("(S hello there)").unwrap())
            .build();
        assert!(generate_deletion_candidates(&s, &b).unwrap().is_empty());
    }

    #[test]
    fn parser_failure_means_no_candidates() {
        let s = sent("the dog barked.");
        let b = MockBackends::new(MockTables::builtin())
            .tree(s.clone(), Tree::parse("(S (NP a cat) (VP barked))").unwrap())
            .build();
        assert!(generate_deletion_candidates(&s, &b).unwrap().is_empty());
    }

    #[test]
    fn removal_drops_the_participle_clause() {
        let s = sent("the avalanche struck everest, burying 25 nepalese sherpa guides under sheets of ice the size of houses.");
        let tree = "(S (S (NP the avalanche) (VP struck (NP everest))) (VP burying (NP 25 nepalese sherpa guides) (PP under (NP (NP sheets) (PP of (NP ice (NP the size (PP of (NP houses)))))))))";
        let b = MockBackends::new(MockTables::builtin())
            .tree(s.clone(), Tree::parse(tree).unwrap())
            .build();
        let got = generate_deletion_candidates(&s, &b).unwrap();
        // removing the participle VP yields the same text as extracting the
        // first clause; the shallower, earlier extraction origin is primary
        let hit = got
            .iter()
            .find(|p| p.sentence.surface() == "the avalanche struck everest")
            .expect("clause text present");
        assert_eq!(hit.kind, EditKind::DeleteExtraction);
        let Provenance::Deletion { merged, .. } = &hit.provenance else {
            panic!("deletion provenance expected")
        };
        assert!(merged.iter().any(|o| o.mode == DeletionMode::Removal));
    }

    #[test]
    fn paraphrase_candidate_avoids_flagged_words() {
        let s = sent("officials made the announcement that a massive avalanche struck.");
        let b = MockBackends::new(MockTables::builtin()).build();
        let p = generate_paraphrase_candidate(&s, &b).unwrap().unwrap();
        assert_eq!(p.kind, EditKind::Paraphrase);
        assert_eq!(
            p.provenance,
            Provenance::Paraphrase {
                constraints: vec!["announcement".into(), "massive".into()]
            }
        );
        assert_eq!(p.sentence.surface(), "officials made the news that a huge avalanche struck.");
    }

    #[test]
    fn stopword_only_flags_skip_paraphrase() {
        let b = MockBackends::new(MockTables::builtin()).build();
        assert_eq!(paraphrase_with(&sent("the cat"), &BTreeSet::new(), &b).unwrap(), None);
        // CCD on "the ." flags only stopwords and punctuation
        let s = sent("the .");
        assert_eq!(generate_paraphrase_candidate(&s, &b).unwrap(), None);
    }

    #[test]
    fn single_synonym_candidate() {
        let mut tables = MockTables::default();
        tables.synonyms.insert("massive".into(), "huge".into());
        let b = MockBackends::new(tables).build();
        let s = sent("a massive wave hit the town");
        let c: BTreeSet<String> = ["massive".to_string()].into();
        let p = paraphrase_with(&s, &c, &b).unwrap().unwrap();
        assert_eq!(p.sentence.tokens(), tokenize_str("a huge wave hit the town"));
    }

    #[test]
    fn repair_rules() {
        let r = |s: &str| repair_removal(tokenize_str(s)).join(" ");
        assert_eq!(r(", the dog barked ."), "the dog barked .");
        assert_eq!(r("the dog barked , ."), "the dog barked .");
        assert_eq!(r("the dog ( ) barked"), "the dog barked");
        assert_eq!(r("the dog barked ,"), "the dog barked");
        assert_eq!(r("\" quoted \" text"), "\" quoted \" text");
    }

    proptest! {
        #[test]
        fn deletion_invariants(picks in proptest::collection::vec(0usize..14, 1..30)) {
            let vocab = ["the", "dog", "ran", "in", "park", ",", "of", "was", "with", ".", ";", "on", "big", "was"];
            let toks: Vec<&str> = picks.iter().map(|&i| vocab[i]).collect();
            let s = Sentence::from_tokens("p", &toks).unwrap();
            let b = MockBackends::new(MockTables::builtin()).build();
            let spans = b.parser.parse_constituents(&s).unwrap();
            let proper = spans.iter().filter(|c| c.len() < s.len()).count();
            let got = generate_deletion_candidates(&s, &b).unwrap();
            prop_assert!(got.len() <= 2 * proper);
            for p in &got {
                prop_assert_ne!(p.sentence.key(), s.key());
                let out = p.sentence.tokens();
                match p.kind {
                    EditKind::DeleteExtraction => {
                        prop_assert!(s.tokens().windows(out.len()).any(|w| w == out));
                    }
                    EditKind::DeleteRemoval => {
                        let mut it = s.tokens().iter();
                        prop_assert!(out.iter().all(|t| it.any(|x| x == t)));
                    }
                    EditKind::Paraphrase => prop_assert!(false),
                }
            }
        }
    }
}
