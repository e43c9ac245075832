//! Backend spec strings.
//!
//! `mock` or `mock:key=value,...` with keys `lexicon`, `synonyms`, `verbs`
//! (table file paths), `heads`, `dim` and `leaky` (`true` lets the paraphraser
//! emit constrained words). `adapter:...` names externally
//! hosted models, which this binary does not link.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use editsimp::backends::mock::{parse_synonyms, parse_word_list, MockBackends, MockTables};
use editsimp::backends::{Backends, Tree};
use editsimp::Sentence;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BackendSpec {
    Mock {
        lexicon: Option<PathBuf>,
        synonyms: Option<PathBuf>,
        verbs: Option<PathBuf>,
        heads: usize,
        dim: usize,
        leaky: bool,
    },
    Adapter {
        spec: String,
    },
}

impl Default for BackendSpec {
    fn default() -> Self {
        BackendSpec::Mock {
            lexicon: None,
            synonyms: None,
            verbs: None,
            heads: 4,
            dim: 1024,
            leaky: false,
        }
    }
}

impl FromStr for BackendSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (scheme, rest) = s.split_once(':').unwrap_or((s, ""));
        match scheme.trim() {
            "mock" => {}
            "adapter" => return Ok(BackendSpec::Adapter { spec: rest.to_owned() }),
            other => return Err(format!("unknown backend scheme {other:?} (expected mock or adapter)")),
        }
        let BackendSpec::Mock {
            mut lexicon,
            mut synonyms,
            mut verbs,
            mut heads,
            mut dim,
            mut leaky,
        } = BackendSpec::default()
        else {
            unreachable!()
        };
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in backend spec, got {part:?}"))?;
            let count = |v: &str| match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(format!("{k} must be a positive integer, got {v:?}")),
            };
            match k.trim() {
                "lexicon" => lexicon = Some(PathBuf::from(v.trim())),
                "synonyms" => synonyms = Some(PathBuf::from(v.trim())),
                "verbs" => verbs = Some(PathBuf::from(v.trim())),
                "heads" => heads = count(v)?,
                "dim" => dim = count(v)?,
                "leaky" => {
                    leaky = v
                        .trim()
                        .parse()
                        .map_err(|_| format!("leaky must be true or false, got {v:?}"))?
                }
                other => return Err(format!("unknown mock backend option {other:?}")),
            }
        }
        Ok(BackendSpec::Mock {
            lexicon,
            synonyms,
            verbs,
            heads,
            dim,
            leaky,
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

impl BackendSpec {
    /// Mock backends are deterministic and never touch a randomness source.
    pub fn is_seedless(&self) -> bool {
        matches!(self, BackendSpec::Mock { .. })
    }

    /// Builds the backends, registering any gold parse trees with the parser.
    pub fn build(&self, trees: Vec<(Sentence, Tree)>) -> Result<Backends, CliError> {
        let BackendSpec::Mock {
            lexicon,
            synonyms,
            verbs,
            heads,
            dim,
            leaky,
        } = self
        else {
            return Err(CliError::validation(
                "adapter backends are not linked into this binary; use a mock:... spec",
            ));
        };
        let mut tables = MockTables::builtin();
        let table_err = |p: &Path, e: editsimp::backends::mock::TableError| {
            CliError::validation(format!("{}: {e}", p.display()))
        };
        if let Some(p) = lexicon {
            tables.complex = parse_word_list(&read(p)?).map_err(|e| table_err(p, e))?;
        }
        if let Some(p) = synonyms {
            tables.synonyms = parse_synonyms(&read(p)?).map_err(|e| table_err(p, e))?;
        }
        if let Some(p) = verbs {
            tables.verbs = parse_word_list(&read(p)?).map_err(|e| table_err(p, e))?;
        }
        let mut mock = MockBackends::new(tables).heads(*heads).dim(*dim);
        mock.leaky_paraphraser = *leaky;
        for (s, t) in trees {
            mock = mock.tree(s, t);
        }
        Ok(mock.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("mock".parse::<BackendSpec>().unwrap(), BackendSpec::default());
        let s: BackendSpec = "mock:heads=2, dim=64,lexicon=words.txt".parse().unwrap();
        assert_eq!(
            s,
            BackendSpec::Mock {
                lexicon: Some("words.txt".into()),
                synonyms: None,
                verbs: None,
                heads: 2,
                dim: 64,
                leaky: false
            }
        );
        assert!(matches!("adapter:simplicity=x".parse(), Ok(BackendSpec::Adapter { .. })));
        assert!("mock:heads=0".parse::<BackendSpec>().is_err());
        assert!("mock:color=red".parse::<BackendSpec>().is_err());
        assert!("gpu:x".parse::<BackendSpec>().is_err());
        assert!("mock:heads".parse::<BackendSpec>().is_err());
    }

    #[test]
    fn adapter_is_not_buildable() {
        let s: BackendSpec = "adapter:simplicity=x".parse().unwrap();
        assert!(!s.is_seedless());
        assert!(matches!(s.build(Vec::new()), Err(CliError::Validation(_))));
    }
}
