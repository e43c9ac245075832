//! Penn-style bracketed trees and their constituent spans.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::is_punctuation;

const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("unbalanced brackets at byte {0}")]
    Unbalanced(usize),
    #[error("node at byte {0} has no children")]
    EmptyNode(usize),
    #[error("unexpected text after the root tree at byte {0}")]
    TrailingInput(usize),
    #[error("input contains no tree")]
    NoTree,
    #[error("tree nesting deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("tree leaf {leaf:?} does not match the sentence near token {position}")]
    Misaligned { leaf: String, position: usize },
}

/// A labelled constituent covering tokens `start..end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constituent {
    pub start: usize,
    pub end: usize,
    pub label: String,
    pub depth: usize,
}

impl Constituent {
    pub fn new(start: usize, end: usize, label: impl Into<String>, depth: usize) -> Self {
        Self {
            start,
            end,
            label: label.into(),
            depth,
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    fn contains(&self, other: &Constituent) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    fn disjoint(&self, other: &Constituent) -> bool {
        self.end <= other.start || other.end <= self.start
    }
}

/// Checks that every span is non-empty and within `0..len`, that `(0, len)` is
/// present, and that any two spans are disjoint or nested.
pub fn check_well_nested(spans: &[Constituent], len: usize) -> Result<(), String> {
    if !spans.iter().any(|c| c.start == 0 && c.end == len) {
        return Err("root span missing".into());
    }
    for (i, a) in spans.iter().enumerate() {
        if a.is_empty() || a.end > len {
            return Err(format!("span {}..{} out of range", a.start, a.end));
        }
        for b in &spans[i + 1..] {
            if !(a.disjoint(b) || a.contains(b) || b.contains(a)) {
                return Err(format!(
                    "spans {}..{} and {}..{} cross",
                    a.start, a.end, b.start, b.end
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf(String),
    Tree(Tree),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub label: String,
    pub children: Vec<Node>,
}

enum Tok<'a> {
    Open(usize),
    Close(usize),
    Atom(usize, &'a str),
}

fn lex(input: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut atom_start: Option<usize> = None;
    for (i, c) in input.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = atom_start.take() {
                out.push(Tok::Atom(s, &input[s..i]));
            }
            match c {
                '(' => out.push(Tok::Open(i)),
                ')' => out.push(Tok::Close(i)),
                _ => {}
            }
        } else if atom_start.is_none() {
            atom_start = Some(i);
        }
    }
    if let Some(s) = atom_start {
        out.push(Tok::Atom(s, &input[s..]));
    }
    out
}

impl Tree {
    /// Parses one bracketed tree such as `(S (NP the dog) (VP barked))`.
    /// A label-less outer wrapper around a single tree is removed.
    pub fn parse(input: &str) -> Result<Tree, TreeError> {
        let toks = lex(input);
        let mut stack: Vec<(usize, Tree)> = Vec::new();
        let mut root: Option<Tree> = None;
        let mut i = 0;
        while i < toks.len() {
            match toks[i] {
                Tok::Open(pos) => {
                    if root.is_some() {
                        return Err(TreeError::TrailingInput(pos));
                    }
                    if stack.len() >= MAX_DEPTH {
                        return Err(TreeError::TooDeep);
                    }
                    let label = match toks.get(i + 1) {
                        Some(Tok::Atom(_, a)) => {
                            i += 1;
                            (*a).to_owned()
                        }
                        _ => String::new(),
                    };
                    stack.push((
                        pos,
                        Tree {
                            label,
                            children: Vec::new(),
                        },
                    ));
                }
                Tok::Close(pos) => {
                    let (open_pos, node) = stack.pop().ok_or(TreeError::Unbalanced(pos))?;
                    if node.children.is_empty() {
                        return Err(TreeError::EmptyNode(open_pos));
                    }
                    match stack.last_mut() {
                        Some((_, parent)) => parent.children.push(Node::Tree(node)),
                        None => root = Some(node),
                    }
                }
                Tok::Atom(pos, a) => match stack.last_mut() {
                    Some((_, parent)) => parent.children.push(Node::Leaf(a.to_owned())),
                    None => return Err(TreeError::TrailingInput(pos)),
                },
            }
            i += 1;
        }
        if let Some((pos, _)) = stack.first() {
            return Err(TreeError::Unbalanced(*pos));
        }
        let mut root = root.ok_or(TreeError::NoTree)?;
        while root.label.is_empty() && root.children.len() == 1 {
            match root.children.pop() {
                Some(Node::Tree(t)) => root = t,
                Some(leaf) => {
                    root.children.push(leaf);
                    break;
                }
                None => unreachable!(),
            }
        }
        Ok(root)
    }

    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![self.children.iter()];
        while let Some(top) = stack.last_mut() {
            match top.next() {
                Some(Node::Leaf(w)) => out.push(w.as_str()),
                Some(Node::Tree(t)) => stack.push(t.children.iter()),
                None => {
                    stack.pop();
                }
            }
        }
        out
    }

    /// Node leaf ranges in preorder: `(first_leaf, end_leaf, label, depth)`.
    fn leaf_ranges(&self) -> Vec<(usize, usize, &str, usize)> {
        fn walk<'a>(t: &'a Tree, depth: usize, next: &mut usize, out: &mut Vec<(usize, usize, &'a str, usize)>) {
            let slot = out.len();
            let start = *next;
            out.push((start, start, &t.label, depth));
            for child in &t.children {
                match child {
                    Node::Leaf(_) => *next += 1,
                    Node::Tree(sub) => walk(sub, depth + 1, next, out),
                }
            }
            out[slot].1 = *next;
        }
        let mut out = Vec::new();
        let mut next = 0;
        walk(self, 0, &mut next, &mut out);
        out
    }

    /// Aligns the tree's leaves to `tokens` and returns one constituent per node.
    ///
    /// Punctuation tokens absent from the tree are skipped during alignment.
    /// Spans starting at the first leaf extend to token 0 and spans ending at the
    /// last leaf extend to the end of the sentence, so sentence-final punctuation
    /// belongs to every constituent that closes the sentence.
    pub fn constituents(&self, tokens: &[String]) -> Result<Vec<Constituent>, TreeError> {
        let leaves = self.leaves();
        let mut map = Vec::with_capacity(leaves.len());
        let mut j = 0;
        for leaf in &leaves {
            let want = unescape_leaf(leaf);
            loop {
                let Some(tok) = tokens.get(j) else {
                    return Err(TreeError::Misaligned {
                        leaf: (*leaf).to_owned(),
                        position: j,
                    });
                };
                if tok.to_lowercase() == want {
                    map.push(j);
                    j += 1;
                    break;
                }
                if is_punctuation(tok) {
                    j += 1;
                    continue;
                }
                return Err(TreeError::Misaligned {
                    leaf: (*leaf).to_owned(),
                    position: j,
                });
            }
        }
        if let Some(extra) = tokens[j..].iter().position(|t| !is_punctuation(t)) {
            return Err(TreeError::Misaligned {
                leaf: tokens[j + extra].clone(),
                position: j + extra,
            });
        }
        let n = tokens.len();
        let last = leaves.len();
        Ok(self
            .leaf_ranges()
            .into_iter()
            .map(|(a, b, label, depth)| {
                let start = if a == 0 { 0 } else { map[a] };
                let end = if b == last { n } else { map[b - 1] + 1 };
                Constituent::new(start, end, label, depth)
            })
            .collect())
    }
}

fn unescape_leaf(leaf: &str) -> String {
    match leaf {
        "-LRB-" => "(".into(),
        "-RRB-" => ")".into(),
        "-LSB-" => "[".into(),
        "-RSB-" => "]".into(),
        "-LCB-" => "{".into(),
        "-RCB-" => "}".into(),
        "``" | "''" => "\"".into(),
        other => other.to_lowercase(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize_str;
    use proptest::prelude::*;

    fn spans(tree: &str, sentence: &str) -> Vec<(usize, usize, String, usize)> {
        let mut v: Vec<_> = Tree::parse(tree)
            .unwrap()
            .constituents(&tokenize_str(sentence))
            .unwrap()
            .into_iter()
            .map(|c| (c.start, c.end, c.label, c.depth))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn bracket_example_with_final_period() {
        // hand enumeration: S covers all four tokens, "." joins the spans
        // that end at the last leaf
        assert_eq!(
            spans("(S (NP the dog) (VP barked))", "the dog barked."),
            vec![
                (0, 2, "NP".into(), 1),
                (0, 4, "S".into(), 0),
                (2, 4, "VP".into(), 1)
            ]
        );
    }

    #[test]
    fn preterminals_and_wrapper() {
        let t = "( (S (NP (DT The) (NN dog)) (VP (VBD barked)) (. .)) )";
        let got = spans(t, "The dog barked.");
        assert!(got.contains(&(0, 4, "S".into(), 0)));
        assert!(got.contains(&(0, 2, "NP".into(), 1)));
        assert!(got.contains(&(3, 4, ".".into(), 1)));
        assert!(got.contains(&(1, 2, "NN".into(), 2)));
    }

    #[test]
    fn single_token_only_root() {
        assert_eq!(spans("(S hello)", "hello"), vec![(0, 1, "S".into(), 0)]);
    }

    #[test]
    fn internal_punctuation_skipped() {
        let got = spans("(S (NP a) (VP b c))", "a, b c!");
        assert_eq!(got, vec![(0, 1, "NP".into(), 1), (0, 5, "S".into(), 0), (2, 5, "VP".into(), 1)]);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(Tree::parse("(S (NP the dog)"), Err(TreeError::Unbalanced(0)));
        assert!(matches!(Tree::parse("(S the))"), Err(TreeError::Unbalanced(_))));
        assert!(matches!(Tree::parse("(S)"), Err(TreeError::EmptyNode(_))));
        assert!(matches!(Tree::parse("(S a) (S b)"), Err(TreeError::TrailingInput(_))));
        assert!(matches!(Tree::parse("word"), Err(TreeError::TrailingInput(_))));
        assert_eq!(Tree::parse("   "), Err(TreeError::NoTree));
        let deep = "(".repeat(1000) + "x" + &")".repeat(1000);
        assert_eq!(Tree::parse(&deep), Err(TreeError::TooDeep));
        let t = Tree::parse("(S (NP the cat) (VP sat))").unwrap();
        assert!(matches!(
            t.constituents(&tokenize_str("the dog sat")),
            Err(TreeError::Misaligned { .. })
        ));
        assert!(t.constituents(&tokenize_str("the cat sat down")).is_err());
    }

    #[test]
    fn leaves_in_order() {
        let t = Tree::parse("(S (A (B x) y) (C z (D w)) v)").unwrap();
        assert_eq!(t.leaves(), ["x", "y", "z", "w", "v"]);
    }

    fn render(words: &mut std::slice::Iter<'_, String>, shape: &[u8], depth: usize, out: &mut String) {
        out.push_str(&format!("(X{depth}"));
        let mut any = false;
        for &b in shape.iter().take(3) {
            if b % 3 == 0 && depth < 6 && shape.len() > 1 {
                out.push(' ');
                render(words, &shape[1..], depth + 1, out);
                any = true;
            } else if let Some(w) = words.next() {
                out.push(' ');
                out.push_str(w);
                any = true;
            }
        }
        if !any {
            out.push_str(" filler");
        }
        out.push(')');
    }

    proptest! {
        #[test]
        fn random_trees_give_well_nested_spans(shape in proptest::collection::vec(any::<u8>(), 1..20), punct in any::<bool>()) {
            let words: Vec<String> = (0..40).map(|i| format!("w{i}")).collect();
            let mut text = String::new();
            render(&mut words.iter(), &shape, 0, &mut text);
            let tree = Tree::parse(&text).unwrap();
            let mut tokens: Vec<String> = tree.leaves().iter().map(|s| s.to_string()).collect();
            if punct {
                tokens.insert(tokens.len() / 2, ",".into());
                tokens.push(".".into());
            }
            let spans = tree.constituents(&tokens).unwrap();
            prop_assert!(check_well_nested(&spans, tokens.len()).is_ok());
        }
    }
}
