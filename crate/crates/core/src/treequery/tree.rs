use std::fmt;

use crate::error::{Error, Result};

/// A labeled, ordered constituency tree.
///
/// Pre-terminals are the leaves: `(NN dog)` is a node labeled `NN` with
/// `leaf_text = Some("dog")` and no children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    pub leaf_text: Option<String>,
}

impl ParseTree {
    pub fn leaf(label: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            children: Vec::new(),
            leaf_text: Some(text.into()),
        }
    }

    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> Self {
        Self {
            label: label.into(),
            children,
            leaf_text: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes in pre-order, starting with `self`.
    pub fn preorder(&self) -> Vec<&ParseTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }

    pub fn leaves(&self) -> Vec<&ParseTree> {
        self.preorder().into_iter().filter(|n| n.is_leaf()).collect()
    }

    /// Leaf words, left to right.
    pub fn words(&self) -> Vec<&str> {
        self.leaves()
            .into_iter()
            .filter_map(|l| l.leaf_text.as_deref())
            .collect()
    }

    /// Number of leaves whose tag is not punctuation.
    pub fn word_count(&self) -> usize {
        self.leaves()
            .into_iter()
            .filter(|l| !is_punctuation_tag(&l.label))
            .count()
    }

    pub fn to_bracketed(&self) -> String {
        let mut s = String::new();
        self.write_bracketed(&mut s);
        s
    }

    fn write_bracketed(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.label);
        if let Some(t) = &self.leaf_text {
            out.push(' ');
            out.push_str(t);
        }
        for c in &self.children {
            out.push(' ');
            c.write_bracketed(out);
        }
        out.push(')');
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracketed())
    }
}

/// POS tags that do not start with an ASCII letter (`.`, `,`, `:`, `` ` ``,
/// `-LRB-`, `$`, ...) mark punctuation and symbols.
pub fn is_punctuation_tag(label: &str) -> bool {
    !label.starts_with(|c: char| c.is_ascii_alphabetic())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn lex(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut toks = Vec::new();
    let mut atom_start: Option<(usize, usize)> = None;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some((cs, bs)) = atom_start.take() {
                toks.push((cs, Tok::Atom(&text[bs..bi])));
            }
            match c {
                '(' => toks.push((ci, Tok::Open)),
                ')' => toks.push((ci, Tok::Close)),
                _ => {}
            }
        } else if atom_start.is_none() {
            atom_start = Some((ci, bi));
        }
    }
    if let Some((cs, bs)) = atom_start {
        toks.push((cs, Tok::Atom(&text[bs..])));
    }
    toks
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::TreeSyntax {
        offset,
        message: message.into(),
    }
}

/// Parses one Penn-bracketed tree. A `ROOT` wrapper, or an unlabeled wrapper
/// around a single constituent, is stripped.
pub fn parse_bracketed(text: &str) -> Result<ParseTree> {
    let toks = lex(text);
    let end_offset = text.chars().count();
    if toks.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let mut pos = 0;
    let tree = parse_node(&toks, &mut pos, end_offset, true)?;
    if let Some((off, _)) = toks.get(pos) {
        return Err(syntax(*off, "trailing input after tree"));
    }
    Ok(strip_wrapper(tree))
}

fn strip_wrapper(tree: ParseTree) -> ParseTree {
    let wrapper = tree.label.is_empty() || tree.label == "ROOT";
    if wrapper && tree.children.len() == 1 && !tree.children[0].is_leaf() {
        return tree.children.into_iter().next().expect("one child");
    }
    tree
}

fn parse_node(toks: &[(usize, Tok<'_>)], pos: &mut usize, end: usize, outermost: bool) -> Result<ParseTree> {
    let (open_off, tok) = toks
        .get(*pos)
        .cloned()
        .ok_or_else(|| syntax(end, "unexpected end of input"))?;
    if tok != Tok::Open {
        return Err(syntax(open_off, "expected `(`"));
    }
    *pos += 1;

    let label = match toks.get(*pos) {
        Some((_, Tok::Atom(a))) => {
            *pos += 1;
            a.to_string()
        }
        Some((_, Tok::Open)) if outermost => String::new(),
        Some((off, _)) => return Err(syntax(*off, "constituent without a label")),
        None => return Err(syntax(end, "unexpected end of input")),
    };

    let mut children = Vec::new();
    let mut leaf_text: Option<String> = None;
    loop {
        match toks.get(*pos) {
            None => return Err(syntax(end, "unbalanced parentheses: missing `)`")),
            Some((_, Tok::Close)) => {
                *pos += 1;
                break;
            }
            Some((off, Tok::Atom(a))) => {
                if leaf_text.is_some() || !children.is_empty() {
                    return Err(syntax(*off, format!("unexpected token `{a}`")));
                }
                leaf_text = Some(a.to_string());
                *pos += 1;
            }
            Some((off, Tok::Open)) => {
                if leaf_text.is_some() {
                    return Err(syntax(*off, "pre-terminal with a subtree"));
                }
                children.push(parse_node(toks, pos, end, false)?);
            }
        }
    }

    if leaf_text.is_none() && children.is_empty() {
        return Err(syntax(open_off, format!("empty constituent `{label}`")));
    }
    if label.is_empty() && leaf_text.is_some() {
        return Err(syntax(open_off, "constituent without a label"));
    }
    Ok(ParseTree {
        label,
        children,
        leaf_text,
    })
}
