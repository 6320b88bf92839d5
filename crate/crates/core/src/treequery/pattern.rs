//! A small tree-pattern language in the style of Tregex.
//!
//! ```text
//! pattern  := node relation*
//! node     := desc | '(' pattern ')'
//! desc     := '__' | '/' regex '/' | LABEL ('|' LABEL)*
//! relation := '!'? op (desc | '(' pattern ')')
//! op       := '<' | '<<' | '>' | '>>' | '$+' | '$-' | '$++' | '$--' | '$'
//! ```
//!
//! All relations following a node apply to that node (conjunction); a
//! parenthesized target starts a nested pattern rooted at the related node.
//!
//! | op    | `A op B` holds when                      |
//! |-------|------------------------------------------|
//! | `<`   | B is a child of A                        |
//! | `<<`  | B is a descendant of A                   |
//! | `>`   | B is the parent of A                     |
//! | `>>`  | B is an ancestor of A                    |
//! | `$+`  | B is the sister immediately right of A   |
//! | `$-`  | B is the sister immediately left of A    |
//! | `$++` | B is a sister somewhere right of A       |
//! | `$--` | B is a sister somewhere left of A        |
//! | `$`   | B is a sister of A                       |
//!
//! Words are not nodes, but `TAG < word` on a pre-terminal compares the leaf
//! text, so `IN < that|That` selects complementizer `that`.

use std::fmt;

use regex::Regex;

use super::tree::ParseTree;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Child,
    Descendant,
    Parent,
    Ancestor,
    NextSister,
    PrevSister,
    RightSister,
    LeftSister,
    Sister,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Child => "<",
            Relation::Descendant => "<<",
            Relation::Parent => ">",
            Relation::Ancestor => ">>",
            Relation::NextSister => "$+",
            Relation::PrevSister => "$-",
            Relation::RightSister => "$++",
            Relation::LeftSister => "$--",
            Relation::Sister => "$",
        }
    }
}

#[derive(Debug, Clone)]
enum LabelMatcher {
    Any,
    Literals(Vec<String>),
    Regex(Regex),
}

impl LabelMatcher {
    fn matches(&self, label: &str) -> bool {
        match self {
            LabelMatcher::Any => true,
            LabelMatcher::Literals(ls) => ls.iter().any(|l| l == label),
            LabelMatcher::Regex(re) => re.is_match(label),
        }
    }
}

#[derive(Debug, Clone)]
struct Constraint {
    negated: bool,
    relation: Relation,
    target: Node,
}

#[derive(Debug, Clone)]
struct Node {
    label: LabelMatcher,
    constraints: Vec<Constraint>,
}

/// A compiled tree pattern.
#[derive(Debug, Clone)]
pub struct TreePattern {
    source: String,
    root: Node,
}

impl fmt::Display for TreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl std::str::FromStr for TreePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TreePattern::parse(s)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::PatternSyntax {
        offset,
        message: message.into(),
    }
}

const RESERVED: &[char] = &['(', ')', '|', '!', '<', '>', '/'];

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn pattern(&mut self) -> Result<Node> {
        self.skip_ws();
        let mut node = if self.peek() == Some('(') {
            let open = self.pos;
            self.pos += 1;
            let inner = self.pattern()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(perr(self.pos, format!("unclosed `(` opened at {open}")));
            }
            self.pos += 1;
            inner
        } else {
            Node {
                label: self.desc()?,
                constraints: Vec::new(),
            }
        };
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => {
                    let c = self.constraint()?;
                    node.constraints.push(c);
                }
            }
        }
        Ok(node)
    }

    fn constraint(&mut self) -> Result<Constraint> {
        let negated = if self.peek() == Some('!') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let relation = self.relation()?;
        self.skip_ws();
        let target = if self.peek() == Some('(') {
            let open = self.pos;
            self.pos += 1;
            let inner = self.pattern()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(perr(self.pos, format!("unclosed `(` opened at {open}")));
            }
            self.pos += 1;
            inner
        } else {
            Node {
                label: self.desc()?,
                constraints: Vec::new(),
            }
        };
        Ok(Constraint {
            negated,
            relation,
            target,
        })
    }

    fn relation(&mut self) -> Result<Relation> {
        let start = self.pos;
        let rel = match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some('<'), Some('<'), _) => (Relation::Descendant, 2),
            (Some('<'), _, _) => (Relation::Child, 1),
            (Some('>'), Some('>'), _) => (Relation::Ancestor, 2),
            (Some('>'), _, _) => (Relation::Parent, 1),
            (Some('$'), Some('+'), Some('+')) => (Relation::RightSister, 3),
            (Some('$'), Some('-'), Some('-')) => (Relation::LeftSister, 3),
            (Some('$'), Some('+'), _) => (Relation::NextSister, 2),
            (Some('$'), Some('-'), _) => (Relation::PrevSister, 2),
            (Some('$'), _, _) => (Relation::Sister, 1),
            _ => return Err(perr(start, "expected a relation operator")),
        };
        self.pos += rel.1;
        Ok(rel.0)
    }

    fn desc(&mut self) -> Result<LabelMatcher> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(perr(start, "expected a node description")),
            Some('/') => {
                self.pos += 1;
                let mut body = String::new();
                loop {
                    match self.peek() {
                        None => return Err(perr(start, "unterminated regular expression")),
                        Some('\\') if self.peek_at(1) == Some('/') => {
                            body.push('/');
                            self.pos += 2;
                        }
                        Some('/') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => {
                            body.push(c);
                            self.pos += 1;
                        }
                    }
                }
                Regex::new(&body)
                    .map(LabelMatcher::Regex)
                    .map_err(|e| perr(start, format!("bad regular expression: {e}")))
            }
            Some(_) => {
                let mut labels = vec![self.ident()?];
                while self.peek() == Some('|') {
                    self.pos += 1;
                    labels.push(self.ident()?);
                }
                if labels.len() == 1 && labels[0] == "__" {
                    Ok(LabelMatcher::Any)
                } else {
                    Ok(LabelMatcher::Literals(labels))
                }
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || RESERVED.contains(&c) || (c == '$' && s.is_empty()) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            let found = self
                .peek()
                .map(|c| format!("`{c}`"))
                .unwrap_or_else(|| "end of input".into());
            return Err(perr(start, format!("expected a label, found {found}")));
        }
        Ok(s)
    }
}

impl TreePattern {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser::new(src);
        let root = p.pattern()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(perr(p.pos, format!("unexpected `{c}`")));
        }
        Ok(TreePattern {
            source: p.src.trim().to_string(),
            root,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    /// All nodes of `tree` matching the pattern, in pre-order.
    pub fn matches<'t>(&self, tree: &'t ParseTree) -> Vec<&'t ParseTree> {
        let index = TreeIndex::new(tree);
        (0..index.nodes.len())
            .filter(|&i| index.satisfies(&self.root, i))
            .map(|i| index.nodes[i].tree)
            .collect()
    }

    /// Pre-order positions of matching nodes.
    pub fn match_positions(&self, tree: &ParseTree) -> Vec<usize> {
        let index = TreeIndex::new(tree);
        (0..index.nodes.len())
            .filter(|&i| index.satisfies(&self.root, i))
            .collect()
    }
}

/// Convenience wrapper returning every node of `tree` matching `pat`.
pub fn match_pattern<'t>(tree: &'t ParseTree, pat: &TreePattern) -> Vec<&'t ParseTree> {
    pat.matches(tree)
}

struct IndexedNode<'t> {
    tree: &'t ParseTree,
    parent: Option<usize>,
    children: Vec<usize>,
    /// Position among the parent's children.
    rank: usize,
    /// One past the last descendant in pre-order.
    end: usize,
}

pub(crate) struct TreeIndex<'t> {
    nodes: Vec<IndexedNode<'t>>,
}

impl<'t> TreeIndex<'t> {
    pub(crate) fn new(tree: &'t ParseTree) -> Self {
        let mut nodes = Vec::new();
        Self::push(tree, None, 0, &mut nodes);
        TreeIndex { nodes }
    }

    fn push(tree: &'t ParseTree, parent: Option<usize>, rank: usize, nodes: &mut Vec<IndexedNode<'t>>) -> usize {
        let id = nodes.len();
        nodes.push(IndexedNode {
            tree,
            parent,
            children: Vec::new(),
            rank,
            end: 0,
        });
        for (r, c) in tree.children.iter().enumerate() {
            let cid = Self::push(c, Some(id), r, nodes);
            nodes[id].children.push(cid);
        }
        nodes[id].end = nodes.len();
        id
    }

    fn satisfies(&self, node: &Node, i: usize) -> bool {
        node.label.matches(&self.nodes[i].tree.label) && node.constraints.iter().all(|c| self.constraint_holds(c, i))
    }

    fn constraint_holds(&self, c: &Constraint, i: usize) -> bool {
        let n = &self.nodes[i];
        let found = match c.relation {
            Relation::Child => {
                if n.tree.is_leaf() {
                    c.target.constraints.is_empty()
                        && n.tree.leaf_text.as_deref().is_some_and(|w| c.target.label.matches(w))
                } else {
                    n.children.iter().any(|&k| self.satisfies(&c.target, k))
                }
            }
            Relation::Descendant => (i + 1..n.end).any(|k| self.satisfies(&c.target, k)),
            Relation::Parent => n.parent.is_some_and(|p| self.satisfies(&c.target, p)),
            Relation::Ancestor => {
                let mut cur = n.parent;
                let mut hit = false;
                while let Some(p) = cur {
                    if self.satisfies(&c.target, p) {
                        hit = true;
                        break;
                    }
                    cur = self.nodes[p].parent;
                }
                hit
            }
            Relation::NextSister
            | Relation::PrevSister
            | Relation::RightSister
            | Relation::LeftSister
            | Relation::Sister => match n.parent {
                None => false,
                Some(p) => {
                    let sibs = &self.nodes[p].children;
                    let r = n.rank;
                    let candidates: Vec<usize> = match c.relation {
                        Relation::NextSister => sibs.get(r + 1).copied().into_iter().collect(),
                        Relation::PrevSister => {
                            if r > 0 {
                                vec![sibs[r - 1]]
                            } else {
                                vec![]
                            }
                        }
                        Relation::RightSister => sibs[r + 1..].to_vec(),
                        Relation::LeftSister => sibs[..r].to_vec(),
                        _ => sibs.iter().copied().filter(|&k| k != i).collect(),
                    };
                    candidates.into_iter().any(|k| self.satisfies(&c.target, k))
                }
            },
        };
        found != c.negated
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
