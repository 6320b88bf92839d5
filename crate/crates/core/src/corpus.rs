//! Corpus, lexicon, n-gram and attention file formats.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::features::{FeatureId, FeatureVector};
use crate::treequery::{parse_bracketed, ParseTree};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentencePair {
    pub id: usize,
    pub complex_text: String,
    pub simple_text: String,
    pub complex_tree: Option<ParseTree>,
    pub simple_tree: Option<ParseTree>,
}

impl SentencePair {
    pub fn new(id: usize, complex: impl Into<String>, simple: impl Into<String>) -> Self {
        Self {
            id,
            complex_text: complex.into(),
            simple_text: simple.into(),
            complex_tree: None,
            simple_tree: None,
        }
    }
}

/// Parses `complex<TAB>simple` lines. `origin` only labels errors.
pub fn parse_pairs(text: &str, origin: &Path) -> Result<Vec<SentencePair>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                origin,
                i + 1,
                format!("expected exactly one tab, found {}", fields.len() - 1),
            ));
        }
        if fields.iter().any(|f| f.trim().is_empty()) {
            return Err(Error::parse(origin, i + 1, "empty sentence field"));
        }
        pairs.push(SentencePair::new(i, fields[0], fields[1]));
    }
    Ok(pairs)
}

pub fn load_pairs(path: &Path) -> Result<Vec<SentencePair>> {
    parse_pairs(&read(path)?, path)
}

pub fn write_pairs(path: &Path, pairs: &[SentencePair]) -> Result<()> {
    let mut out = String::new();
    for p in pairs {
        for field in [&p.complex_text, &p.simple_text] {
            if field.contains(['\t', '\n', '\r']) {
                return Err(Error::Invalid(format!(
                    "pair {}: sentence contains a tab or newline",
                    p.id
                )));
            }
        }
        out.push_str(&p.complex_text);
        out.push('\t');
        out.push_str(&p.simple_text);
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// One bracketed tree per line; a blank line is a missing tree.
pub fn parse_trees(text: &str, n_expected: usize, origin: &Path) -> Result<Vec<Option<ParseTree>>> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() != n_expected {
        return Err(Error::Alignment(format!(
            "{}: {} tree lines for {} sentences",
            origin.display(),
            lines.len(),
            n_expected
        )));
    }
    lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            if line.trim().is_empty() {
                Ok(None)
            } else {
                parse_bracketed(line)
                    .map(Some)
                    .map_err(|e| Error::parse(origin, i + 1, e.to_string()))
            }
        })
        .collect()
}

pub fn load_trees(path: &Path, n_expected: usize) -> Result<Vec<Option<ParseTree>>> {
    parse_trees(&read(path)?, n_expected, path)
}

/// Word-keyed numeric table (AoA norms, prevalence norms, frequencies).
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconTable {
    pub name: String,
    pub columns: Vec<String>,
    entries: HashMap<String, Vec<f64>>,
}

impl LexiconTable {
    pub fn new(name: impl Into<String>, columns: Vec<String>) -> Self {
        Self {
            name: name.into(),
            columns,
            entries: HashMap::new(),
        }
    }

    /// Parses a TSV with header `word<TAB>col1<TAB>...`.
    pub fn parse(text: &str, name: &str, origin: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(origin, 1, "missing header"))?;
        let columns: Vec<String> = header.split('\t').skip(1).map(|c| c.trim().to_string()).collect();
        if columns.is_empty() {
            return Err(Error::parse(origin, 1, "header has no value columns"));
        }
        let mut table = LexiconTable::new(name, columns);
        for (i, line) in lines {
            let mut cells = line.split('\t');
            let word = cells.next().unwrap_or("").trim().to_lowercase();
            if word.is_empty() {
                return Err(Error::parse(origin, i + 1, "empty word"));
            }
            let values = cells
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::parse(origin, i + 1, format!("non-numeric cell `{c}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if values.len() != table.columns.len() {
                return Err(Error::parse(
                    origin,
                    i + 1,
                    format!("{} values for {} columns", values.len(), table.columns.len()),
                ));
            }
            if table.entries.contains_key(&word) {
                return Err(Error::DuplicateWord {
                    path: origin.to_path_buf(),
                    word,
                    line: i + 1,
                });
            }
            table.entries.insert(word, values);
        }
        Ok(table)
    }

    pub fn insert(&mut self, word: &str, values: Vec<f64>) -> Result<()> {
        if values.len() != self.columns.len() {
            return Err(Error::Invalid(format!(
                "{} values for {} columns",
                values.len(),
                self.columns.len()
            )));
        }
        self.entries.insert(word.to_lowercase(), values);
        Ok(())
    }

    /// Row for a word (case-folded), `None` if absent.
    pub fn lookup(&self, word: &str) -> Option<&[f64]> {
        match self.entries.get(word) {
            Some(v) => Some(v),
            None => self.entries.get(&word.to_lowercase()).map(Vec::as_slice),
        }
    }

    pub fn value(&self, word: &str, column: usize) -> Option<f64> {
        self.lookup(word).and_then(|row| row.get(column).copied())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.entries.iter().map(|(w, v)| (w.as_str(), v.as_slice()))
    }
}

pub fn load_lexicon(path: &Path) -> Result<LexiconTable> {
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("lexicon");
    LexiconTable::parse(&read(path)?, name, path)
}

/// A set of words or multi-word phrases, one per line, case-folded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WordList {
    words: HashSet<String>,
    phrases: HashMap<String, Vec<Vec<String>>>,
}

impl WordList {
    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut list = WordList::default();
        for e in entries {
            let parts: Vec<String> = e.as_ref().split_whitespace().map(str::to_lowercase).collect();
            match parts.len() {
                0 => {}
                1 => {
                    list.words.insert(parts.into_iter().next().expect("one part"));
                }
                _ => list.phrases.entry(parts[0].clone()).or_default().push(parts),
            }
        }
        list
    }

    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        Self::from_entries(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(Self::parse(&read(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word) || self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len() + self.phrases.values().map(Vec::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Marks positions of `folded` covered by a single-word or phrase entry.
    pub fn coverage(&self, folded: &[String]) -> Vec<bool> {
        let mut covered: Vec<bool> = folded.iter().map(|w| self.words.contains(w)).collect();
        for (i, w) in folded.iter().enumerate() {
            let Some(candidates) = self.phrases.get(w) else {
                continue;
            };
            for phrase in candidates {
                let end = i + phrase.len();
                if end <= folded.len() && folded[i..end] == phrase[..] {
                    covered[i..end].iter_mut().for_each(|c| *c = true);
                }
            }
        }
        covered
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Register {
    Spoken,
    Fiction,
    Magazine,
    News,
    Academic,
}

impl Register {
    pub const ALL: [Register; 5] = [
        Register::Spoken,
        Register::Fiction,
        Register::Magazine,
        Register::News,
        Register::Academic,
    ];

    /// File-name form.
    pub fn name(self) -> &'static str {
        match self {
            Register::Spoken => "spoken",
            Register::Fiction => "fiction",
            Register::Magazine => "magazine",
            Register::News => "news",
            Register::Academic => "academic",
        }
    }

    /// Suffix used in feature ids (`ngram2news`).
    pub fn short(self) -> &'static str {
        match self {
            Register::Spoken => "spok",
            Register::Fiction => "fic",
            Register::Magazine => "mag",
            Register::News => "news",
            Register::Academic => "acad",
        }
    }

    pub fn from_name(s: &str) -> Option<Register> {
        Register::ALL.into_iter().find(|r| r.name() == s || r.short() == s)
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-million frequencies of case-folded n-grams for one register and order.
#[derive(Debug, Clone, PartialEq)]
pub struct NgramTable {
    pub register: Register,
    pub order: usize,
    entries: HashMap<String, f64>,
}

impl NgramTable {
    pub fn new(register: Register, order: usize) -> Self {
        assert!((1..=5).contains(&order), "n-gram order must be in 1..=5");
        Self {
            register,
            order,
            entries: HashMap::new(),
        }
    }

    /// Case variants of one gram are summed.
    pub fn insert(&mut self, gram: &str, freq: f64) -> Result<()> {
        let toks: Vec<String> = gram.split_whitespace().map(str::to_lowercase).collect();
        if toks.len() != self.order {
            return Err(Error::Invalid(format!(
                "`{gram}` has {} tokens, expected {}",
                toks.len(),
                self.order
            )));
        }
        if !(freq.is_finite() && freq >= 0.0) {
            return Err(Error::Invalid(format!(
                "`{gram}`: frequency {freq} is not a non-negative number"
            )));
        }
        *self.entries.entry(toks.join(" ")).or_insert(0.0) += freq;
        Ok(())
    }

    pub fn parse(text: &str, register: Register, order: usize, origin: &Path) -> Result<Self> {
        let mut table = NgramTable::new(register, order);
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (gram, freq) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, i + 1, "expected `ngram<TAB>freq`"))?;
            let freq: f64 = freq
                .trim()
                .parse()
                .map_err(|_| Error::parse(origin, i + 1, format!("bad frequency `{freq}`")))?;
            table
                .insert(gram, freq)
                .map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
        }
        Ok(table)
    }

    /// Frequency of a space-joined, case-folded gram; 0 when absent.
    pub fn frequency(&self, gram: &str) -> f64 {
        self.entries.get(gram).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Loads every `<register>.<order>.tsv` in `dir`, sorted by register then
/// order. Other files are ignored.
pub fn load_ngrams(dir: &Path) -> Result<Vec<NgramTable>> {
    let mut tables = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some(stem) = name.strip_suffix(".tsv") else {
            continue;
        };
        let Some((reg, order)) = stem.split_once('.') else {
            continue;
        };
        let Some(register) = Register::from_name(reg) else {
            continue;
        };
        let order: usize = match order.parse() {
            Ok(o) if (1..=5).contains(&o) => o,
            _ => return Err(Error::parse(&path, 0, format!("n-gram order `{order}` outside 1..=5"))),
        };
        tables.push(NgramTable::parse(&read(&path)?, register, order, &path)?);
    }
    tables.sort_by_key(|t| (t.register, t.order));
    Ok(tables)
}

/// CLS-to-subword attention for one sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttentionRecord {
    #[serde(rename = "tokens")]
    pub subword_tokens: Vec<String>,
    pub word_map: Vec<usize>,
    #[serde(rename = "heads")]
    pub head_weights: Vec<Vec<f64>>,
}

impl AttentionRecord {
    /// Shape and value checks; word-map contiguity is checked on conversion.
    pub fn validate(&self) -> Result<()> {
        let t = self.subword_tokens.len();
        if self.word_map.len() != t {
            return Err(Error::Alignment(format!(
                "{} word_map entries for {t} tokens",
                self.word_map.len()
            )));
        }
        if self.head_weights.is_empty() {
            return Err(Error::Invalid("attention record has no heads".into()));
        }
        for (h, row) in self.head_weights.iter().enumerate() {
            if row.len() != t {
                return Err(Error::Alignment(format!(
                    "head {h} has {} weights for {t} tokens",
                    row.len()
                )));
            }
            if row.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
                return Err(Error::Invalid(format!("head {h} has a negative or non-finite weight")));
            }
        }
        Ok(())
    }
}

pub fn parse_attention(text: &str, origin: &Path) -> Result<Vec<AttentionRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let rec: AttentionRecord =
                serde_json::from_str(line).map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
            rec.validate().map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
            Ok(rec)
        })
        .collect()
}

pub fn load_attention(path: &Path) -> Result<Vec<AttentionRecord>> {
    parse_attention(&read(path)?, path)
}

/// One JSON object per row: `id`, `catalog`, then feature-name → value
/// (`null` when missing).
pub fn features_to_jsonl(rows: &[(String, FeatureVector)]) -> Result<String> {
    if let Some((first_id, first)) = rows.first() {
        for (id, v) in &rows[1..] {
            if !v.same_catalog(first) {
                return Err(Error::CatalogMismatch(format!(
                    "row `{id}` does not share the feature set of row `{first_id}`"
                )));
            }
        }
    }
    let mut out = String::new();
    for (id, v) in rows {
        let mut obj = Map::new();
        obj.insert("id".into(), Value::String(id.clone()));
        obj.insert("catalog".into(), Value::String(v.catalog_version().to_string()));
        for (f, x) in v.iter() {
            let val = match x {
                Some(x) => serde_json::Number::from_f64(x)
                    .map(Value::Number)
                    .unwrap_or(Value::Null),
                None => Value::Null,
            };
            obj.insert(f.name().to_string(), val);
        }
        out.push_str(&serde_json::to_string(&Value::Object(obj))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn export_features(rows: &[(String, FeatureVector)], path: &Path) -> Result<()> {
    let text = features_to_jsonl(rows)?;
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn features_from_jsonl(text: &str, origin: &Path) -> Result<Vec<(String, FeatureVector)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |m: String| Error::parse(origin, i + 1, m);
        let obj: Map<String, Value> = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let id = obj
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing string `id`".into()))?;
        let catalog = obj
            .get("catalog")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing string `catalog`".into()))?;
        let mut v = FeatureVector::with_version(catalog);
        for (k, x) in &obj {
            if k == "id" || k == "catalog" {
                continue;
            }
            let f = FeatureId::parse(k).map_err(|e| bad(e.to_string()))?;
            let val = match x {
                Value::Null => None,
                Value::Number(n) => n.as_f64(),
                other => return Err(bad(format!("`{k}`: expected number or null, got {other}"))),
            };
            v.insert(f, val);
        }
        rows.push((id.to_string(), v));
    }
    Ok(rows)
}

pub fn import_features(path: &Path) -> Result<Vec<(String, FeatureVector)>> {
    features_from_jsonl(&read(path)?, path)
}
