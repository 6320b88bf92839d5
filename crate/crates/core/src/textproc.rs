//! Tokenization and word, character and syllable counting.
//!
//! Everything downstream (readability, lexical richness, n-gram lookups,
//! control-token ratios) is computed from [`TokenizedSentence`], so the rules
//! here are deliberately simple and fully deterministic:
//!
//! * the text is split on Unicode whitespace;
//! * each chunk keeps its span from the first to the last alphanumeric
//!   character as one token, and any punctuation run before or after it becomes
//!   a separate token;
//! * a chunk without any alphanumeric character is a single punctuation token.
//!
//! A token is a *word* iff it contains at least one letter or digit.

use std::collections::HashMap;
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenizedSentence {
    pub tokens: Vec<String>,
    /// Byte ranges of each token in the original text.
    pub spans: Vec<Range<usize>>,
    /// Indices into `tokens` of the word tokens, ascending.
    pub word_indices: Vec<usize>,
}

impl TokenizedSentence {
    pub fn n_words(&self) -> usize {
        self.word_indices.len()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.word_indices.iter().map(move |&i| self.tokens[i].as_str())
    }

    /// Case-folded word tokens.
    pub fn folded_words(&self) -> Vec<String> {
        self.words().map(str::to_lowercase).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub fn is_word(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric)
}

pub fn tokenize(text: &str) -> TokenizedSentence {
    let mut out = TokenizedSentence::default();
    let push = |out: &mut TokenizedSentence, start: usize, end: usize| {
        let tok = &text[start..end];
        if is_word(tok) {
            out.word_indices.push(out.tokens.len());
        }
        out.tokens.push(tok.to_string());
        out.spans.push(start..end);
    };

    for (chunk_start, chunk) in split_whitespace_indices(text) {
        let first = chunk.char_indices().find(|(_, c)| c.is_alphanumeric());
        let last = chunk.char_indices().rev().find(|(_, c)| c.is_alphanumeric());
        match (first, last) {
            (Some((f, _)), Some((l, lc))) => {
                let core_end = l + lc.len_utf8();
                if f > 0 {
                    push(&mut out, chunk_start, chunk_start + f);
                }
                push(&mut out, chunk_start + f, chunk_start + core_end);
                if core_end < chunk.len() {
                    push(&mut out, chunk_start + core_end, chunk_start + chunk.len());
                }
            }
            _ => push(&mut out, chunk_start, chunk_start + chunk.len()),
        }
    }
    out
}

fn split_whitespace_indices(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut chunks = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                chunks.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        chunks.push((s, &text[s..]));
    }
    chunks.into_iter()
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count: maximal vowel groups (`aeiouy`), minus one for a
/// terminal silent `e` as long as the count stays positive. Never below 1.
///
/// "rhythm" counts as 1 and "table" as 1; both are known undercounts of the
/// heuristic. Use [`SyllableCounter`] with an override file to correct them.
pub fn count_syllables(word: &str) -> usize {
    let lower: Vec<char> = word.to_lowercase().chars().filter(|c| c.is_alphabetic()).collect();
    if lower.is_empty() {
        return 1;
    }
    let mut groups = 0;
    let mut in_group = false;
    for &c in &lower {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    if lower.last() == Some(&'e') && groups > 1 {
        groups -= 1;
    }
    groups.max(1)
}

/// Syllable counting with an optional per-word override dictionary.
#[derive(Debug, Clone, Default)]
pub struct SyllableCounter {
    overrides: HashMap<String, usize>,
}

impl SyllableCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a `word<TAB>count` override file. Words are case-folded.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut overrides = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, count) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(path, i + 1, "expected `word<TAB>count`"))?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, i + 1, format!("bad syllable count `{count}`")))?;
            if count == 0 {
                return Err(Error::parse(path, i + 1, "syllable count must be >= 1"));
            }
            overrides.insert(word.trim().to_lowercase(), count);
        }
        Ok(Self { overrides })
    }

    pub fn count(&self, word: &str) -> usize {
        if !self.overrides.is_empty() {
            if let Some(&n) = self.overrides.get(&word.to_lowercase()) {
                return n;
            }
        }
        count_syllables(word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentenceStats {
    pub n_words: usize,
    /// Letters and digits inside word tokens.
    pub n_chars: usize,
    pub n_syllables: usize,
    pub n_sentences: usize,
    /// Words with three or more syllables.
    pub n_complex_words: usize,
    /// Words with seven or more characters.
    pub n_long_words: usize,
    pub n_monosyllables: usize,
}

impl Default for SentenceStats {
    fn default() -> Self {
        Self {
            n_words: 0,
            n_chars: 0,
            n_syllables: 0,
            n_sentences: 1,
            n_complex_words: 0,
            n_long_words: 0,
            n_monosyllables: 0,
        }
    }
}

impl SentenceStats {
    /// Sums every count; `n_sentences` is also summed.
    pub fn merge(&self, other: &SentenceStats) -> SentenceStats {
        SentenceStats {
            n_words: self.n_words + other.n_words,
            n_chars: self.n_chars + other.n_chars,
            n_syllables: self.n_syllables + other.n_syllables,
            n_sentences: self.n_sentences + other.n_sentences,
            n_complex_words: self.n_complex_words + other.n_complex_words,
            n_long_words: self.n_long_words + other.n_long_words,
            n_monosyllables: self.n_monosyllables + other.n_monosyllables,
        }
    }
}

pub fn word_length(word: &str) -> usize {
    word.chars().filter(|c| c.is_alphanumeric()).count()
}

pub fn sentence_stats(ts: &TokenizedSentence) -> SentenceStats {
    sentence_stats_with(ts, &SyllableCounter::default())
}

pub fn sentence_stats_with(ts: &TokenizedSentence, syllables: &SyllableCounter) -> SentenceStats {
    let mut st = SentenceStats::default();
    for w in ts.words() {
        let len = word_length(w);
        let syl = syllables.count(w);
        st.n_words += 1;
        st.n_chars += len;
        st.n_syllables += syl;
        if syl >= 3 {
            st.n_complex_words += 1;
        }
        if syl == 1 {
            st.n_monosyllables += 1;
        }
        if len >= 7 {
            st.n_long_words += 1;
        }
    }
    st
}
