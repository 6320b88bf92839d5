//! Word highlighting: attention-derived, random and AoA baselines, gold masks
//! from aligned pairs, and their evaluation.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{AttentionRecord, LexiconTable, SentencePair};
use crate::error::{Error, Result};
use crate::metrics::{ter_tokens, TerMode};
use crate::textproc::{tokenize, TokenizedSentence};

/// Per-word marks; `true` means highlighted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HighlightMask(pub Vec<bool>);

impl HighlightMask {
    pub fn empty(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Space-separated `0`/`1`.
    pub fn to_line(&self) -> String {
        self.0
            .iter()
            .map(|&b| if b { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        line.split_whitespace()
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Invalid(format!("mask entry `{other}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSource {
    Attention,
    Uniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordWeights {
    pub weights: Vec<f64>,
    pub source: WeightSource,
}

impl WordWeights {
    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n.max(1) as f64; n],
            source: WeightSource::Uniform,
        }
    }
}

/// Mean subword weight per word within each head, then the mean over heads.
pub fn attention_to_word_weights(rec: &AttentionRecord) -> Result<WordWeights> {
    rec.validate()?;
    let mut n_words = 0;
    for (i, &w) in rec.word_map.iter().enumerate() {
        let prev = if i == 0 { None } else { Some(rec.word_map[i - 1]) };
        let ok = match prev {
            None => w == 0,
            Some(p) => w == p || w == p + 1,
        };
        if !ok {
            return Err(Error::Alignment(format!(
                "word_map must be non-decreasing and contiguous from 0; entry {i} is {w}"
            )));
        }
        n_words = w + 1;
    }
    let mut pieces = vec![0usize; n_words];
    for &w in &rec.word_map {
        pieces[w] += 1;
    }
    let mut total = vec![0.0; n_words];
    for head in &rec.head_weights {
        let mut sums = vec![0.0; n_words];
        for (&w, &x) in rec.word_map.iter().zip(head) {
            sums[w] += x;
        }
        for ((t, s), p) in total.iter_mut().zip(sums).zip(&pieces) {
            *t += s / *p as f64;
        }
    }
    let h = rec.head_weights.len() as f64;
    Ok(WordWeights {
        weights: total.into_iter().map(|t| t / h).collect(),
        source: WeightSource::Attention,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Comparator {
    #[default]
    Below,
    Above,
}

/// Highlights words whose weight is strictly below (or above) the mean.
/// Weights equal to the mean up to rounding error are never highlighted.
pub fn threshold_highlight(w: &WordWeights, comparator: Comparator) -> HighlightMask {
    let n = w.weights.len() as f64;
    let sum: f64 = w.weights.iter().sum();
    HighlightMask(
        w.weights
            .iter()
            .map(|&x| {
                let diff = n * x - sum;
                let tol = 4.0 * f64::EPSILON * (sum.abs() + (n * x).abs());
                match comparator {
                    Comparator::Below => diff < -tol,
                    Comparator::Above => diff > tol,
                }
            })
            .collect(),
    )
}

pub enum Baseline<'a> {
    Random { p: f64, seed: u64 },
    Aoa { lexicon: &'a LexiconTable, cutoff: f64 },
}

/// Column of an AoA lexicon holding the rating.
fn aoa_column(lex: &LexiconTable) -> usize {
    ["AoA", "AoA_Kup_lem", "Rating.Mean"]
        .iter()
        .find_map(|c| lex.column_index(c))
        .unwrap_or(0)
}

pub fn baseline_highlight(ts: &TokenizedSentence, method: &Baseline<'_>) -> Result<HighlightMask> {
    match *method {
        Baseline::Random { p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(format!("highlight probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(HighlightMask((0..ts.n_words()).map(|_| rng.gen::<f64>() < p).collect()))
        }
        Baseline::Aoa { lexicon, cutoff } => {
            let col = aoa_column(lexicon);
            Ok(HighlightMask(
                ts.words()
                    .map(|w| lexicon.value(w, col).is_some_and(|a| a >= cutoff))
                    .collect(),
            ))
        }
    }
}

/// Marks complex-side words whose case-folded count exceeds their count on
/// the simple side; of repeated words, the later occurrences are marked.
pub fn gold_highlight(pair: &SentencePair) -> HighlightMask {
    let complex = tokenize(&pair.complex_text).folded_words();
    let mut simple: HashMap<String, usize> = HashMap::new();
    for w in tokenize(&pair.simple_text).folded_words() {
        *simple.entry(w).or_default() += 1;
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    HighlightMask(
        complex
            .iter()
            .map(|w| {
                let k = seen.entry(w).or_default();
                *k += 1;
                *k > simple.get(w).copied().unwrap_or(0)
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Token-level precision, recall and F1. An empty prediction has precision 1
/// only if the gold mask is empty too; an empty gold mask has recall 1.
pub fn eval_highlight(pred: &HighlightMask, gold: &HighlightMask) -> Result<Prf> {
    if pred.len() != gold.len() {
        return Err(Error::Alignment(format!(
            "prediction has {} words, gold has {}",
            pred.len(),
            gold.len()
        )));
    }
    let tp = pred.0.iter().zip(&gold.0).filter(|(p, g)| **p && **g).count() as f64;
    let (np, ng) = (pred.count() as f64, gold.count() as f64);
    let precision = if np == 0.0 {
        if ng == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        tp / np
    };
    let recall = if ng == 0.0 { 1.0 } else { tp / ng };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(Prf { precision, recall, f1 })
}

/// Tokens of `ts` with highlighted words removed; punctuation stays.
pub fn unhighlighted_tokens(ts: &TokenizedSentence, mask: &HighlightMask) -> Result<Vec<String>> {
    if mask.len() != ts.n_words() {
        return Err(Error::Alignment(format!(
            "mask has {} entries for {} words",
            mask.len(),
            ts.n_words()
        )));
    }
    let mut drop = vec![false; ts.tokens.len()];
    for (&ti, &m) in ts.word_indices.iter().zip(&mask.0) {
        drop[ti] = m;
    }
    Ok(ts
        .tokens
        .iter()
        .zip(drop)
        .filter(|(_, d)| !d)
        .map(|(t, _)| t.to_lowercase())
        .collect())
}

/// TER between the unhighlighted part of `sentence` and `target`.
pub fn highlight_ter(sentence: &str, mask: &HighlightMask, target: &str) -> Result<f64> {
    let hyp = unhighlighted_tokens(&tokenize(sentence), mask)?;
    let reference: Vec<String> = tokenize(target).tokens.iter().map(|t| t.to_lowercase()).collect();
    Ok(ter_tokens(&hyp, &reference, TerMode::Shifts)?.score)
}

/// The sentence with each highlighted word wrapped in `**`.
pub fn render_highlight(sentence: &str, mask: &HighlightMask) -> Result<String> {
    let ts = tokenize(sentence);
    if mask.len() != ts.n_words() {
        return Err(Error::Alignment(format!(
            "mask has {} entries for {} words",
            mask.len(),
            ts.n_words()
        )));
    }
    let mut out = String::with_capacity(sentence.len() + 4 * mask.count());
    let mut last = 0;
    for (&ti, &m) in ts.word_indices.iter().zip(&mask.0) {
        if m {
            let span = &ts.spans[ti];
            out.push_str(&sentence[last..span.start]);
            out.push_str("**");
            out.push_str(&sentence[span.clone()]);
            out.push_str("**");
            last = span.end;
        }
    }
    out.push_str(&sentence[last..]);
    Ok(out)
}
