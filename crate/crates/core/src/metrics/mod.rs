//! Simplification metrics.

mod sari;
mod ter;

pub use sari::{sari, sari_with, DeletionMode, SariBreakdown, SARI_MAX_ORDER};
pub use ter::{ter, ter_tokens, ter_with, EditCosts, TerMode, TerResult, MAX_SHIFT_LEN};

use crate::error::{Error, Result};
use crate::resources::FrequencyRanks;
use crate::textproc::{tokenize, TokenizedSentence};

pub use crate::features::fkgl;

/// Lower-cased tokens, punctuation included.
pub(crate) fn folded_tokens(text: &str) -> Vec<String> {
    tokenize(text).tokens.into_iter().map(|t| t.to_lowercase()).collect()
}

/// Levenshtein distance between two sequences.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 - d / max(len)` over characters; 1.0 for two empty strings.
pub fn levenshtein_similarity(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(&a, &b) as f64 / longest as f64
}

/// Word-level Levenshtein distance over case-folded tokens.
pub fn edit_distance(a: &str, b: &str) -> usize {
    levenshtein(&folded_tokens(a), &folded_tokens(b))
}

/// Linear-interpolation quantile at index `q * (n - 1)` of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    Some(sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo]))
}

/// Third quartile of the natural-log frequency ranks of the sentence's words.
/// Out-of-vocabulary words get rank `ranks.len() + 1`.
pub fn word_rank(ts: &TokenizedSentence, ranks: &FrequencyRanks) -> Result<f64> {
    let oov = ranks.len() + 1;
    let mut logs: Vec<f64> = ts
        .folded_words()
        .iter()
        .map(|w| (ranks.rank(w).unwrap_or(oov) as f64).ln())
        .collect();
    if logs.is_empty() {
        return Err(Error::Domain("WordRank of a sentence without words".into()));
    }
    logs.sort_by(f64::total_cmp);
    Ok(quantile(&logs, 0.75).expect("non-empty"))
}
