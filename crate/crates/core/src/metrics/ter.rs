use super::folded_tokens;
use crate::error::{Error, Result};

/// Longest block considered for a shift.
pub const MAX_SHIFT_LEN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TerMode {
    /// Greedy block shifts, then edit distance.
    #[default]
    Shifts,
    /// Edit distance only.
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EditCosts {
    pub insertions: usize,
    pub deletions: usize,
    pub substitutions: usize,
    pub shifts: usize,
}

impl EditCosts {
    pub fn total(&self) -> usize {
        self.insertions + self.deletions + self.substitutions + self.shifts
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerResult {
    pub costs: EditCosts,
    pub reference_len: usize,
    pub score: f64,
}

/// Edit operations turning `hyp` into `reference`: insertions are reference
/// tokens missing from the hypothesis, deletions are extra hypothesis tokens.
fn edit_ops(hyp: &[String], reference: &[String]) -> EditCosts {
    let (n, m) = (hyp.len(), reference.len());
    let mut d = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub = d[i - 1][j - 1] + usize::from(hyp[i - 1] != reference[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    let mut c = EditCosts::default();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + usize::from(hyp[i - 1] != reference[j - 1]) {
            if hyp[i - 1] != reference[j - 1] {
                c.substitutions += 1;
            }
            i -= 1;
            j -= 1;
        } else if i > 0 && d[i][j] == d[i - 1][j] + 1 {
            c.deletions += 1;
            i -= 1;
        } else {
            c.insertions += 1;
            j -= 1;
        }
    }
    c
}

fn contains_block(haystack: &[String], block: &[String]) -> bool {
    haystack.windows(block.len()).any(|w| w == block)
}

/// Moves `hyp[start..start+len]` so that it begins at `dest` in the result.
fn shifted(hyp: &[String], start: usize, len: usize, dest: usize) -> Vec<String> {
    let mut rest: Vec<String> = hyp[..start].iter().chain(&hyp[start + len..]).cloned().collect();
    let block = hyp[start..start + len].to_vec();
    rest.splice(dest..dest, block);
    rest
}

/// Best single shift: the one lowering the edit distance most, first found on
/// ties. Only blocks that occur in the reference are moved.
fn best_shift(hyp: &[String], reference: &[String], current: usize) -> Option<(Vec<String>, usize)> {
    let mut best: Option<(Vec<String>, usize)> = None;
    for start in 0..hyp.len() {
        for len in 1..=MAX_SHIFT_LEN.min(hyp.len() - start) {
            if !contains_block(reference, &hyp[start..start + len]) {
                break;
            }
            for dest in 0..=hyp.len() - len {
                if dest == start {
                    continue;
                }
                let cand = shifted(hyp, start, len, dest);
                let dist = super::levenshtein(&cand, reference);
                if dist < best.as_ref().map_or(current, |b| b.1) {
                    best = Some((cand, dist));
                }
            }
        }
    }
    best
}

/// Translation edit rate over case-folded tokens.
pub fn ter(hypothesis: &str, reference: &str) -> Result<f64> {
    Ok(ter_with(hypothesis, reference, TerMode::Shifts)?.score)
}

/// A shift is taken only when it lowers the edit distance by at least 2, so
/// that it pays for itself.
pub fn ter_with(hypothesis: &str, reference: &str, mode: TerMode) -> Result<TerResult> {
    ter_tokens(&folded_tokens(hypothesis), &folded_tokens(reference), mode)
}

pub fn ter_tokens(hypothesis: &[String], reference: &[String], mode: TerMode) -> Result<TerResult> {
    if reference.is_empty() {
        return Err(Error::Invalid("TER needs a non-empty reference".into()));
    }
    let mut hyp = hypothesis.to_vec();
    let mut shifts = 0;
    if mode == TerMode::Shifts {
        let mut dist = super::levenshtein(&hyp, reference);
        while dist >= 2 {
            match best_shift(&hyp, reference, dist) {
                Some((cand, d)) if d + 2 <= dist => {
                    hyp = cand;
                    dist = d;
                    shifts += 1;
                }
                _ => break,
            }
        }
    }
    let mut costs = edit_ops(&hyp, reference);
    costs.shifts = shifts;
    Ok(TerResult {
        costs,
        reference_len: reference.len(),
        score: costs.total() as f64 / reference.len() as f64,
    })
}
