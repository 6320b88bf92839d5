use std::collections::HashMap;

use super::folded_tokens;
use crate::error::{Error, Result};

pub const SARI_MAX_ORDER: usize = 4;

/// How the deletion score combines precision and recall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeletionMode {
    /// F1, like addition and keeping.
    #[default]
    F1,
    /// Precision only, as in several public implementations.
    PrecisionOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SariBreakdown {
    pub f_add: f64,
    pub f_keep: f64,
    pub f_del: f64,
    /// Per-order scores for n = 1..=4.
    pub add_by_order: [f64; SARI_MAX_ORDER],
    pub keep_by_order: [f64; SARI_MAX_ORDER],
    pub del_by_order: [f64; SARI_MAX_ORDER],
    /// `100 * (f_add + f_keep + f_del) / 3`.
    pub sari: f64,
}

type Counts<'a> = HashMap<&'a [String], usize>;

fn ngram_counts(tokens: &[String], n: usize) -> Counts<'_> {
    let mut c = Counts::new();
    if tokens.len() >= n {
        for g in tokens.windows(n) {
            *c.entry(g).or_default() += 1;
        }
    }
    c
}

fn count(c: &Counts<'_>, g: &[String]) -> usize {
    c.get(g).copied().unwrap_or(0)
}

/// Sizes of the system and reference multisets and their overlap.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    sys: usize,
    reference: usize,
    correct: usize,
}

impl Tally {
    /// 0/0 scores 1 when the reference asks for nothing, else 0.
    fn precision(self) -> f64 {
        if self.sys == 0 {
            if self.reference == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            self.correct as f64 / self.sys as f64
        }
    }

    fn recall(self) -> f64 {
        if self.reference == 0 {
            1.0
        } else {
            self.correct as f64 / self.reference as f64
        }
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Add, keep and delete tallies for one reference at one order.
fn tallies(s: &Counts<'_>, c: &Counts<'_>, r: &Counts<'_>) -> [Tally; 3] {
    let mut keys: Vec<&[String]> = s.keys().chain(c.keys()).chain(r.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut out = [Tally::default(); 3];
    for g in keys {
        let (sc, cc, rc) = (count(s, g), count(c, g), count(r, g));
        let ops = [
            (cc.saturating_sub(sc), rc.saturating_sub(sc)),
            (sc.min(cc), sc.min(rc)),
            (sc.saturating_sub(cc), sc.saturating_sub(rc)),
        ];
        for (t, (sys, reference)) in out.iter_mut().zip(ops) {
            t.sys += sys;
            t.reference += reference;
            t.correct += sys.min(reference);
        }
    }
    out
}

pub fn sari(source: &str, prediction: &str, references: &[&str]) -> Result<SariBreakdown> {
    sari_with(source, prediction, references, DeletionMode::F1)
}

/// SARI over case-folded tokens. For each order and operation, precision and
/// recall are averaged over the references before taking F1.
pub fn sari_with(source: &str, prediction: &str, references: &[&str], mode: DeletionMode) -> Result<SariBreakdown> {
    if references.is_empty() {
        return Err(Error::Invalid("SARI needs at least one reference".into()));
    }
    let src = folded_tokens(source);
    let pred = folded_tokens(prediction);
    let refs: Vec<Vec<String>> = references.iter().map(|r| folded_tokens(r)).collect();

    let mut by_order = [[0.0; SARI_MAX_ORDER]; 3];
    for n in 1..=SARI_MAX_ORDER {
        let s = ngram_counts(&src, n);
        let c = ngram_counts(&pred, n);
        let mut p = [0.0; 3];
        let mut r = [0.0; 3];
        for reference in &refs {
            let rc = ngram_counts(reference, n);
            for (op, t) in tallies(&s, &c, &rc).into_iter().enumerate() {
                p[op] += t.precision();
                r[op] += t.recall();
            }
        }
        let k = refs.len() as f64;
        for op in 0..3 {
            let (p, r) = (p[op] / k, r[op] / k);
            by_order[op][n - 1] = if op == 2 && mode == DeletionMode::PrecisionOnly {
                p
            } else {
                f1(p, r)
            };
        }
    }
    let mean = |xs: &[f64; SARI_MAX_ORDER]| xs.iter().sum::<f64>() / SARI_MAX_ORDER as f64;
    let (f_add, f_keep, f_del) = (mean(&by_order[0]), mean(&by_order[1]), mean(&by_order[2]));
    Ok(SariBreakdown {
        f_add,
        f_keep,
        f_del,
        add_by_order: by_order[0],
        keep_by_order: by_order[1],
        del_by_order: by_order[2],
        sari: 100.0 * (f_add + f_keep + f_del) / 3.0,
    })
}
