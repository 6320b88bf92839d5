use std::collections::{HashMap, HashSet};

use super::catalog::FeatureId;
use crate::resources::{ListId, Resources};
use crate::textproc::{word_length, TokenizedSentence};

pub const CNDW_WINDOW: usize = 10;

/// Mean number of distinct words per moving window of `window` tokens
/// (clamped to the sentence length).
pub fn moving_distinct(words: &[String], window: usize) -> f64 {
    let n = words.len();
    if n == 0 {
        return 0.0;
    }
    let w = window.clamp(1, n);
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for word in &words[..w] {
        *counts.entry(word).or_default() += 1;
    }
    let mut total = counts.len();
    for i in w..n {
        *counts.entry(&words[i]).or_default() += 1;
        let out = &words[i - w];
        let c = counts.get_mut(out.as_str()).expect("word in window");
        *c -= 1;
        if *c == 0 {
            counts.remove(out.as_str());
        }
        total += counts.len();
    }
    total as f64 / (n - w + 1) as f64
}

/// The 14 lexical features. Every value is missing when there are no words,
/// and list measures are missing when their list is not loaded.
pub fn lexical_features(ts: &TokenizedSentence, res: &Resources) -> Vec<(FeatureId, Option<f64>)> {
    let words: Vec<&str> = ts.words().collect();
    let folded = ts.folded_words();
    let n = words.len() as f64;
    let present = !words.is_empty();
    let ok = |x: f64| present.then_some(x);

    let types = folded.iter().collect::<HashSet<_>>().len() as f64;
    let chars: usize = words.iter().map(|w| word_length(w)).sum();
    let syllables: usize = words.iter().map(|w| res.syllables.count(w)).sum();
    let content = folded.iter().filter(|w| !res.function_words.contains(w)).count();
    let non_stop = folded.iter().filter(|w| !res.stopwords.contains(w)).count();

    let list = |id: ListId| -> Option<f64> {
        let list = res.lists.get(&id)?;
        let covered = list.coverage(&folded).into_iter().filter(|&c| c).count() as f64;
        let frac = covered / n;
        ok(if id.inverted() { 1.0 - frac } else { frac })
    };

    let f = FeatureId::named;
    vec![
        (f("MLWc"), ok(chars as f64 / n)),
        (f("MLWs"), ok(syllables as f64 / n)),
        (f("LD"), ok(content as f64 / n)),
        (f("NDW"), ok(types)),
        (f("CNDW"), ok(moving_distinct(&folded, CNDW_WINDOW))),
        (f("TTR"), ok(types / n)),
        (f("CTTR"), ok(types / (2.0 * n).sqrt())),
        (f("RTTR"), ok(types / n.sqrt())),
        (f("AFL"), list(ListId::Afl)),
        (f("ANC"), list(ListId::Anc)),
        (f("BNC"), list(ListId::Bnc)),
        (f("NAWL"), list(ListId::Nawl)),
        (f("NGSL"), list(ListId::Ngsl)),
        (f("NonStopWordsRate"), ok(non_stop as f64 / n)),
    ]
}
