use super::catalog::FeatureId;
use crate::corpus::Register;
use crate::resources::{NgramAggregation, Resources};
use crate::textproc::TokenizedSentence;

pub fn ngram_feature(register: Register, order: usize) -> FeatureId {
    FeatureId::named(&format!("ngram{order}{}", register.short()))
}

/// Frequencies of the sentence's case-folded word n-grams (stride 1) in each
/// register table, summed (or averaged, per `res.ngram_aggregation`). Absent
/// grams count 0; a missing table gives a missing value.
pub fn ngram_features(ts: &TokenizedSentence, res: &Resources) -> Vec<(FeatureId, Option<f64>)> {
    let folded = ts.folded_words();
    let mut out = Vec::with_capacity(25);
    let mut gram = String::new();
    for order in 1..=5 {
        for register in Register::ALL {
            let value = res.ngram_table(register, order).map(|table| {
                let n_grams = (folded.len() + 1).saturating_sub(order);
                let mut total = 0.0;
                for i in 0..n_grams {
                    gram.clear();
                    for (j, w) in folded[i..i + order].iter().enumerate() {
                        if j > 0 {
                            gram.push(' ');
                        }
                        gram.push_str(w);
                    }
                    total += table.frequency(&gram);
                }
                match res.ngram_aggregation {
                    NgramAggregation::Sum => total,
                    NgramAggregation::Mean if n_grams == 0 => 0.0,
                    NgramAggregation::Mean => total / n_grams as f64,
                }
            });
            out.push((ngram_feature(register, order), value));
        }
    }
    out
}
