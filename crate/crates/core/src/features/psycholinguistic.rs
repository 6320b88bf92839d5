use super::catalog::{Family, FeatureId};
use crate::corpus::LexiconTable;
use crate::resources::Resources;
use crate::textproc::TokenizedSentence;

/// Column holding the primary value: `preferred` if present, else the first.
fn primary_column(lex: &LexiconTable, preferred: &[&str]) -> usize {
    preferred.iter().find_map(|p| lex.column_index(p)).unwrap_or(0)
}

fn column_values(lex: &LexiconTable, column: usize, folded: &[String]) -> Vec<f64> {
    folded.iter().filter_map(|w| lex.value(w, column)).collect()
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// The 38 psycholinguistic features: means over the word tokens found in each
/// lexicon (AoA-max is the maximum). Prevalence columns are matched by
/// catalog name (`Prev.AllAP`) or without the prefix (`AllAP`).
pub fn psycholinguistic_features(ts: &TokenizedSentence, res: &Resources) -> Vec<(FeatureId, Option<f64>)> {
    let folded = ts.folded_words();
    let mut out = Vec::with_capacity(38);
    for id in FeatureId::of_family(Family::Psycholinguistic) {
        let value = match id.name() {
            "WordPrevalence" => res.word_prevalence.as_ref().and_then(|lex| {
                let col = primary_column(lex, &["Prevalence", "WordPrevalence"]);
                mean(&column_values(lex, col, &folded))
            }),
            "AoA-mean" | "AoA-max" => res.aoa.as_ref().and_then(|lex| {
                let col = primary_column(lex, &["AoA", "AoA_Kup_lem", "Rating.Mean"]);
                let xs = column_values(lex, col, &folded);
                if id.name() == "AoA-mean" {
                    mean(&xs)
                } else {
                    xs.into_iter().reduce(f64::max)
                }
            }),
            name => res.prevalence.as_ref().and_then(|lex| {
                let short = name.trim_start_matches("Prev.");
                let col = lex.column_index(name).or_else(|| lex.column_index(short))?;
                mean(&column_values(lex, col, &folded))
            }),
        };
        out.push((id, value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::tokenize;

    fn get(v: &[(FeatureId, Option<f64>)], name: &str) -> Option<f64> {
        v.iter().find(|(f, _)| f.name() == name).and_then(|(_, x)| *x)
    }

    fn lexicon(cols: &[&str], rows: &[(&str, &[f64])]) -> LexiconTable {
        let mut lex = LexiconTable::new("t", cols.iter().map(|c| c.to_string()).collect());
        for (w, v) in rows {
            lex.insert(w, v.to_vec()).unwrap();
        }
        lex
    }

    #[test]
    fn aoa_mean_and_max() {
        let mut res = Resources::builtin();
        res.aoa = Some(lexicon(&["AoA"], &[("dog", &[3.0]), ("barked", &[5.0])]));
        let v = psycholinguistic_features(&tokenize("The dog barked."), &res);
        assert_eq!(v.len(), 38);
        assert_eq!(get(&v, "AoA-mean"), Some(4.0));
        assert_eq!(get(&v, "AoA-max"), Some(5.0));
        let v = psycholinguistic_features(&tokenize("Zebras graze."), &res);
        assert_eq!(get(&v, "AoA-mean"), None);
        assert_eq!(get(&v, "AoA-max"), None);
    }

    #[test]
    fn prevalence_columns() {
        let mut res = Resources::builtin();
        res.prevalence = Some(lexicon(
            &["AllAP", "Prev.UKWF"],
            &[("a", &[1.0, 0.0]), ("b", &[2.0, 0.0]), ("c", &[3.0, 9.0])],
        ));
        res.word_prevalence = Some(lexicon(&["Prevalence"], &[("a", &[2.5])]));
        let v = psycholinguistic_features(&tokenize("a b c d"), &res);
        assert_eq!(get(&v, "Prev.AllAP"), Some(2.0));
        assert_eq!(get(&v, "Prev.UKWF"), Some(3.0));
        assert_eq!(get(&v, "Prev.FemAP"), None);
        assert_eq!(get(&v, "WordPrevalence"), Some(2.5));
    }
}
