//! The 107-feature catalog and its extractors.

mod catalog;
mod contour;
mod lexical;
mod ngram;
mod psycholinguistic;
mod readability;

pub use catalog::{catalog_tsv, Family, FeatureId, FeatureVector, CATALOG_LEN, CATALOG_VERSION};
pub use contour::{contour, contour_values, ContourSeries};
pub use lexical::{lexical_features, moving_distinct, CNDW_WINDOW};
pub use ngram::{ngram_feature, ngram_features};
pub use psycholinguistic::psycholinguistic_features;
pub use readability::{
    fkgl, readability, readability_features, readability_input, readability_with, Formula, ReadabilityConstants,
    ReadabilityInput,
};

use crate::resources::Resources;
use crate::textproc::{tokenize, TokenizedSentence};
use crate::treequery::{syntactic_measures, Measure, ParseTree};

/// The 16 syntactic measures; all missing without a tree.
pub fn syntactic_features(tree: Option<&ParseTree>) -> Vec<(FeatureId, Option<f64>)> {
    let m = tree.map(syntactic_measures);
    Measure::ALL
        .into_iter()
        .map(|k| (FeatureId::named(k.id()), m.as_ref().map(|m| m.get(k))))
        .collect()
}

/// Every non-syntactic family for an already tokenized sentence.
pub fn surface_features(ts: &TokenizedSentence, res: &Resources) -> Vec<(FeatureId, Option<f64>)> {
    let mut out = lexical_features(ts, res);
    out.extend(ngram_features(ts, res));
    out.extend(readability_features(ts, res));
    out.extend(psycholinguistic_features(ts, res));
    out
}

/// All 107 features of one sentence, in catalog order. A sentence without
/// words gets an all-missing vector; a missing tree leaves the syntactic
/// family missing.
pub fn full_vector(text: &str, tree: Option<&ParseTree>, res: &Resources) -> FeatureVector {
    let ts = tokenize(text);
    if ts.n_words() == 0 {
        return FeatureVector::all_missing();
    }
    let mut v = FeatureVector::new();
    v.extend(syntactic_features(tree));
    v.extend(surface_features(&ts, res));
    v.sort();
    v
}

/// [`full_vector`] restricted to `families`.
pub fn select_vector(text: &str, tree: Option<&ParseTree>, res: &Resources, families: &[Family]) -> FeatureVector {
    full_vector(text, tree, res).select(families)
}

/// Extracts vectors for many sentences; output order follows input order
/// whether or not `parallel` is set.
pub fn extract_all(items: &[(&str, Option<&ParseTree>)], res: &Resources, parallel: bool) -> Vec<FeatureVector> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(|(t, tree)| full_vector(t, *tree, res)).collect();
    }
    let _ = parallel;
    items.iter().map(|(t, tree)| full_vector(t, *tree, res)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treequery::parse_bracketed;

    #[test]
    fn tree_presence() {
        let res = Resources::builtin();
        let tree = parse_bracketed("(S (NP (DT The) (NN dog)) (VP (VBD barked)) (. .))").unwrap();
        let with = full_vector("The dog barked.", Some(&tree), &res);
        let without = full_vector("The dog barked.", None, &res);
        assert_eq!(with.len(), CATALOG_LEN);
        assert_eq!(with.get(FeatureId::named("MLS")), Some(3.0));
        assert_eq!(without.get(FeatureId::named("MLS")), None);
        assert_eq!(with.present_count() - without.present_count(), 16);
        assert!(with.keys().eq(FeatureId::all()));
    }

    #[test]
    fn empty_sentence_all_missing() {
        let v = full_vector("  ", None, &Resources::builtin());
        assert_eq!(v.len(), CATALOG_LEN);
        assert_eq!(v.present_count(), 0);
    }

    #[test]
    fn selection() {
        let v = select_vector("The dog barked.", None, &Resources::builtin(), &[Family::Readability]);
        assert_eq!(v.len(), 14);
    }
}
