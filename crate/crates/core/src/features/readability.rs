use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use super::catalog::FeatureId;
use crate::corpus::WordList;
use crate::error::{Error, Result};
use crate::resources::Resources;
use crate::textproc::{sentence_stats_with, SentenceStats, TokenizedSentence};

const CONSTANTS_TOML: &str = include_str!("../../data/readability.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Ari,
    ColemanLiau,
    DaleChall,
    DaleChallPsk,
    Fkgl,
    FleschReadingEase,
    FryX,
    FryY,
    Lix,
    Rix,
    Smog,
    GunningFog,
    Forcast,
    Spache,
}

impl Formula {
    pub const ALL: [Formula; 14] = [
        Formula::Ari,
        Formula::ColemanLiau,
        Formula::DaleChall,
        Formula::DaleChallPsk,
        Formula::Fkgl,
        Formula::FleschReadingEase,
        Formula::FryX,
        Formula::FryY,
        Formula::Lix,
        Formula::Rix,
        Formula::Smog,
        Formula::GunningFog,
        Formula::Forcast,
        Formula::Spache,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Ari => "ARI",
            Formula::ColemanLiau => "ColemanLiau",
            Formula::DaleChall => "DaleChall",
            Formula::DaleChallPsk => "DaleChallPSK",
            Formula::Fkgl => "FKGL",
            Formula::FleschReadingEase => "FleschReadingEase",
            Formula::FryX => "Fry-x",
            Formula::FryY => "Fry-y",
            Formula::Lix => "Lix",
            Formula::Rix => "Rix",
            Formula::Smog => "SMOG",
            Formula::GunningFog => "GunningFog",
            Formula::Forcast => "FORCAST",
            Formula::Spache => "Spache",
        }
    }

    pub fn from_id(id: &str) -> Option<Formula> {
        Formula::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn feature(self) -> FeatureId {
        FeatureId::named(self.id())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Ari {
    pub chars_per_word: f64,
    pub words_per_sentence: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ColemanLiau {
    pub letters_per_100_words: f64,
    pub sentences_per_100_words: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DaleChall {
    pub difficult_pct: f64,
    pub words_per_sentence: f64,
    pub adjustment: f64,
    pub adjustment_above_pct: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DaleChallPsk {
    pub words_per_sentence: f64,
    pub difficult_pct: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fkgl {
    pub words_per_sentence: f64,
    pub syllables_per_word: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FleschReadingEase {
    pub words_per_sentence: f64,
    pub syllables_per_word: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fry {
    pub per_words: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Lix {
    pub long_pct: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Smog {
    pub scale: f64,
    pub sentence_sample: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GunningFog {
    pub scale: f64,
    pub complex_pct: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Forcast {
    pub intercept: f64,
    pub sample_words: f64,
    pub divisor: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Spache {
    pub words_per_sentence: f64,
    pub unfamiliar_pct: f64,
    pub intercept: f64,
}

/// Formula coefficients, as shipped in `data/readability.toml`.
#[derive(Debug, Clone, Deserialize)]
pub struct ReadabilityConstants {
    pub ari: Ari,
    pub coleman_liau: ColemanLiau,
    pub dale_chall: DaleChall,
    pub dale_chall_psk: DaleChallPsk,
    pub fkgl: Fkgl,
    pub flesch_reading_ease: FleschReadingEase,
    pub fry: Fry,
    pub lix: Lix,
    pub smog: Smog,
    pub gunning_fog: GunningFog,
    pub forcast: Forcast,
    pub spache: Spache,
}

impl ReadabilityConstants {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Invalid(format!("readability constants: {e}")))
    }

    pub fn builtin() -> &'static ReadabilityConstants {
        static C: OnceLock<ReadabilityConstants> = OnceLock::new();
        C.get_or_init(|| Self::parse(CONSTANTS_TOML).expect("bundled readability constants parse"))
    }
}

/// Counts beyond [`SentenceStats`] that the word-list formulas need.
/// `None` means the list is not loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReadabilityInput {
    pub stats: SentenceStats,
    /// Words not on the Dale-Chall easy-word list.
    pub dale_chall_difficult: Option<usize>,
    /// Words not on the Spache familiar-word list.
    pub spache_unfamiliar: Option<usize>,
}

impl From<SentenceStats> for ReadabilityInput {
    fn from(stats: SentenceStats) -> Self {
        Self {
            stats,
            ..Self::default()
        }
    }
}

/// Evaluates one formula with the bundled constants. `Ok(None)` means a
/// required word list is missing.
pub fn readability(input: &ReadabilityInput, formula: Formula) -> Result<Option<f64>> {
    readability_with(input, formula, ReadabilityConstants::builtin())
}

pub fn readability_with(input: &ReadabilityInput, formula: Formula, k: &ReadabilityConstants) -> Result<Option<f64>> {
    let st = &input.stats;
    if st.n_words == 0 {
        return Err(Error::Domain(format!("{formula}: no words")));
    }
    if st.n_sentences == 0 {
        return Err(Error::Domain(format!("{formula}: no sentences")));
    }
    let w = st.n_words as f64;
    let s = st.n_sentences as f64;
    let asl = w / s;
    let asw = st.n_syllables as f64 / w;
    let pct = |count: usize| 100.0 * count as f64 / w;

    let v = match formula {
        Formula::Ari => k.ari.chars_per_word * st.n_chars as f64 / w + k.ari.words_per_sentence * asl + k.ari.intercept,
        Formula::ColemanLiau => {
            let c = &k.coleman_liau;
            c.letters_per_100_words * pct(st.n_chars) + c.sentences_per_100_words * pct(st.n_sentences) + c.intercept
        }
        Formula::DaleChall => {
            let Some(d) = input.dale_chall_difficult else {
                return Ok(None);
            };
            let c = &k.dale_chall;
            let p = pct(d);
            let raw = c.difficult_pct * p + c.words_per_sentence * asl;
            if p > c.adjustment_above_pct {
                raw + c.adjustment
            } else {
                raw
            }
        }
        Formula::DaleChallPsk => {
            let Some(d) = input.dale_chall_difficult else {
                return Ok(None);
            };
            let c = &k.dale_chall_psk;
            c.words_per_sentence * asl + c.difficult_pct * pct(d) + c.intercept
        }
        Formula::Fkgl => k.fkgl.words_per_sentence * asl + k.fkgl.syllables_per_word * asw + k.fkgl.intercept,
        Formula::FleschReadingEase => {
            let c = &k.flesch_reading_ease;
            c.intercept + c.words_per_sentence * asl + c.syllables_per_word * asw
        }
        Formula::FryX => k.fry.per_words * st.n_syllables as f64 / w,
        Formula::FryY => k.fry.per_words * s / w,
        Formula::Lix => asl + k.lix.long_pct * st.n_long_words as f64 / w,
        Formula::Rix => st.n_long_words as f64 / s,
        Formula::Smog => {
            let c = &k.smog;
            c.scale * (st.n_complex_words as f64 * c.sentence_sample / s).sqrt() + c.intercept
        }
        Formula::GunningFog => k.gunning_fog.scale * (asl + k.gunning_fog.complex_pct * st.n_complex_words as f64 / w),
        Formula::Forcast => {
            let c = &k.forcast;
            c.intercept - (st.n_monosyllables as f64 * c.sample_words / w) / c.divisor
        }
        Formula::Spache => {
            let Some(u) = input.spache_unfamiliar else {
                return Ok(None);
            };
            let c = &k.spache;
            c.words_per_sentence * asl + c.unfamiliar_pct * pct(u) + c.intercept
        }
    };
    Ok(Some(v))
}

/// FKGL from the bundled constants.
pub fn fkgl(stats: &SentenceStats) -> Result<f64> {
    Ok(readability(&(*stats).into(), Formula::Fkgl)?.expect("FKGL needs no word list"))
}

fn not_on(list: Option<&WordList>, folded: &[String]) -> Option<usize> {
    list.map(|l| folded.iter().filter(|w| !l.contains(w)).count())
}

pub fn readability_input(ts: &TokenizedSentence, res: &Resources) -> ReadabilityInput {
    let folded = ts.folded_words();
    ReadabilityInput {
        stats: sentence_stats_with(ts, &res.syllables),
        dale_chall_difficult: not_on(res.dale_chall.as_ref(), &folded),
        spache_unfamiliar: not_on(res.spache.as_ref(), &folded),
    }
}

/// All 14 readability features; missing when there are no words.
pub fn readability_features(ts: &TokenizedSentence, res: &Resources) -> Vec<(FeatureId, Option<f64>)> {
    let input = readability_input(ts, res);
    Formula::ALL
        .into_iter()
        .map(|f| (f.feature(), readability(&input, f).ok().flatten()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stats(w: usize, s: usize, y: usize) -> SentenceStats {
        SentenceStats {
            n_words: w,
            n_sentences: s,
            n_syllables: y,
            ..SentenceStats::default()
        }
    }

    fn eval(st: SentenceStats, f: Formula) -> f64 {
        readability(&st.into(), f).unwrap().unwrap()
    }

    #[test]
    fn fkgl_worked_example() {
        assert!((fkgl(&stats(10, 1, 15)).unwrap() - 6.01).abs() < 1e-9);
    }

    #[test]
    fn zero_words_is_domain_error() {
        assert!(matches!(
            readability(&stats(0, 1, 0).into(), Formula::Fkgl),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lix_worked_example() {
        let st = SentenceStats {
            n_long_words: 5,
            ..stats(20, 1, 30)
        };
        assert!((eval(st, Formula::Lix) - 45.0).abs() < 1e-12);
        assert!((eval(st, Formula::Rix) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn standard_forms() {
        let st = SentenceStats {
            n_words: 20,
            n_chars: 100,
            n_syllables: 30,
            n_sentences: 2,
            n_complex_words: 4,
            n_long_words: 6,
            n_monosyllables: 12,
        };
        let close = |f: Formula, expected: f64| {
            let got = eval(st, f);
            assert!((got - expected).abs() < 1e-9, "{f}: {got} vs {expected}");
        };
        close(Formula::Ari, 4.71 * 5.0 + 0.5 * 10.0 - 21.43);
        close(Formula::ColemanLiau, 0.0588 * 500.0 - 0.296 * 10.0 - 15.8);
        close(Formula::FleschReadingEase, 206.835 - 1.015 * 10.0 - 84.6 * 1.5);
        close(Formula::FryX, 150.0);
        close(Formula::FryY, 10.0);
        close(Formula::Smog, 1.0430 * (4.0f64 * 30.0 / 2.0).sqrt() + 3.1291);
        close(Formula::GunningFog, 0.4 * (10.0 + 20.0));
        close(Formula::Forcast, 20.0 - 90.0 / 10.0);
    }

    #[test]
    fn word_list_formulas() {
        let st = stats(20, 2, 30);
        assert_eq!(readability(&st.into(), Formula::DaleChall).unwrap(), None);
        assert_eq!(readability(&st.into(), Formula::Spache).unwrap(), None);
        let input = ReadabilityInput {
            stats: st,
            dale_chall_difficult: Some(2),
            spache_unfamiliar: Some(1),
        };
        let dc = readability(&input, Formula::DaleChall).unwrap().unwrap();
        assert!((dc - (0.1579 * 10.0 + 0.0496 * 10.0 + 3.6365)).abs() < 1e-9);
        let input = ReadabilityInput {
            dale_chall_difficult: Some(1),
            ..input
        };
        let dc = readability(&input, Formula::DaleChall).unwrap().unwrap();
        assert!((dc - (0.1579 * 5.0 + 0.0496 * 10.0)).abs() < 1e-9);
        let sp = readability(&input, Formula::Spache).unwrap().unwrap();
        assert!((sp - (0.121 * 10.0 + 0.082 * 5.0 + 0.659)).abs() < 1e-9);
        let psk = readability(&input, Formula::DaleChallPsk).unwrap().unwrap();
        assert!((psk - (3.2672 + 0.0596 * 10.0 + 0.1155 * 5.0)).abs() < 1e-9);
    }

    #[test]
    fn ids_match_catalog() {
        let ids: Vec<_> = Formula::ALL.iter().map(|f| f.feature()).collect();
        let cat: Vec<_> = FeatureId::of_family(super::super::Family::Readability).collect();
        assert_eq!(ids, cat);
    }

    proptest! {
        #[test]
        fn fkgl_monotone(w in 1usize..200, s in 1usize..10, y in 0usize..400, dw in 1usize..20, dy in 1usize..20) {
            let y = y.max(w);
            let base = fkgl(&stats(w, s, y)).unwrap();
            prop_assert!(fkgl(&stats(w, s, y + dy)).unwrap() > base);
            // More words at fixed syllables-per-word raises words-per-sentence.
            let (w2, y2) = (w * (1 + dw), y * (1 + dw));
            prop_assert!(fkgl(&stats(w2, s, y2)).unwrap() > base);
        }
    }
}
