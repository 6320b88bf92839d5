use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CATALOG_VERSION: &str = "lingcx-107/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Syntactic,
    Lexical,
    Ngram,
    Readability,
    Psycholinguistic,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Syntactic,
        Family::Lexical,
        Family::Ngram,
        Family::Readability,
        Family::Psycholinguistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Syntactic => "syntactic",
            Family::Lexical => "lexical",
            Family::Ngram => "ngram",
            Family::Readability => "readability",
            Family::Psycholinguistic => "psycholinguistic",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s.trim().to_lowercase())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

use Family::*;

#[rustfmt::skip]
const ENTRIES: &[(&str, Family, &str)] = &[
    ("MLC", Syntactic, "Mean length of clause (words)"),
    ("MLS", Syntactic, "Mean length of sentence (words)"),
    ("MLT", Syntactic, "Mean length of T-unit (words)"),
    ("C/S", Syntactic, "Clauses per sentence"),
    ("C/T", Syntactic, "Clauses per T-unit"),
    ("DepC/C", Syntactic, "Dependent clauses per clause"),
    ("T/S", Syntactic, "T-units per sentence"),
    ("CompT/T", Syntactic, "Complex T-units per T-unit"),
    ("DepC/T", Syntactic, "Dependent clauses per T-unit"),
    ("CoordP/C", Syntactic, "Coordinate phrases per clause"),
    ("CoordP/T", Syntactic, "Coordinate phrases per T-unit"),
    ("NP.PostMod", Syntactic, "NP post-modification (words per NP)"),
    ("NP.PreMod", Syntactic, "NP pre-modification (words per NP)"),
    ("CompN/C", Syntactic, "Complex nominals per clause"),
    ("CompN/T", Syntactic, "Complex nominals per T-unit"),
    ("VP/T", Syntactic, "Verb phrases per T-unit"),

    ("MLWc", Lexical, "Mean word length (characters)"),
    ("MLWs", Lexical, "Mean word length (syllables)"),
    ("LD", Lexical, "Lexical density (content-word fraction)"),
    ("NDW", Lexical, "Number of different words"),
    ("CNDW", Lexical, "Different words per 10-token moving window"),
    ("TTR", Lexical, "Type-token ratio"),
    ("CTTR", Lexical, "Corrected type-token ratio T/sqrt(2N)"),
    ("RTTR", Lexical, "Root type-token ratio T/sqrt(N)"),
    ("AFL", Lexical, "Academic Formula List coverage"),
    ("ANC", Lexical, "Fraction of words outside the ANC top-2000 list"),
    ("BNC", Lexical, "Fraction of words outside the BNC top-2000 list"),
    ("NAWL", Lexical, "New Academic Word List coverage"),
    ("NGSL", Lexical, "Fraction of words outside the New General Service List"),
    ("NonStopWordsRate", Lexical, "Fraction of non-stopwords"),

    ("ngram1spok", Ngram, "Spoken unigram frequency"),
    ("ngram1fic", Ngram, "Fiction unigram frequency"),
    ("ngram1mag", Ngram, "Magazine unigram frequency"),
    ("ngram1news", Ngram, "News unigram frequency"),
    ("ngram1acad", Ngram, "Academic unigram frequency"),
    ("ngram2spok", Ngram, "Spoken bigram frequency"),
    ("ngram2fic", Ngram, "Fiction bigram frequency"),
    ("ngram2mag", Ngram, "Magazine bigram frequency"),
    ("ngram2news", Ngram, "News bigram frequency"),
    ("ngram2acad", Ngram, "Academic bigram frequency"),
    ("ngram3spok", Ngram, "Spoken trigram frequency"),
    ("ngram3fic", Ngram, "Fiction trigram frequency"),
    ("ngram3mag", Ngram, "Magazine trigram frequency"),
    ("ngram3news", Ngram, "News trigram frequency"),
    ("ngram3acad", Ngram, "Academic trigram frequency"),
    ("ngram4spok", Ngram, "Spoken four-gram frequency"),
    ("ngram4fic", Ngram, "Fiction four-gram frequency"),
    ("ngram4mag", Ngram, "Magazine four-gram frequency"),
    ("ngram4news", Ngram, "News four-gram frequency"),
    ("ngram4acad", Ngram, "Academic four-gram frequency"),
    ("ngram5spok", Ngram, "Spoken five-gram frequency"),
    ("ngram5fic", Ngram, "Fiction five-gram frequency"),
    ("ngram5mag", Ngram, "Magazine five-gram frequency"),
    ("ngram5news", Ngram, "News five-gram frequency"),
    ("ngram5acad", Ngram, "Academic five-gram frequency"),

    ("ARI", Readability, "Automated Readability Index"),
    ("ColemanLiau", Readability, "Coleman-Liau index"),
    ("DaleChall", Readability, "New Dale-Chall score"),
    ("DaleChallPSK", Readability, "Powers-Sumner-Kearl variant of Dale-Chall"),
    ("FKGL", Readability, "Flesch-Kincaid grade level"),
    ("FleschReadingEase", Readability, "Flesch reading ease"),
    ("Fry-x", Readability, "Fry graph x: syllables per 100 words"),
    ("Fry-y", Readability, "Fry graph y: sentences per 100 words"),
    ("Lix", Readability, "Lix score"),
    ("Rix", Readability, "Rix score"),
    ("SMOG", Readability, "SMOG grade"),
    ("GunningFog", Readability, "Gunning fog index"),
    ("FORCAST", Readability, "FORCAST grade level"),
    ("Spache", Readability, "Revised Spache score"),

    ("WordPrevalence", Psycholinguistic, "Crowdsourced word prevalence (mean)"),
    ("Prev.AllAP", Psycholinguistic, "Corpus prevalence, all speakers, AP"),
    ("Prev.AllBP", Psycholinguistic, "Corpus prevalence, all speakers, BP"),
    ("Prev.AllCD", Psycholinguistic, "Corpus prevalence, all speakers, CD"),
    ("Prev.AllSD", Psycholinguistic, "Corpus prevalence, all speakers, SD"),
    ("Prev.AllSDAP", Psycholinguistic, "Corpus prevalence, all speakers, SDAP"),
    ("Prev.AllSDBP", Psycholinguistic, "Corpus prevalence, all speakers, SDBP"),
    ("Prev.AllWF", Psycholinguistic, "Corpus prevalence, all speakers, WF"),
    ("Prev.FemAP", Psycholinguistic, "Corpus prevalence, female, AP"),
    ("Prev.FemBP", Psycholinguistic, "Corpus prevalence, female, BP"),
    ("Prev.FemCD", Psycholinguistic, "Corpus prevalence, female, CD"),
    ("Prev.FemSD", Psycholinguistic, "Corpus prevalence, female, SD"),
    ("Prev.FemSDAP", Psycholinguistic, "Corpus prevalence, female, SDAP"),
    ("Prev.FemSDBP", Psycholinguistic, "Corpus prevalence, female, SDBP"),
    ("Prev.FemWF", Psycholinguistic, "Corpus prevalence, female, WF"),
    ("Prev.MaleAP", Psycholinguistic, "Corpus prevalence, male, AP"),
    ("Prev.MaleBP", Psycholinguistic, "Corpus prevalence, male, BP"),
    ("Prev.MaleCD", Psycholinguistic, "Corpus prevalence, male, CD"),
    ("Prev.MaleSD", Psycholinguistic, "Corpus prevalence, male, SD"),
    ("Prev.MaleSDAP", Psycholinguistic, "Corpus prevalence, male, SDAP"),
    ("Prev.MaleSDBP", Psycholinguistic, "Corpus prevalence, male, SDBP"),
    ("Prev.MaleWF", Psycholinguistic, "Corpus prevalence, male, WF"),
    ("Prev.UKAP", Psycholinguistic, "Corpus prevalence, UK, AP"),
    ("Prev.UKBP", Psycholinguistic, "Corpus prevalence, UK, BP"),
    ("Prev.UKCD", Psycholinguistic, "Corpus prevalence, UK, CD"),
    ("Prev.UKSD", Psycholinguistic, "Corpus prevalence, UK, SD"),
    ("Prev.UKSDAP", Psycholinguistic, "Corpus prevalence, UK, SDAP"),
    ("Prev.UKSDBP", Psycholinguistic, "Corpus prevalence, UK, SDBP"),
    ("Prev.UKWF", Psycholinguistic, "Corpus prevalence, UK, WF"),
    ("Prev.USAAP", Psycholinguistic, "Corpus prevalence, USA, AP"),
    ("Prev.USABP", Psycholinguistic, "Corpus prevalence, USA, BP"),
    ("Prev.USACD", Psycholinguistic, "Corpus prevalence, USA, CD"),
    ("Prev.USASD", Psycholinguistic, "Corpus prevalence, USA, SD"),
    ("Prev.USASDAP", Psycholinguistic, "Corpus prevalence, USA, SDAP"),
    ("Prev.USASDBP", Psycholinguistic, "Corpus prevalence, USA, SDBP"),
    ("Prev.USAWF", Psycholinguistic, "Corpus prevalence, USA, WF"),
    ("AoA-mean", Psycholinguistic, "Mean age of acquisition"),
    ("AoA-max", Psycholinguistic, "Maximum age of acquisition"),
];

pub const CATALOG_LEN: usize = 107;

/// Index into the feature catalog.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureId(u8);

impl FeatureId {
    pub fn all() -> impl Iterator<Item = FeatureId> {
        (0..ENTRIES.len()).map(|i| FeatureId(i as u8))
    }

    pub fn by_name(name: &str) -> Option<FeatureId> {
        static INDEX: OnceLock<Vec<(&'static str, FeatureId)>> = OnceLock::new();
        let index = INDEX.get_or_init(|| {
            let mut v: Vec<_> = ENTRIES
                .iter()
                .enumerate()
                .map(|(i, e)| (e.0, FeatureId(i as u8)))
                .collect();
            v.sort_unstable();
            v
        });
        index.binary_search_by(|(n, _)| (*n).cmp(name)).ok().map(|i| index[i].1)
    }

    /// Lookup for names known at compile time. Panics on a typo.
    pub fn named(name: &str) -> FeatureId {
        Self::by_name(name).unwrap_or_else(|| panic!("`{name}` is not in the feature catalog"))
    }

    pub fn parse(name: &str) -> Result<FeatureId> {
        Self::by_name(name).ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    pub fn name(self) -> &'static str {
        ENTRIES[self.0 as usize].0
    }

    pub fn family(self) -> Family {
        ENTRIES[self.0 as usize].1
    }

    pub fn description(self) -> &'static str {
        ENTRIES[self.0 as usize].2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn of_family(family: Family) -> impl Iterator<Item = FeatureId> {
        Self::all().filter(move |f| f.family() == family)
    }
}

impl fmt::Debug for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FeatureId({})", self.name())
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Catalog as TSV (`id`, `family`, `description`), the format of
/// `data/catalog.tsv`.
pub fn catalog_tsv() -> String {
    let mut out = String::from("id\tfamily\tdescription\n");
    for (name, family, desc) in ENTRIES {
        out.push_str(&format!("{name}\t{family}\t{desc}\n"));
    }
    out
}

const ABSENT: u8 = u8::MAX;

/// Feature values keyed by catalog id, in insertion order. `None` marks a
/// missing value.
#[derive(Clone, PartialEq)]
pub struct FeatureVector {
    catalog_version: String,
    entries: Vec<(FeatureId, Option<f64>)>,
    /// Position of each catalog id in `entries`, or `ABSENT`.
    slots: [u8; CATALOG_LEN],
}

impl fmt::Debug for FeatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FeatureVector")
            .field("catalog_version", &self.catalog_version)
            .field("entries", &self.entries)
            .finish()
    }
}

impl Default for FeatureVector {
    fn default() -> Self {
        Self::new()
    }
}

impl FeatureVector {
    pub fn new() -> Self {
        Self::with_version(CATALOG_VERSION)
    }

    pub fn with_version(version: &str) -> Self {
        Self {
            catalog_version: version.to_string(),
            entries: Vec::new(),
            slots: [ABSENT; CATALOG_LEN],
        }
    }

    /// Every catalog id, all missing.
    pub fn all_missing() -> Self {
        let mut v = Self::new();
        for id in FeatureId::all() {
            v.insert(id, None);
        }
        v
    }

    pub fn catalog_version(&self) -> &str {
        &self.catalog_version
    }

    /// Non-finite values are stored as missing.
    pub fn insert(&mut self, id: FeatureId, value: Option<f64>) {
        let value = value.filter(|v| v.is_finite());
        match self.slots[id.index()] {
            ABSENT => {
                self.slots[id.index()] = self.entries.len() as u8;
                self.entries.push((id, value));
            }
            i => self.entries[i as usize].1 = value,
        }
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = (FeatureId, Option<f64>)>) {
        for (id, v) in items {
            self.insert(id, v);
        }
    }

    /// Present value, or `None` if the id is missing or absent.
    pub fn get(&self, id: FeatureId) -> Option<f64> {
        match self.slots[id.index()] {
            ABSENT => None,
            i => self.entries[i as usize].1,
        }
    }

    pub fn contains(&self, id: FeatureId) -> bool {
        self.slots[id.index()] != ABSENT
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn present_count(&self) -> usize {
        self.entries.iter().filter(|(_, v)| v.is_some()).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FeatureId, Option<f64>)> + '_ {
        self.entries.iter().copied()
    }

    pub fn keys(&self) -> impl Iterator<Item = FeatureId> + '_ {
        self.entries.iter().map(|(k, _)| *k)
    }

    /// Keeps only ids from the given families, in the current order.
    pub fn select(&self, families: &[Family]) -> FeatureVector {
        let mut out = FeatureVector::with_version(&self.catalog_version);
        out.extend(self.iter().filter(|(id, _)| families.contains(&id.family())));
        out
    }

    /// Sorts keys into catalog order.
    pub fn sort(&mut self) {
        self.entries.sort_by_key(|(k, _)| *k);
        for (i, (k, _)) in self.entries.iter().enumerate() {
            self.slots[k.index()] = i as u8;
        }
    }

    /// Same version and same key set in the same order.
    pub fn same_catalog(&self, other: &FeatureVector) -> bool {
        self.catalog_version == other.catalog_version && self.keys().eq(other.keys())
    }
}
