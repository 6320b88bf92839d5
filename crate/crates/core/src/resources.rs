//! The lexical resources feature extraction draws on.
//!
//! Directory layout read by [`Resources::load_dir`]; every file is optional
//! and a missing one only makes the dependent features missing:
//!
//! ```text
//! aoa.tsv                 word<TAB>AoA
//! word_prevalence.tsv     word<TAB>Prevalence
//! prevalence.tsv          word<TAB>Prev.AllAP<TAB>... (35 columns)
//! frequency.tsv           word<TAB>freq        (WordRank)
//! syllables.tsv           word<TAB>count       (syllable overrides)
//! lists/{afl,anc,bnc,nawl,ngsl,dale_chall,spache}.txt
//! lists/{stopwords,function_words}.txt          (replace the built-ins)
//! ngrams/<register>.<order>.tsv
//! ```

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::corpus::{load_lexicon, load_ngrams, LexiconTable, NgramTable, Register, WordList};
use crate::error::{Error, Result};
use crate::textproc::SyllableCounter;

pub const RESOURCES_ENV: &str = "LINGCX_RESOURCES";

const BUILTIN_STOPWORDS: &str = include_str!("../data/stopwords.txt");
const BUILTIN_FUNCTION_WORDS: &str = include_str!("../data/function_words.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ListId {
    Afl,
    Anc,
    Bnc,
    Nawl,
    Ngsl,
}

impl ListId {
    pub const ALL: [ListId; 5] = [ListId::Afl, ListId::Anc, ListId::Bnc, ListId::Nawl, ListId::Ngsl];

    pub fn file_stem(self) -> &'static str {
        match self {
            ListId::Afl => "afl",
            ListId::Anc => "anc",
            ListId::Bnc => "bnc",
            ListId::Nawl => "nawl",
            ListId::Ngsl => "ngsl",
        }
    }

    /// Out-of-list lists report the fraction of words *not* covered.
    pub fn inverted(self) -> bool {
        matches!(self, ListId::Anc | ListId::Bnc | ListId::Ngsl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NgramAggregation {
    #[default]
    Sum,
    Mean,
}

/// Words ranked by descending frequency, rank 1 = most frequent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyRanks {
    ranks: HashMap<String, usize>,
}

impl FrequencyRanks {
    /// Ties in frequency are ranked alphabetically.
    pub fn from_lexicon(lex: &LexiconTable, column: usize) -> Result<Self> {
        if column >= lex.columns.len() {
            return Err(Error::Invalid(format!("{}: no column {column}", lex.name)));
        }
        let mut rows: Vec<(&str, f64)> = lex.words().map(|(w, v)| (w, v[column])).collect();
        rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        Ok(Self::from_ranked(rows.into_iter().map(|(w, _)| w)))
    }

    /// Words in rank order; a repeated word keeps its first rank.
    pub fn from_ranked<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ranks = HashMap::new();
        for w in words {
            let next = ranks.len() + 1;
            ranks.entry(w.as_ref().to_lowercase()).or_insert(next);
        }
        Self { ranks }
    }

    pub fn rank(&self, word: &str) -> Option<usize> {
        self.ranks
            .get(word)
            .or_else(|| self.ranks.get(&word.to_lowercase()))
            .copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Resources {
    pub aoa: Option<LexiconTable>,
    pub word_prevalence: Option<LexiconTable>,
    pub prevalence: Option<LexiconTable>,
    pub frequency: Option<FrequencyRanks>,
    pub lists: HashMap<ListId, WordList>,
    pub stopwords: WordList,
    pub function_words: WordList,
    pub dale_chall: Option<WordList>,
    pub spache: Option<WordList>,
    pub ngrams: HashMap<(Register, usize), NgramTable>,
    pub syllables: SyllableCounter,
    pub ngram_aggregation: NgramAggregation,
}

impl Default for Resources {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Resources {
    /// Built-in stopword and function-word lists only.
    pub fn builtin() -> Self {
        Self {
            aoa: None,
            word_prevalence: None,
            prevalence: None,
            frequency: None,
            lists: HashMap::new(),
            stopwords: WordList::parse(BUILTIN_STOPWORDS),
            function_words: WordList::parse(BUILTIN_FUNCTION_WORDS),
            dale_chall: None,
            spache: None,
            ngrams: HashMap::new(),
            syllables: SyllableCounter::new(),
            ngram_aggregation: NgramAggregation::Sum,
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::Invalid(format!(
                "resource directory {} does not exist",
                dir.display()
            )));
        }
        let opt = |rel: &str| -> Option<PathBuf> {
            let p = dir.join(rel);
            p.is_file().then_some(p)
        };
        let mut res = Self::builtin();
        res.aoa = opt("aoa.tsv").map(|p| load_lexicon(&p)).transpose()?;
        res.word_prevalence = opt("word_prevalence.tsv").map(|p| load_lexicon(&p)).transpose()?;
        res.prevalence = opt("prevalence.tsv").map(|p| load_lexicon(&p)).transpose()?;
        if let Some(p) = opt("frequency.tsv") {
            res.frequency = Some(FrequencyRanks::from_lexicon(&load_lexicon(&p)?, 0)?);
        }
        if let Some(p) = opt("syllables.tsv") {
            res.syllables = SyllableCounter::from_file(&p)?;
        }
        for id in ListId::ALL {
            if let Some(p) = opt(&format!("lists/{}.txt", id.file_stem())) {
                res.lists.insert(id, WordList::load(&p)?);
            }
        }
        if let Some(p) = opt("lists/stopwords.txt") {
            res.stopwords = WordList::load(&p)?;
        }
        if let Some(p) = opt("lists/function_words.txt") {
            res.function_words = WordList::load(&p)?;
        }
        res.dale_chall = opt("lists/dale_chall.txt").map(|p| WordList::load(&p)).transpose()?;
        res.spache = opt("lists/spache.txt").map(|p| WordList::load(&p)).transpose()?;
        let ngram_dir = dir.join("ngrams");
        if ngram_dir.is_dir() {
            for t in load_ngrams(&ngram_dir)? {
                res.add_ngrams(t);
            }
        }
        Ok(res)
    }

    /// `LINGCX_RESOURCES` if set, else `fallback`.
    pub fn resolve_dir(fallback: Option<&Path>) -> Option<PathBuf> {
        std::env::var_os(RESOURCES_ENV)
            .map(PathBuf::from)
            .or_else(|| fallback.map(Path::to_path_buf))
    }

    pub fn add_ngrams(&mut self, table: NgramTable) {
        self.ngrams.insert((table.register, table.order), table);
    }

    pub fn ngram_table(&self, register: Register, order: usize) -> Option<&NgramTable> {
        self.ngrams.get(&(register, order))
    }
}
