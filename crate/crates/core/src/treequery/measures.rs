//! The 16 syntactic complexity measures.
//!
//! Production units (clauses, T-units, dependent clauses, ...) are counted by
//! the pattern library in `data/syntactic_patterns.txt`; the measures are
//! fixed ratios of those counts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use super::pattern::TreePattern;
use super::tree::ParseTree;
use crate::error::{Error, Result};

const BUILTIN_PATTERNS: &str = include_str!("../../data/syntactic_patterns.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Clause,
    TUnit,
    DependentClause,
    ComplexTUnit,
    CoordinatePhrase,
    ComplexNominal,
    VerbPhrase,
    NounPhrase,
}

impl Unit {
    pub const ALL: [Unit; 8] = [
        Unit::Clause,
        Unit::TUnit,
        Unit::DependentClause,
        Unit::ComplexTUnit,
        Unit::CoordinatePhrase,
        Unit::ComplexNominal,
        Unit::VerbPhrase,
        Unit::NounPhrase,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Unit::Clause => "clause",
            Unit::TUnit => "t_unit",
            Unit::DependentClause => "dependent_clause",
            Unit::ComplexTUnit => "complex_t_unit",
            Unit::CoordinatePhrase => "coordinate_phrase",
            Unit::ComplexNominal => "complex_nominal",
            Unit::VerbPhrase => "verb_phrase",
            Unit::NounPhrase => "noun_phrase",
        }
    }

    pub fn from_id(id: &str) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.id() == id)
    }
}

/// Patterns for every [`Unit`], parsed from the block format:
///
/// ```text
/// clause:
///     S|SINV|SQ < (VP < MD|VBD|VBP|VBZ)
/// ```
#[derive(Debug, Clone)]
pub struct PatternLibrary {
    blocks: Vec<(Unit, Vec<TreePattern>)>,
}

impl PatternLibrary {
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks: Vec<(Unit, Vec<TreePattern>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let is_header = !raw.starts_with(char::is_whitespace) && line.ends_with(':');
            if is_header {
                let id = line.trim_end_matches(':').trim();
                let unit = Unit::from_id(id)
                    .ok_or_else(|| Error::Invalid(format!("pattern library line {}: unknown unit `{id}`", i + 1)))?;
                if blocks.iter().any(|(u, _)| *u == unit) {
                    return Err(Error::Invalid(format!(
                        "pattern library line {}: duplicate unit `{id}`",
                        i + 1
                    )));
                }
                blocks.push((unit, Vec::new()));
            } else {
                let (_, pats) = blocks.last_mut().ok_or_else(|| {
                    Error::Invalid(format!(
                        "pattern library line {}: pattern before any unit header",
                        i + 1
                    ))
                })?;
                let pat = TreePattern::parse(line)
                    .map_err(|e| Error::Invalid(format!("pattern library line {}: {e}", i + 1)))?;
                pats.push(pat);
            }
        }
        for unit in Unit::ALL {
            match blocks.iter().find(|(u, _)| *u == unit) {
                None => return Err(Error::Invalid(format!("pattern library lacks unit `{}`", unit.id()))),
                Some((_, p)) if p.is_empty() => {
                    return Err(Error::Invalid(format!("unit `{}` has no patterns", unit.id())))
                }
                _ => {}
            }
        }
        Ok(Self { blocks })
    }

    pub fn builtin() -> &'static PatternLibrary {
        static LIB: OnceLock<PatternLibrary> = OnceLock::new();
        LIB.get_or_init(|| PatternLibrary::parse(BUILTIN_PATTERNS).expect("bundled pattern library is valid"))
    }

    pub fn patterns(&self, unit: Unit) -> &[TreePattern] {
        self.blocks
            .iter()
            .find(|(u, _)| *u == unit)
            .map(|(_, p)| p.as_slice())
            .unwrap_or(&[])
    }

    /// Distinct nodes matched by any of the unit's patterns.
    pub fn count(&self, unit: Unit, tree: &ParseTree) -> usize {
        let mut hits = BTreeSet::new();
        for p in self.patterns(unit) {
            hits.extend(p.match_positions(tree));
        }
        hits.len()
    }

    pub fn unit_counts(&self, tree: &ParseTree) -> UnitCounts {
        let (pre, post) = self.np_modifier_words(tree);
        UnitCounts {
            sentences: 1,
            words: tree.word_count(),
            clauses: self.count(Unit::Clause, tree),
            t_units: self.count(Unit::TUnit, tree),
            dependent_clauses: self.count(Unit::DependentClause, tree),
            complex_t_units: self.count(Unit::ComplexTUnit, tree),
            coordinate_phrases: self.count(Unit::CoordinatePhrase, tree),
            complex_nominals: self.count(Unit::ComplexNominal, tree),
            verb_phrases: self.count(Unit::VerbPhrase, tree),
            noun_phrases: self.count(Unit::NounPhrase, tree),
            np_premod_words: pre,
            np_postmod_words: post,
        }
    }

    fn np_modifier_words(&self, tree: &ParseTree) -> (usize, usize) {
        let nodes = tree.preorder();
        let mut pre = 0;
        let mut post = 0;
        let mut positions = BTreeSet::new();
        for p in self.patterns(Unit::NounPhrase) {
            positions.extend(p.match_positions(tree));
        }
        for i in positions {
            let np = nodes[i];
            if np.is_leaf() {
                continue;
            }
            let h = np_head(np);
            pre += np.children[..h].iter().map(ParseTree::word_count).sum::<usize>();
            post += np.children[h + 1..].iter().map(ParseTree::word_count).sum::<usize>();
        }
        (pre, post)
    }
}

fn is_nominal_tag(label: &str) -> bool {
    matches!(label, "NN" | "NNS" | "NNP" | "NNPS" | "PRP" | "CD" | "EX")
}

/// Head child of an NP: the last nominal pre-terminal before the first
/// phrasal child; failing that, the first NP child; failing that, the last
/// pre-terminal before the first phrasal child (or the first child).
pub fn np_head(np: &ParseTree) -> usize {
    let first_phrasal = np
        .children
        .iter()
        .position(|c| !c.is_leaf())
        .unwrap_or(np.children.len());
    if let Some(h) = np.children[..first_phrasal]
        .iter()
        .rposition(|c| is_nominal_tag(&c.label))
    {
        return h;
    }
    if let Some(h) = np.children.iter().position(|c| !c.is_leaf() && c.label == "NP") {
        return h;
    }
    first_phrasal.saturating_sub(1)
}

/// Raw production-unit counts, additive across sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnitCounts {
    pub sentences: usize,
    pub words: usize,
    pub clauses: usize,
    pub t_units: usize,
    pub dependent_clauses: usize,
    pub complex_t_units: usize,
    pub coordinate_phrases: usize,
    pub complex_nominals: usize,
    pub verb_phrases: usize,
    pub noun_phrases: usize,
    pub np_premod_words: usize,
    pub np_postmod_words: usize,
}

impl UnitCounts {
    pub fn merge(&self, o: &UnitCounts) -> UnitCounts {
        UnitCounts {
            sentences: self.sentences + o.sentences,
            words: self.words + o.words,
            clauses: self.clauses + o.clauses,
            t_units: self.t_units + o.t_units,
            dependent_clauses: self.dependent_clauses + o.dependent_clauses,
            complex_t_units: self.complex_t_units + o.complex_t_units,
            coordinate_phrases: self.coordinate_phrases + o.coordinate_phrases,
            complex_nominals: self.complex_nominals + o.complex_nominals,
            verb_phrases: self.verb_phrases + o.verb_phrases,
            noun_phrases: self.noun_phrases + o.noun_phrases,
            np_premod_words: self.np_premod_words + o.np_premod_words,
            np_postmod_words: self.np_postmod_words + o.np_postmod_words,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Mlc,
    Mls,
    Mlt,
    ClausesPerSentence,
    ClausesPerTUnit,
    DepClausesPerClause,
    TUnitsPerSentence,
    ComplexTUnitsPerTUnit,
    DepClausesPerTUnit,
    CoordPhrasesPerClause,
    CoordPhrasesPerTUnit,
    NpPostMod,
    NpPreMod,
    ComplexNominalsPerClause,
    ComplexNominalsPerTUnit,
    VerbPhrasesPerTUnit,
}

impl Measure {
    pub const ALL: [Measure; 16] = [
        Measure::Mlc,
        Measure::Mls,
        Measure::Mlt,
        Measure::ClausesPerSentence,
        Measure::ClausesPerTUnit,
        Measure::DepClausesPerClause,
        Measure::TUnitsPerSentence,
        Measure::ComplexTUnitsPerTUnit,
        Measure::DepClausesPerTUnit,
        Measure::CoordPhrasesPerClause,
        Measure::CoordPhrasesPerTUnit,
        Measure::NpPostMod,
        Measure::NpPreMod,
        Measure::ComplexNominalsPerClause,
        Measure::ComplexNominalsPerTUnit,
        Measure::VerbPhrasesPerTUnit,
    ];

    /// Canonical feature id.
    pub fn id(self) -> &'static str {
        match self {
            Measure::Mlc => "MLC",
            Measure::Mls => "MLS",
            Measure::Mlt => "MLT",
            Measure::ClausesPerSentence => "C/S",
            Measure::ClausesPerTUnit => "C/T",
            Measure::DepClausesPerClause => "DepC/C",
            Measure::TUnitsPerSentence => "T/S",
            Measure::ComplexTUnitsPerTUnit => "CompT/T",
            Measure::DepClausesPerTUnit => "DepC/T",
            Measure::CoordPhrasesPerClause => "CoordP/C",
            Measure::CoordPhrasesPerTUnit => "CoordP/T",
            Measure::NpPostMod => "NP.PostMod",
            Measure::NpPreMod => "NP.PreMod",
            Measure::ComplexNominalsPerClause => "CompN/C",
            Measure::ComplexNominalsPerTUnit => "CompN/T",
            Measure::VerbPhrasesPerTUnit => "VP/T",
        }
    }

    pub fn index(self) -> usize {
        Measure::ALL.iter().position(|&m| m == self).expect("listed")
    }

    /// (numerator, denominator) in terms of unit counts.
    fn operands(self, c: &UnitCounts) -> (usize, usize) {
        match self {
            Measure::Mlc => (c.words, c.clauses),
            Measure::Mls => (c.words, c.sentences),
            Measure::Mlt => (c.words, c.t_units),
            Measure::ClausesPerSentence => (c.clauses, c.sentences),
            Measure::ClausesPerTUnit => (c.clauses, c.t_units),
            Measure::DepClausesPerClause => (c.dependent_clauses, c.clauses),
            Measure::TUnitsPerSentence => (c.t_units, c.sentences),
            Measure::ComplexTUnitsPerTUnit => (c.complex_t_units, c.t_units),
            Measure::DepClausesPerTUnit => (c.dependent_clauses, c.t_units),
            Measure::CoordPhrasesPerClause => (c.coordinate_phrases, c.clauses),
            Measure::CoordPhrasesPerTUnit => (c.coordinate_phrases, c.t_units),
            Measure::NpPostMod => (c.np_postmod_words, c.noun_phrases),
            Measure::NpPreMod => (c.np_premod_words, c.noun_phrases),
            Measure::ComplexNominalsPerClause => (c.complex_nominals, c.clauses),
            Measure::ComplexNominalsPerTUnit => (c.complex_nominals, c.t_units),
            Measure::VerbPhrasesPerTUnit => (c.verb_phrases, c.t_units),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Values of the 16 measures in [`Measure::ALL`] order. A zero denominator
/// gives value 0 with the matching `degenerate` flag set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntacticMeasures {
    pub values: [f64; 16],
    pub degenerate: [bool; 16],
}

impl SyntacticMeasures {
    pub fn from_counts(c: &UnitCounts) -> Self {
        let mut values = [0.0; 16];
        let mut degenerate = [false; 16];
        for (i, m) in Measure::ALL.into_iter().enumerate() {
            let (num, den) = m.operands(c);
            if den == 0 {
                degenerate[i] = true;
            } else {
                values[i] = num as f64 / den as f64;
            }
        }
        Self { values, degenerate }
    }

    pub fn get(&self, m: Measure) -> f64 {
        self.values[m.index()]
    }

    pub fn is_degenerate(&self, m: Measure) -> bool {
        self.degenerate[m.index()]
    }
}

pub fn syntactic_measures(tree: &ParseTree) -> SyntacticMeasures {
    SyntacticMeasures::from_counts(&PatternLibrary::builtin().unit_counts(tree))
}
