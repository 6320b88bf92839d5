//! Penn-bracketed constituency trees, a Tregex-style pattern matcher, and the
//! syntactic complexity measures built on top of it.

mod measures;
mod pattern;
mod tree;

pub use measures::{np_head, syntactic_measures, Measure, PatternLibrary, SyntacticMeasures, Unit, UnitCounts};
pub use pattern::{match_pattern, Relation, TreePattern};
pub use tree::{is_punctuation_tag, parse_bracketed, ParseTree};
