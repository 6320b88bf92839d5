use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "lingcx",
    version,
    about = "Linguistic complexity features, control tokens and simplification metrics"
)]
pub struct Cli {
    /// Resource directory (lexicons, word lists, n-gram tables).
    #[arg(long, global = true, env = "LINGCX_RESOURCES")]
    pub resources: Option<PathBuf>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads; 0 means one per available core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Extract feature vectors for both sides of every pair.
    Analyze(AnalyzeArgs),
    /// Prefix source sentences with control tokens.
    Annotate(AnnotateArgs),
    /// Score predictions line by line.
    Evaluate(EvaluateArgs),
    /// Greedy forward selection of control tokens with an external scorer.
    SelectTokens(SelectArgs),
    /// Highlight words that need simplification.
    Highlight(HighlightArgs),
    /// Train or apply the complexity classifier.
    Classify(ClassifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Annotate(_) => "annotate",
            Command::Evaluate(_) => "evaluate",
            Command::SelectTokens(_) => "select-tokens",
            Command::Highlight(_) => "highlight",
            Command::Classify(_) => "classify",
        }
    }

    pub fn out(&self) -> &PathBuf {
        match self {
            Command::Analyze(a) => &a.out,
            Command::Annotate(a) => &a.out,
            Command::Evaluate(a) => &a.out,
            Command::SelectTokens(a) => &a.out,
            Command::Highlight(a) => &a.out,
            Command::Classify(a) => &a.out,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    /// `complex<TAB>simple` lines.
    #[arg(long)]
    pub pairs: PathBuf,
    /// Bracketed trees, two lines per pair (complex, then simple).
    #[arg(long)]
    pub trees: Option<PathBuf>,
    /// Feature families to keep, e.g. `readability,lexical`.
    #[arg(long, value_delimiter = ',')]
    pub features: Vec<String>,
    /// Also write a complexity contour of this feature.
    #[arg(long)]
    pub contour: Option<String>,
    /// Contour window size in sentences.
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    /// Feature records (JSONL).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnotateMode {
    Train,
    Inference,
}

#[derive(Debug, Args, Serialize)]
pub struct AnnotateArgs {
    #[arg(long, value_enum)]
    pub mode: AnnotateMode,
    /// Training pairs (train mode).
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Trees for the pairs, two lines per pair (train mode).
    #[arg(long)]
    pub trees: Option<PathBuf>,
    /// Source sentences, one per line (inference mode).
    #[arg(long)]
    pub src: Option<PathBuf>,
    /// Fixed tokens, e.g. `NbChars=0.80,WordRank=0.75` (inference mode).
    #[arg(long, value_delimiter = ',')]
    pub tokens: Vec<String>,
    /// Control features to compute (train mode); defaults to all.
    #[arg(long, value_delimiter = ',')]
    pub features: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Sari,
    Fkgl,
    Ter,
    Levsim,
    Wordrank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Deletion {
    F1,
    Precision,
}

#[derive(Debug, Args, Serialize)]
pub struct EvaluateArgs {
    #[arg(long, value_enum)]
    pub metric: Metric,
    #[arg(long)]
    pub src: Option<PathBuf>,
    #[arg(long)]
    pub pred: PathBuf,
    /// Reference files, each aligned with the predictions.
    #[arg(long, num_args = 1..)]
    pub refs: Vec<PathBuf>,
    /// SARI deletion score.
    #[arg(long, value_enum, default_value_t = Deletion::F1)]
    pub deletion: Deletion,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SelectArgs {
    /// Source sentences to annotate for each evaluation.
    #[arg(long)]
    pub src: PathBuf,
    /// Reference file handed to the scorer.
    #[arg(long)]
    pub refs: PathBuf,
    /// Scorer command; called as `CMD... <annotated> <refs>`, prints one number.
    #[arg(long)]
    pub scorer_cmd: String,
    /// Explicit candidates, e.g. `MLS=0.50,AoA=0.85`.
    #[arg(long, value_delimiter = ',')]
    pub candidates: Vec<String>,
    /// Training pairs to derive candidates from.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Features for derived candidates; defaults to the ten linguistic ones.
    #[arg(long, value_delimiter = ',')]
    pub features: Vec<String>,
    /// Most frequent bins kept per feature.
    #[arg(long, default_value_t = 3)]
    pub top_k: usize,
    /// Per-evaluation timeout in seconds.
    #[arg(long, default_value_t = 600)]
    pub timeout: u64,
    /// Score trace (TSV).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HighlightMethod {
    Attention,
    Random,
    Aoa,
    Gold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComparatorArg {
    Below,
    Above,
}

#[derive(Debug, Args, Serialize)]
pub struct HighlightArgs {
    #[arg(long, value_enum)]
    pub method: HighlightMethod,
    /// Pairs; the complex side is highlighted and scored against gold.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Plain sentences to highlight.
    #[arg(long)]
    pub src: Option<PathBuf>,
    /// Attention records (JSONL), one per sentence.
    #[arg(long)]
    pub attention: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ComparatorArg::Below)]
    pub comparator: ComparatorArg,
    /// AoA cutoff in years.
    #[arg(long, default_value_t = 10.0)]
    pub cutoff: f64,
    /// Highlight probability for the random baseline.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Rendered sentences; the mask goes to `<out>.mask`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    /// Feature records to train on (ids ending in `:complex` or `:simple`).
    #[arg(long)]
    pub train: Option<PathBuf>,
    /// Feature records to evaluate; defaults to the training records.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Model file: written after training, read otherwise.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-3)]
    pub l2: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lr: f64,
    #[arg(long, default_value_t = 2000)]
    pub epochs: usize,
    /// Per-record predictions; metrics go to `<out>.metrics.tsv`.
    #[arg(long)]
    pub out: PathBuf,
}
