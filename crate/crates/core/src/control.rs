//! Control tokens: feature ratios between a target and its source, binned
//! and rendered as `<FEATURE_X.XX>` prefixes, plus greedy forward search for
//! the best token combination.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::corpus::SentencePair;
use crate::error::{Error, Result};
use crate::features::{surface_features, FeatureId};
use crate::metrics::{levenshtein_similarity, word_rank};
use crate::resources::Resources;
use crate::textproc::tokenize;
use crate::treequery::{syntactic_measures, Measure, ParseTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ControlFeature {
    NbChars,
    LevSim,
    WordRank,
    Mls,
    Fry,
    Forcast,
    WpCorp,
    WpCrowd,
    BigramNews,
    Anc,
    Aoa,
    Mlws,
    Cttr,
}

impl ControlFeature {
    pub const ALL: [ControlFeature; 13] = [
        ControlFeature::NbChars,
        ControlFeature::LevSim,
        ControlFeature::WordRank,
        ControlFeature::Mls,
        ControlFeature::Fry,
        ControlFeature::Forcast,
        ControlFeature::WpCorp,
        ControlFeature::WpCrowd,
        ControlFeature::BigramNews,
        ControlFeature::Anc,
        ControlFeature::Aoa,
        ControlFeature::Mlws,
        ControlFeature::Cttr,
    ];

    /// The ten linguistic features searched by default.
    pub const EXTENDED: [ControlFeature; 10] = [
        ControlFeature::Mls,
        ControlFeature::Fry,
        ControlFeature::Forcast,
        ControlFeature::WpCorp,
        ControlFeature::WpCrowd,
        ControlFeature::BigramNews,
        ControlFeature::Anc,
        ControlFeature::Aoa,
        ControlFeature::Mlws,
        ControlFeature::Cttr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ControlFeature::NbChars => "NbChars",
            ControlFeature::LevSim => "LevSim",
            ControlFeature::WordRank => "WordRank",
            ControlFeature::Mls => "MLS",
            ControlFeature::Fry => "Fry",
            ControlFeature::Forcast => "FORCAST",
            ControlFeature::WpCorp => "WPCorp",
            ControlFeature::WpCrowd => "WPCrowd",
            ControlFeature::BigramNews => "BigramNews",
            ControlFeature::Anc => "ANC",
            ControlFeature::Aoa => "AoA",
            ControlFeature::Mlws => "MLWs",
            ControlFeature::Cttr => "CTTR",
        }
    }

    /// Catalog feature the token is computed from, if any.
    pub fn catalog_feature(self) -> Option<FeatureId> {
        let name = match self {
            ControlFeature::NbChars | ControlFeature::LevSim | ControlFeature::WordRank => return None,
            ControlFeature::Mls => "MLS",
            ControlFeature::Fry => "Fry-x",
            ControlFeature::Forcast => "FORCAST",
            ControlFeature::WpCorp => "Prev.AllAP",
            ControlFeature::WpCrowd => "WordPrevalence",
            ControlFeature::BigramNews => "ngram2news",
            ControlFeature::Anc => "ANC",
            ControlFeature::Aoa => "AoA-mean",
            ControlFeature::Mlws => "MLWs",
            ControlFeature::Cttr => "CTTR",
        };
        Some(FeatureId::named(name))
    }
}

impl fmt::Display for ControlFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ControlFeature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ControlFeature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFeature(s.to_string()))
    }
}

/// A ratio bin: `k * 0.05` for `k` in `1..=40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bin(u8);

impl Bin {
    pub const MIN: Bin = Bin(1);
    pub const MAX: Bin = Bin(40);
    pub const WIDTH: f64 = 0.05;

    pub fn from_steps(k: u8) -> Result<Bin> {
        if (1..=40).contains(&k) {
            Ok(Bin(k))
        } else {
            Err(Error::InvalidToken(format!("bin index {k} outside 1..=40")))
        }
    }

    pub fn steps(self) -> u8 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 * Self::WIDTH
    }

    /// Two-decimal label, built from the integer index so it is exact.
    pub fn label(self) -> String {
        let hundredths = self.0 as u32 * 5;
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }

    /// Parses a label such as `0.8` or `0.80`; it must be an exact multiple
    /// of 0.05 in `[0.05, 2.00]`.
    pub fn parse_label(s: &str) -> Result<Bin> {
        let bad = || Error::InvalidToken(format!("`{s}` is not a multiple of 0.05 in [0.05, 2.00]"));
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 2 && frac[2..].bytes().any(|b| b != b'0') {
            return Err(bad());
        }
        let frac2: u32 = format!("{:0<2}", &frac[..frac.len().min(2)])
            .parse()
            .map_err(|_| bad())?;
        let int: u32 = int.parse().map_err(|_| bad())?;
        let hundredths = int
            .checked_mul(100)
            .and_then(|h| h.checked_add(frac2))
            .ok_or_else(bad)?;
        if hundredths % 5 != 0 {
            return Err(bad());
        }
        u8::try_from(hundredths / 5)
            .ok()
            .and_then(|k| Bin::from_steps(k).ok())
            .ok_or_else(bad)
    }
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Nearest multiple of 0.05 (ties up), clamped to `[0.05, 2.00]`.
pub fn discretize(ratio: f64) -> Result<Bin> {
    if ratio.is_nan() || ratio < 0.0 {
        return Err(Error::Domain(format!("ratio {ratio} is negative or NaN")));
    }
    let k = (ratio * 20.0 + 0.5).floor().clamp(1.0, 40.0);
    Ok(Bin(k as u8))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlToken {
    pub feature: ControlFeature,
    pub bin: Bin,
}

impl ControlToken {
    pub fn new(feature: ControlFeature, bin: Bin) -> Self {
        Self { feature, bin }
    }

    /// `FEATURE=BIN`, e.g. `NbChars=0.80`.
    pub fn parse_assignment(s: &str) -> Result<Self> {
        let (f, b) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidToken(format!("`{s}`: expected FEATURE=BIN")))?;
        Ok(Self::new(f.trim().parse()?, Bin::parse_label(b)?))
    }
}

impl fmt::Display for ControlToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}_{}>", self.feature, self.bin)
    }
}

impl FromStr for ControlToken {
    type Err = Error;

    /// Parses the canonical `<FEATURE_X.XX>` form.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| Error::InvalidToken(format!("`{s}`: expected <FEATURE_X.XX>")))?;
        let (f, b) = inner
            .rsplit_once('_')
            .ok_or_else(|| Error::InvalidToken(format!("`{s}`: expected <FEATURE_X.XX>")))?;
        Ok(Self::new(f.parse()?, Bin::parse_label(b)?))
    }
}

/// Space-joined tokens followed by one space, or nothing for no tokens.
pub fn render_prefix(tokens: &[ControlToken]) -> String {
    let mut s = String::new();
    for t in tokens {
        s.push_str(&t.to_string());
        s.push(' ');
    }
    s
}

/// One side of a pair, with its features computed once.
pub struct SideValues<'a> {
    text: &'a str,
    tree: Option<&'a ParseTree>,
    surface: Vec<(FeatureId, Option<f64>)>,
    n_words: usize,
}

impl<'a> SideValues<'a> {
    pub fn new(text: &'a str, tree: Option<&'a ParseTree>, res: &Resources) -> Self {
        let ts = tokenize(text);
        let n_words = ts.n_words();
        let surface = if n_words > 0 {
            surface_features(&ts, res)
        } else {
            Vec::new()
        };
        Self {
            text,
            tree,
            surface,
            n_words,
        }
    }

    /// Value of a catalog-backed feature. MLS comes from the tree when there
    /// is one and from the token count otherwise.
    fn value(&self, feature: ControlFeature, res: &Resources) -> Option<f64> {
        if self.n_words == 0 {
            return None;
        }
        match feature {
            ControlFeature::NbChars => Some(self.text.chars().count() as f64),
            ControlFeature::LevSim => None,
            ControlFeature::WordRank => {
                let ranks = res.frequency.as_ref()?;
                word_rank(&tokenize(self.text), ranks).ok()
            }
            ControlFeature::Mls => Some(match self.tree {
                Some(t) => syntactic_measures(t).get(Measure::Mls),
                None => self.n_words as f64,
            }),
            other => {
                let id = other.catalog_feature().expect("catalog-backed");
                self.surface.iter().find(|(f, _)| *f == id).and_then(|(_, v)| *v)
            }
        }
    }
}

/// `target / source` with the zero conventions applied.
pub fn value_ratio(source: f64, target: f64) -> f64 {
    match (source == 0.0, target == 0.0) {
        (true, true) => 1.0,
        (true, false) => 2.0,
        _ => target / source,
    }
}

fn ratio_between(feature: ControlFeature, src: &SideValues<'_>, tgt: &SideValues<'_>, res: &Resources) -> Option<f64> {
    if feature == ControlFeature::LevSim {
        return (src.n_words > 0 && tgt.n_words > 0).then(|| levenshtein_similarity(src.text, tgt.text));
    }
    let (s, t) = (src.value(feature, res)?, tgt.value(feature, res)?);
    if s < 0.0 || t < 0.0 {
        return None;
    }
    let r = value_ratio(s, t);
    r.is_finite().then_some(r)
}

/// Target-to-source ratio of one feature; `None` means no token is emitted.
pub fn feature_ratio(feature: ControlFeature, source: &str, target: &str, res: &Resources) -> Option<f64> {
    let src = SideValues::new(source, None, res);
    let tgt = SideValues::new(target, None, res);
    ratio_between(feature, &src, &tgt, res)
}

/// Ratios for many features of one pair (complex = source, simple = target).
pub fn pair_ratios(pair: &SentencePair, features: &[ControlFeature], res: &Resources) -> Vec<Option<f64>> {
    let src = SideValues::new(&pair.complex_text, pair.complex_tree.as_ref(), res);
    let tgt = SideValues::new(&pair.simple_text, pair.simple_tree.as_ref(), res);
    features.iter().map(|&f| ratio_between(f, &src, &tgt, res)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotated {
    pub text: String,
    pub tokens: Vec<ControlToken>,
    /// Set when no feature produced a token.
    pub warning: bool,
}

/// Prefixes the pair's complex side with the tokens of its own ratios.
pub fn annotate_pair(pair: &SentencePair, features: &[ControlFeature], res: &Resources) -> Result<Annotated> {
    if features.is_empty() {
        return Err(Error::Invalid("annotate_pair needs at least one feature".into()));
    }
    let mut tokens = Vec::new();
    for (&f, r) in features.iter().zip(pair_ratios(pair, features, res)) {
        if let Some(r) = r {
            tokens.push(ControlToken::new(f, discretize(r)?));
        }
    }
    Ok(Annotated {
        text: format!("{}{}", render_prefix(&tokens), pair.complex_text),
        warning: tokens.is_empty(),
        tokens,
    })
}

fn check_distinct(tokens: &[ControlToken]) -> Result<()> {
    let mut seen = HashSet::new();
    for t in tokens {
        if !seen.insert(t.feature) {
            return Err(Error::InvalidToken(format!("two tokens for feature {}", t.feature)));
        }
    }
    Ok(())
}

/// Gives every sentence the same fixed prefix.
pub fn annotate_inference<S: AsRef<str>>(sentences: &[S], tokens: &[ControlToken]) -> Result<Vec<String>> {
    check_distinct(tokens)?;
    let prefix = render_prefix(tokens);
    Ok(sentences.iter().map(|s| format!("{prefix}{}", s.as_ref())).collect())
}

/// Per feature, the `k` most frequent bins over the training ratios, ties to
/// the smaller bin. Output is grouped by feature in `features` order.
pub fn candidate_tokens(
    pairs: &[SentencePair],
    features: &[ControlFeature],
    res: &Resources,
    k: usize,
) -> Result<Vec<ControlToken>> {
    if pairs.is_empty() {
        return Err(Error::Invalid("candidate construction needs training pairs".into()));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be >= 1".into()));
    }
    let mut counts: Vec<BTreeMap<Bin, usize>> = vec![BTreeMap::new(); features.len()];
    for pair in pairs {
        for (c, r) in counts.iter_mut().zip(pair_ratios(pair, features, res)) {
            if let Some(r) = r {
                *c.entry(discretize(r)?).or_default() += 1;
            }
        }
    }
    Ok(top_bins(features, &counts, k))
}

/// Ranks bins by count (descending), then bin (ascending).
pub fn top_bins(features: &[ControlFeature], counts: &[BTreeMap<Bin, usize>], k: usize) -> Vec<ControlToken> {
    let mut out = Vec::new();
    for (&f, c) in features.iter().zip(counts) {
        let mut bins: Vec<(Bin, usize)> = c.iter().map(|(b, n)| (*b, *n)).collect();
        bins.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        out.extend(bins.into_iter().take(k).map(|(b, _)| ControlToken::new(f, b)));
    }
    out
}

/// Scores a token combination, higher is better.
pub trait Scorer: Sync {
    fn score(&self, tokens: &[ControlToken]) -> Result<f64>;
}

impl<F> Scorer for F
where
    F: Fn(&[ControlToken]) -> Result<f64> + Sync,
{
    fn score(&self, tokens: &[ControlToken]) -> Result<f64> {
        self(tokens)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchStep {
    pub token: ControlToken,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchTrace {
    /// Score with no tokens.
    pub baseline: f64,
    pub steps: Vec<SearchStep>,
    pub evaluations: usize,
}

impl SearchTrace {
    pub fn selection(&self) -> Vec<ControlToken> {
        self.steps.iter().map(|s| s.token).collect()
    }

    pub fn best_score(&self) -> f64 {
        self.steps.last().map_or(self.baseline, |s| s.score)
    }
}

#[derive(Debug)]
pub struct SearchError {
    pub trace: SearchTrace,
    pub source: Error,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "search stopped after {} steps: {}",
            self.trace.steps.len(),
            self.source
        )
    }
}

impl std::error::Error for SearchError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

fn score_all<S: Scorer + ?Sized>(
    scorer: &S,
    selected: &[ControlToken],
    remaining: &[ControlToken],
    parallel: bool,
) -> Vec<Result<f64>> {
    let eval = |c: &ControlToken| {
        let mut combo = selected.to_vec();
        combo.push(*c);
        scorer.score(&combo)
    };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return remaining.par_iter().map(eval).collect();
    }
    let _ = parallel;
    remaining.iter().map(eval).collect()
}

/// Greedy forward selection. Each round scores every remaining candidate
/// together with the current selection and keeps the best (first on ties)
/// if it strictly beats the current score; candidates sharing its feature are
/// then dropped. Round evaluations run concurrently when `parallel` is set.
pub fn greedy_forward_select<S: Scorer + ?Sized>(
    candidates: &[ControlToken],
    scorer: &S,
    parallel: bool,
) -> std::result::Result<SearchTrace, SearchError> {
    let mut trace = SearchTrace::default();
    if candidates.is_empty() {
        return Err(SearchError {
            trace,
            source: Error::Invalid("no candidate tokens".into()),
        });
    }
    trace.baseline = match scorer.score(&[]) {
        Ok(s) if s.is_finite() => s,
        Ok(s) => {
            return Err(SearchError {
                trace,
                source: Error::Scorer(format!("non-finite score {s}")),
            })
        }
        Err(e) => return Err(SearchError { trace, source: e }),
    };
    trace.evaluations = 1;
    let mut selected: Vec<ControlToken> = Vec::new();
    let mut remaining: Vec<ControlToken> = candidates.to_vec();
    let mut current = trace.baseline;
    while !remaining.is_empty() {
        let scores = score_all(scorer, &selected, &remaining, parallel);
        trace.evaluations += scores.len();
        let mut best: Option<(usize, f64)> = None;
        for (i, s) in scores.into_iter().enumerate() {
            let s = match s {
                Ok(s) if s.is_finite() => s,
                Ok(s) => {
                    return Err(SearchError {
                        trace,
                        source: Error::Scorer(format!("non-finite score {s}")),
                    })
                }
                Err(e) => return Err(SearchError { trace, source: e }),
            };
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        let (i, s) = best.expect("remaining is non-empty");
        if s <= current {
            break;
        }
        let token = remaining[i];
        selected.push(token);
        remaining.retain(|c| c.feature != token.feature);
        trace.steps.push(SearchStep { token, score: s });
        current = s;
    }
    Ok(trace)
}

/// Runs `program args... <annotated_src_path> <reference_path>` per
/// evaluation and reads one number from its standard output.
#[derive(Debug, Clone)]
pub struct ProcessScorer {
    pub command: Vec<String>,
    pub sources: Vec<String>,
    pub reference_path: PathBuf,
    pub workdir: PathBuf,
    pub timeout: Duration,
}

static SCORER_CALLS: AtomicUsize = AtomicUsize::new(0);

impl ProcessScorer {
    pub fn new(command: Vec<String>, sources: Vec<String>, reference_path: &Path, workdir: &Path) -> Result<Self> {
        if command.is_empty() {
            return Err(Error::Invalid("empty scorer command".into()));
        }
        Ok(Self {
            command,
            sources,
            reference_path: reference_path.to_path_buf(),
            workdir: workdir.to_path_buf(),
            timeout: Duration::from_secs(600),
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    fn run(&self, annotated: &Path) -> Result<f64> {
        let mut child = Command::new(&self.command[0])
            .args(&self.command[1..])
            .arg(annotated)
            .arg(&self.reference_path)
            .current_dir(&self.workdir)
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::Scorer(format!("cannot start `{}`: {e}", self.command[0])))?;
        let mut stdout = child.stdout.take().expect("piped");
        let mut stderr = child.stderr.take().expect("piped");
        let out_reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let err_reader = std::thread::spawn(move || {
            let mut s = String::new();
            let _ = stderr.read_to_string(&mut s);
            s
        });
        let start = Instant::now();
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) if start.elapsed() >= self.timeout => {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(Error::Scorer(format!("timed out after {:?}", self.timeout)));
                }
                Ok(None) => std::thread::sleep(Duration::from_millis(5)),
                Err(e) => return Err(Error::Scorer(e.to_string())),
            }
        };
        let out = out_reader
            .join()
            .expect("reader thread")
            .map_err(|e| Error::Scorer(e.to_string()))?;
        let err = err_reader.join().expect("reader thread");
        if !status.success() {
            return Err(Error::Scorer(format!("exit status {status}: {}", err.trim())));
        }
        out.trim()
            .parse::<f64>()
            .map_err(|_| Error::Scorer(format!("expected one number on stdout, got `{}`", out.trim())))
    }
}

impl Scorer for ProcessScorer {
    fn score(&self, tokens: &[ControlToken]) -> Result<f64> {
        let lines = annotate_inference(&self.sources, tokens)?;
        let n = SCORER_CALLS.fetch_add(1, Ordering::Relaxed);
        let path = self
            .workdir
            .join(format!(".lingcx-scorer-{}-{n}.txt", std::process::id()));
        let mut body = lines.join("\n");
        body.push('\n');
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        let result = self.run(&path);
        let _ = std::fs::remove_file(&path);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tok(f: ControlFeature, label: &str) -> ControlToken {
        ControlToken::new(f, Bin::parse_label(label).unwrap())
    }

    #[test]
    fn discretize_anchors() {
        assert_eq!(
            ControlToken::new(ControlFeature::NbChars, discretize(0.8).unwrap()).to_string(),
            "<NbChars_0.80>"
        );
        assert_eq!(discretize(2.37).unwrap().label(), "2.00");
        assert_eq!(discretize(0.8249).unwrap().label(), "0.80");
        assert_eq!(discretize(0.825).unwrap().label(), "0.85");
        assert_eq!(discretize(0.0).unwrap().label(), "0.05");
        assert!(discretize(-0.1).is_err());
        assert!(discretize(f64::NAN).is_err());
    }

    #[test]
    fn bin_labels() {
        assert_eq!(Bin::parse_label("0.8").unwrap().label(), "0.80");
        assert_eq!(Bin::parse_label("2").unwrap().label(), "2.00");
        assert_eq!(Bin::parse_label("1.000").unwrap().label(), "1.00");
        for bad in ["0.83", "0", "2.05", "-0.5", "abc", "0.8.1", ".5", "0.801"] {
            assert!(Bin::parse_label(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn token_text_round_trip() {
        for t in ["<MLS_0.50>", "<BigramNews_2.00>", "<WPCorp_0.95>"] {
            assert_eq!(t.parse::<ControlToken>().unwrap().to_string(), t);
        }
        assert!("<Nope_0.50>".parse::<ControlToken>().is_err());
        assert_eq!(
            ControlToken::parse_assignment("NbChars=0.80").unwrap().to_string(),
            "<NbChars_0.80>"
        );
        assert!(ControlToken::parse_assignment("MLS=0.83").is_err());
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(value_ratio(20.0, 10.0), 0.5);
        assert_eq!(value_ratio(0.0, 0.0), 1.0);
        assert_eq!(value_ratio(0.0, 3.0), 2.0);
        let res = Resources::builtin();
        let src = "a".repeat(50);
        let tgt = "a".repeat(40);
        assert_eq!(feature_ratio(ControlFeature::NbChars, &src, &tgt, &res), Some(0.8));
        let mls = feature_ratio(
            ControlFeature::Mls,
            "one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty",
            "one two three four five six seven eight nine ten",
            &res,
        );
        assert_eq!(mls, Some(0.5));
        assert_eq!(feature_ratio(ControlFeature::Aoa, "a b", "a", &res), None);
    }

    #[test]
    fn annotate_pair_mls() {
        let pair = SentencePair::new(0, "a b c d e f g h", "a b c d");
        let res = Resources::builtin();
        let a = annotate_pair(&pair, &[ControlFeature::Mls], &res).unwrap();
        assert_eq!(a.text, "<MLS_0.50> a b c d e f g h");
        assert!(!a.warning);
        let a = annotate_pair(&pair, &[ControlFeature::Aoa], &res).unwrap();
        assert_eq!(a.text, pair.complex_text);
        assert!(a.warning);
        assert!(annotate_pair(&pair, &[], &res).is_err());
    }

    #[test]
    fn inference_prefix() {
        let t = [tok(ControlFeature::NbChars, "0.80")];
        let out = annotate_inference(&["a", "b", "c"], &t).unwrap();
        assert_eq!(out, ["<NbChars_0.80> a", "<NbChars_0.80> b", "<NbChars_0.80> c"]);
        assert!(annotate_inference::<&str>(&[], &t).unwrap().is_empty());
        let dup = [tok(ControlFeature::Mls, "0.50"), tok(ControlFeature::Mls, "0.80")];
        assert!(annotate_inference(&["a"], &dup).is_err());
    }

    #[test]
    fn candidates_top_k_with_ties() {
        let pairs: Vec<_> = [
            ("a b c d e", "a b c d"),
            ("a b c d e", "a b c d"),
            ("a b c d e f g h i j", "a b c d e f g h i j"),
        ]
        .iter()
        .enumerate()
        .map(|(i, (c, s))| SentencePair::new(i, *c, *s))
        .collect();
        let res = Resources::builtin();
        let c = candidate_tokens(&pairs, &[ControlFeature::Mls], &res, 1).unwrap();
        assert_eq!(c, [tok(ControlFeature::Mls, "0.80")]);
        let c = candidate_tokens(&pairs[1..], &[ControlFeature::Mls], &res, 1).unwrap();
        assert_eq!(c, [tok(ControlFeature::Mls, "0.80")]);
        let c = candidate_tokens(&pairs[1..], &[ControlFeature::Mls], &res, 5).unwrap();
        assert_eq!(c.len(), 2);
        assert!(candidate_tokens(&[], &[ControlFeature::Mls], &res, 1).is_err());
    }

    #[test]
    fn greedy_edge_cases() {
        let cands = [tok(ControlFeature::Mls, "0.50"), tok(ControlFeature::Fry, "0.85")];
        let constant = |_: &[ControlToken]| Ok(1.0);
        let t = greedy_forward_select(&cands, &constant, false).unwrap();
        assert!(t.steps.is_empty());
        let one = |ts: &[ControlToken]| Ok(ts.iter().filter(|t| t.feature == ControlFeature::Fry).count() as f64);
        let t = greedy_forward_select(&cands, &one, false).unwrap();
        assert_eq!(t.selection(), [cands[1]]);
        let failing = |ts: &[ControlToken]| {
            if ts.len() > 1 {
                Err(Error::Scorer("boom".into()))
            } else {
                Ok(ts.len() as f64)
            }
        };
        let err = greedy_forward_select(&cands, &failing, false).unwrap_err();
        assert_eq!(err.trace.steps.len(), 1);
    }

    proptest! {
        #[test]
        fn discretize_in_range_and_monotone(a in 0.0f64..3.0, b in 0.0f64..3.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (bl, bh) = (discretize(lo).unwrap(), discretize(hi).unwrap());
            prop_assert!(bl <= bh);
            prop_assert!((0.05..=2.0).contains(&bl.value()));
            prop_assert_eq!(Bin::parse_label(&bl.label()).unwrap(), bl);
        }

        #[test]
        fn prefix_strips_to_source(src in "[a-zA-Z ,.]{1,30}", k in 1u8..=40) {
            let t = [ControlToken::new(ControlFeature::Cttr, Bin::from_steps(k).unwrap())];
            let out = &annotate_inference(&[src.as_str()], &t).unwrap()[0];
            prop_assert_eq!(&out[render_prefix(&t).len()..], src.as_str());
        }
    }
}
