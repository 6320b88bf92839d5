//! Acceptance criteria 1-11. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use lingcx::classify::{
    binary_metrics, evaluate, loss_and_gradient, metrics_from_labels, train, LabeledRow, TrainConfig,
};
use lingcx::control::{
    discretize, greedy_forward_select, render_prefix, Bin, ControlFeature, ControlToken, SearchStep,
};
use lingcx::corpus::{parse_pairs, parse_trees, AttentionRecord, SentencePair};
use lingcx::explain::{
    attention_to_word_weights, baseline_highlight, eval_highlight, gold_highlight, highlight_ter, threshold_highlight,
    Baseline, Comparator, HighlightMask, WeightSource, WordWeights,
};
use lingcx::features::{extract_all, fkgl, full_vector, FeatureId, FeatureVector};
use lingcx::metrics::{levenshtein_similarity, sari, ter};
use lingcx::resources::Resources;
use lingcx::textproc::{tokenize, SentenceStats};
use lingcx::treequery::{syntactic_measures, Measure, PatternLibrary, UnitCounts};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let w = rng.gen_range(1..200usize);
        let s = rng.gen_range(1..10usize);
        let y = rng.gen_range(w..=4 * w);
        let st = SentenceStats {
            n_words: w,
            n_sentences: s,
            n_syllables: y,
            ..SentenceStats::default()
        };
        let want = 0.39 * w as f64 / s as f64 + 11.8 * y as f64 / w as f64 - 15.59;
        let got = fkgl(&st).map_err(|e| e.to_string())?;
        ensure!(close(got, want, 1e-9), "fkgl({w},{s},{y}) = {got}, expected {want}");
    }
    let st = SentenceStats {
        n_words: 10,
        n_sentences: 1,
        n_syllables: 15,
        ..SentenceStats::default()
    };
    let got = fkgl(&st).map_err(|e| e.to_string())?;
    ensure!(close(got, 6.01, 1e-9), "fkgl(10,1,15) = {got}");
    Ok(())
}

/// Each n-gram occurrence becomes `(gram, k)` for its k-th repetition, so
/// multiset operations reduce to plain set operations.
fn occurrence_set(tokens: &[&str], n: usize) -> BTreeSet<(String, usize)> {
    let mut out = BTreeSet::new();
    if tokens.len() < n {
        return out;
    }
    for g in tokens.windows(n) {
        let gram = g.join(" ");
        let mut k = 1;
        while out.contains(&(gram.clone(), k)) {
            k += 1;
        }
        out.insert((gram, k));
    }
    out
}

fn ratio_or(num: usize, den: usize, empty: f64) -> f64 {
    if den == 0 {
        empty
    } else {
        num as f64 / den as f64
    }
}

fn oracle_sari(src: &str, pred: &str, refs: &[&str]) -> f64 {
    let s: Vec<&str> = src.split_whitespace().collect();
    let c: Vec<&str> = pred.split_whitespace().collect();
    let mut total = [0.0; 3];
    for n in 1..=4 {
        let ss = occurrence_set(&s, n);
        let cs = occurrence_set(&c, n);
        let mut p = [0.0; 3];
        let mut r = [0.0; 3];
        for reference in refs {
            let rt: Vec<&str> = reference.split_whitespace().collect();
            let rs = occurrence_set(&rt, n);
            let ops = [(&cs - &ss, &rs - &ss), (&ss & &cs, &ss & &rs), (&ss - &cs, &ss - &rs)];
            for (i, (sys, gold)) in ops.iter().enumerate() {
                let hit = sys.intersection(gold).count();
                let empty_p = if gold.is_empty() { 1.0 } else { 0.0 };
                p[i] += ratio_or(hit, sys.len(), empty_p);
                r[i] += ratio_or(hit, gold.len(), 1.0);
            }
        }
        for i in 0..3 {
            let (pi, ri) = (p[i] / refs.len() as f64, r[i] / refs.len() as f64);
            total[i] += if pi + ri == 0.0 { 0.0 } else { 2.0 * pi * ri / (pi + ri) };
        }
    }
    100.0 * total.iter().map(|t| t / 4.0).sum::<f64>() / 3.0
}

fn random_sentence(rng: &mut ChaCha8Rng, vocab: &[&str]) -> String {
    let len = rng.gen_range(0..=8);
    (0..len)
        .map(|_| *vocab.choose(rng).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let vocab = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let v = &vocab[..rng.gen_range(1..=8)];
        let src = random_sentence(&mut rng, v);
        let pred = random_sentence(&mut rng, v);
        let refs: Vec<String> = (0..rng.gen_range(1..=3))
            .map(|_| random_sentence(&mut rng, v))
            .collect();
        let refs: Vec<&str> = refs.iter().map(String::as_str).collect();
        let got = sari(&src, &pred, &refs).map_err(|e| e.to_string())?.sari;
        let want = oracle_sari(&src, &pred, &refs);
        ensure!(
            close(got, want, 1e-9),
            "triple {i}: {got} vs oracle {want} ({src:?}, {pred:?}, {refs:?})"
        );
    }
    let b = sari("the cat sat on the mat", "a cat sat", &["a cat sat"]).map_err(|e| e.to_string())?;
    ensure!(close(b.sari, 100.0, 1e-12), "prediction == reference gives {}", b.sari);
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ratios: Vec<f64> = (0..10_000).map(|_| rng.gen_range(0.0..=3.0)).collect();
    ratios.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    for r in ratios {
        let bin = discretize(r).map_err(|e| e.to_string())?;
        let v = bin.value();
        ensure!((0.05..=2.0).contains(&v), "{r} -> {v}");
        let label = bin.label();
        ensure!(
            Bin::parse_label(&label).ok() == Some(bin),
            "label {label} is not an exact 0.05 multiple"
        );
        ensure!(v >= prev, "not monotone at {r}");
        prev = v;
    }
    let nb = ControlToken::new(ControlFeature::NbChars, discretize(0.8).unwrap());
    ensure!(nb.to_string() == "<NbChars_0.80>", "0.8 renders {nb}");
    ensure!(discretize(2.37).unwrap().label() == "2.00", "2.37 is not capped");
    Ok(())
}

fn criterion_4() -> Outcome {
    let pairs = [
        ("MLS", "0.50"),
        ("Fry", "0.85"),
        ("FORCAST", "0.90"),
        ("WPCorp", "0.95"),
        ("WPCrowd", "0.90"),
        ("BigramNews", "2.00"),
        ("ANC", "0.85"),
        ("AoA", "1.00"),
        ("MLWs", "0.90"),
        ("CTTR", "0.85"),
    ];
    let tokens: Vec<ControlToken> = pairs
        .iter()
        .map(|(f, b)| ControlToken::parse_assignment(&format!("{f}={b}")))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let want = "<MLS_0.50> <Fry_0.85> <FORCAST_0.90> <WPCorp_0.95> <WPCrowd_0.90> <BigramNews_2.00> <ANC_0.85> <AoA_1.00> <MLWs_0.90> <CTTR_0.85>";
    let got = render_prefix(&tokens);
    ensure!(got.trim_end() == want, "rendered {got:?}");
    Ok(())
}

fn mock_score(selected: &[ControlToken], hidden: &[ControlToken]) -> f64 {
    let s: BTreeSet<_> = selected.iter().collect();
    let h: BTreeSet<_> = hidden.iter().collect();
    -(s.symmetric_difference(&h).count() as f64)
}

/// Greedy forward selection written as a literal search: each round tries
/// every admissible candidate in order and keeps the first maximum.
fn oracle_greedy(candidates: &[ControlToken], hidden: &[ControlToken]) -> (Vec<SearchStep>, f64) {
    let mut chosen: Vec<ControlToken> = Vec::new();
    let mut steps = Vec::new();
    let mut current = mock_score(&[], hidden);
    loop {
        let mut best: Option<(ControlToken, f64)> = None;
        for c in candidates {
            if chosen.iter().any(|x| x.feature == c.feature) {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(*c);
            let s = mock_score(&trial, hidden);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((*c, s));
            }
        }
        match best {
            Some((c, s)) if s > current => {
                chosen.push(c);
                steps.push(SearchStep { token: c, score: s });
                current = s;
            }
            _ => return (steps, current),
        }
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let features = ControlFeature::EXTENDED;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates = Vec::new();
        for f in features {
            let mut ks: Vec<u8> = (1..=40).collect();
            ks.shuffle(&mut rng);
            for &k in &ks[..3] {
                candidates.push(ControlToken::new(f, Bin::from_steps(k).unwrap()));
            }
        }
        candidates.shuffle(&mut rng);
        let mut hidden = Vec::new();
        for f in features {
            if rng.gen_bool(0.5) {
                let options: Vec<_> = candidates.iter().filter(|c| c.feature == f).collect();
                hidden.push(**options.choose(&mut rng).unwrap());
            }
        }
        let scorer = |t: &[ControlToken]| -> lingcx::Result<f64> { Ok(mock_score(t, &hidden)) };
        let trace = greedy_forward_select(&candidates, &scorer, seed % 2 == 0).map_err(|e| e.to_string())?;
        let (steps, best) = oracle_greedy(&candidates, &hidden);
        ensure!(trace.steps == steps, "seed {seed}: trace differs from oracle");
        ensure!(trace.best_score() == best, "seed {seed}: best score differs");
        let sel = trace.selection();
        let feats: BTreeSet<_> = sel.iter().map(|t| t.feature).collect();
        ensure!(feats.len() == sel.len(), "seed {seed}: a feature was selected twice");
        let mut a = sel.clone();
        let mut b = hidden.clone();
        a.sort();
        b.sort();
        ensure!(a == b, "seed {seed}: hidden set not recovered");
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(5), "took {took:?}");
    Ok(())
}

fn criterion_6() -> Outcome {
    let trees_text = include_str!("../data/mini_treebank/trees.ptb");
    let counts_text = include_str!("../data/mini_treebank/counts.tsv");
    let trees = parse_trees(trees_text, 20, Path::new("trees.ptb")).map_err(|e| e.to_string())?;
    let mut corpus = UnitCounts::default();
    for (i, (tree, line)) in trees.iter().zip(counts_text.lines().skip(1)).enumerate() {
        let c: Vec<usize> = line.split('\t').skip(1).map(|x| x.parse().unwrap()).collect();
        let manual = UnitCounts {
            sentences: 1,
            words: c[0],
            clauses: c[1],
            t_units: c[2],
            dependent_clauses: c[3],
            complex_t_units: c[4],
            coordinate_phrases: c[5],
            complex_nominals: c[6],
            verb_phrases: c[7],
            noun_phrases: c[8],
            np_premod_words: c[9],
            np_postmod_words: c[10],
        };
        let tree = tree.as_ref().ok_or("missing tree")?;
        let got = syntactic_measures(tree);
        let want = lingcx::treequery::SyntacticMeasures::from_counts(&manual);
        for m in Measure::ALL {
            ensure!(
                got.get(m) == want.get(m) && got.is_degenerate(m) == want.is_degenerate(m),
                "sentence {}: {m} = {} expected {}",
                i + 1,
                got.get(m),
                want.get(m)
            );
        }
        corpus = corpus.merge(&PatternLibrary::builtin().unit_counts(tree));
    }
    let m = lingcx::treequery::SyntacticMeasures::from_counts(&corpus);
    let lhs = m.get(Measure::ClausesPerTUnit) * m.get(Measure::TUnitsPerSentence);
    ensure!(
        close(lhs, m.get(Measure::ClausesPerSentence), 1e-9),
        "C/T x T/S = {lhs}"
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    let pairs = parse_pairs(include_str!("../data/mini_corpus/pairs.tsv"), Path::new("pairs.tsv"))
        .map_err(|e| e.to_string())?;
    let trees = parse_trees(
        include_str!("../data/mini_corpus/trees.ptb"),
        2 * pairs.len(),
        Path::new("trees.ptb"),
    )
    .map_err(|e| e.to_string())?;
    ensure!(pairs.len() == 20, "{} pairs", pairs.len());
    let res = Resources::builtin();
    let mut complex = Vec::new();
    let mut simple = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        complex.push(full_vector(&p.complex_text, trees[2 * i].as_ref(), &res));
        simple.push(full_vector(&p.simple_text, trees[2 * i + 1].as_ref(), &res));
    }
    for name in ["MLS", "FKGL", "MLWs"] {
        let id = FeatureId::named(name);
        let mean = |side: &[FeatureVector]| -> Result<f64, String> {
            let mut sum = 0.0;
            for v in side {
                sum += v.get(id).ok_or_else(|| format!("{name} missing"))?;
            }
            Ok(sum / side.len() as f64)
        };
        let (c, s) = (mean(&complex)?, mean(&simple)?);
        ensure!(c > s, "{name}: complex {c} <= simple {s}");
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let vocab = ["a", "b", "c", "d"];
    for _ in 0..500 {
        let h = random_sentence(&mut rng, &vocab);
        let r = random_sentence(&mut rng, &vocab);
        if r.is_empty() {
            continue;
        }
        let t = ter(&h, &r).map_err(|e| e.to_string())?;
        ensure!((t == 0.0) == (h == r), "ter({h:?}, {r:?}) = {t}");
    }
    let lev = levenshtein_similarity("kitten", "sitting");
    ensure!(close(lev, 0.5714, 1e-4), "kitten/sitting = {lev}");
    let src = "the old cat sat quietly on the mat .";
    let tgt = "the cat sat on the mat .";
    let pair = SentencePair::new(0, src, tgt);
    let mask = gold_highlight(&pair);
    ensure!(
        mask.0 == [false, true, false, false, true, false, false, false],
        "gold mask {:?}",
        mask.0
    );
    let t = highlight_ter(src, &mask, tgt).map_err(|e| e.to_string())?;
    ensure!(t == 0.0, "highlight_ter = {t}");
    Ok(())
}

fn criterion_9() -> Outcome {
    let rec = AttentionRecord {
        subword_tokens: vec!["un".into(), "##usual".into(), "day".into()],
        word_map: vec![0, 0, 1],
        head_weights: vec![vec![0.2, 0.4, 0.1], vec![0.2, 0.4, 0.5]],
    };
    let w = attention_to_word_weights(&rec).map_err(|e| e.to_string())?;
    ensure!(
        close(w.weights[0], 0.3, 1e-12) && close(w.weights[1], 0.3, 1e-12),
        "weights {:?}",
        w.weights
    );
    let gap = AttentionRecord {
        subword_tokens: vec!["a".into(), "b".into(), "c".into()],
        word_map: vec![0, 0, 2],
        head_weights: vec![vec![0.1, 0.1, 0.1]],
    };
    ensure!(attention_to_word_weights(&gap).is_err(), "word_map gap accepted");

    let ww = WordWeights {
        weights: vec![0.1, 0.2, 0.3],
        source: WeightSource::Attention,
    };
    ensure!(
        threshold_highlight(&ww, Comparator::Below).0 == [true, false, false],
        "below"
    );
    ensure!(
        threshold_highlight(&ww, Comparator::Above).0 == [false, false, true],
        "above"
    );
    ensure!(
        threshold_highlight(&WordWeights::uniform(4), Comparator::Below).count() == 0,
        "uniform"
    );

    let g = gold_highlight(&SentencePair::new(0, "a b c", "a c"));
    ensure!(g.0 == [false, true, false], "gold a b c");
    let g = gold_highlight(&SentencePair::new(0, "x x y", "x y"));
    ensure!(g.0 == [false, true, false], "gold x x y");
    ensure!(
        gold_highlight(&SentencePair::new(0, "same words", "same words")).count() == 0,
        "identical"
    );

    let prf = eval_highlight(
        &HighlightMask(vec![true, true, false]),
        &HighlightMask(vec![false, true, false]),
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        prf.precision == 0.5 && prf.recall == 1.0 && close(prf.f1, 2.0 / 3.0, 1e-12),
        "{prf:?}"
    );
    let prf = eval_highlight(&HighlightMask::empty(3), &HighlightMask::empty(3)).map_err(|e| e.to_string())?;
    ensure!(prf.precision == 1.0 && prf.recall == 1.0 && prf.f1 == 1.0, "{prf:?}");

    let ts = tokenize("a reasonably long sentence with quite a few words in it for sampling");
    let m1 = baseline_highlight(&ts, &Baseline::Random { p: 0.5, seed: 42 }).map_err(|e| e.to_string())?;
    let m2 = baseline_highlight(&ts, &Baseline::Random { p: 0.5, seed: 42 }).map_err(|e| e.to_string())?;
    ensure!(m1 == m2, "random baseline not reproducible");
    let none = baseline_highlight(&ts, &Baseline::Random { p: 0.0, seed: 1 }).unwrap();
    let all = baseline_highlight(&ts, &Baseline::Random { p: 1.0, seed: 1 }).unwrap();
    ensure!(none.count() == 0 && all.count() == ts.n_words(), "p = 0 / 1 masks");
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let x: Vec<Vec<f64>> = (0..16)
        .map(|_| (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let y: Vec<f64> = (0..16).map(|i| (i % 2) as f64).collect();
    let h = 1e-6;
    for point in 0..10 {
        let w: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b = rng.gen_range(-1.0..1.0);
        let l2 = 0.1 * point as f64;
        let (_, gw, gb) = loss_and_gradient(&x, &y, &w, b, l2);
        let loss = |w: &[f64], b: f64| loss_and_gradient(&x, &y, w, b, l2).0;
        for j in 0..4 {
            let (mut wp, mut wm) = (w.clone(), w.clone());
            wp[j] += h;
            wm[j] -= h;
            let num = (loss(&wp, b) - loss(&wm, b)) / (2.0 * h);
            let rel = (num - gw[j]).abs() / num.abs().max(gw[j].abs()).max(1e-8);
            ensure!(rel < 1e-4, "point {point}, weight {j}: relative error {rel}");
        }
        let num = (loss(&w, b + h) - loss(&w, b - h)) / (2.0 * h);
        let rel = (num - gb).abs() / num.abs().max(gb.abs()).max(1e-8);
        ensure!(rel < 1e-4, "point {point}, bias: relative error {rel}");
    }

    let mut rows = Vec::new();
    for i in 0..15 {
        let t = i as f64;
        for (label, mls, mlws) in [(true, 22.0 + t, 1.8 + 0.01 * t), (false, 9.0 + 0.3 * t, 1.2 + 0.01 * t)] {
            let mut v = FeatureVector::new();
            v.insert(FeatureId::named("MLS"), Some(mls));
            v.insert(FeatureId::named("MLWs"), Some(mlws));
            rows.push(LabeledRow { features: v, label });
        }
    }
    let model = train(&rows, &TrainConfig::default()).map_err(|e| e.to_string())?;
    let acc = evaluate(&model, &rows).accuracy;
    ensure!(acc == 1.0, "toy accuracy {acc}");

    let m = binary_metrics(3, 1, 4, 2);
    ensure!(m.precision == 0.75 && m.recall == 0.6 && m.accuracy == 0.7, "{m:?}");
    ensure!(close(m.f1, 2.0 / 3.0, 1e-12), "f1 {}", m.f1);
    let m = metrics_from_labels(&[true, false, true, true, false], &[true, false, false, true, true]);
    ensure!((m.tp, m.fp, m.tn, m.fn_) == (2, 1, 1, 1), "{m:?}");
    ensure!(
        close(m.precision, 2.0 / 3.0, 1e-12) && close(m.recall, 2.0 / 3.0, 1e-12) && m.accuracy == 0.6,
        "{m:?}"
    );
    Ok(())
}

const WORDS: &[&str] = &[
    "the",
    "a",
    "committee",
    "approved",
    "river",
    "quickly",
    "extraordinary",
    "we",
    "built",
    "school",
    "population",
    "and",
    "but",
    "because",
    "children",
    "played",
    "outside",
    "administration",
    "considered",
    "proposal",
    "dog",
    "is",
    "was",
    "of",
    "in",
    "on",
    "beautiful",
    "mountain",
    "village",
    "travelled",
    "government",
    "announced",
];

fn synthetic_sentences(n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(4..30);
            let mut s: Vec<&str> = (0..len).map(|_| *WORDS.choose(&mut rng).unwrap()).collect();
            if rng.gen_bool(0.3) {
                s.insert(len / 2, ",");
            }
            let mut out = s.join(" ");
            out.push_str(" .");
            out
        })
        .collect()
}

fn criterion_11() -> Outcome {
    let res = Resources::builtin();
    let sentences = synthetic_sentences(10_000, 11);
    let items: Vec<(&str, Option<&lingcx::treequery::ParseTree>)> =
        sentences.iter().map(|s| (s.as_str(), None)).collect();
    let start = Instant::now();
    let serial = extract_all(&items, &res, false);
    let took = start.elapsed();
    ensure!(serial.len() == 10_000, "{} vectors", serial.len());
    ensure!(
        took < Duration::from_secs(10),
        "single-threaded extraction took {took:?}"
    );
    let parallel = extract_all(&items, &res, true);
    ensure!(parallel == serial, "parallel output differs");
    for (i, s) in sentences.iter().enumerate().step_by(997) {
        ensure!(serial[i] == full_vector(s, None, &res), "vector {i} out of order");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("FKGL exactness", criterion_1),
        ("SARI oracle equivalence", criterion_2),
        ("binning conformance", criterion_3),
        ("best-combination rendering", criterion_4),
        ("greedy search correctness", criterion_5),
        ("syntactic measures on mini-treebank", criterion_6),
        ("feature direction on mini-corpus", criterion_7),
        ("TER and Levenshtein", criterion_8),
        ("explanation pipeline", criterion_9),
        ("classifier", criterion_10),
        ("throughput and parallel identity", criterion_11),
    ];
    let mut failed = 0;
    let mut err = std::io::stderr().lock();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => writeln!(err, "criterion {:>2} PASS  {name} ({ms} ms)", i + 1).unwrap(),
            Err(msg) => {
                failed += 1;
                writeln!(err, "criterion {:>2} FAIL  {name}: {msg}", i + 1).unwrap();
            }
        }
    }
    writeln!(err, "acceptance: {} passed, {failed} failed", criteria.len() - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
