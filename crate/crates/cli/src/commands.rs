use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use lingcx::classify::{evaluate as evaluate_model, predict, train, LabeledRow, LinearModel, TrainConfig};
use lingcx::control::{
    annotate_inference, annotate_pair, candidate_tokens, greedy_forward_select, ControlFeature, ControlToken,
    ProcessScorer, SearchTrace,
};
use lingcx::corpus::{export_features, import_features, load_attention, load_pairs, load_trees, SentencePair};
use lingcx::explain::{
    attention_to_word_weights, baseline_highlight, eval_highlight, gold_highlight, highlight_ter, render_highlight,
    threshold_highlight, Baseline, Comparator, HighlightMask,
};
use lingcx::features::{contour, extract_all, fkgl, Family, FeatureId, FeatureVector};
use lingcx::metrics::{levenshtein_similarity, sari_with, ter, word_rank, DeletionMode};
use lingcx::textproc::{sentence_stats_with, tokenize};
use lingcx::treequery::ParseTree;

use crate::args::*;
use crate::config::{read_lines, require_file, require_out, sidecar, write_text, Context};
use crate::failure::{config, data, Failure, Outcome};

fn parse_families(names: &[String]) -> Outcome<Vec<Family>> {
    names
        .iter()
        .map(|n| Family::parse(n).ok_or_else(|| config(format!("unknown feature family `{n}`"))))
        .collect()
}

fn parse_control_features(names: &[String], default: &[ControlFeature]) -> Outcome<Vec<ControlFeature>> {
    if names.is_empty() {
        return Ok(default.to_vec());
    }
    names
        .iter()
        .map(|n| n.parse::<ControlFeature>().map_err(Failure::from))
        .collect()
}

fn parse_tokens(specs: &[String]) -> Outcome<Vec<ControlToken>> {
    specs
        .iter()
        .map(|s| ControlToken::parse_assignment(s).map_err(Failure::from))
        .collect()
}

fn opt_file(p: &Option<std::path::PathBuf>, what: &str) -> Outcome {
    p.as_deref().map_or(Ok(()), |p| require_file(p, what))
}

/// Checks paths and symbolic arguments without doing any work.
pub fn validate(cmd: &Command, ctx: &Context) -> Outcome {
    require_out(cmd.out())?;
    match cmd {
        Command::Analyze(a) => {
            require_file(&a.pairs, "pairs")?;
            opt_file(&a.trees, "trees")?;
            parse_families(&a.features)?;
            if let Some(f) = &a.contour {
                FeatureId::parse(f)?;
                if a.window == 0 {
                    return Err(config("--window must be at least 1"));
                }
            }
        }
        Command::Annotate(a) => match a.mode {
            AnnotateMode::Train => {
                let pairs = a.pairs.as_ref().ok_or_else(|| config("train mode needs --pairs"))?;
                require_file(pairs, "pairs")?;
                opt_file(&a.trees, "trees")?;
                parse_control_features(&a.features, &ControlFeature::ALL)?;
            }
            AnnotateMode::Inference => {
                let src = a.src.as_ref().ok_or_else(|| config("inference mode needs --src"))?;
                require_file(src, "source")?;
                if a.tokens.is_empty() {
                    return Err(config("inference mode needs --tokens FEATURE=BIN,..."));
                }
                let tokens = parse_tokens(&a.tokens)?;
                annotate_inference::<&str>(&[], &tokens)?;
            }
        },
        Command::Evaluate(a) => {
            require_file(&a.pred, "prediction")?;
            opt_file(&a.src, "source")?;
            for r in &a.refs {
                require_file(r, "reference")?;
            }
            match a.metric {
                Metric::Sari if a.src.is_none() || a.refs.is_empty() => {
                    return Err(config("sari needs --src and --refs"))
                }
                Metric::Ter if a.refs.is_empty() => return Err(config("ter needs --refs")),
                Metric::Levsim if a.src.is_none() => return Err(config("levsim needs --src")),
                Metric::Wordrank if ctx.resources.frequency.is_none() => {
                    return Err(config("wordrank needs frequency.tsv in the resource directory"))
                }
                _ => {}
            }
        }
        Command::SelectTokens(a) => {
            require_file(&a.src, "source")?;
            require_file(&a.refs, "reference")?;
            opt_file(&a.pairs, "pairs")?;
            let cmd = shlex::split(&a.scorer_cmd).filter(|c| !c.is_empty());
            if cmd.is_none() {
                return Err(config("--scorer-cmd is empty or badly quoted"));
            }
            if a.candidates.is_empty() && a.pairs.is_none() {
                return Err(config("select-tokens needs --candidates or --pairs"));
            }
            parse_tokens(&a.candidates)?;
            parse_control_features(&a.features, &ControlFeature::EXTENDED)?;
            if a.top_k == 0 {
                return Err(config("--top-k must be at least 1"));
            }
        }
        Command::Highlight(a) => {
            match (&a.pairs, &a.src) {
                (Some(p), None) => require_file(p, "pairs")?,
                (None, Some(s)) => require_file(s, "source")?,
                _ => return Err(config("give exactly one of --pairs and --src")),
            }
            match a.method {
                HighlightMethod::Attention => {
                    let p = a
                        .attention
                        .as_ref()
                        .ok_or_else(|| config("attention method needs --attention"))?;
                    require_file(p, "attention")?;
                }
                HighlightMethod::Random if !(0.0..=1.0).contains(&a.p) => {
                    return Err(config(format!("--p {} outside [0, 1]", a.p)))
                }
                HighlightMethod::Aoa if ctx.resources.aoa.is_none() => {
                    return Err(config("aoa method needs aoa.tsv in the resource directory"))
                }
                HighlightMethod::Gold if a.pairs.is_none() => return Err(config("gold method needs --pairs")),
                _ => {}
            }
        }
        Command::Classify(a) => {
            opt_file(&a.train, "training")?;
            opt_file(&a.test, "test")?;
            match (&a.train, &a.model) {
                (None, None) => return Err(config("classify needs --train or --model")),
                (None, Some(m)) => require_file(m, "model")?,
                _ => {}
            }
            if a.train.is_none() && a.test.is_none() {
                return Err(config("nothing to evaluate: give --test"));
            }
            if a.l2.is_nan() || a.l2 < 0.0 || a.lr.is_nan() || a.lr <= 0.0 {
                return Err(config("need --l2 >= 0 and --lr > 0"));
            }
        }
    }
    Ok(())
}

pub fn run(cmd: &Command, ctx: &Context) -> Outcome {
    match cmd {
        Command::Analyze(a) => analyze(a, ctx),
        Command::Annotate(a) => annotate(a, ctx),
        Command::Evaluate(a) => evaluate(a, ctx),
        Command::SelectTokens(a) => select_tokens(a, ctx),
        Command::Highlight(a) => highlight(a, ctx),
        Command::Classify(a) => classify(a),
    }
}

/// Pairs with trees attached from a two-lines-per-pair file.
fn pairs_with_trees(pairs: &Path, trees: Option<&Path>) -> Outcome<Vec<SentencePair>> {
    let mut pairs = load_pairs(pairs)?;
    if let Some(t) = trees {
        let mut trees = load_trees(t, 2 * pairs.len())?.into_iter();
        for p in &mut pairs {
            p.complex_tree = trees.next().flatten();
            p.simple_tree = trees.next().flatten();
        }
    }
    Ok(pairs)
}

fn num(x: f64) -> String {
    (x + 0.0).to_string()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), num)
}

fn analyze(a: &AnalyzeArgs, ctx: &Context) -> Outcome {
    let pairs = pairs_with_trees(&a.pairs, a.trees.as_deref())?;
    let families = parse_families(&a.features)?;
    let items: Vec<(&str, Option<&ParseTree>)> = pairs
        .iter()
        .flat_map(|p| {
            [
                (p.complex_text.as_str(), p.complex_tree.as_ref()),
                (p.simple_text.as_str(), p.simple_tree.as_ref()),
            ]
        })
        .collect();
    let vectors = extract_all(&items, &ctx.resources, ctx.parallel());
    let rows: Vec<(String, FeatureVector)> = pairs
        .iter()
        .flat_map(|p| [format!("{}:complex", p.id), format!("{}:simple", p.id)])
        .zip(vectors)
        .map(|(id, v)| {
            if families.is_empty() {
                (id, v)
            } else {
                (id, v.select(&families))
            }
        })
        .collect();
    if let Some(feature) = &a.contour {
        let side = |k: usize| -> Vec<FeatureVector> { rows.iter().skip(k).step_by(2).map(|r| r.1.clone()).collect() };
        let complex = contour(&side(0), feature, a.window)?;
        let simple = contour(&side(1), feature, a.window)?;
        let mut out = String::from("window\tcomplex\tsimple\n");
        for (i, (c, s)) in complex.values.iter().zip(&simple.values).enumerate() {
            writeln!(out, "{i}\t{}\t{}", fmt_opt(*c), fmt_opt(*s)).unwrap();
        }
        write_text(&sidecar(&a.out, ".contour.tsv"), &out)?;
    }
    export_features(&rows, &a.out)?;
    Ok(())
}

fn annotate(a: &AnnotateArgs, ctx: &Context) -> Outcome {
    let lines = match a.mode {
        AnnotateMode::Inference => {
            let src = read_lines(a.src.as_deref().expect("validated"))?;
            annotate_inference(&src, &parse_tokens(&a.tokens)?)?
        }
        AnnotateMode::Train => {
            let features = parse_control_features(&a.features, &ControlFeature::ALL)?;
            let pairs = pairs_with_trees(a.pairs.as_deref().expect("validated"), a.trees.as_deref())?;
            let mut out = Vec::with_capacity(pairs.len());
            let mut bare = 0;
            for p in &pairs {
                let ann = annotate_pair(p, &features, &ctx.resources)?;
                bare += usize::from(ann.warning);
                out.push(ann.text);
            }
            if bare > 0 {
                eprintln!("warning: {bare} of {} pairs got no control token", pairs.len());
            }
            out
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    write_text(&a.out, &text)
}

fn aligned(name: &str, lines: &[String], n: usize) -> Outcome {
    if lines.len() == n {
        Ok(())
    } else {
        Err(data(format!("{name} has {} lines, predictions have {n}", lines.len())))
    }
}

fn evaluate(a: &EvaluateArgs, ctx: &Context) -> Outcome {
    let pred = read_lines(&a.pred)?;
    let n = pred.len();
    let src = a.src.as_deref().map(read_lines).transpose()?;
    if let Some(s) = &src {
        aligned("source", s, n)?;
    }
    let refs: Vec<Vec<String>> = a.refs.iter().map(|r| read_lines(r)).collect::<Outcome<_>>()?;
    for (r, path) in refs.iter().zip(&a.refs) {
        aligned(&path.display().to_string(), r, n)?;
    }
    let mode = match a.deletion {
        Deletion::F1 => DeletionMode::F1,
        Deletion::Precision => DeletionMode::PrecisionOnly,
    };
    let columns: &[&str] = match a.metric {
        Metric::Sari => &["sari", "add", "keep", "delete"],
        Metric::Fkgl => &["fkgl"],
        Metric::Ter => &["ter"],
        Metric::Levsim => &["levsim"],
        Metric::Wordrank => &["wordrank"],
    };
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (i, p) in pred.iter().enumerate() {
        let at = |e: lingcx::Error| data(format!("line {}: {e}", i + 1));
        let row = match a.metric {
            Metric::Sari => {
                let r: Vec<&str> = refs.iter().map(|r| r[i].as_str()).collect();
                let b = sari_with(&src.as_ref().expect("validated")[i], p, &r, mode).map_err(at)?;
                vec![b.sari, 100.0 * b.f_add, 100.0 * b.f_keep, 100.0 * b.f_del]
            }
            Metric::Fkgl => vec![fkgl(&sentence_stats_with(&tokenize(p), &ctx.resources.syllables)).map_err(at)?],
            Metric::Ter => {
                let mut best = f64::INFINITY;
                for r in &refs {
                    best = best.min(ter(p, &r[i]).map_err(at)?);
                }
                vec![best]
            }
            Metric::Levsim => vec![levenshtein_similarity(&src.as_ref().expect("validated")[i], p)],
            Metric::Wordrank => {
                let ranks = ctx.resources.frequency.as_ref().expect("validated");
                vec![word_rank(&tokenize(p), ranks).map_err(at)?]
            }
        };
        rows.push(row);
    }
    let mut out = format!("line\t{}\n", columns.join("\t"));
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|&x| num(x)).collect();
        writeln!(out, "{}\t{}", i + 1, cells.join("\t")).unwrap();
    }
    let means: Vec<String> = (0..columns.len())
        .map(|c| {
            if rows.is_empty() {
                "NA".to_string()
            } else {
                num(rows.iter().map(|r| r[c]).sum::<f64>() / rows.len() as f64)
            }
        })
        .collect();
    writeln!(out, "mean\t{}", means.join("\t")).unwrap();
    write_text(&a.out, &out)
}

fn trace_tsv(trace: &SearchTrace, error: Option<&str>) -> String {
    let mut out = String::from("step\ttoken\tscore\n");
    writeln!(out, "0\t-\t{}", num(trace.baseline)).unwrap();
    for (i, s) in trace.steps.iter().enumerate() {
        writeln!(out, "{}\t{}\t{}", i + 1, s.token, num(s.score)).unwrap();
    }
    match error {
        None => {
            let sel: Vec<String> = trace.selection().iter().map(ToString::to_string).collect();
            writeln!(out, "selection\t{}\t{}", sel.join(" "), num(trace.best_score())).unwrap();
        }
        Some(e) => writeln!(out, "error\t{}\t-", e.replace(['\t', '\n'], " ")).unwrap(),
    }
    out
}

fn select_tokens(a: &SelectArgs, ctx: &Context) -> Outcome {
    let sources = read_lines(&a.src)?;
    let candidates = if a.candidates.is_empty() {
        let features = parse_control_features(&a.features, &ControlFeature::EXTENDED)?;
        let pairs = load_pairs(a.pairs.as_deref().expect("validated"))?;
        candidate_tokens(&pairs, &features, &ctx.resources, a.top_k)?
    } else {
        parse_tokens(&a.candidates)?
    };
    let command = shlex::split(&a.scorer_cmd).expect("validated");
    let workdir = std::env::current_dir().map_err(|e| config(e.to_string()))?;
    let scorer = ProcessScorer::new(command, sources, &a.refs, &workdir)?.with_timeout(Duration::from_secs(a.timeout));
    match greedy_forward_select(&candidates, &scorer, ctx.parallel()) {
        Ok(trace) => write_text(&a.out, &trace_tsv(&trace, None)),
        Err(e) => {
            let msg = e.source.to_string();
            write_text(&a.out, &trace_tsv(&e.trace, Some(&msg)))?;
            Err(Failure::from(e.source))
        }
    }
}

fn highlight(a: &HighlightArgs, ctx: &Context) -> Outcome {
    let pairs = a.pairs.as_deref().map(load_pairs).transpose()?;
    let sentences: Vec<String> = match (&pairs, &a.src) {
        (Some(p), _) => p.iter().map(|p| p.complex_text.clone()).collect(),
        (None, Some(s)) => read_lines(s)?,
        (None, None) => unreachable!("validated"),
    };
    let attention = a.attention.as_deref().map(load_attention).transpose()?;
    if let Some(att) = &attention {
        if att.len() != sentences.len() {
            return Err(data(format!(
                "{} attention records for {} sentences",
                att.len(),
                sentences.len()
            )));
        }
    }
    let comparator = match a.comparator {
        ComparatorArg::Below => Comparator::Below,
        ComparatorArg::Above => Comparator::Above,
    };
    let mut masks = Vec::with_capacity(sentences.len());
    for (i, s) in sentences.iter().enumerate() {
        let at = |e: lingcx::Error| data(format!("sentence {}: {e}", i + 1));
        let ts = tokenize(s);
        let mask = match a.method {
            HighlightMethod::Attention => {
                let w = attention_to_word_weights(&attention.as_ref().expect("validated")[i]).map_err(at)?;
                if w.weights.len() != ts.n_words() {
                    return Err(data(format!(
                        "sentence {}: attention covers {} words, sentence has {}",
                        i + 1,
                        w.weights.len(),
                        ts.n_words()
                    )));
                }
                threshold_highlight(&w, comparator)
            }
            HighlightMethod::Random => {
                let seed = ctx.seed.wrapping_add(i as u64);
                baseline_highlight(&ts, &Baseline::Random { p: a.p, seed }).map_err(at)?
            }
            HighlightMethod::Aoa => {
                let lexicon = ctx.resources.aoa.as_ref().expect("validated");
                baseline_highlight(
                    &ts,
                    &Baseline::Aoa {
                        lexicon,
                        cutoff: a.cutoff,
                    },
                )
                .map_err(at)?
            }
            HighlightMethod::Gold => gold_highlight(&pairs.as_ref().expect("validated")[i]),
        };
        masks.push(mask);
    }
    let mut rendered = String::new();
    let mut mask_text = String::new();
    for (s, m) in sentences.iter().zip(&masks) {
        rendered.push_str(&render_highlight(s, m)?);
        rendered.push('\n');
        mask_text.push_str(&m.to_line());
        mask_text.push('\n');
    }
    write_text(&sidecar(&a.out, ".mask"), &mask_text)?;
    if let Some(pairs) = &pairs {
        write_text(&sidecar(&a.out, ".eval.tsv"), &highlight_report(pairs, &masks)?)?;
    }
    write_text(&a.out, &rendered)
}

fn highlight_report(pairs: &[SentencePair], masks: &[HighlightMask]) -> Outcome<String> {
    let mut out = String::from("line\tprecision\trecall\tf1\tter\n");
    let mut sums = [0.0; 4];
    for (i, (p, m)) in pairs.iter().zip(masks).enumerate() {
        let prf = eval_highlight(m, &gold_highlight(p))?;
        let t = highlight_ter(&p.complex_text, m, &p.simple_text)?;
        let row = [prf.precision, prf.recall, prf.f1, t];
        for (s, v) in sums.iter_mut().zip(row) {
            *s += v;
        }
        writeln!(out, "{}\t{}\t{}\t{}\t{}", i + 1, row[0], row[1], row[2], row[3]).unwrap();
    }
    let n = pairs.len().max(1) as f64;
    writeln!(
        out,
        "mean\t{}\t{}\t{}\t{}",
        sums[0] / n,
        sums[1] / n,
        sums[2] / n,
        sums[3] / n
    )
    .unwrap();
    Ok(out)
}

fn labeled(path: &Path) -> Outcome<(Vec<String>, Vec<LabeledRow>)> {
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (id, features) in import_features(path)? {
        let label = if id.ends_with(":complex") {
            true
        } else if id.ends_with(":simple") {
            false
        } else {
            return Err(data(format!(
                "{}: record `{id}` is not labelled :complex or :simple",
                path.display()
            )));
        };
        ids.push(id);
        rows.push(LabeledRow { features, label });
    }
    Ok((ids, rows))
}

fn classify(a: &ClassifyArgs) -> Outcome {
    let train_set = a.train.as_deref().map(labeled).transpose()?;
    let model = match &train_set {
        Some((_, rows)) => {
            let cfg = TrainConfig {
                l2: a.l2,
                lr: a.lr,
                max_epochs: a.epochs,
                ..TrainConfig::default()
            };
            let m = train(rows, &cfg)?;
            if let Some(p) = &a.model {
                m.save(p)?;
            }
            m
        }
        None => LinearModel::load(a.model.as_deref().expect("validated"))?,
    };
    let (ids, rows) = match (&a.test, train_set) {
        (Some(t), _) => labeled(t)?,
        (None, Some(set)) => set,
        (None, None) => unreachable!("validated"),
    };
    if let Some(r) = rows.first() {
        if r.features.catalog_version() != model.catalog_version {
            return Err(data(format!(
                "model catalog `{}` does not match records `{}`",
                model.catalog_version,
                r.features.catalog_version()
            )));
        }
    }
    let mut out = String::from("id\tgold\tprobability\tpredicted\n");
    let mut sums = [0.0; 3];
    for (id, r) in ids.iter().zip(&rows) {
        let p = predict(&model, &r.features);
        let row = [f64::from(u8::from(r.label)), p, f64::from(u8::from(p >= 0.5))];
        for (s, v) in sums.iter_mut().zip(row) {
            *s += v;
        }
        writeln!(out, "{id}\t{}\t{}\t{}", row[0], row[1], row[2]).unwrap();
    }
    let n = rows.len().max(1) as f64;
    writeln!(out, "mean\t{}\t{}\t{}", sums[0] / n, sums[1] / n, sums[2] / n).unwrap();
    let m = evaluate_model(&model, &rows);
    let metrics = format!(
        "precision\trecall\tf1\taccuracy\n{}\t{}\t{}\t{}\n",
        m.precision, m.recall, m.f1, m.accuracy
    );
    write_text(&sidecar(&a.out, ".metrics.tsv"), &metrics)?;
    write_text(&a.out, &out)
}
