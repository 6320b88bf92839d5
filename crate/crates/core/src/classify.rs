//! Logistic-regression complexity classifier over feature vectors.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureId, FeatureVector};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRow {
    pub features: FeatureVector,
    /// `true` = needs simplification.
    pub label: bool,
}

/// Complex sides become positives, simple sides negatives.
pub fn pair_rows(pairs: &[(FeatureVector, FeatureVector)]) -> Vec<LabeledRow> {
    pairs
        .iter()
        .flat_map(|(c, s)| {
            [
                LabeledRow {
                    features: c.clone(),
                    label: true,
                },
                LabeledRow {
                    features: s.clone(),
                    label: false,
                },
            ]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub l2: f64,
    pub lr: f64,
    pub max_epochs: usize,
    /// Stop once no parameter moves by more than this.
    pub tol: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            l2: 1e-3,
            lr: 0.5,
            max_epochs: 2000,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub catalog_version: String,
    pub features: Vec<FeatureId>,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Mean logistic loss plus `l2 / 2 * |w|^2` (bias unpenalized), with its
/// gradient in `w` and in the bias.
pub fn loss_and_gradient(x: &[Vec<f64>], y: &[f64], w: &[f64], b: f64, l2: f64) -> (f64, Vec<f64>, f64) {
    let n = x.len() as f64;
    let mut loss = 0.0;
    let mut gw = vec![0.0; w.len()];
    let mut gb = 0.0;
    for (xi, &yi) in x.iter().zip(y) {
        let z = b + xi.iter().zip(w).map(|(a, c)| a * c).sum::<f64>();
        loss += softplus(z) - yi * z;
        let r = sigmoid(z) - yi;
        for (g, a) in gw.iter_mut().zip(xi) {
            *g += r * a;
        }
        gb += r;
    }
    loss /= n;
    gb /= n;
    for (g, wi) in gw.iter_mut().zip(w) {
        *g = *g / n + l2 * wi;
    }
    loss += 0.5 * l2 * w.iter().map(|v| v * v).sum::<f64>();
    (loss, gw, gb)
}

fn column_stats(rows: &[LabeledRow], id: FeatureId) -> Option<(f64, f64)> {
    let xs: Vec<f64> = rows.iter().filter_map(|r| r.features.get(id)).collect();
    if xs.is_empty() {
        return None;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
    let sd = var.sqrt();
    (sd > 0.0 && sd.is_finite()).then_some((mean, sd))
}

impl LinearModel {
    /// Standardized design row; a missing value becomes 0 (the training mean).
    pub fn standardize(&self, v: &FeatureVector) -> Vec<f64> {
        self.features
            .iter()
            .zip(self.means.iter().zip(&self.sds))
            .map(|(&f, (m, s))| v.get(f).map_or(0.0, |x| (x - m) / s))
            .collect()
    }

    pub fn logit(&self, v: &FeatureVector) -> f64 {
        self.bias
            + self
                .standardize(v)
                .iter()
                .zip(&self.weights)
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = serde_json::to_string(&ModelHeader {
            kind: "linear-logistic".into(),
            catalog: self.catalog_version.clone(),
            bias: self.bias,
            n_features: self.features.len(),
        })?;
        out.push('\n');
        for (i, f) in self.features.iter().enumerate() {
            out.push_str(&serde_json::to_string(&ModelFeature {
                feature: f.name().to_string(),
                weight: self.weights[i],
                mean: self.means[i],
                sd: self.sds[i],
            })?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_jsonl(text: &str, origin: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::parse(origin, 1, "empty model file"))?;
        let header: ModelHeader = serde_json::from_str(first).map_err(|e| Error::parse(origin, 1, e.to_string()))?;
        let mut m = LinearModel {
            catalog_version: header.catalog,
            features: Vec::new(),
            weights: Vec::new(),
            bias: header.bias,
            means: Vec::new(),
            sds: Vec::new(),
        };
        for (i, line) in lines {
            let rec: ModelFeature =
                serde_json::from_str(line).map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
            let f = FeatureId::parse(&rec.feature).map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
            if rec.sd.is_nan() || rec.sd <= 0.0 {
                return Err(Error::parse(origin, i + 1, "standard deviation must be positive"));
            }
            m.features.push(f);
            m.weights.push(rec.weight);
            m.means.push(rec.mean);
            m.sds.push(rec.sd);
        }
        if m.features.len() != header.n_features {
            return Err(Error::parse(
                origin,
                1,
                format!(
                    "header declares {} features, found {}",
                    header.n_features,
                    m.features.len()
                ),
            ));
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_jsonl()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_jsonl(&text, path)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelHeader {
    kind: String,
    catalog: String,
    bias: f64,
    n_features: usize,
}

#[derive(Serialize, Deserialize)]
struct ModelFeature {
    feature: String,
    weight: f64,
    mean: f64,
    sd: f64,
}

/// Full-batch gradient descent on the standardized features. The L2 term is
/// applied as a proximal step, `w <- (w - lr * grad) / (1 + lr * l2)`, which
/// stays stable for any `l2`.
pub fn train(rows: &[LabeledRow], cfg: &TrainConfig) -> Result<LinearModel> {
    train_traced(rows, cfg).map(|(m, _)| m)
}

/// Like [`train`], also returning the penalized loss before each epoch and
/// after the last one.
pub fn train_traced(rows: &[LabeledRow], cfg: &TrainConfig) -> Result<(LinearModel, Vec<f64>)> {
    if rows.len() < 2 {
        return Err(Error::Invalid("training needs at least two rows".into()));
    }
    let positives = rows.iter().filter(|r| r.label).count();
    if positives == 0 || positives == rows.len() {
        return Err(Error::Invalid("training data has a single class".into()));
    }
    if cfg.l2.is_nan() || cfg.l2 < 0.0 || cfg.lr.is_nan() || cfg.lr <= 0.0 {
        return Err(Error::Invalid("need l2 >= 0 and lr > 0".into()));
    }
    let catalog_version = rows[0].features.catalog_version().to_string();
    let mut features = Vec::new();
    let mut means = Vec::new();
    let mut sds = Vec::new();
    for id in FeatureId::all() {
        if let Some((m, s)) = column_stats(rows, id) {
            features.push(id);
            means.push(m);
            sds.push(s);
        }
    }
    let mut model = LinearModel {
        catalog_version,
        weights: vec![0.0; features.len()],
        features,
        bias: 0.0,
        means,
        sds,
    };
    let x: Vec<Vec<f64>> = rows.iter().map(|r| model.standardize(&r.features)).collect();
    let y: Vec<f64> = rows.iter().map(|r| if r.label { 1.0 } else { 0.0 }).collect();

    let mut history = Vec::new();
    for _ in 0..cfg.max_epochs {
        let (data_loss, gw, gb) = loss_and_gradient(&x, &y, &model.weights, model.bias, 0.0);
        let loss = data_loss + 0.5 * cfg.l2 * model.weights.iter().map(|v| v * v).sum::<f64>();
        if !loss.is_finite() {
            return Err(Error::Domain("training loss is not finite".into()));
        }
        history.push(loss);
        let mut moved: f64 = 0.0;
        for (w, g) in model.weights.iter_mut().zip(&gw) {
            let next = (*w - cfg.lr * g) / (1.0 + cfg.lr * cfg.l2);
            moved = moved.max((next - *w).abs());
            *w = next;
        }
        let next_b = model.bias - cfg.lr * gb;
        moved = moved.max((next_b - model.bias).abs());
        model.bias = next_b;
        if moved < cfg.tol {
            break;
        }
    }
    let (loss, _, _) = loss_and_gradient(&x, &y, &model.weights, model.bias, cfg.l2);
    if !loss.is_finite() {
        return Err(Error::Domain("training loss is not finite".into()));
    }
    history.push(loss);
    Ok((model, history))
}

/// Probability of "needs simplification".
pub fn predict(model: &LinearModel, row: &FeatureVector) -> f64 {
    sigmoid(model.logit(row))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryMetrics {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
}

/// Precision, recall, F1 and accuracy; a ratio with a zero denominator is 0.
pub fn binary_metrics(tp: usize, fp: usize, tn: usize, fn_: usize) -> BinaryMetrics {
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    BinaryMetrics {
        tp,
        fp,
        tn,
        fn_,
        precision,
        recall,
        f1,
        accuracy: ratio(tp + tn, tp + fp + tn + fn_),
    }
}

/// Metrics from predicted labels against gold labels.
pub fn metrics_from_labels(predicted: &[bool], gold: &[bool]) -> BinaryMetrics {
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for (&p, &g) in predicted.iter().zip(gold) {
        match (p, g) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
    }
    binary_metrics(tp, fp, tn, fn_)
}

/// Metrics at threshold 0.5 (`p >= 0.5` is positive).
pub fn evaluate(model: &LinearModel, rows: &[LabeledRow]) -> BinaryMetrics {
    let predicted: Vec<bool> = rows.iter().map(|r| predict(model, &r.features) >= 0.5).collect();
    let gold: Vec<bool> = rows.iter().map(|r| r.label).collect();
    metrics_from_labels(&predicted, &gold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn row(vals: &[(&str, Option<f64>)], label: bool) -> LabeledRow {
        let mut v = FeatureVector::new();
        for (k, x) in vals {
            v.insert(FeatureId::named(k), *x);
        }
        LabeledRow { features: v, label }
    }

    fn toy() -> Vec<LabeledRow> {
        let mut rows = Vec::new();
        for i in 0..10 {
            let t = i as f64;
            rows.push(row(&[("MLS", Some(20.0 + t)), ("TTR", Some(0.5 + 0.01 * t))], true));
            rows.push(row(
                &[("MLS", Some(8.0 + t * 0.5)), ("TTR", Some(0.7 - 0.01 * t))],
                false,
            ));
        }
        rows
    }

    #[test]
    fn separable_toy_set() {
        let rows = toy();
        let m = train(&rows, &TrainConfig::default()).unwrap();
        assert_eq!(evaluate(&m, &rows).accuracy, 1.0);
    }

    #[test]
    fn heavy_l2_shrinks_to_half() {
        let rows = toy();
        let cfg = TrainConfig {
            l2: 1e9,
            ..TrainConfig::default()
        };
        let m = train(&rows, &cfg).unwrap();
        assert!(m.weights.iter().all(|w| w.abs() < 1e-6));
        for r in &rows {
            assert!((predict(&m, &r.features) - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn bad_inputs() {
        let rows = toy();
        let one_class: Vec<_> = rows.iter().filter(|r| r.label).cloned().collect();
        assert!(train(&one_class, &TrainConfig::default()).is_err());
        assert!(train(&rows[..1], &TrainConfig::default()).is_err());
    }

    #[test]
    fn prediction_rules() {
        let m = LinearModel {
            catalog_version: "v".into(),
            features: vec![FeatureId::named("MLS")],
            weights: vec![0.0],
            bias: 0.0,
            means: vec![10.0],
            sds: vec![2.0],
        };
        let r = row(&[("MLS", Some(14.0))], true).features;
        assert_eq!(predict(&m, &r), 0.5);
        let pos = LinearModel {
            weights: vec![1.5],
            bias: 0.0,
            ..m.clone()
        };
        let neg = LinearModel {
            weights: vec![-1.5],
            ..m.clone()
        };
        assert!((predict(&pos, &r) + predict(&neg, &r) - 1.0).abs() < 1e-12);
        let biased = LinearModel { bias: 0.7, ..pos };
        assert_eq!(predict(&biased, &FeatureVector::new()), sigmoid(0.7));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let y: Vec<f64> = (0..12).map(|i| (i % 2) as f64).collect();
        for _ in 0..10 {
            let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b = rng.gen_range(-1.0..1.0);
            let (_, gw, gb) = loss_and_gradient(&x, &y, &w, b, 0.3);
            let h = 1e-6;
            for j in 0..3 {
                let (mut wp, mut wm) = (w.clone(), w.clone());
                wp[j] += h;
                wm[j] -= h;
                let num =
                    (loss_and_gradient(&x, &y, &wp, b, 0.3).0 - loss_and_gradient(&x, &y, &wm, b, 0.3).0) / (2.0 * h);
                assert!((num - gw[j]).abs() / num.abs().max(1e-8) < 1e-4, "{num} vs {}", gw[j]);
            }
            let num =
                (loss_and_gradient(&x, &y, &w, b + h, 0.3).0 - loss_and_gradient(&x, &y, &w, b - h, 0.3).0) / (2.0 * h);
            assert!((num - gb).abs() / num.abs().max(1e-8) < 1e-4);
        }
    }

    #[test]
    fn hand_counted_confusion() {
        let m = binary_metrics(3, 1, 4, 2);
        assert_eq!(m.precision, 0.75);
        assert_eq!(m.recall, 0.6);
        assert!((m.f1 - 2.0 * 0.75 * 0.6 / 1.35).abs() < 1e-12);
        assert_eq!(m.accuracy, 0.7);
        let all_pos = metrics_from_labels(&[true; 4], &[true, false, true, false]);
        assert_eq!((all_pos.accuracy, all_pos.recall), (0.5, 1.0));
    }

    fn random_rows(seed: u64, n: usize) -> Vec<LabeledRow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|i| {
                let label = i % 2 == 0;
                let shift = if label { 1.0 } else { 0.0 };
                let mls = rng.gen_range(0.0..10.0) + 3.0 * shift;
                let ttr = if rng.gen_bool(0.2) {
                    None
                } else {
                    Some(rng.gen_range(0.0..1.0))
                };
                row(
                    &[
                        ("MLS", Some(mls)),
                        ("TTR", ttr),
                        ("MLWs", Some(rng.gen_range(1.0..2.0))),
                    ],
                    label,
                )
            })
            .collect()
    }

    proptest::proptest! {
        #[test]
        fn loss_monotone_under_small_lr(seed in 0u64..500, l2 in 0.0f64..1.0) {
            let cfg = TrainConfig { l2, lr: 0.05, max_epochs: 200, tol: 0.0 };
            let (_, hist) = train_traced(&random_rows(seed, 24), &cfg).unwrap();
            for w in hist.windows(2) {
                proptest::prop_assert!(w[1] <= w[0] + 1e-12, "{} -> {}", w[0], w[1]);
            }
        }

        #[test]
        fn affine_rescaling_invariance(seed in 0u64..500, a in 0.1f64..50.0, b in -100.0f64..100.0) {
            let rows = random_rows(seed, 20);
            let mls = FeatureId::named("MLS");
            let scaled: Vec<LabeledRow> = rows
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    let v = r.features.get(mls).unwrap();
                    r.features.insert(mls, Some(a * v + b));
                    r
                })
                .collect();
            let cfg = TrainConfig { max_epochs: 300, ..TrainConfig::default() };
            let m1 = train(&rows, &cfg).unwrap();
            let m2 = train(&scaled, &cfg).unwrap();
            for (r1, r2) in rows.iter().zip(&scaled) {
                let (p1, p2) = (predict(&m1, &r1.features), predict(&m2, &r2.features));
                proptest::prop_assert!((p1 - p2).abs() < 1e-8, "{p1} vs {p2}");
            }
        }
    }

    #[test]
    fn model_round_trip() {
        let m = train(&toy(), &TrainConfig::default()).unwrap();
        let back = LinearModel::from_jsonl(&m.to_jsonl().unwrap(), Path::new("<test>")).unwrap();
        assert_eq!(back, m);
    }
}
