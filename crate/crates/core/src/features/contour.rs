use super::catalog::{FeatureId, FeatureVector};
use crate::error::{Error, Result};

/// Windowed means of one feature across a document.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSeries {
    pub feature: FeatureId,
    pub window_size: usize,
    pub values: Vec<Option<f64>>,
}

/// Means over windows `i..i+w` (missing values skipped, all-missing window
/// is missing). A window larger than the series covers it once.
pub fn contour_values(values: &[Option<f64>], w: usize) -> Result<Vec<Option<f64>>> {
    if w == 0 {
        return Err(Error::Domain("window size must be >= 1".into()));
    }
    let n = values.len();
    if w >= n {
        return Ok(vec![window_mean(values)]);
    }
    Ok(values.windows(w).map(window_mean).collect())
}

fn window_mean(window: &[Option<f64>]) -> Option<f64> {
    let present: Vec<f64> = window.iter().flatten().copied().collect();
    (!present.is_empty()).then(|| present.iter().sum::<f64>() / present.len() as f64)
}

pub fn contour(doc: &[FeatureVector], feature: &str, w: usize) -> Result<ContourSeries> {
    let id = FeatureId::parse(feature)?;
    let per_sentence: Vec<Option<f64>> = doc.iter().map(|v| v.get(id)).collect();
    Ok(ContourSeries {
        feature: id,
        window_size: w,
        values: contour_values(&per_sentence, w)?,
    })
}
