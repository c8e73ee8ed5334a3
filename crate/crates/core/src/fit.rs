//! Least-squares fit of `log y` against `log n` for scaling experiments.

use crate::error::{Error, Result};
use serde::Serialize;

/// Fewest distinct sizes a ladder may have.
pub const MIN_LADDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Fits `ln y = slope ln n + intercept`. Needs at least [`MIN_LADDER`]
/// distinct sizes and positive values throughout.
pub fn loglog_fit(ns: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if ns.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: ns.len(), got: ys.len() });
    }
    let mut distinct: Vec<f64> = ns.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < MIN_LADDER {
        return Err(Error::InvalidParameter(format!(
            "ladder has {} distinct sizes, need at least {MIN_LADDER}",
            distinct.len()
        )));
    }
    if ns.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidParameter("log-log fit needs positive finite values".into()));
    }
    let xs: Vec<f64> = ns.iter().map(|v| v.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ls.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ls.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LogLogFit { slope, intercept, r2 })
}
