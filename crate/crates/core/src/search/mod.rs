//! Extremal sets for `max{|A+A|, |AA|}` up to dilation.
//!
//! Dilation `x ↦ ux` is the only symmetry used: it preserves both `|A+A|` and
//! `|AA|`, whereas translation changes `|AA|` and inversion changes `|A+A|`.

mod anneal;
mod exhaustive;
mod threshold;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::fset::FSet;
use crate::ops::{product_set, sumset, Sign};

pub use anneal::{anneal_extremal, AnnealSchedule};
pub use exhaustive::{
    exhaustive_extremal, exhaustive_extremal_with, naive_extremal_value, CacheState, Exhaustive,
    ExhaustiveOptions,
};
pub use threshold::{ratio_threshold_scan, ThresholdRow, ThresholdScan, ThresholdStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Anneal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub p: u32,
    pub n: usize,
    pub mode: SearchMode,
    pub best_value: usize,
    /// Canonical witnesses attaining `best_value`, ascending.
    pub witnesses: Vec<FSet>,
    /// `ln(best_value)/ln(n)` to six decimals, absent for `n = 1`.
    pub exponent: Option<String>,
    pub seed: Option<u64>,
    pub classes_visited: u64,
}

pub(crate) fn exponent(best: usize, n: usize) -> Option<String> {
    (n >= 2).then(|| format!("{:.6}", (best as f64).ln() / (n as f64).ln()))
}

/// `max{|A+A|, |AA|}`.
pub fn objective(a: &FSet) -> Result<usize> {
    Ok(sumset(a, a, Sign::Plus)?
        .len()
        .max(product_set(a, a)?.len()))
}

/// Smallest `u ≠ 0` minimizing `uA` in the set order, with that dilate.
pub fn canonical_multiplier(a: &FSet) -> Result<(Elem, FSet)> {
    if a.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut best = (1, a.clone());
    for u in 2..a.p() {
        let d = a.scale(u);
        if d < best.1 {
            best = (u, d);
        }
    }
    Ok(best)
}

/// The smallest dilate of `A` in the set order (ascending element sequences
/// compared lexicographically).
pub fn canonical_form(a: &FSet) -> Result<FSet> {
    Ok(canonical_multiplier(a)?.1)
}

/// Whether no dilate of `A` is smaller than `A`.
pub fn is_canonical(a: &FSet) -> bool {
    (2..a.p()).all(|u| a.scale(u) >= *a)
}
