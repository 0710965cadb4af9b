//! Largest sets whose ratio set misses part of the field.
//!
//! The ratio set is invariant under `x ↦ ux + t`, so it suffices to scan sets
//! containing `{0, 1}`. It is also monotone under inclusion: once no `n`-set is
//! proper, no larger set is.

use serde::Serialize;

use crate::combin::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::field::{make_field, Elem};
use crate::fset::FSet;
use crate::guards::Guards;
use crate::ops::ratio_set_is_proper;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStatus {
    /// `n = 1`: the denominator set is empty.
    NotApplicable,
    Proper,
    Full,
    /// Full for every `n`-set, inferred from a smaller `n`.
    FullByMonotonicity,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub n: usize,
    pub status: ThresholdStatus,
    pub witness: Option<FSet>,
    pub candidates_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdScan {
    pub p: u32,
    pub rows: Vec<ThresholdRow>,
    pub max_n: Option<usize>,
    pub witness: Option<FSet>,
    pub sqrt_p: String,
    /// `max_n² ≤ p`.
    pub max_n_sq_le_p: Option<bool>,
}

pub fn ratio_threshold_scan(p: u64, guards: &Guards) -> Result<ThresholdScan> {
    let field = make_field(p)?;
    let p = field.p();
    let mut rows = vec![ThresholdRow {
        n: 1,
        status: ThresholdStatus::NotApplicable,
        witness: None,
        candidates_checked: 0,
    }];
    let mut best: Option<(usize, FSet)> = None;
    let mut exhausted = false;
    for n in 2..=p as usize {
        if exhausted {
            rows.push(ThresholdRow {
                n,
                status: ThresholdStatus::FullByMonotonicity,
                witness: None,
                candidates_checked: 0,
            });
            continue;
        }
        let count = binomial((p - 2) as u64, (n - 2) as u64);
        if count > guards.max_classes as u128 {
            return Err(Error::GuardExceeded(format!(
                "{count} candidate sets of size {n} exceed the limit {}",
                guards.max_classes
            )));
        }
        let mut found = None;
        let mut checked = 0;
        for idx in Combinations::new((p - 2) as usize, n - 2) {
            checked += 1;
            let a = FSet::from_elems(
                &field,
                [0, 1].into_iter().chain(idx.iter().map(|&i| i as Elem + 2)),
            );
            if ratio_set_is_proper(&a)? {
                found = Some(a);
                break;
            }
        }
        match found {
            Some(w) => {
                best = Some((n, w.clone()));
                rows.push(ThresholdRow {
                    n,
                    status: ThresholdStatus::Proper,
                    witness: Some(w),
                    candidates_checked: checked,
                });
            }
            None => {
                exhausted = true;
                rows.push(ThresholdRow {
                    n,
                    status: ThresholdStatus::Full,
                    witness: None,
                    candidates_checked: checked,
                });
            }
        }
    }
    let max_n = best.as_ref().map(|(n, _)| *n);
    Ok(ThresholdScan {
        p,
        rows,
        max_n,
        witness: best.map(|(_, w)| w),
        sqrt_p: format!("{:.6}", (p as f64).sqrt()),
        max_n_sq_le_p: max_n.map(|n| (n * n) as u64 <= p as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_of_small_primes() {
        let want = [
            (5, 2, vec![0, 1]),
            (7, 2, vec![0, 1]),
            (11, 3, vec![0, 1, 2]),
            (13, 3, vec![0, 1, 2]),
        ];
        for (p, n, w) in want {
            let s = ratio_threshold_scan(p, &Guards::default()).unwrap();
            assert_eq!(s.max_n, Some(n), "p = {p}");
            assert_eq!(s.witness.unwrap().to_vec(), w);
            assert_eq!(s.rows[0].status, ThresholdStatus::NotApplicable);
            assert_eq!(s.rows.len(), p as usize);
        }
        let three = ratio_threshold_scan(3, &Guards::default()).unwrap();
        assert_eq!(three.max_n, None);
    }
}
