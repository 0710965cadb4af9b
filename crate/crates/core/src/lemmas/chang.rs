//! Dyadic bucket decomposition against a pivot row of the multiplicative profile.
//!
//! The profile entry `ρ(y₀, y) = #{(z₁, z₂) ∈ Z² : y₀z₁ = yz₂}` equals
//! `|y₀Z ∩ yZ|` when `y₀, y ≠ 0`, and its full double sum over `Y²` is
//! `E^×(Y, Z)`. Bucket `j` holds the `y` with `ρ(y₀, y) ∈ N_j`, where
//! `N₁ = {1, 2}` and `N_j = (2^{j−1}, 2^j]`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::energy::{log_difference_counts, multiplicative_energy_value};
use crate::error::{Error, Result};
use crate::exact::{ceil_log2, pow, serialize_big};
use crate::field::Elem;
use crate::fset::FSet;

/// `1/C`, where `C = 1/400000` is a certified lower bound for
/// `c* = (2^{1/4} − 1)⁴ / 2⁹ ≈ 2.5031·10⁻⁶`.
///
/// Write `T = max_j 16^j|Y_j|³`, `W = max_j |Y_j|` and `s_sum = Σ_y ρ(y₀, y)`.
/// Each `y ∈ Y_j` has `ρ ≤ 2^j`, so `s_sum ≤ Σ_j 2^j|Y_j|`. Grouping the
/// buckets by the class `s` of `|Y_j|` (so `|Y_j| ≤ 2^s`) and summing the
/// geometric series in `j` gives `s_sum ≤ 2 Σ_s 2^s 2^{j_s}`. From
/// `2^s ≤ 2|Y_{j_s}|` we get `2^{j_s}2^s ≤ 2^{3/4} T^{1/4} 2^{s/4}`, and
/// `Σ_{s ≤ ⌈log₂W⌉} 2^{s/4} ≤ 2^{1/4}(2W)^{1/4} / (2^{1/4} − 1)`. Hence
/// `s_sum ≤ 4·2^{1/4}(WT)^{1/4} / (2^{1/4} − 1)`, i.e. `T ≥ c*·s_sum⁴/W`.
/// With `s_sum ≥ E^×/|Y|` this is `T·|Y|⁴·W ≥ c*·E^×⁴`, and when every
/// bucket has at most `|Z|` elements (always for `Y = Z`) also
/// `T·|Y|⁴|Z| ≥ c*·E^×⁴`.
pub const CHANG_CONSTANT_INV: u64 = 400_000;

/// Bucket of a profile value `v ≥ 1`.
pub fn bucket_index(v: u64) -> u32 {
    if v <= 2 {
        1
    } else {
        ceil_log2(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BucketDecomposition {
    pub pivot: Elem,
    /// `(y, ρ(pivot, y))` for every `y ∈ Y`, ascending in `y`.
    pub profile: Vec<(Elem, u64)>,
    /// `Y_j` for `j = 1..=levels`, including empty buckets.
    pub buckets: BTreeMap<u32, FSet>,
    /// `max(1, ⌈log₂|Z|⌉)`, extended when a profile value exceeds `|Z|`
    /// (only possible for the pivot 0 against `y = 0`).
    pub levels: u32,
    pub s_sum: u64,
    pub energy: u64,
    #[serde(serialize_with = "serialize_big")]
    pub lhs: BigUint,
    pub lhs_j: u32,
    #[serde(serialize_with = "serialize_big")]
    pub rhs_num: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub rhs_den: BigUint,
    /// `j_s = max{j : |Y_j| ∈ N_s}`, 0 when no bucket size falls in `N_s`.
    pub js_seq: BTreeMap<u32, u32>,
    pub y_card: usize,
    pub z_card: usize,
}

impl BucketDecomposition {
    pub fn max_bucket(&self) -> usize {
        self.buckets.values().map(FSet::len).max().unwrap_or(0)
    }

    /// `s_sum·|Y| ≥ E^×(Y, Z)`.
    pub fn pigeonhole_holds(&self) -> bool {
        self.s_sum as u128 * self.y_card as u128 >= self.energy as u128
    }

    /// `Σ_j 2^j|Y_j|`.
    pub fn dyadic_mass(&self) -> BigUint {
        self.buckets
            .iter()
            .map(|(&j, b)| pow(2u32, j) * b.len() as u64)
            .sum()
    }

    /// `400000·lhs·|Y|⁴|Z| ≥ E^×⁴`.
    pub fn chang_constant_holds(&self) -> bool {
        &self.lhs * &self.rhs_den * CHANG_CONSTANT_INV >= self.rhs_num
    }

    /// `400000·lhs·|Y|⁴·max_j|Y_j| ≥ E^×⁴`, valid for every `Y, Z`.
    pub fn general_constant_holds(&self) -> bool {
        &self.lhs * pow(self.y_card as u64, 4) * (self.max_bucket() as u64 * CHANG_CONSTANT_INV)
            >= self.rhs_num
    }

    /// Buckets are disjoint, cover exactly the `y` with positive profile, and
    /// respect the dyadic membership rule.
    pub fn partition_holds(&self) -> bool {
        let mut seen: BTreeMap<Elem, u32> = BTreeMap::new();
        for (&j, b) in &self.buckets {
            for y in b.iter() {
                if seen.insert(y, j).is_some() {
                    return false;
                }
            }
        }
        self.profile.iter().all(|&(y, v)| match seen.get(&y) {
            Some(&j) => v >= 1 && bucket_index(v) == j,
            None => v == 0,
        }) && seen.len() == self.profile.iter().filter(|(_, v)| *v > 0).count()
    }
}

/// Profile rows `ρ(y₀, ·)` over `Y`, for every `y₀ ∈ Y`.
fn profile_rows(y: &FSet, z: &FSet) -> Vec<(Elem, Vec<u64>)> {
    let f = y.prime_field();
    let m = f.order() as u64;
    let r = log_difference_counts(z);
    let zc = z.len() as u64;
    let z0 = z.contains(0) as u64;
    let ys = y.to_vec();
    ys.iter()
        .map(|&y0| {
            let row = ys
                .iter()
                .map(|&yy| match (y0, yy) {
                    (0, 0) => zc * zc,
                    (0, _) | (_, 0) => zc * z0,
                    _ => {
                        let g = (f.dlog(yy).unwrap() as u64 + m - f.dlog(y0).unwrap() as u64) % m;
                        r[g as usize] + z0
                    }
                })
                .collect();
            (y0, row)
        })
        .collect()
}

pub fn chang_decompose(y: &FSet, z: &FSet) -> Result<BucketDecomposition> {
    y.same_field(z)?;
    if y.is_empty() || z.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let rows = profile_rows(y, z);
    let mut pivot = 0;
    let mut best_sum = 0;
    for (i, (_, row)) in rows.iter().enumerate() {
        let s: u64 = row.iter().sum();
        if i == 0 || s > best_sum {
            pivot = i;
            best_sum = s;
        }
    }
    let (pivot_elem, row) = &rows[pivot];
    let profile: Vec<(Elem, u64)> = y.iter().zip(row.iter().copied()).collect();
    let top = profile.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let mut levels = ceil_log2(z.len() as u64).max(1);
    if top >= 1 {
        levels = levels.max(bucket_index(top));
    }
    let mut buckets: BTreeMap<u32, FSet> =
        (1..=levels).map(|j| (j, FSet::empty(y.field()))).collect();
    for &(e, v) in &profile {
        if v >= 1 {
            let slot = buckets.get_mut(&bucket_index(v)).expect("within levels");
            *slot = slot.with(e);
        }
    }
    let (mut lhs, mut lhs_j) = (BigUint::from(0u32), 1);
    for (&j, b) in &buckets {
        let v = pow(16u32, j) * pow(b.len() as u64, 3);
        if v > lhs {
            lhs = v;
            lhs_j = j;
        }
    }
    let w = buckets.values().map(FSet::len).max().unwrap_or(0) as u64;
    let classes = if w == 0 {
        1
    } else {
        levels.max(bucket_index(w))
    };
    let js_seq = (1..=classes)
        .map(|s| {
            let js = buckets
                .iter()
                .filter(|(_, b)| !b.is_empty() && bucket_index(b.len() as u64) == s)
                .map(|(&j, _)| j)
                .max()
                .unwrap_or(0);
            (s, js)
        })
        .collect();
    let energy = multiplicative_energy_value(y, z);
    Ok(BucketDecomposition {
        pivot: *pivot_elem,
        profile,
        buckets,
        levels,
        s_sum: best_sum,
        energy,
        lhs,
        lhs_j,
        rhs_num: pow(energy, 4),
        rhs_den: pow(y.len() as u64, 4) * z.len() as u64,
        js_seq,
        y_card: y.len(),
        z_card: z.len(),
    })
}

/// The bucket maximizing `2^j|Y_j|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct J0Choice {
    pub j0: u32,
    /// `2^{j₀}|Y_{j₀}|`.
    pub certificate: u128,
    pub levels: u32,
}

impl J0Choice {
    /// `certificate·2·levels ≥ s_sum`, since `Σ_j 2^j|Y_j| ≥ s_sum` has `levels` terms.
    pub fn holds(&self, d: &BucketDecomposition) -> bool {
        self.certificate * 2 * self.levels as u128 >= d.s_sum as u128
    }
}

pub fn select_j0(d: &BucketDecomposition) -> Result<J0Choice> {
    let mut best: Option<(u32, u128)> = None;
    for (&j, b) in &d.buckets {
        if b.is_empty() {
            continue;
        }
        let c = (1u128 << j) * b.len() as u128;
        if best.is_none_or(|(_, bc)| c > bc) {
            best = Some((j, c));
        }
    }
    let (j0, certificate) = best.ok_or(Error::EmptyDecomposition)?;
    Ok(J0Choice {
        j0,
        certificate,
        levels: d.levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn squares_subgroup() {
        let f = make_field(7).unwrap();
        let q = FSet::from_elems(&f, [1, 2, 4]);
        let d = chang_decompose(&q, &q).unwrap();
        assert_eq!(d.pivot, 1);
        assert_eq!(d.s_sum, 9);
        assert_eq!(d.buckets[&2], q);
        assert!(d.buckets[&1].is_empty());
        assert_eq!(d.lhs, BigUint::from(6912u32));
        assert_eq!(&d.rhs_num / &d.rhs_den, BigUint::from(2187u32));
        assert_eq!(d.js_seq, BTreeMap::from([(1, 0), (2, 2)]));
        let j = select_j0(&d).unwrap();
        assert_eq!((j.j0, j.certificate), (2, 12));
        assert!(j.holds(&d));
        assert!(d.partition_holds() && d.pigeonhole_holds() && d.chang_constant_holds());
    }

    #[test]
    fn singleton() {
        let f = make_field(5).unwrap();
        let one = FSet::from_elems(&f, [1]);
        let d = chang_decompose(&one, &one).unwrap();
        assert_eq!(d.buckets[&1], one);
        assert_eq!(d.lhs, BigUint::from(16u32));
        assert_eq!(d.rhs_num, BigUint::from(1u32));
        assert_eq!(d.rhs_den, BigUint::from(1u32));
        assert_eq!(select_j0(&d).unwrap().j0, 1);
    }

    #[test]
    fn pigeonhole_on_small_pair() {
        let f = make_field(5).unwrap();
        let a = FSet::from_elems(&f, [1, 2]);
        let d = chang_decompose(&a, &a).unwrap();
        assert_eq!(d.energy, 6);
        assert!(d.s_sum * 2 >= 6);
        assert!(d.pigeonhole_holds());
    }

    #[test]
    fn short_interval() {
        let f = make_field(7).unwrap();
        let a = FSet::from_elems(&f, [1, 2, 3]);
        let d = chang_decompose(&a, &a).unwrap();
        let j = select_j0(&d).unwrap();
        let best = d
            .buckets
            .iter()
            .map(|(&j, b)| (1u128 << j) * b.len() as u128)
            .max()
            .unwrap();
        assert_eq!(j.certificate, best);
        assert!(d.partition_holds());
    }

    #[test]
    fn zero_pivot_extends_levels() {
        let f = make_field(7).unwrap();
        let y = FSet::from_elems(&f, [0]);
        let z = FSet::from_elems(&f, [0, 1, 2]);
        let d = chang_decompose(&y, &z).unwrap();
        assert_eq!(d.s_sum, 9);
        assert_eq!(d.levels, 4);
        assert!(d.partition_holds() && d.pigeonhole_holds());
    }

    #[test]
    fn empty_decomposition() {
        let f = make_field(7).unwrap();
        let y = FSet::from_elems(&f, [0, 3]);
        let z = FSet::from_elems(&f, [1]);
        let d = chang_decompose(&y, &z).unwrap();
        // ρ(0, 0) = 1, ρ(0, 3) = 0 and ρ(3, 3) = 1; the pivot is 0.
        assert_eq!(d.pivot, 0);
        assert!(select_j0(&d).is_ok());
        let mut blank = d.clone();
        for b in blank.buckets.values_mut() {
            *b = FSet::empty(&f);
        }
        assert_eq!(select_j0(&blank).unwrap_err(), Error::EmptyDecomposition);
    }
}
