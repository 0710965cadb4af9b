//! Greedy covering of one set by translates of another.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{pow, Frac};
use crate::field::Elem;
use crate::fset::FSet;
use crate::ops::{rep_fn, sumset, Sign};

/// Result of [`greedy_cover`].
///
/// With mode `Plus` the translates are `c + B₂`, with `Minus` they are `c − B₂`.
/// `ratio_k` is `|B₁ − B₂|/|B₂|` for `Plus` and `|B₁ + B₂|/|B₂|` for `Minus`:
/// the offsets that meet `B₁` at all are exactly those sets' elements.
#[derive(Clone, Debug, Serialize)]
pub struct CoverResult {
    pub mode: Sign,
    pub translates: Vec<Elem>,
    pub covered: FSet,
    pub target_card: usize,
    pub ratio_k: Frac,
    pub budget: u64,
}

impl CoverResult {
    /// `100·|uncovered| ≤ |B₁|`, i.e. `|covered| ≥ ⌈0.99|B₁|⌉`.
    pub fn coverage_holds(&self) -> bool {
        100 * (self.target_card - self.covered.len()) <= self.target_card
    }

    pub fn budget_holds(&self) -> bool {
        self.translates.len() as u64 <= self.budget
    }
}

/// `ln(100)` truncated and rounded up at 40 decimals, over `10⁴⁰`.
const LN_100_LO: &str = "46051701859880913680359829093687284152022";
const LN_100_HI: &str = "46051701859880913680359829093687284152023";

/// `⌈ln(100)·K⌉ + 1`, in exact arithmetic. Where the two bracketing
/// rationals disagree the larger ceiling is taken.
pub fn cover_budget(k: &Frac) -> u64 {
    let scale = pow(10u32, 40) * &k.den;
    let ceil = |digits: &str| {
        let x = digits.parse::<BigUint>().expect("digits") * &k.num;
        x.div_ceil(&scale)
    };
    let hi = ceil(LN_100_HI).max(ceil(LN_100_LO));
    u64::try_from(hi).expect("budget fits in u64") + 1
}

pub fn greedy_cover(b1: &FSet, b2: &FSet, mode: Sign) -> Result<CoverResult> {
    b1.same_field(b2)?;
    if b2.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let shape = mode.apply(b2);
    let ratio_k = if b1.is_empty() {
        Frac::int(0u32)
    } else {
        Frac::new(
            sumset(b1, &shape, Sign::Minus)?.len() as u64,
            b2.len() as u64,
        )
    };
    let mut uncovered = b1.clone();
    let mut translates = Vec::new();
    while 100 * uncovered.len() > b1.len() {
        // counts[c] = |(c + shape) ∩ U|
        let counts = rep_fn(&uncovered, &shape, Sign::Minus)?.counts;
        let mut best = 0;
        for (c, &n) in counts.iter().enumerate() {
            if n > counts[best] {
                best = c;
            }
        }
        let c = best as Elem;
        translates.push(c);
        uncovered = uncovered.difference(&shape.translate(c));
    }
    Ok(CoverResult {
        mode,
        translates,
        covered: b1.difference(&uncovered),
        target_card: b1.len(),
        budget: cover_budget(&ratio_k),
        ratio_k,
    })
}

/// Union of the listed translates of `B₂` (or `−B₂`).
pub fn union_of_translates(b2: &FSet, mode: Sign, translates: &[Elem]) -> FSet {
    let shape = mode.apply(b2);
    translates.iter().fold(FSet::empty(b2.field()), |acc, &c| {
        acc.union(&shape.translate(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn interval_by_pairs() {
        let f = make_field(13).unwrap();
        let b1 = FSet::from_elems(&f, 0..6);
        let b2 = FSet::from_elems(&f, [0, 1]);
        let r = greedy_cover(&b1, &b2, Sign::Plus).unwrap();
        assert_eq!(r.translates, vec![0, 2, 4]);
        assert_eq!(r.covered, b1);
        assert_eq!(r.budget, 18);
        assert_eq!(r.ratio_k, Frac::new(7u32, 2u32));
    }

    #[test]
    fn budget_values() {
        assert_eq!(cover_budget(&Frac::int(1u32)), 6);
        assert_eq!(cover_budget(&Frac::new(7u32, 2u32)), 18);
        assert_eq!(cover_budget(&Frac::int(100u32)), 462);
        assert_eq!(cover_budget(&Frac::new(1u32, 1000u32)), 2);
    }

    #[test]
    fn self_cover_uses_offset_zero() {
        let f = make_field(11).unwrap();
        let b = FSet::from_elems(&f, [2, 3, 7]);
        let r = greedy_cover(&b, &b, Sign::Plus).unwrap();
        assert_eq!(r.translates, vec![0]);
    }

    #[test]
    fn singleton_shift() {
        let f = make_field(7).unwrap();
        let r = greedy_cover(
            &FSet::from_elems(&f, [0]),
            &FSet::from_elems(&f, [3]),
            Sign::Plus,
        )
        .unwrap();
        assert_eq!(r.translates, vec![4]);
        let m = greedy_cover(
            &FSet::from_elems(&f, [0]),
            &FSet::from_elems(&f, [3]),
            Sign::Minus,
        )
        .unwrap();
        assert_eq!(m.translates, vec![3]);
    }

    #[test]
    fn covered_part_lies_in_translates() {
        let f = make_field(31).unwrap();
        let b1 = FSet::from_elems(&f, [1, 4, 9, 16, 25, 5, 18, 2, 19, 7]);
        let b2 = FSet::from_elems(&f, [0, 3, 11]);
        for mode in Sign::both() {
            let r = greedy_cover(&b1, &b2, mode).unwrap();
            let u = union_of_translates(&b2, mode, &r.translates);
            assert!(r.covered.is_subset(&u.intersection(&b1)));
            assert!(r.coverage_holds() && r.budget_holds());
        }
    }

    #[test]
    fn empty_translate_shape_is_rejected() {
        let f = make_field(7).unwrap();
        let e = FSet::empty(&f);
        assert_eq!(
            greedy_cover(&FSet::full(&f), &e, Sign::Plus).unwrap_err(),
            Error::EmptyOperand
        );
    }
}
