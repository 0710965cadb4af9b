//! Large subsets with small iterated sumsets.

use num_rational::Ratio;
use serde::Serialize;

use crate::combin::Combinations;
use crate::error::{Error, Result};
use crate::exact::{pow, Frac};
use crate::fset::FSet;
use crate::guards::Guards;
use crate::ops::{signed_combination, sumset, Sign};

/// A subset `X ⊆ B₀` and its ratio
/// `|X + B₁ + ⋯ + B_k| / (Π(|Bᵢ + B₀|/|B₀|) · |X|)`.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetResult {
    pub subset: FSet,
    pub ratio: Frac,
    pub sumset_card: usize,
    pub min_card: usize,
    /// `false` for the exhaustive minimum, `true` for the removal descent.
    pub heuristic: bool,
}

/// `max(1, ⌈(1 − eps)·n⌉)`.
pub fn min_subset_card(n: usize, eps: Ratio<u64>) -> usize {
    let (num, den) = (*eps.numer(), *eps.denom());
    let keep = (den - num) * n as u64;
    (keep.div_ceil(den) as usize).max(1)
}

struct Objective {
    tail: FSet,
    den_factor: Frac,
}

impl Objective {
    fn new(b0: &FSet, bs: &[FSet]) -> Result<Self> {
        if b0.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let tail = if bs.is_empty() {
            FSet::from_elems(b0.field(), [0])
        } else {
            let terms: Vec<(&FSet, Sign)> = bs.iter().map(|b| (b, Sign::Plus)).collect();
            signed_combination(&terms)?
        };
        let mut prod = num_bigint::BigUint::from(1u32);
        for b in bs {
            prod *= sumset(b, b0, Sign::Plus)?.len() as u64;
        }
        let den_factor = Frac::new(prod, pow(b0.len() as u64, bs.len() as u32));
        Ok(Objective { tail, den_factor })
    }

    fn eval(&self, x: &FSet) -> Result<(Frac, usize)> {
        let card = sumset(x, &self.tail, Sign::Plus)?.len();
        let ratio = Frac::new(
            card as u64 * &self.den_factor.den,
            &self.den_factor.num * x.len() as u64,
        );
        Ok((ratio, card))
    }
}

fn check_eps(eps: Ratio<u64>) -> Result<()> {
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(Error::BadEpsilon);
    }
    Ok(())
}

/// Exhaustive minimum over `X ⊆ B₀` with `|X| ≥ (1−eps)|B₀|`.
///
/// Candidates are visited by decreasing size, lexicographically within a size;
/// the first strict minimum wins.
pub fn katz_shen_subset(b0: &FSet, bs: &[FSet], eps: Ratio<u64>) -> Result<SubsetResult> {
    katz_shen_subset_guarded(b0, bs, eps, &Guards::default())
}

pub fn katz_shen_subset_guarded(
    b0: &FSet,
    bs: &[FSet],
    eps: Ratio<u64>,
    guards: &Guards,
) -> Result<SubsetResult> {
    check_eps(eps)?;
    for b in bs {
        b0.same_field(b)?;
    }
    if b0.len() > guards.subset_max_base || bs.len() > guards.subset_max_terms {
        return Err(Error::GuardExceeded(format!(
            "subset search needs |B0| <= {} and k <= {} (got {} and {})",
            guards.subset_max_base,
            guards.subset_max_terms,
            b0.len(),
            bs.len()
        )));
    }
    let obj = Objective::new(b0, bs)?;
    let elems = b0.to_vec();
    let n = elems.len();
    let m = min_subset_card(n, eps);
    let mut best: Option<(Frac, usize, FSet)> = None;
    for size in (m..=n).rev() {
        for idx in Combinations::new(n, size) {
            let x = FSet::from_elems(b0.field(), idx.iter().map(|&i| elems[i]));
            let (ratio, card) = obj.eval(&x)?;
            if best.as_ref().is_none_or(|(r, _, _)| ratio < *r) {
                best = Some((ratio, card, x));
            }
        }
    }
    let (ratio, sumset_card, subset) = best.expect("B0 is nonempty");
    Ok(SubsetResult {
        subset,
        ratio,
        sumset_card,
        min_card: m,
        heuristic: false,
    })
}

/// Removal descent for sets beyond the exhaustive guard.
///
/// Starting from `B₀`, repeatedly drop the element whose removal leaves the
/// smallest `|X + B₁ + ⋯ + B_k|` (smallest element on ties) while the size
/// floor allows, and return the best ratio seen along the path.
pub fn descent_subset(b0: &FSet, bs: &[FSet], eps: Ratio<u64>) -> Result<SubsetResult> {
    check_eps(eps)?;
    for b in bs {
        b0.same_field(b)?;
    }
    let obj = Objective::new(b0, bs)?;
    let m = min_subset_card(b0.len(), eps);
    let mut x = b0.clone();
    let (ratio, card) = obj.eval(&x)?;
    let mut best = (ratio, card, x.clone());
    while x.len() > m {
        let mut step: Option<(usize, FSet)> = None;
        for e in x.iter() {
            let y = x.without(e);
            let card = sumset(&y, &obj.tail, Sign::Plus)?.len();
            if step.as_ref().is_none_or(|(c, _)| card < *c) {
                step = Some((card, y));
            }
        }
        x = step.expect("x has more than m >= 1 elements").1;
        let (ratio, card) = obj.eval(&x)?;
        if ratio < best.0 {
            best = (ratio, card, x.clone());
        }
    }
    Ok(SubsetResult {
        subset: best.2,
        ratio: best.0,
        sumset_card: best.1,
        min_card: m,
        heuristic: true,
    })
}
