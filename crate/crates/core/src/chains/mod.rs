//! Executable sum-product proof chains.
//!
//! Each verifier walks one argument and records its steps. Steps that follow
//! from counting, Cauchy–Schwarz, pigeonhole or set containment alone are
//! checked exactly; steps that hide a universal constant are only measured,
//! as the ratio `lhs/rhs`.
//!
//! Every pipeline runs on a canonical dilate of its input (the smallest
//! `(uA, uB)` over `u ≠ 0`), so reports for `A` and `uA` agree in every
//! cardinality and ratio.

mod pair;
mod report;
mod single;

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exact::{pow, Frac};
use crate::field::Elem;
use crate::fset::FSet;
use crate::guards::Guards;

pub use pair::{
    chain_balanced, chain_unbalanced, chain_unbalanced_with, prop51_audit, prop51_audit_with,
};
pub use report::{
    Case, ChainReport, ChainStep, FinalRatio, InputDesc, Relation, StepKind, Theorem,
};
pub use single::{
    chain_large, chain_large_with, chain_small, chain_small_with, energy_bound_audit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    /// Fraction of `A` the extracted subset `Z` must keep. Two successive
    /// restrictions each keeping `√2/2` of the set keep `(√2/2)² = 1/2`.
    pub retention: Ratio<u64>,
    pub guards: Guards,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            retention: Ratio::new(1, 2),
            guards: Guards::default(),
        }
    }
}

pub(crate) fn nat(x: usize) -> BigUint {
    BigUint::from(x as u64)
}

pub(crate) fn pw(x: usize, e: u32) -> BigUint {
    pow(x as u64, e)
}

pub(crate) fn int(x: impl Into<BigUint>) -> Frac {
    Frac::int(x)
}

pub(crate) fn frac(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Frac {
    Frac::new(num, den)
}

/// `max(1, ⌈log₂ n⌉)`.
pub(crate) fn dyadic_log(n: usize) -> u32 {
    crate::exact::ceil_log2(n.max(1) as u64).max(1)
}

/// Smallest `u ≠ 0` minimizing `(uA, uB)` lexicographically.
pub(crate) fn canonical_pair(a: &FSet, b: &FSet) -> (Elem, FSet, FSet) {
    let mut best = (1, a.clone(), b.clone());
    for u in 2..a.p() {
        let (ua, ub) = (a.scale(u), b.scale(u));
        if (&ua, &ub) < (&best.1, &best.2) {
            best = (u, ua, ub);
        }
    }
    best
}

pub(crate) fn check_pair(a: &FSet, b: &FSet) -> Result<()> {
    a.same_field(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(())
}

pub(crate) fn describe(name: &str, set: &FSet) -> InputDesc {
    InputDesc {
        name: name.to_string(),
        card: set.len(),
        elements: set.clone(),
    }
}
