//! Exact Plünnecke–Ruzsa checks.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{pow, serialize_big};
use crate::fset::FSet;
use crate::ops::{iterated, sumset, Sign};

/// One cross-multiplied inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntCheck {
    pub name: String,
    #[serde(serialize_with = "serialize_big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub rhs: BigUint,
    pub pass: bool,
}

impl IntCheck {
    pub fn new(name: impl Into<String>, lhs: BigUint, rhs: BigUint) -> Self {
        let pass = lhs <= rhs;
        IntCheck {
            name: name.into(),
            lhs,
            rhs,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlunneckeAudit {
    pub k: u32,
    pub sum_card: usize,
    /// `|A+A|·|B| ≤ |A+B|²`.
    pub doubling: IntCheck,
    /// `|kB|·|A|^{k−1} ≤ |A+B|^k`.
    pub iterated: IntCheck,
}

impl PlunneckeAudit {
    pub fn pass(&self) -> bool {
        self.doubling.pass && self.iterated.pass
    }
}

pub fn plunnecke_audit(a: &FSet, b: &FSet, k: u32) -> Result<PlunneckeAudit> {
    a.same_field(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if !(2..=6).contains(&k) {
        return Err(Error::BadParameters(format!(
            "k must lie in 2..=6, got {k}"
        )));
    }
    let ab = sumset(a, b, Sign::Plus)?.len() as u64;
    let aa = sumset(a, a, Sign::Plus)?.len() as u64;
    let kb = iterated(b, &vec![Sign::Plus; k as usize])?.len() as u64;
    let (na, nb) = (a.len() as u64, b.len() as u64);
    Ok(PlunneckeAudit {
        k,
        sum_card: ab as usize,
        doubling: IntCheck::new("|A+A|·|B| <= |A+B|^2", BigUint::from(aa * nb), pow(ab, 2)),
        iterated: IntCheck::new(
            format!("|{k}B|·|A|^{} <= |A+B|^{k}", k - 1),
            pow(na, k - 1) * kb,
            pow(ab, k),
        ),
    })
}

/// `|B+B−B−B|·|A|³ ≤ |A+B|⁴`.
pub fn mixed_plunnecke(a: &FSet, b: &FSet) -> Result<IntCheck> {
    a.same_field(b)?;
    let ab = sumset(a, b, Sign::Plus)?.len() as u64;
    let mixed = iterated(b, &[Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus])?.len() as u64;
    Ok(IntCheck::new(
        "|B+B-B-B|·|A|^3 <= |A+B|^4",
        pow(a.len() as u64, 3) * mixed,
        pow(ab, 4),
    ))
}
