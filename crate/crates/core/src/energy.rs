//! Additive and multiplicative energies.
//!
//! `E⁺(Y,Z) = Σ_{x,y∈Y} |(x+Z) ∩ (y+Z)|` counts solutions of `y₁+z₁ = y₂+z₂`.
//! `E^×(Y,Z)` counts solutions of `y₁z₁ = y₂z₂`, which equals
//! `Σ_{x,y∈Y} |xZ ∩ yZ|` whenever `0 ∉ Y`. With `0 ∈ Y` the intersection sum
//! undercounts (a zero row sees `0·Z = {0}` once but `0·z₁ = y·z₂` for every
//! `z₁`), and the quadruple count is the quantity for which
//! `E ≥ |Y|²|Z|²/|Y⊙Z|` holds.
//!
//! Each kind has two independent routes. Additive: the double sum of
//! translate intersections, and `Σ_d r_{Y−Y}(d) r_{Z−Z}(d)`. Multiplicative:
//! `Σ_w r_{YZ}(w)²` from the multiplication table, and the exponent-group
//! convolution of the nonzero parts plus the closed-form zero term.

use serde::{Deserialize, Serialize};

use crate::bitmask::BitMask;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::fset::FSet;
use crate::ops::{cyclic_rep_counts, product_set, rep_fn, sumset, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyKind {
    Additive,
    Multiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnergyMethod {
    Naive,
    #[default]
    Convolution,
}

/// An exact energy with its lower bound `|Y|²|Z|² / |Y⊙Z|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyReport {
    pub kind: EnergyKind,
    pub value: u64,
    pub floor_num: u128,
    pub floor_den: u64,
    pub y_card: u64,
    pub z_card: u64,
    pub op_card: u64,
    /// `|Y|²|Z|`, except for a multiplicative energy with `0 ∈ Y`, where it is
    /// `|Y*|²|Z*| + (|Y||Z| − |Y*||Z*|)²`.
    pub ceiling: u128,
}

impl EnergyReport {
    /// `value · floor_den ≥ floor_num`.
    pub fn floor_holds(&self) -> bool {
        self.value as u128 * self.floor_den as u128 >= self.floor_num
    }

    /// `value ≤ ceiling`.
    pub fn ceiling_holds(&self) -> bool {
        self.value as u128 <= self.ceiling
    }
}

fn pre(y: &FSet, z: &FSet) -> Result<()> {
    y.same_field(z)?;
    if y.is_empty() || z.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let cap = (y.len() as u128).pow(2) * z.len() as u128;
    if cap > u64::MAX as u128 {
        return Err(Error::Overflow(format!(
            "energy of |Y|={} |Z|={} may exceed 64 bits",
            y.len(),
            z.len()
        )));
    }
    Ok(())
}

fn report(kind: EnergyKind, value: u64, y: &FSet, z: &FSet) -> Result<EnergyReport> {
    let op = match kind {
        EnergyKind::Additive => sumset(y, z, Sign::Plus)?,
        EnergyKind::Multiplicative => product_set(y, z)?,
    };
    let (yc, zc) = (y.len() as u128, z.len() as u128);
    let ceiling = match kind {
        EnergyKind::Multiplicative if y.contains(0) => {
            let ys = yc - 1;
            let zs = zc - z.contains(0) as u128;
            ys * ys * zs + (yc * zc - ys * zs).pow(2)
        }
        _ => yc * yc * zc,
    };
    Ok(EnergyReport {
        kind,
        value,
        floor_num: yc * yc * zc * zc,
        floor_den: op.len() as u64,
        y_card: y.len() as u64,
        z_card: z.len() as u64,
        op_card: op.len() as u64,
        ceiling,
    })
}

pub fn additive_energy(y: &FSet, z: &FSet, method: EnergyMethod) -> Result<EnergyReport> {
    pre(y, z)?;
    let value = match method {
        EnergyMethod::Naive => {
            let translates: Vec<BitMask> =
                y.iter().map(|x| z.translate(x).mask().clone()).collect();
            pair_sum(&translates)
        }
        EnergyMethod::Convolution => additive_energy_value(y, z)?,
    };
    report(EnergyKind::Additive, value, y, z)
}

/// Convolution route without the floor bookkeeping.
pub fn additive_energy_value(y: &FSet, z: &FSet) -> Result<u64> {
    let ry = rep_fn(y, y, Sign::Minus)?;
    let rz = rep_fn(z, z, Sign::Minus)?;
    Ok(ry.counts.iter().zip(&rz.counts).map(|(a, b)| a * b).sum())
}

pub fn multiplicative_energy(y: &FSet, z: &FSet, method: EnergyMethod) -> Result<EnergyReport> {
    pre(y, z)?;
    let value = match method {
        EnergyMethod::Naive => {
            let f = y.prime_field();
            let mut r = vec![0u64; f.p() as usize];
            for a in y.iter() {
                for b in z.iter() {
                    r[f.mul(a, b) as usize] += 1;
                }
            }
            r.iter().map(|c| c * c).sum()
        }
        EnergyMethod::Convolution => multiplicative_energy_value(y, z),
    };
    report(EnergyKind::Multiplicative, value, y, z)
}

fn pair_sum(masks: &[BitMask]) -> u64 {
    let mut total = 0u64;
    for a in masks {
        for b in masks {
            total += a.and_count(b) as u64;
        }
    }
    total
}

/// `R[g] = #{(z₁, z₂) ∈ Z*² : log z₁ − log z₂ = g}` over `Z/(p−1)`.
pub(crate) fn log_difference_counts(z: &FSet) -> Vec<u64> {
    let f = z.prime_field();
    let logs: Vec<u64> = z.iter().filter_map(|x| f.dlog(x)).map(u64::from).collect();
    cyclic_rep_counts(logs.iter().copied(), &logs, f.order() as u64, Sign::Minus)
}

/// Convolution route in the exponent group.
///
/// Nonzero products `x z₁ = y z₂` correspond to `log x − log y = log z₂ − log z₁`
/// in `Z/(p−1)`. The remaining solutions have both sides zero; there are
/// `r₀²` of them with `r₀ = |Y||Z| − |Y*||Z*|`.
pub fn multiplicative_energy_value(y: &FSet, z: &FSet) -> u64 {
    let f = y.prime_field();
    let ylogs: Vec<u64> = y.iter().filter_map(|x| f.dlog(x)).map(u64::from).collect();
    let zlogs: Vec<u64> = z.iter().filter_map(|x| f.dlog(x)).map(u64::from).collect();
    let m = f.order() as u64;
    let ry = cyclic_rep_counts(ylogs.iter().copied(), &ylogs, m, Sign::Minus);
    let rz = cyclic_rep_counts(zlogs.iter().copied(), &zlogs, m, Sign::Minus);
    let core: u64 = ry.iter().zip(&rz).map(|(a, b)| a * b).sum();
    let r0 = (y.len() * z.len() - ylogs.len() * zlogs.len()) as u64;
    core + r0 * r0
}

/// `|(x+Z) ∩ (y+Z)|` or `|xZ ∩ yZ|` as sets, with `0·Z = {0}`.
///
/// The additive kind always equals `r_{Z−Z}(x−y)`. The multiplicative kind
/// equals the number of pairs `(z₁, z₂)` with `x z₁ = y z₂` when `x, y ≠ 0`.
pub fn intersection_count(x: Elem, y: Elem, z: &FSet, kind: EnergyKind) -> Result<u64> {
    let f = z.prime_field();
    let x = f.check(x as u64)?;
    let y = f.check(y as u64)?;
    if z.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let count = match kind {
        EnergyKind::Additive => {
            let t = f.sub(x, y);
            z.iter().filter(|&w| z.contains(f.add(w, t))).count()
        }
        EnergyKind::Multiplicative => match (x, y) {
            (0, 0) => 1,
            (0, _) | (_, 0) => z.contains(0) as usize,
            _ => {
                let t = f.mul(x, f.inv(y).expect("nonzero"));
                z.iter().filter(|&w| z.contains(f.mul(w, t))).count()
            }
        },
    };
    Ok(count as u64)
}
