//! Sumsets, signed combinations, product sets, ratio sets, dilates and representation functions.
//!
//! Sumsets are computed by OR-ing cyclic rotations of one operand's mask, one
//! rotation per element of the other. Product sets reduce to the same
//! operation in the exponent group `Z/(p-1)` through the discrete-log table.
//! Both have a naive double-loop twin that must agree bit for bit.

use serde::{Deserialize, Serialize};

use crate::bitmask::BitMask;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::fset::FSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    pub fn apply(self, set: &FSet) -> FSet {
        match self {
            Sign::Plus => set.clone(),
            Sign::Minus => set.negate(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumsetMethod {
    Naive,
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMethod {
    Naive,
    Log,
}

fn binary_pre(a: &FSet, b: &FSet) -> Result<()> {
    a.same_field(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(())
}

/// `A + B` or `A - B`.
pub fn sumset(a: &FSet, b: &FSet, sign: Sign) -> Result<FSet> {
    sumset_with(a, b, sign, SumsetMethod::Shift)
}

pub fn sumset_with(a: &FSet, b: &FSet, sign: Sign, method: SumsetMethod) -> Result<FSet> {
    binary_pre(a, b)?;
    Ok(match method {
        SumsetMethod::Naive => sumset_naive(a, b, sign),
        SumsetMethod::Shift => {
            let b = sign.apply(b);
            let (base, shifts) = if a.len() >= b.len() { (a, &b) } else { (&b, a) };
            let mask = cyclic_sum_mask(base.mask(), shifts.iter().map(|x| x as usize));
            FSet::from_mask(a.field(), mask)
        }
    })
}

fn sumset_naive(a: &FSet, b: &FSet, sign: Sign) -> FSet {
    let f = a.prime_field();
    let mut out = BitMask::new(f.p() as usize);
    for x in a.iter() {
        for y in b.iter() {
            let z = match sign {
                Sign::Plus => f.add(x, y),
                Sign::Minus => f.sub(x, y),
            };
            out.set(z as usize);
        }
    }
    FSet::from_mask(a.field(), out)
}

/// OR of `base` rotated by every shift. Width is taken from `base`.
pub(crate) fn cyclic_sum_mask(base: &BitMask, shifts: impl Iterator<Item = usize>) -> BitMask {
    let mut out = BitMask::new(base.width());
    for s in shifts {
        out.or_rotated(base, s);
    }
    out
}

/// `ε₁A₁ + ε₂A₂ + ... + εₖAₖ`, folded left with [`sumset`].
pub fn signed_combination(terms: &[(&FSet, Sign)]) -> Result<FSet> {
    let (first, rest) = terms.split_first().ok_or(Error::EmptyOperand)?;
    if first.0.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut acc = first.1.apply(first.0);
    for (set, sign) in rest {
        acc = sumset(&acc, set, *sign)?;
    }
    Ok(acc)
}

/// `A ⊙ A ⊙ ... ⊙ A` with `k` copies, where the i-th sign is `signs[i]`.
pub fn iterated(a: &FSet, signs: &[Sign]) -> Result<FSet> {
    let terms: Vec<(&FSet, Sign)> = signs.iter().map(|&s| (a, s)).collect();
    signed_combination(&terms)
}

/// `AB`. Zero enters the product iff one operand contains it (the other being nonempty).
pub fn product_set(a: &FSet, b: &FSet) -> Result<FSet> {
    product_set_with(a, b, ProductMethod::Log)
}

pub fn product_set_with(a: &FSet, b: &FSet, method: ProductMethod) -> Result<FSet> {
    binary_pre(a, b)?;
    let f = a.prime_field();
    Ok(match method {
        ProductMethod::Naive => {
            let mut out = BitMask::new(f.p() as usize);
            for x in a.iter() {
                for y in b.iter() {
                    out.set(f.mul(x, y) as usize);
                }
            }
            FSet::from_mask(a.field(), out)
        }
        ProductMethod::Log => {
            let la = log_mask(a);
            let lb = log_mask(b);
            let mut out = BitMask::new(f.p() as usize);
            if !la.is_zero() && !lb.is_zero() {
                let (base, shifts) = if la.count_ones() >= lb.count_ones() {
                    (&la, &lb)
                } else {
                    (&lb, &la)
                };
                let logs = cyclic_sum_mask(base, shifts.iter_ones());
                for k in logs.iter_ones() {
                    out.set(f.exp(k as u32) as usize);
                }
            }
            if a.contains(0) || b.contains(0) {
                out.set(0);
            }
            FSet::from_mask(a.field(), out)
        }
    })
}

/// Discrete logs of the nonzero elements, as a mask of width `p - 1`.
pub(crate) fn log_mask(a: &FSet) -> BitMask {
    let f = a.prime_field();
    let mut m = BitMask::new(f.order() as usize);
    for x in a.iter().filter(|&x| x != 0) {
        m.set(f.dlog(x).expect("nonzero") as usize);
    }
    m
}

/// `(A - A)/(A - A)`: all `(a - b)/(c - d)` with `c != d`. Always contains 0.
pub fn ratio_set(a: &FSet) -> Result<FSet> {
    if a.len() < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            got: a.len(),
        });
    }
    let diffs = sumset(a, a, Sign::Minus)?;
    let denominators = diffs.without(0).inverses();
    product_set(&diffs, &denominators)
}

/// Whether `(A - A)/(A - A)` is a proper subset of the field.
pub fn ratio_set_is_proper(a: &FSet) -> Result<bool> {
    Ok(ratio_set(a)?.len() < a.p() as usize)
}

/// `uA` for `u != 0`.
pub fn dilate(a: &FSet, u: Elem) -> Result<FSet> {
    let u = a.prime_field().check(u as u64)?;
    if u == 0 {
        return Err(Error::ZeroDilation);
    }
    Ok(a.scale(u))
}

/// `r_{A±B}(d) = #{(a, b) : a ± b = d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFn {
    pub p: u32,
    pub sign: Sign,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl RepFn {
    pub fn at(&self, d: Elem) -> u64 {
        self.counts[d as usize]
    }

    /// Support of the representation function, i.e. the sumset.
    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(d, _)| d as Elem)
    }
}

pub fn rep_fn(a: &FSet, b: &FSet, sign: Sign) -> Result<RepFn> {
    binary_pre(a, b)?;
    let bs: Vec<u64> = b.iter().map(|x| x as u64).collect();
    let counts = cyclic_rep_counts(a.iter().map(|x| x as u64), &bs, a.p() as u64, sign);
    Ok(RepFn {
        p: a.p(),
        sign,
        counts,
        total: (a.len() * b.len()) as u64,
    })
}

/// Representation counts of `x ± y` in `Z/modulus`.
pub(crate) fn cyclic_rep_counts(
    xs: impl Iterator<Item = u64>,
    ys: &[u64],
    modulus: u64,
    sign: Sign,
) -> Vec<u64> {
    let m = modulus as usize;
    let mut counts = vec![0u64; m];
    if m == 0 {
        return counts;
    }
    let ys: Vec<u64> = match sign {
        Sign::Plus => ys.to_vec(),
        Sign::Minus => ys.iter().map(|&y| (modulus - y) % modulus).collect(),
    };
    for x in xs {
        for &y in &ys {
            let mut d = x + y;
            if d >= modulus {
                d -= modulus;
            }
            counts[d as usize] += 1;
        }
    }
    counts
}
