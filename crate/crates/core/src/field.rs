//! Prime field context with primitive-root exponent and discrete-log tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Residues are stored as `u32`; every modulus accepted by [`make_field`] fits.
pub type Elem = u32;

/// Largest modulus for which tables are built. Each table costs 4 bytes per residue.
pub const MAX_MODULUS: u64 = 1 << 24;

/// Sentinel stored in the discrete-log table at index 0.
pub const NO_LOG: u32 = u32::MAX;

/// Deterministic trial division. Correct for every `n < 2^63`; intended for desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// The field of residues modulo an odd prime `p`.
///
/// `exp_table[k] = g^k` for `k in 0..p-1` and `dlog_table[g^k] = k`, with
/// [`NO_LOG`] at index 0. Immutable after construction; share it through [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    g: u32,
    exp_table: Vec<u32>,
    dlog_table: Vec<u32>,
}

/// Shared handle to a field. Sets hold one of these.
pub type Field = Arc<PrimeField>;

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeField")
            .field("p", &self.p)
            .field("g", &self.g)
            .finish()
    }
}

/// Build the field `F_p`. `g` is the smallest primitive root.
pub fn make_field(p: u64) -> Result<Field> {
    if p < 3 {
        return Err(Error::ModulusTooSmall(p));
    }
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if p > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    let order = p - 1;
    let factors = distinct_prime_factors(order);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, p) != 1))
        .expect("every prime has a primitive root");

    let n = order as usize;
    let mut exp_table = Vec::with_capacity(n);
    let mut dlog_table = vec![NO_LOG; p as usize];
    let mut x = 1u64;
    for k in 0..n {
        exp_table.push(x as u32);
        dlog_table[x as usize] = k as u32;
        x = x * g % p;
    }
    Ok(Arc::new(PrimeField {
        p: p as u32,
        g: g as u32,
        exp_table,
        dlog_table,
    }))
}

impl PrimeField {
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Order of the multiplicative group, `p - 1`.
    pub fn order(&self) -> u32 {
        self.p - 1
    }

    pub fn generator(&self) -> u32 {
        self.g
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp_table
    }

    pub fn dlog_table(&self) -> &[u32] {
        &self.dlog_table
    }

    #[inline]
    pub fn exp(&self, k: u32) -> Elem {
        self.exp_table[(k % self.order()) as usize]
    }

    /// Discrete log of a nonzero residue; `None` for zero.
    #[inline]
    pub fn dlog(&self, x: Elem) -> Option<u32> {
        match self.dlog_table[x as usize] {
            NO_LOG => None,
            k => Some(k),
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let s = a as u64 + self.p as u64 - b as u64;
        (s % self.p as u64) as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        (a as u64 * b as u64 % self.p as u64) as Elem
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let k = self.dlog(a)?;
        Some(self.exp_table[((self.order() - k) % self.order()) as usize])
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    pub fn reduce(&self, x: i64) -> Elem {
        x.rem_euclid(self.p as i64) as Elem
    }

    pub fn check(&self, x: u64) -> Result<Elem> {
        if x < self.p as u64 {
            Ok(x as Elem)
        } else {
            Err(Error::ElementOutOfRange { elem: x, p: self.p })
        }
    }
}
