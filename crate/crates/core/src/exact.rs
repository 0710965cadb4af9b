//! Exact nonnegative rationals over `BigUint`, compared by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

pub fn pow(base: impl Into<BigUint>, e: u32) -> BigUint {
    num_traits::pow::pow(base.into(), e as usize)
}

/// `num / den` with `den > 0`. Not reduced unless [`Frac::reduced`] is called.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: BigUint,
    pub den: BigUint,
}

impl Frac {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Frac {
            num: num.into(),
            den,
        }
    }

    pub fn int(x: impl Into<BigUint>) -> Self {
        Frac::new(x, 1u32)
    }

    pub fn reduced(&self) -> Frac {
        let g = self.num.gcd(&self.den);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Frac {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    /// `self / other`, with `other > 0`.
    pub fn div(&self, other: &Frac) -> Frac {
        Frac::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn is_positive(&self) -> bool {
        !self.num.is_zero()
    }

    /// Approximate value; saturates to infinity only when the true value exceeds `f64`.
    pub fn to_f64(&self) -> f64 {
        fn top(x: &BigUint) -> (f64, i64) {
            let bits = x.bits() as i64;
            let shift = (bits - 64).max(0);
            ((x >> shift as u64).to_f64().unwrap_or(0.0), shift)
        }
        let (n, en) = top(&self.num);
        let (d, ed) = top(&self.den);
        (n / d) * 2f64.powi((en - ed).clamp(-2000, 2000) as i32)
    }

    /// Decimal rendering with six significant digits, computed exactly (truncated).
    pub fn to_sci(&self) -> String {
        if self.num.is_zero() {
            return "0".to_string();
        }
        let ten = BigUint::from(10u32);
        let mut e = self.num.to_string().len() as i64 - self.den.to_string().len() as i64;
        let scaled = |e: i64| -> BigUint {
            // floor(num / den * 10^(5 - e))
            let k = 5 - e;
            if k >= 0 {
                (&self.num * pow(ten.clone(), k as u32)) / &self.den
            } else {
                &self.num / (&self.den * pow(ten.clone(), (-k) as u32))
            }
        };
        let mut m = scaled(e);
        let lo = BigUint::from(100_000u32);
        let hi = BigUint::from(1_000_000u32);
        while m < lo {
            e -= 1;
            m = scaled(e);
        }
        while m >= hi {
            e += 1;
            m = scaled(e);
        }
        let digits = m.to_string();
        format!("{}.{}e{}", &digits[..1], &digits[1..], e)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Decimal string, so arbitrarily large integers survive JSON round trips.
pub fn serialize_big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serializes as `num/den` in lowest terms.
impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.reduced().to_string())
    }
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}
