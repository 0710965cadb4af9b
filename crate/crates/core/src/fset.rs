//! Subsets of a prime field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::bitmask::BitMask;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, PrimeField};

/// A subset of `F_p` stored as a `p`-bit membership mask with cached cardinality.
///
/// Ordering compares the ascending element sequences lexicographically, so
/// `{1, 2} < {1, 3} < {2}`. Sets over different fields order by `p` first.
#[derive(Clone)]
pub struct FSet {
    field: Field,
    mask: BitMask,
    card: usize,
}

impl FSet {
    pub fn empty(field: &Field) -> Self {
        FSet {
            field: Arc::clone(field),
            mask: BitMask::new(field.p() as usize),
            card: 0,
        }
    }

    pub fn full(field: &Field) -> Self {
        FSet {
            field: Arc::clone(field),
            mask: BitMask::full(field.p() as usize),
            card: field.p() as usize,
        }
    }

    /// Build from residues in `[0, p)`; duplicates collapse.
    pub fn new<I>(field: &Field, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut mask = BitMask::new(field.p() as usize);
        for x in elems {
            mask.set(field.check(x)? as usize);
        }
        Ok(Self::from_mask(field, mask))
    }

    /// Build from residues already known to be reduced.
    pub fn from_elems<I>(field: &Field, elems: I) -> Self
    where
        I: IntoIterator<Item = Elem>,
    {
        let mut mask = BitMask::new(field.p() as usize);
        for x in elems {
            assert!(x < field.p(), "residue {x} out of range");
            mask.set(x as usize);
        }
        Self::from_mask(field, mask)
    }

    pub fn from_mask(field: &Field, mask: BitMask) -> Self {
        assert_eq!(mask.width(), field.p() as usize);
        let card = mask.count_ones();
        FSet {
            field: Arc::clone(field),
            mask,
            card,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn mask(&self) -> &BitMask {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.test(x as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.iter_ones().map(|i| i as Elem)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn same_field(&self, other: &FSet) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.p() == other.field.p() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.p(),
                right: other.p(),
            })
        }
    }

    pub fn is_subset(&self, other: &FSet) -> bool {
        self.p() == other.p() && self.mask.and_count(&other.mask) == self.card
    }

    pub fn union(&self, other: &FSet) -> FSet {
        let mut m = self.mask.clone();
        m.or_assign(&other.mask);
        FSet::from_mask(&self.field, m)
    }

    pub fn intersection(&self, other: &FSet) -> FSet {
        let mut m = self.mask.clone();
        m.and_assign(&other.mask);
        FSet::from_mask(&self.field, m)
    }

    pub fn intersection_len(&self, other: &FSet) -> usize {
        self.mask.and_count(&other.mask)
    }

    pub fn difference(&self, other: &FSet) -> FSet {
        let mut m = self.mask.clone();
        m.and_not_assign(&other.mask);
        FSet::from_mask(&self.field, m)
    }

    pub fn with(&self, x: Elem) -> FSet {
        let mut m = self.mask.clone();
        m.set(x as usize);
        FSet::from_mask(&self.field, m)
    }

    pub fn without(&self, x: Elem) -> FSet {
        let mut m = self.mask.clone();
        m.clear(x as usize);
        FSet::from_mask(&self.field, m)
    }

    /// `{-a : a in A}`.
    pub fn negate(&self) -> FSet {
        let f = &self.field;
        FSet::from_elems(f, self.iter().map(|a| f.neg(a)))
    }

    /// `{t + a : a in A}`.
    pub fn translate(&self, t: Elem) -> FSet {
        let mut m = BitMask::new(self.p() as usize);
        m.or_rotated(&self.mask, t as usize);
        FSet {
            field: Arc::clone(&self.field),
            mask: m,
            card: self.card,
        }
    }

    /// `{u * a : a in A}`; `u = 0` gives `{0}` for nonempty `A`.
    pub fn scale(&self, u: Elem) -> FSet {
        let f = &self.field;
        FSet::from_elems(f, self.iter().map(|a| f.mul(u, a)))
    }

    /// `{a^{-1} : a in A, a != 0}`.
    pub fn inverses(&self) -> FSet {
        let f = &self.field;
        FSet::from_elems(f, self.iter().filter_map(|a| f.inv(a)))
    }

    pub(crate) fn prime_field(&self) -> &PrimeField {
        &self.field
    }
}

impl PartialEq for FSet {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.mask == other.mask
    }
}

impl Eq for FSet {}

impl std::hash::Hash for FSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.mask.hash(state);
    }
}

impl Ord for FSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p()
            .cmp(&other.p())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for FSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p())?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for FSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Serializes as the ascending element list.
impl Serialize for FSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn card_tracks_mask() {
        let f = make_field(13).unwrap();
        let a = FSet::new(&f, [1, 5, 5, 12, 0]).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.to_vec(), vec![0, 1, 5, 12]);
        assert_eq!(a.without(5).len(), 3);
        assert_eq!(a.with(5).len(), 4);
        assert!(FSet::new(&f, [13]).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let f = make_field(7).unwrap();
        let s = |v: &[u32]| FSet::from_elems(&f, v.iter().copied());
        assert!(s(&[1, 2]) < s(&[1, 3]));
        assert!(s(&[1, 3]) < s(&[2]));
        assert!(s(&[0, 6]) < s(&[1]));
        assert!(s(&[1]) < s(&[1, 2]));
    }

    #[test]
    fn translate_and_scale() {
        let f = make_field(7).unwrap();
        let a = FSet::from_elems(&f, [1, 2, 6]);
        assert_eq!(a.translate(3).to_vec(), vec![2, 4, 5]);
        assert_eq!(a.scale(3).to_vec(), vec![3, 4, 6]);
        assert_eq!(a.scale(0).to_vec(), vec![0]);
        assert_eq!(a.negate().to_vec(), vec![1, 5, 6]);
        assert_eq!(a.inverses().to_vec(), vec![1, 4, 6]);
    }
}
