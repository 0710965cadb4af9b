//! Exact additive combinatorics over prime fields.
//!
//! Sets are `p`-bit masks ([`FSet`]); sumsets and product sets are exact, and
//! every quantity that feeds an inequality is an integer or a [`Frac`]. On top
//! of the set arithmetic sit constructive covering/decomposition lemmas
//! ([`lemmas`]), executable sum-product proof chains ([`chains`]) and an
//! extremal-set searcher ([`search`]).

pub mod bitmask;
pub mod chains;
pub mod combin;
pub mod energy;
pub mod error;
pub mod exact;
pub mod field;
pub mod fset;
pub mod guards;
pub mod lemmas;
pub mod ops;
pub mod search;

pub use energy::{
    additive_energy, intersection_count, multiplicative_energy, EnergyKind, EnergyMethod,
    EnergyReport,
};
pub use error::{Error, Result};
pub use exact::Frac;
pub use field::{is_prime, make_field, Elem, Field, PrimeField};
pub use fset::FSet;
pub use guards::Guards;
pub use ops::{
    dilate, iterated, product_set, product_set_with, ratio_set, rep_fn, signed_combination, sumset,
    sumset_with, ProductMethod, RepFn, Sign, SumsetMethod,
};
