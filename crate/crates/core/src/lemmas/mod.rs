//! Constructive covering, subset, witness and decomposition lemmas.
//!
//! Every routine returns a certificate whose defining inequality can be
//! rechecked exactly from the returned data.

mod chang;
mod cover;
mod plunnecke;
mod subset;
mod witness;

pub use chang::{
    bucket_index, chang_decompose, select_j0, BucketDecomposition, J0Choice, CHANG_CONSTANT_INV,
};
pub use cover::{cover_budget, greedy_cover, union_of_translates, CoverResult};
pub use plunnecke::{mixed_plunnecke, plunnecke_audit, IntCheck, PlunneckeAudit};
pub use subset::{
    descent_subset, katz_shen_subset, katz_shen_subset_guarded, min_subset_card, SubsetResult,
};
pub use witness::{
    gk_witness, gk_witness_guarded, witness_expr, xi_search, GkWitness, WitnessVariant, XiResult,
};
