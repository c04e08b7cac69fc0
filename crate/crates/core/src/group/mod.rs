//! Finite groups as validated Cayley tables.

mod bitset;
mod iso;
mod script;
mod subgroup;
mod table;

pub(crate) use bitset::BitSet;
pub(crate) use iso::BijectionSearch;
pub use iso::{are_isomorphic, fingerprint, minimal_generating_set, IsoFingerprint};
pub use script::{CayleyScript, MulOracle, Stamp};
pub use subgroup::{
    all_subgroups, center, centralizer, class_sizes, close_generated, commutator_subgroup,
    conjugacy_classes, derived_series, is_simple, normal_closure, normal_subgroups, quotient,
    subgroup_table, DerivedSeries, Subgroup, SUBGROUP_CAP,
};
pub use table::{GroupTable, ASSOC_CHECK_LIMIT, TABLE_CAP};
