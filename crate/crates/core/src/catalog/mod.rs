//! Group constructors, file formats and order censuses.

mod census;
mod constructors;
mod field;
mod format;
mod spec;

pub use census::{
    bundled_census, bundled_tiers, census, load_census_dir, CensusEntry, CensusTier, Provenance,
    BUNDLED_ORDERS,
};
pub use constructors::{abelian, alt, cyclic, dicyclic, dihedral, pgl2, product, psl2, sl2, sym};
pub(crate) use constructors::all_perms;
pub use field::SmallField;
pub use format::{parse_group_file, serialize};
pub use spec::{build, Action, GroupSpec};
