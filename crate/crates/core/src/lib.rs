//! Association schemes whose thin residue is elementary abelian of rank two:
//! verification, closed-subset algebra, constructions, automorphism and
//! isomorphism search, and the incidence geometry attached to such schemes.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod scheme;

pub use error::{
    AlgebraError, ConstructionError, GeometryError, IoError, SchemeError, SearchError, TableError, VerifyError,
};
pub use scheme::{check_conditions, verify_scheme, ConditionFlags, RelationSubset, RelationTable, Scheme, Violation};
