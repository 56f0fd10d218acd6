//! Finite groups, permutation actions and the small fields the builders need.

mod action;
mod affine;
mod field;
mod group;
mod prime;

pub use action::{coset_action, orbit_under, orbital_scheme, orbitals, CosetAction, GroupAction};
pub use affine::{field_affine_group, unitriangular_affine_group, AffineMapP3, AffineMapVec3};
pub use field::{cubic_is_irreducible, default_modulus, FieldElementP3, GfP3};
pub use group::{make_group, FiniteGroup, GroupDescriptor, GroupKind};
pub use prime::{is_prime, prime_divisors};
