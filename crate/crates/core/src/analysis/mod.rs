//! Automorphism groups, schurity and isomorphism of schemes.

mod isomorphism;
mod refine;
mod search;

use serde::{Deserialize, Serialize};

pub use isomorphism::{are_algebraically_isomorphic_with, are_isomorphic_with, IsoWitness};
pub use search::{automorphisms_with, AutomorphismGroup};

use crate::algebra::orbitals;
use crate::error::SearchError;
use crate::scheme::Scheme;

/// Node-count and size limits for the backtracking searches. A node is one
/// individualize-and-refine step or one tentative relation assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_points: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 200_000, max_points: 150 }
    }
}

impl SearchBudget {
    /// Defaults overridden by `ASCHEME_NODE_BUDGET` and `ASCHEME_MAX_POINTS`.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(v) = std::env::var("ASCHEME_NODE_BUDGET").ok().and_then(|v| v.parse().ok()) {
            b.max_nodes = v;
        }
        if let Some(v) = std::env::var("ASCHEME_MAX_POINTS").ok().and_then(|v| v.parse().ok()) {
            b.max_points = v;
        }
        b
    }
}

pub fn automorphisms(s: &Scheme) -> Result<AutomorphismGroup, SearchError> {
    automorphisms_with(s, &SearchBudget::from_env())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurityReport {
    pub schurian: bool,
    pub transitive: bool,
    /// Number of orbits of `Aut(S)` on ordered pairs.
    pub orbitals: usize,
    pub rank: usize,
    pub aut_order: String,
}

/// Schurian iff `Aut(S)` is transitive and has exactly `rank` orbitals; the
/// orbitals always refine the relations, so equal counts mean equal
/// partitions.
pub fn is_schurian_with(s: &Scheme, budget: &SearchBudget) -> Result<SchurityReport, SearchError> {
    let aut = automorphisms_with(s, budget)?;
    let transitive = aut.is_transitive();
    let orbitals = orbitals(s.order(), &aut.generators).rank();
    Ok(SchurityReport {
        schurian: transitive && orbitals == s.rank(),
        transitive,
        orbitals,
        rank: s.rank(),
        aut_order: aut.order.to_string(),
    })
}

pub fn is_schurian(s: &Scheme) -> Result<SchurityReport, SearchError> {
    is_schurian_with(s, &SearchBudget::from_env())
}

pub fn are_isomorphic(a: &Scheme, b: &Scheme) -> Result<Option<IsoWitness>, SearchError> {
    are_isomorphic_with(a, b, &SearchBudget::from_env())
}

pub fn are_algebraically_isomorphic(a: &Scheme, b: &Scheme) -> Result<Option<Vec<usize>>, SearchError> {
    are_algebraically_isomorphic_with(a, b, &SearchBudget::from_env())
}
