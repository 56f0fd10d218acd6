//! Explicit builders for schemes whose thin residue is `C_p x C_p`, and the
//! validator for thin-by-thin extensions.

mod extension;
mod lc;
mod linear_space;
mod schurian;
mod twisted;

use serde::{Deserialize, Serialize};

pub use extension::{lc_extension_spec, verify_extension_conditions, ExtensionFlags, ExtensionOutcome, ExtensionSpec};
pub use lc::{build_lc_scheme, default_lc, subgroups_order_p, vector_coords, vector_index, LcMaps, LineSubgroup};
pub use linear_space::build_from_linear_space;
pub use schurian::{build_affine_unitriangular, build_field_affine};
pub use twisted::TwistedLayout;

use crate::error::ConstructionError;
use crate::scheme::{check_conditions, ConditionFlags, Scheme};

/// Default cap on the number of points a builder will produce.
pub const DEFAULT_MAX_POINTS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_points: usize,
    /// Lets the field construction run at `p = 2`.
    pub allow_even: bool,
    /// Modulus `[m0, m1, m2]` of `x^3 + m2 x^2 + m1 x + m0` for the field
    /// construction.
    pub modulus: Option<[u64; 3]>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, allow_even: false, modulus: None }
    }
}

impl BuildOptions {
    pub(crate) fn guard(&self, points: usize) -> Result<(), ConstructionError> {
        if points > self.max_points {
            return Err(ConstructionError::TooLarge { points, limit: self.max_points });
        }
        Ok(())
    }
}

/// A built scheme with the values a caller usually wants next to it.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub kind: String,
    pub p: u64,
    pub params: serde_json::Value,
    pub scheme: Scheme,
    pub conditions: ConditionFlags,
    pub delta: usize,
    pub rank: usize,
    pub points: usize,
    /// Human-readable name per relation.
    pub labels: Vec<String>,
    pub layout: Option<TwistedLayout>,
    /// For the linear-space builder: the input point carried by each fibre.
    pub fibre_points: Option<Vec<usize>>,
}

/// Serializable part of a [`ConstructionReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub kind: String,
    pub p: u64,
    pub params: serde_json::Value,
    pub points: usize,
    pub rank: usize,
    pub delta: usize,
    pub conditions: ConditionFlags,
    /// `(valency, count)` pairs in ascending valency.
    pub valencies: Vec<(usize, usize)>,
}

impl ConstructionReport {
    pub(crate) fn new(
        kind: &str,
        p: u64,
        params: serde_json::Value,
        scheme: Scheme,
        labels: Vec<String>,
    ) -> Result<Self, ConstructionError> {
        let conditions = check_conditions(&scheme, p)?;
        let delta = scheme.delta()?;
        Ok(Self {
            kind: kind.to_string(),
            p,
            params,
            conditions,
            delta,
            rank: scheme.rank(),
            points: scheme.order(),
            scheme,
            labels,
            layout: None,
            fibre_points: None,
        })
    }

    pub fn summary(&self) -> ReportSummary {
        let mut valencies: Vec<(usize, usize)> = Vec::new();
        for v in self.scheme.valency_multiset() {
            match valencies.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => valencies.push((v, 1)),
            }
        }
        ReportSummary {
            kind: self.kind.clone(),
            p: self.p,
            params: self.params.clone(),
            points: self.points,
            rank: self.rank,
            delta: self.delta,
            conditions: self.conditions,
            valencies,
        }
    }
}
