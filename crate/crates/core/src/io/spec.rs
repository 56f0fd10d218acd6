use serde::{Deserialize, Serialize};

use crate::algebra::{make_group, FiniteGroup, GroupAction, GroupKind};
use crate::constructions::{
    build_affine_unitriangular, build_field_affine, build_from_linear_space, build_lc_scheme,
    verify_extension_conditions, BuildOptions, ConstructionReport, ExtensionSpec, LcMaps, DEFAULT_MAX_POINTS,
};
use crate::error::{ConstructionError, IoError};
use crate::geometry::IncidenceStructure;

/// JSON request for one of the builders. `kind` is one of `thm34`, `sec41`,
/// `sec42`, `thm51` or `extension`; fields a kind does not use are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionSpec {
    pub kind: String,
    #[serde(default)]
    pub p: Option<u64>,
    /// Order of the cyclic default group for `thm34`.
    #[serde(default)]
    pub delta: Option<usize>,
    #[serde(default)]
    pub group: Option<GroupKind>,
    #[serde(default)]
    pub lc: Option<LcMaps>,
    #[serde(default)]
    pub space: Option<IncidenceStructure>,
    /// `action[g][x]`: image of point `x` under element `g`. Without it a
    /// cyclic group acts on the space by translation.
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub modulus: Option<[u64; 3]>,
    #[serde(default)]
    pub allow_even: bool,
    #[serde(default)]
    pub extension: Option<ExtensionSpec>,
    #[serde(default)]
    pub max_points: Option<usize>,
}

fn missing(kind: &str, field: &str) -> IoError {
    IoError::Unsupported(format!("kind {kind} needs `{field}`"))
}

impl ConstructionSpec {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    fn options(&self) -> BuildOptions {
        BuildOptions {
            max_points: self.max_points.unwrap_or(DEFAULT_MAX_POINTS),
            allow_even: self.allow_even,
            modulus: self.modulus,
        }
    }

    fn prime(&self) -> Result<u64, IoError> {
        self.p.ok_or_else(|| missing(&self.kind, "p"))
    }

    fn group_or(&self, fallback: Option<usize>) -> Result<FiniteGroup, IoError> {
        let kind = match (&self.group, fallback) {
            (Some(k), _) => k.clone(),
            (None, Some(n)) => GroupKind::Cyclic(n),
            (None, None) => return Err(missing(&self.kind, "group")),
        };
        make_group(&kind).map_err(|e| IoError::Construction(e.into()))
    }
}

/// Translation action of `C_n` on `0..n`.
pub fn translation_action(n: usize) -> Result<GroupAction, ConstructionError> {
    let perms = (0..n).map(|g| (0..n).map(|x| (x + g) % n).collect()).collect();
    Ok(GroupAction::new(FiniteGroup::cyclic(n), perms)?)
}

/// Runs the builder named by `spec.kind`.
pub fn build(spec: &ConstructionSpec) -> Result<ConstructionReport, IoError> {
    let opts = spec.options();
    let report = match spec.kind.as_str() {
        "thm34" => {
            let g = spec.group_or(spec.delta)?;
            if let Some(d) = spec.delta {
                if d != g.order() {
                    return Err(IoError::Unsupported(format!("delta {d} but the group has order {}", g.order())));
                }
            }
            build_lc_scheme(spec.prime()?, &g, spec.lc.as_ref(), &opts)?
        }
        "sec41" => build_affine_unitriangular(spec.prime()?, &opts)?,
        "sec42" => build_field_affine(spec.prime()?, &opts)?,
        "thm51" => {
            let space = spec.space.as_ref().ok_or_else(|| missing("thm51", "space"))?;
            let action = match &spec.action {
                Some(perms) => {
                    let g = spec.group_or(None)?;
                    GroupAction::new(g, perms.clone()).map_err(ConstructionError::from)?
                }
                None => {
                    if let Some(k) = &spec.group {
                        if *k != GroupKind::Cyclic(space.points()) {
                            return Err(missing("thm51", "action"));
                        }
                    }
                    translation_action(space.points())?
                }
            };
            build_from_linear_space(space, &action, spec.prime()?, &opts)?
        }
        "extension" => {
            let ext = spec.extension.as_ref().ok_or_else(|| missing("extension", "extension"))?;
            let outcome = verify_extension_conditions(ext)?;
            let Some(scheme) = outcome.scheme else {
                return Err(ConstructionError::Extension(outcome.witnesses.join("; ")).into());
            };
            let params = serde_json::json!({ "normal": ext.normal, "relations": ext.relations.len() });
            let labels = (0..scheme.rank()).map(|s| format!("s{s}")).collect();
            ConstructionReport::new("extension", spec.prime()?, params, scheme, labels)?
        }
        other => return Err(IoError::Unsupported(format!("unknown construction kind {other:?}"))),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_dispatch() {
        let spec = ConstructionSpec::from_json(r#"{"kind": "thm34", "p": 2, "delta": 3}"#).unwrap();
        let r = build(&spec).unwrap();
        assert_eq!((r.points, r.rank, r.delta), (12, 8, 3));

        let spec = ConstructionSpec::from_json(
            r#"{"kind": "thm51", "p": 2, "space": {"points": 3, "lines": [[0,1],[0,2],[1,2]]}}"#,
        )
        .unwrap();
        assert_eq!(build(&spec).unwrap().points, 12);
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(ConstructionSpec::from_json(r#"{"kind": "thm34", "q": 2}"#).is_err());
        let spec = ConstructionSpec { kind: "thm34".into(), delta: Some(3), ..Default::default() };
        assert!(matches!(build(&spec), Err(IoError::Unsupported(_))));
        let spec = ConstructionSpec { kind: "sec42".into(), p: Some(2), ..Default::default() };
        assert!(matches!(build(&spec), Err(IoError::Construction(ConstructionError::EvenPrime))));
        let spec = ConstructionSpec { kind: "nope".into(), ..Default::default() };
        assert!(build(&spec).is_err());
    }
}
