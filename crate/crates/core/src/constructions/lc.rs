use serde::{Deserialize, Serialize};

use super::twisted::{assemble, Twist};
use super::{BuildOptions, ConstructionReport};
use crate::algebra::{is_prime, FiniteGroup};
use crate::error::ConstructionError;

/// Vectors of `V = F_p^2` are indexed `v0 + v1 p`.
pub fn vector_index(p: u64, v: [u64; 2]) -> usize {
    ((v[0] % p) + (v[1] % p) * p) as usize
}

pub fn vector_coords(p: u64, i: usize) -> [u64; 2] {
    let i = i as u64;
    [i % p, i / p]
}

/// An order-`p` subgroup of `F_p^2`, given by its canonical generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSubgroup {
    pub generator: [u64; 2],
}

impl LineSubgroup {
    /// Elements `k * generator` for `k = 0..p`, as vector indices.
    pub fn elements(&self, p: u64) -> Vec<usize> {
        (0..p).map(|k| vector_index(p, [k * self.generator[0], k * self.generator[1]])).collect()
    }
}

/// The `p + 1` order-`p` subgroups of `F_p^2`: `<(0,1)>`, then `<(1,k)>` for
/// `k = 0..p`.
pub fn subgroups_order_p(p: u64) -> Result<Vec<LineSubgroup>, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::NotPrime(p));
    }
    Ok(std::iter::once([0, 1]).chain((0..p).map(|k| [1, k])).map(|generator| LineSubgroup { generator }).collect())
}

/// Subgroup choices for the twisted construction. Entry `i` of `l` and `c`
/// belongs to the `i`-th non-identity element of the group (ascending
/// element index) and holds an index into [`subgroups_order_p`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcMaps {
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<usize>,
}

/// Non-identity elements in ascending order.
pub(crate) fn non_identity(group: &FiniteGroup) -> Vec<usize> {
    (0..group.order()).filter(|&g| g != group.identity()).collect()
}

impl LcMaps {
    /// Checks lengths, ranges, injectivity of `l`, `c[a] != l[a]` and
    /// `c[a] == c[a^-1]`.
    pub fn validate(&self, p: u64, group: &FiniteGroup) -> Result<(), ConstructionError> {
        let bad = |m: String| Err(ConstructionError::InvalidMaps(m));
        let elems = non_identity(group);
        if self.l.len() != elems.len() || self.c.len() != elems.len() {
            return bad(format!("expected {} entries in each map", elems.len()));
        }
        let count = p as usize + 1;
        if let Some(&i) = self.l.iter().chain(&self.c).find(|&&i| i >= count) {
            return bad(format!("subgroup index {i} out of range 0..{count}"));
        }
        let mut used = vec![false; count];
        for (k, &i) in self.l.iter().enumerate() {
            if std::mem::replace(&mut used[i], true) {
                return bad(format!("L is not injective (element {} reuses subgroup {i})", elems[k]));
            }
        }
        let ordinal = |g: usize| elems.iter().position(|&e| e == g).expect("non-identity");
        for (k, &a) in elems.iter().enumerate() {
            if self.c[k] == self.l[k] {
                return bad(format!("C equals L at element {a}"));
            }
            let inv = ordinal(group.inv(a));
            if self.c[k] != self.c[inv] {
                return bad(format!("C differs on element {a} and its inverse"));
            }
        }
        Ok(())
    }
}

/// `L` sends the i-th non-identity element to the i-th canonical subgroup;
/// `C` walks inverse pairs in ascending order and takes the lowest subgroup
/// outside `{L[a], L[a^-1]}`.
pub fn default_lc(p: u64, group: &FiniteGroup) -> Result<LcMaps, ConstructionError> {
    let subgroups = subgroups_order_p(p)?;
    let delta = group.order();
    let max = p as usize + 2;
    if !(3..=max).contains(&delta) {
        return Err(ConstructionError::DeltaOutOfRange { delta, p, min: 3, max });
    }
    let elems = non_identity(group);
    let l: Vec<usize> = (0..elems.len()).collect();
    let mut c = vec![usize::MAX; elems.len()];
    for (k, &a) in elems.iter().enumerate() {
        if c[k] != usize::MAX {
            continue;
        }
        let j = elems.iter().position(|&e| e == group.inv(a)).expect("non-identity");
        let pick =
            (0..subgroups.len()).find(|&i| i != l[k] && i != l[j]).ok_or(ConstructionError::NoCentralSubgroup)?;
        c[k] = pick;
        c[j] = pick;
    }
    let maps = LcMaps { l, c };
    maps.validate(p, group)?;
    Ok(maps)
}

/// The twisted scheme on `F_p^2 x G` for `3 <= |G| <= p + 2`. Same-fibre pairs
/// form the thin residue; pairs between fibres `b` and `c` with `b^-1 c = a`
/// fall into the `p` translates of
/// `U_{x in C[a]} (L[a] + x) x (L[a^-1] + x)`. Maps default to
/// [`default_lc`].
pub fn build_lc_scheme(
    p: u64,
    group: &FiniteGroup,
    maps: Option<&LcMaps>,
    opts: &BuildOptions,
) -> Result<ConstructionReport, ConstructionError> {
    let subgroups = subgroups_order_p(p)?;
    let delta = group.order();
    let max = p as usize + 2;
    if !(3..=max).contains(&delta) {
        return Err(ConstructionError::DeltaOutOfRange { delta, p, min: 3, max });
    }
    opts.guard(delta * (p * p) as usize)?;
    let maps = match maps {
        Some(m) => {
            m.validate(p, group)?;
            m.clone()
        }
        None => default_lc(p, group)?,
    };
    let elems = non_identity(group);
    let mut twists = vec![None; delta];
    for (k, &a) in elems.iter().enumerate() {
        let inv = elems.iter().position(|&e| e == group.inv(a)).expect("non-identity");
        twists[a] =
            Some(Twist { first: subgroups[maps.l[k]], second: subgroups[maps.l[inv]], central: subgroups[maps.c[k]] });
    }
    let (scheme, layout, labels) = assemble(p, group, &twists)?;
    let params = serde_json::json!({ "delta": delta, "lc": maps });
    let mut report = ConstructionReport::new("thm34", p, params, scheme, labels)?;
    report.layout = Some(layout);
    Ok(report)
}
