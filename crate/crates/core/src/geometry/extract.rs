use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::IncidenceStructure;
use crate::algebra::is_prime;
use crate::error::GeometryError;
use crate::scheme::Scheme;

/// The stabilizers behind an extracted incidence structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineStabilizerMap {
    pub p: u64,
    /// Members of the thin residue `T`.
    pub residue: Vec<usize>,
    /// Point classes of `T`, ordered by least point.
    pub cosets: Vec<Vec<usize>>,
    /// `relation[s] = L(s) = { t in T | ts = s }`.
    pub relation: Vec<Vec<usize>>,
    /// `pair[i][j]`: the common `L(s)` of relations meeting `X_i x X_j`.
    pub pair: Vec<Vec<Vec<usize>>>,
    /// Ordered pairs `(i, j)` with `pair[i][j] != pair[j][i]`.
    pub asymmetric: Vec<(usize, usize)>,
    /// `(i, M, line)`: the line index that `L_i(M)` became after
    /// deduplication.
    pub lines_by_origin: Vec<(usize, Vec<usize>, usize)>,
}

/// Points are the residue classes; for every class `i` and every order-`p`
/// subgroup `M` of the residue, `{i} U { j | L_ij = M }` is a line when it has
/// at least two points.
pub fn extract_incidence(s: &Scheme) -> Result<(IncidenceStructure, LineStabilizerMap), GeometryError> {
    let t = s.thin_residue();
    let members = t.members().to_vec();
    let size = members.len() as u64;
    let p = (1..=size).find(|&q| q * q >= size).unwrap_or(1);
    if p * p != size || !is_prime(p) {
        return Err(GeometryError::ResidueShape(format!("|T| = {size} is not a prime square")));
    }
    if !t.is_thin() {
        return Err(GeometryError::ResidueShape("T is not thin".into()));
    }
    let one = s.identity();
    for &x in &members {
        let mut acc = one;
        for _ in 0..p {
            acc = s.thin_product(acc, x);
        }
        if acc != one {
            return Err(GeometryError::ResidueShape(format!("relation {x} has order other than 1 or p")));
        }
    }

    let relation: Vec<Vec<usize>> =
        (0..s.rank()).map(|r| members.iter().copied().filter(|&m| s.product_of(m, r) == [r]).collect()).collect();
    let cosets = s.cosets(&t)?;
    let m = cosets.len();
    let mut pair = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut seen: Option<&Vec<usize>> = None;
            for &x in &cosets[i] {
                for &y in &cosets[j] {
                    let l = &relation[s.relation(x, y)];
                    match seen {
                        None => seen = Some(l),
                        Some(prev) if prev != l => {
                            return Err(GeometryError::Inconsistent(format!(
                                "relations between classes {i} and {j} have different stabilizers"
                            )));
                        }
                        _ => {}
                    }
                }
            }
            pair[i][j] = seen.cloned().unwrap_or_default();
        }
    }
    let asymmetric: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| pair[i][j] != pair[j][i]).collect();

    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut lines = Vec::new();
    let mut lines_by_origin = Vec::new();
    for i in 0..m {
        let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
        for j in 0..m {
            if j != i && pair[i][j].len() as u64 == p {
                groups.entry(&pair[i][j]).or_default().push(j);
            }
        }
        for (sub, mut pts) in groups {
            pts.push(i);
            pts.sort_unstable();
            let next = lines.len();
            let k = *index.entry(pts.clone()).or_insert(next);
            if k == next {
                lines.push(pts);
            }
            lines_by_origin.push((i, sub.clone(), k));
        }
    }
    // Lines in lexicographic order.
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&a, &b| lines[a].cmp(&lines[b]));
    let mut rank = vec![0usize; lines.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    for entry in &mut lines_by_origin {
        entry.2 = rank[entry.2];
    }
    lines.sort();
    let structure = IncidenceStructure::new(m, lines)?;
    Ok((structure, LineStabilizerMap { p, residue: members, cosets, relation, pair, asymmetric, lines_by_origin }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::constructions::{build_affine_unitriangular, build_lc_scheme, BuildOptions};
    use crate::geometry::incidence_isomorphic;

    #[test]
    fn twisted_scheme_gives_a_triangle() {
        let r = build_lc_scheme(2, &FiniteGroup::cyclic(3), None, &BuildOptions::default()).unwrap();
        let (i, map) = extract_incidence(&r.scheme).unwrap();
        assert_eq!(i.lines(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        // L_01 = L_a while L_10 = L_{a^-1}: the stabilizers are not symmetric.
        assert_eq!(map.asymmetric.len(), 6);
        assert!(incidence_isomorphic(&i, &IncidenceStructure::triangle()).is_some());
    }

    #[test]
    fn unitriangular_scheme_has_four_points() {
        let r = build_affine_unitriangular(2, &BuildOptions::default()).unwrap();
        let (i, _) = extract_incidence(&r.scheme).unwrap();
        assert_eq!(i.points(), 4);
        let c = i.classify();
        assert!(c.is_partial_linear);
        assert!(c.max_lines_per_point <= 3);
    }

    #[test]
    fn wrong_residue_shape() {
        let s = Scheme::thin_from_group(&FiniteGroup::cyclic(4));
        // Thin schemes have trivial residue.
        assert!(matches!(extract_incidence(&s), Err(GeometryError::ResidueShape(_))));
    }
}
