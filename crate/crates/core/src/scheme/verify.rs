use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{count_pair, IntersectionTensor, RelationTable, Scheme, Violation};
use crate::error::VerifyError;

/// How axiom (iii) is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Parallel per-pair recount against one representative per relation;
    /// stops at the first non-constant intersection number.
    #[default]
    Fast,
    /// Sequential recount of every ordered pair; reports one witness for
    /// every non-constant `(s, t, u)` triple.
    Full,
}

/// Checks the scheme axioms in [`VerifyMode::Fast`].
pub fn verify_scheme(table: &RelationTable) -> Result<Scheme, VerifyError> {
    verify_scheme_with(table, VerifyMode::Fast)
}

pub fn verify_scheme_with(table: &RelationTable, mode: VerifyMode) -> Result<Scheme, VerifyError> {
    let n = table.points();
    let r = table.rank();
    let mut violations = Vec::new();

    // (i)
    let identity = table.get(0, 0);
    for x in 1..n {
        let d = table.get(x, x);
        if d != identity {
            violations.push(Violation::DiagonalSplit { x, relation: d, expected: identity });
        }
    }
    'diag: for x in 0..n {
        for y in 0..n {
            if x != y && table.get(x, y) == identity {
                violations.push(Violation::DiagonalOffPair { x, y, relation: identity });
                break 'diag;
            }
        }
    }

    // (ii): every relation's transpose must land inside one relation, and the
    // induced map must be an involution.
    let mut star = vec![usize::MAX; r];
    let mut bad_transpose = vec![false; r];
    for x in 0..n {
        for y in 0..n {
            let s = table.get(x, y);
            let back = table.get(y, x);
            if star[s] == usize::MAX {
                star[s] = back;
            } else if star[s] != back && !bad_transpose[s] {
                bad_transpose[s] = true;
                violations.push(Violation::Transpose { relation: s, x, y, found: back, expected: star[s] });
            }
        }
    }
    for s in 0..r {
        if !bad_transpose[s] && !bad_transpose[star[s]] && star[star[s]] != s {
            let (x, y) = super::first_pairs(table)[s];
            violations.push(Violation::Transpose { relation: s, x, y, found: star[s], expected: s });
        }
    }

    // (iii)
    let (tensor, reps) = IntersectionTensor::from_representatives(table);
    match mode {
        VerifyMode::Fast => {
            if let Some(v) = first_non_constant(table, &tensor, &reps) {
                violations.push(v);
            }
        }
        VerifyMode::Full => violations.extend(all_non_constant(table, &tensor, &reps)),
    }

    if !violations.is_empty() {
        return Err(VerifyError::Axioms(violations));
    }
    let valency = (0..r).map(|s| tensor.get(s, star[s], identity) as usize).collect();
    Ok(Scheme { table: table.clone(), identity, star, valency, tensor })
}

/// Compares the `(s, t)` profile of pair `(x, y)` against the representative
/// of its relation. `scratch` must be zero on entry and is zero on exit.
fn compare_pair(
    table: &RelationTable,
    tensor: &IntersectionTensor,
    x: usize,
    y: usize,
    scratch: &mut [u32],
    touched: &mut Vec<usize>,
    mut on_mismatch: impl FnMut(usize, usize, u32),
) {
    let r = table.rank();
    let u = table.get(x, y);
    count_pair(table, x, y, |s, t| {
        let k = s * r + t;
        if scratch[k] == 0 {
            touched.push(k);
        }
        scratch[k] += 1;
    });
    // Both profiles sum to n, so agreement on the touched keys is agreement
    // everywhere.
    for &k in touched.iter() {
        let here = scratch[k];
        let there = tensor.get(k / r, k % r, u);
        if here != there {
            on_mismatch(k / r, k % r, here);
        }
        scratch[k] = 0;
    }
    touched.clear();
}

fn first_non_constant(
    table: &RelationTable,
    tensor: &IntersectionTensor,
    reps: &[(usize, usize)],
) -> Option<Violation> {
    let n = table.points();
    let r = table.rank();
    (0..n).into_par_iter().find_map_first(|x| {
        let mut scratch = vec![0u32; r * r];
        let mut touched = Vec::with_capacity(n);
        for y in 0..n {
            let mut found = None;
            compare_pair(table, tensor, x, y, &mut scratch, &mut touched, |s, t, here| {
                if found.is_none() {
                    found = Some((s, t, here));
                }
            });
            if let Some((s, t, here)) = found {
                let u = table.get(x, y);
                return Some(Violation::NonConstant {
                    s,
                    t,
                    u,
                    first: reps[u],
                    first_count: tensor.get(s, t, u),
                    second: (x, y),
                    second_count: here,
                });
            }
        }
        None
    })
}

fn all_non_constant(table: &RelationTable, tensor: &IntersectionTensor, reps: &[(usize, usize)]) -> Vec<Violation> {
    let n = table.points();
    let r = table.rank();
    let mut scratch = vec![0u32; r * r];
    let mut touched = Vec::with_capacity(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let u = table.get(x, y);
            let mut bad = Vec::new();
            compare_pair(table, tensor, x, y, &mut scratch, &mut touched, |s, t, here| bad.push((s, t, here)));
            // Full recount for per-triple witnesses.
            if !bad.is_empty() {
                let mut here = vec![0u32; r * r];
                count_pair(table, x, y, |s, t| here[s * r + t] += 1);
                for s in 0..r {
                    for t in 0..r {
                        let there = tensor.get(s, t, u);
                        if here[s * r + t] != there && seen.insert((s, t, u)) {
                            out.push(Violation::NonConstant {
                                s,
                                t,
                                u,
                                first: reps[u],
                                first_count: there,
                                second: (x, y),
                                second_count: here[s * r + t],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[&[usize]]) -> RelationTable {
        RelationTable::from_rows(rows).unwrap()
    }

    #[test]
    fn thin_c2() {
        let s = verify_scheme(&table(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.valencies(), &[1, 1]);
    }

    #[test]
    fn complete_on_three_points() {
        let s = verify_scheme(&table(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(s.valency(1), 2);
        assert_eq!(s.c(1, 1, 1), 1);
    }

    #[test]
    fn one_point_scheme() {
        let s = verify_scheme(&table(&[&[0]])).unwrap();
        assert_eq!((s.order(), s.rank(), s.valency(0)), (1, 1, 1));
    }

    #[test]
    fn transpose_violation_is_reported() {
        // relation 1 = {(0,1),(1,0),(0,2)}
        let t = table(&[&[0, 1, 1], &[1, 0, 2], &[2, 2, 0]]);
        for mode in [VerifyMode::Fast, VerifyMode::Full] {
            let err = verify_scheme_with(&t, mode).unwrap_err();
            assert!(err.violations().iter().any(|v| matches!(v, Violation::Transpose { relation: 1, .. })));
        }
    }

    #[test]
    fn split_diagonal_is_reported() {
        let err = verify_scheme(&table(&[&[0, 1], &[0, 1]])).unwrap_err();
        assert!(err.violations().iter().any(|v| matches!(v, Violation::DiagonalSplit { .. })));
    }

    #[test]
    fn non_constant_intersection_numbers() {
        // Path 0-1-2 as a symmetric relation: valencies differ per point.
        let t = table(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let fast = verify_scheme_with(&t, VerifyMode::Fast).unwrap_err();
        let full = verify_scheme_with(&t, VerifyMode::Full).unwrap_err();
        assert!(fast.violations().iter().any(|v| matches!(v, Violation::NonConstant { .. })));
        let nfull = full.violations().iter().filter(|v| matches!(v, Violation::NonConstant { .. })).count();
        assert!(nfull >= 1);
    }
}
