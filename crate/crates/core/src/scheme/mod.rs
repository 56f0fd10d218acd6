//! Scheme data model: relation tables, axiom verification, intersection
//! numbers, closed subsets, thin radical and residue, factor schemes.

mod conditions;
mod subset;
mod table;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use conditions::{check_conditions, ConditionFlags};
pub use subset::{RelationSubset, SubsetFlags};
pub use table::RelationTable;
pub use verify::{verify_scheme, verify_scheme_with, VerifyMode};

/// Intersection numbers `c[s][t][u] = |xs ∩ yt*|` for `(x, y) ∈ u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    data: Vec<u32>,
}

impl IntersectionTensor {
    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize, u: usize) -> u32 {
        self.data[(s * self.rank + t) * self.rank + u]
    }

    /// Counts `c[.][.][u]` at each relation's first pair in row-major order.
    fn from_representatives(table: &RelationTable) -> (Self, Vec<(usize, usize)>) {
        let r = table.rank();
        let reps = first_pairs(table);
        let mut data = vec![0u32; r * r * r];
        for (u, &(x, y)) in reps.iter().enumerate() {
            count_pair(table, x, y, |s, t| data[(s * r + t) * r + u] += 1);
        }
        (Self { rank: r, data }, reps)
    }

    fn remap(&self, map: &[usize]) -> Self {
        let r = self.rank;
        let mut data = vec![0u32; r * r * r];
        for s in 0..r {
            for t in 0..r {
                for u in 0..r {
                    data[(map[s] * r + map[t]) * r + map[u]] = self.get(s, t, u);
                }
            }
        }
        Self { rank: r, data }
    }
}

/// Row-major first occurrence of every relation.
pub(crate) fn first_pairs(table: &RelationTable) -> Vec<(usize, usize)> {
    let n = table.points();
    let mut reps = vec![(usize::MAX, usize::MAX); table.rank()];
    let mut left = table.rank();
    'outer: for x in 0..n {
        for (y, &c) in table.row(x).iter().enumerate() {
            let c = c as usize;
            if reps[c].0 == usize::MAX {
                reps[c] = (x, y);
                left -= 1;
                if left == 0 {
                    break 'outer;
                }
            }
        }
    }
    reps
}

/// Calls `f(r(x,z), r(z,y))` for every point `z`.
#[inline]
pub(crate) fn count_pair(table: &RelationTable, x: usize, y: usize, mut f: impl FnMut(usize, usize)) {
    let row = table.row(x);
    for (z, &s) in row.iter().enumerate() {
        f(s as usize, table.get(z, y));
    }
}

/// A point-level relation table that satisfies the scheme axioms, with its
/// derived structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    table: RelationTable,
    identity: usize,
    star: Vec<usize>,
    valency: Vec<usize>,
    tensor: IntersectionTensor,
}

impl Scheme {
    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    /// Number of points, `n_S`.
    pub fn order(&self) -> usize {
        self.table.points()
    }

    /// Number of relations.
    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn star(&self, s: usize) -> usize {
        self.star[s]
    }

    pub fn stars(&self) -> &[usize] {
        &self.star
    }

    pub fn valency(&self, s: usize) -> usize {
        self.valency[s]
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valency
    }

    pub fn tensor(&self) -> &IntersectionTensor {
        &self.tensor
    }

    #[inline]
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// `c_{st}^u`.
    #[inline]
    pub fn c(&self, s: usize, t: usize, u: usize) -> u32 {
        self.tensor.get(s, t, u)
    }

    /// Valencies sorted ascending.
    pub fn valency_multiset(&self) -> Vec<usize> {
        let mut v = self.valency.clone();
        v.sort_unstable();
        v
    }

    /// Product of two thin relations (a single relation).
    pub fn thin_product(&self, s: usize, t: usize) -> usize {
        debug_assert!(self.valency[s] == 1 && self.valency[t] == 1);
        (0..self.rank()).find(|&u| self.c(s, t, u) != 0).expect("product of relations is non-empty")
    }

    /// Relabels relations so that the identity is 0 and the rest are ordered by
    /// (valency, first row-major occurrence). Returns the scheme and the map
    /// old index -> new index.
    pub fn canonicalize(&self) -> (Scheme, Vec<usize>) {
        let reps = first_pairs(&self.table);
        let n = self.order();
        let mut order: Vec<usize> = (0..self.rank()).filter(|&s| s != self.identity).collect();
        order.sort_by_key(|&s| (self.valency[s], reps[s].0 * n + reps[s].1));
        order.insert(0, self.identity);
        let mut map = vec![0usize; self.rank()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        (self.relabel(&map), map)
    }

    /// Applies a relation bijection `old -> map[old]`.
    pub fn relabel(&self, map: &[usize]) -> Scheme {
        let r = self.rank();
        let mut star = vec![0usize; r];
        let mut valency = vec![0usize; r];
        for s in 0..r {
            star[map[s]] = map[self.star[s]];
            valency[map[s]] = self.valency[s];
        }
        Scheme {
            table: self.table.relabel_relations(map),
            identity: map[self.identity],
            star,
            valency,
            tensor: self.tensor.remap(map),
        }
    }

    /// Same scheme with points renamed `x -> perm[x]`.
    pub fn permute_points(&self, perm: &[usize]) -> Scheme {
        Scheme { table: self.table.permute_points(perm), ..self.clone() }
    }

    /// Adjacency list of relation `s` at point `x`: the set `xs`.
    pub fn neighbours(&self, x: usize, s: usize) -> Vec<usize> {
        self.table.row(x).iter().enumerate().filter(|(_, &c)| c as usize == s).map(|(y, _)| y).collect()
    }

    /// Thin scheme of the regular action of a group given by its
    /// multiplication table: `r(x, y) = x^{-1} y`.
    pub fn thin_from_group(group: &crate::algebra::FiniteGroup) -> Scheme {
        let n = group.order();
        let table = RelationTable::from_fn(n, |x, y| group.mul(group.inv(x), y))
            .expect("group tables give well-formed relation tables");
        verify_scheme(&table).expect("thin schemes satisfy the axioms")
    }

    /// The scheme `{1_X, X x X - 1_X}` on `n` points.
    pub fn complete(n: usize) -> Scheme {
        let table = RelationTable::from_fn(n, |x, y| usize::from(x != y)).expect("n >= 1");
        verify_scheme(&table).expect("the trivial scheme satisfies the axioms")
    }
}

/// Recomputes the intersection tensor from one representative pair per
/// relation and cross-checks it against a second representative when the
/// relation has one.
pub fn intersection_tensor(scheme: &Scheme) -> IntersectionTensor {
    let (tensor, reps) = IntersectionTensor::from_representatives(&scheme.table);
    let r = scheme.rank();
    let n = scheme.order();
    let mut scratch = vec![0u32; r * r];
    for (u, &(x0, y0)) in reps.iter().enumerate() {
        let second = (x0 * n + y0 + 1..n * n).find(|&i| scheme.table.cells()[i] as usize == u);
        if let Some(i) = second {
            count_pair(&scheme.table, i / n, i % n, |s, t| scratch[s * r + t] += 1);
            for s in 0..r {
                for t in 0..r {
                    assert_eq!(
                        scratch[s * r + t],
                        tensor.get(s, t, u),
                        "verified scheme has non-constant c[{s}][{t}][{u}]"
                    );
                }
            }
            scratch.iter_mut().for_each(|c| *c = 0);
        }
    }
    tensor
}

/// One failed scheme axiom with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// (i): the diagonal is split across relations.
    DiagonalSplit { x: usize, relation: usize, expected: usize },
    /// (i): the diagonal relation also contains an off-diagonal pair.
    DiagonalOffPair { x: usize, y: usize, relation: usize },
    /// (ii): the transpose of `relation` is not a relation.
    Transpose { relation: usize, x: usize, y: usize, found: usize, expected: usize },
    /// (iii): `|xs ∩ yt*|` differs between two pairs of `u`.
    NonConstant {
        s: usize,
        t: usize,
        u: usize,
        first: (usize, usize),
        first_count: u32,
        second: (usize, usize),
        second_count: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DiagonalSplit { x, relation, expected } => {
                write!(f, "(i) diagonal cell ({x},{x}) is relation {relation}, expected {expected}")
            }
            Violation::DiagonalOffPair { x, y, relation } => {
                write!(f, "(i) diagonal relation {relation} also contains ({x},{y})")
            }
            Violation::Transpose { relation, x, y, found, expected } => write!(
                f,
                "(ii) transpose of relation {relation} is not a relation: ({y},{x}) lies in {found}, not {expected}"
            ),
            Violation::NonConstant { s, t, u, first, first_count, second, second_count } => {
                write!(f, "(iii) c[{s}][{t}][{u}] is {first_count} at {first:?} but {second_count} at {second:?}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_identity_first_then_by_valency() {
        // identity encoded as 2; relation 0 has valency 2, relation 1 valency 1
        let t = RelationTable::from_rows(&[vec![2, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 2]])
            .unwrap();
        let s = verify_scheme(&t).unwrap();
        assert_eq!(s.identity(), 2);
        let (c, map) = s.canonicalize();
        assert_eq!(map, vec![2, 1, 0]);
        assert_eq!(c.identity(), 0);
        assert_eq!(c.valencies(), &[1, 1, 2]);
        assert_eq!(c.table().row(0), &[0, 1, 2, 2]);
    }

    #[test]
    fn second_representative_cross_check() {
        let s = Scheme::complete(5);
        assert_eq!(&intersection_tensor(&s), s.tensor());
    }
}
