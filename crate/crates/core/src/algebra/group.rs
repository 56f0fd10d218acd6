use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::is_prime;
use crate::error::AlgebraError;

/// Finite group given by its full multiplication table. `mul(g, h)` is the
/// product `gh`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupDescriptor", into = "GroupDescriptor")]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
}

/// JSON descriptor: the rows of the multiplication table plus optional labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub rows: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// The group families the builders need, plus arbitrary tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic(usize),
    ElementaryAbelian { p: u64, rank: u32 },
    Table(GroupDescriptor),
}

/// Realizes a [`GroupKind`].
pub fn make_group(kind: &GroupKind) -> Result<FiniteGroup, AlgebraError> {
    match kind {
        GroupKind::Cyclic(0) => Err(AlgebraError::BadTable("cyclic group of order 0".into())),
        GroupKind::Cyclic(k) => Ok(FiniteGroup::cyclic(*k)),
        GroupKind::ElementaryAbelian { p, rank } => FiniteGroup::elementary_abelian(*p, *rank),
        GroupKind::Table(d) => FiniteGroup::try_from(d.clone()),
    }
}

impl TryFrom<GroupDescriptor> for FiniteGroup {
    type Error = AlgebraError;

    fn try_from(d: GroupDescriptor) -> Result<Self, Self::Error> {
        FiniteGroup::from_rows(&d.rows, d.labels)
    }
}

impl From<FiniteGroup> for GroupDescriptor {
    fn from(g: FiniteGroup) -> Self {
        let rows = (0..g.order).map(|a| (0..g.order).map(|b| g.mul(a, b)).collect()).collect();
        GroupDescriptor { rows, labels: g.labels }
    }
}

impl FiniteGroup {
    /// `C_k` with element `i` standing for the `i`-th power of a generator.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1, "cyclic group of order 0");
        let table = (0..k * k).map(|i| ((i / k + i % k) % k) as u32).collect();
        let inv = (0..k).map(|i| ((k - i) % k) as u32).collect();
        Self { order: k, table, inv, identity: 0, labels: None }
    }

    /// `C_p^rank`; element index is the base-`p` digit vector.
    pub fn elementary_abelian(p: u64, rank: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let p = p as usize;
        let n = p.pow(rank);
        let digits = |mut x: usize| {
            let mut d = vec![0usize; rank as usize];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &v| acc * p + v);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                table.push(undigits(&s) as u32);
            }
        }
        let inv =
            (0..n).map(|a| undigits(&digits(a).iter().map(|&x| (p - x) % p).collect::<Vec<_>>()) as u32).collect();
        Ok(Self { order: n, table, inv, identity: 0, labels: None })
    }

    /// Validates associativity, identity and inverses.
    pub fn from_rows(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::BadTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::BadTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::BadTable(format!("row {i} names element {bad}")));
            }
            table.extend(row.iter().map(|&v| v as u32));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(AlgebraError::BadTable(format!("{} labels for {n} elements", l.len())));
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| AlgebraError::BadTable("no identity element".into()))?;
        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or_else(|| AlgebraError::BadTable(format!("element {g} has no inverse")))?;
            inv.push(h as u32);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(AlgebraError::BadTable(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(Self { order: n, table, inv, identity, labels })
    }

    /// Trusted constructor for tables produced by composing maps.
    pub(crate) fn from_parts(table: Vec<u32>, identity: usize, labels: Option<Vec<String>>) -> Self {
        let order = (table.len() as f64).sqrt().round() as usize;
        assert_eq!(order * order, table.len(), "multiplication table is not square");
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            if inv[g] != u32::MAX {
                continue;
            }
            let h = (0..order).find(|&h| table[g * order + h] as usize == identity).expect("inverse exists");
            inv[g] = h as u32;
            inv[h] = g as u32;
        }
        Self { order, table, inv, identity, labels }
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push((a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)) as u32);
            }
        }
        Self::from_parts(table, a.identity * nb + b.identity, None)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for g in 0..self.order {
            if !span[g] {
                gens.push(g);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Checks closure under products and inverses.
    pub fn check_subgroup(&self, h: &[usize]) -> Result<(), AlgebraError> {
        let mut mask = vec![false; self.order];
        for &x in h {
            if x >= self.order {
                return Err(AlgebraError::NotSubgroup(format!("{x} is not an element")));
            }
            mask[x] = true;
        }
        if h.is_empty() || !mask[self.identity] {
            return Err(AlgebraError::NotSubgroup("identity missing".into()));
        }
        for &a in h {
            if !mask[self.inv(a)] {
                return Err(AlgebraError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in h {
                if !mask[self.mul(a, b)] {
                    return Err(AlgebraError::NotSubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(())
    }

    /// `g H g^{-1}` as a sorted list.
    pub fn conjugate(&self, h: &[usize], g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        let mut out: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `N_G(H)` as a sorted list.
    pub fn normalizer(&self, h: &[usize]) -> Vec<usize> {
        let mut sorted = h.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        (0..self.order).filter(|&g| self.conjugate(&sorted, g) == sorted).collect()
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        self.normalizer(h).len() == self.order
    }

    /// `H g` as a sorted list.
    pub fn right_coset(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = h.iter().map(|&x| self.mul(x, g)).collect();
        out.sort_unstable();
        out
    }

    /// `H g H` as a sorted list.
    pub fn double_coset(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            h.iter().flat_map(|&a| h.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(self.mul(a, g), b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let g = FiniteGroup::cyclic(3);
        assert_eq!(g.mul(1, 1), 2);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn klein_four_is_self_inverse() {
        let g = FiniteGroup::elementary_abelian(2, 2).unwrap();
        assert_eq!(g.order(), 4);
        assert!((0..4).all(|x| g.inv(x) == x));
        assert!(g.is_abelian());
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Not associative: a Latin square with identity 0 but no group law.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_rows(&rows, None), Err(AlgebraError::BadTable(_))));
        assert!(FiniteGroup::from_rows(&[vec![0, 1], vec![1, 1]], None).is_err());
        assert!(matches!(make_group(&GroupKind::ElementaryAbelian { p: 4, rank: 2 }), Err(AlgebraError::NotPrime(4))));
    }

    #[test]
    fn descriptor_round_trip() {
        let g = FiniteGroup::cyclic(4).with_labels((0..4).map(|i| format!("a^{i}")).collect());
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let kind: GroupKind = serde_json::from_str(r#"{"cyclic": 5}"#).unwrap();
        assert_eq!(make_group(&kind).unwrap().order(), 5);
    }

    #[test]
    fn normalizer_of_reflection_in_s3() {
        // S3 as permutations of {0,1,2}, composed left to right.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows: Vec<Vec<usize>> =
            perms.iter().map(|a| perms.iter().map(|b| idx([b[a[0]], b[a[1]], b[a[2]]])).collect()).collect();
        let g = FiniteGroup::from_rows(&rows, None).unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.normalizer(&[0, 3]), vec![0, 3]);
        assert!(g.is_normal(&[0, 1, 2]));
        assert_eq!(g.double_coset(&[0, 3], 1).len(), 4);
    }
}
