use serde::{Deserialize, Serialize};

use super::{RelationTable, Scheme};
use crate::error::SchemeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SubsetFlags {
    pub closed: bool,
    pub thin: bool,
    pub strongly_normal: bool,
}

/// A set of relation indices of a particular scheme, with its structural flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSubset {
    members: Vec<usize>,
    flags: SubsetFlags,
}

impl RelationSubset {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn flags(&self) -> SubsetFlags {
        self.flags
    }

    pub fn is_closed(&self) -> bool {
        self.flags.closed
    }

    pub fn is_thin(&self) -> bool {
        self.flags.thin
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    fn mask(&self, rank: usize) -> Vec<bool> {
        let mut m = vec![false; rank];
        for &s in &self.members {
            m[s] = true;
        }
        m
    }
}

impl Scheme {
    /// Wraps a set of relation indices, computing its flags.
    pub fn subset<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<RelationSubset, SchemeError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&s| s >= self.rank()) {
            return Err(SchemeError::NoSuchRelation(bad));
        }
        let flags = self.flags_of(&members);
        Ok(RelationSubset { members, flags })
    }

    fn flags_of(&self, members: &[usize]) -> SubsetFlags {
        let r = self.rank();
        let mut mask = vec![false; r];
        for &s in members {
            mask[s] = true;
        }
        let thin = !members.is_empty() && members.iter().all(|&s| self.valency(s) == 1);
        // The union is reflexive, symmetric and transitive.
        let closed = !members.is_empty()
            && mask[self.identity()]
            && members.iter().all(|&s| mask[self.star(s)])
            && self.product_mask(members, members).iter().zip(&mask).all(|(&p, &m)| !p || m);
        let strongly_normal = closed
            && (0..r).all(|s| {
                let left = self.product_mask(&[self.star(s)], members);
                let lm: Vec<usize> = (0..r).filter(|&u| left[u]).collect();
                self.product_mask(&lm, &[s]).iter().zip(&mask).all(|(&p, &m)| !p || m)
            });
        SubsetFlags { closed, thin, strongly_normal }
    }

    fn product_mask(&self, p: &[usize], q: &[usize]) -> Vec<bool> {
        let r = self.rank();
        let mut out = vec![false; r];
        for &a in p {
            for &b in q {
                for (u, o) in out.iter_mut().enumerate() {
                    if !*o && self.c(a, b, u) != 0 {
                        *o = true;
                    }
                }
            }
        }
        out
    }

    /// `PQ = { u | c_{pq}^u != 0 for some p ∈ P, q ∈ Q }`.
    pub fn complex_product(&self, p: &RelationSubset, q: &RelationSubset) -> Result<RelationSubset, SchemeError> {
        if p.is_empty() || q.is_empty() {
            return Err(SchemeError::EmptySubset);
        }
        let mask = self.product_mask(&p.members, &q.members);
        self.subset((0..self.rank()).filter(|&u| mask[u]))
    }

    /// Complex product of single relations, as a sorted index list.
    pub fn product_of(&self, s: usize, t: usize) -> Vec<usize> {
        let mask = self.product_mask(&[s], &[t]);
        (0..self.rank()).filter(|&u| mask[u]).collect()
    }

    /// Smallest closed subset containing `u`.
    pub fn closure(&self, u: &RelationSubset) -> Result<RelationSubset, SchemeError> {
        if u.is_empty() {
            return Err(SchemeError::EmptySubset);
        }
        let r = self.rank();
        let mut mask = u.mask(r);
        mask[self.identity()] = true;
        loop {
            let members: Vec<usize> = (0..r).filter(|&s| mask[s]).collect();
            let mut next = self.product_mask(&members, &members);
            for &s in &members {
                next[s] = true;
                next[self.star(s)] = true;
            }
            if next == mask {
                break;
            }
            mask = next;
        }
        let out = self.subset((0..r).filter(|&s| mask[s]))?;
        debug_assert!(out.is_closed());
        Ok(out)
    }

    /// `{ s | n_s = 1 }`.
    pub fn thin_radical(&self) -> RelationSubset {
        self.subset((0..self.rank()).filter(|&s| self.valency(s) == 1)).expect("indices in range")
    }

    /// Closure of `⋃_s s*s`; the factor scheme over it is thin.
    pub fn thin_residue(&self) -> RelationSubset {
        let r = self.rank();
        let mut gen = vec![false; r];
        for s in 0..r {
            for u in self.product_of(self.star(s), s) {
                gen[u] = true;
            }
        }
        let seed = self.subset((0..r).filter(|&u| gen[u])).expect("indices in range");
        let residue = self.closure(&seed).expect("seed contains the identity");
        let n_t = self.subset_valency(&residue);
        for s in 0..r {
            let dc = self.double_coset(&residue, s);
            let n_dc: usize = dc.iter().map(|&u| self.valency(u)).sum();
            assert_eq!(n_dc, n_t, "factor over the thin residue is not thin at relation {s}");
        }
        residue
    }

    /// `n_T = Σ_{t∈T} n_t`.
    pub fn subset_valency(&self, t: &RelationSubset) -> usize {
        t.members.iter().map(|&s| self.valency(s)).sum()
    }

    /// `TsT` as a sorted list.
    pub fn double_coset(&self, t: &RelationSubset, s: usize) -> Vec<usize> {
        let left = self.product_mask(&t.members, &[s]);
        let lm: Vec<usize> = (0..self.rank()).filter(|&u| left[u]).collect();
        let both = self.product_mask(&lm, &t.members);
        (0..self.rank()).filter(|&u| both[u]).collect()
    }

    /// Point classes of the equivalence relation `⋃ T`, ordered by least point.
    pub fn cosets(&self, t: &RelationSubset) -> Result<Vec<Vec<usize>>, SchemeError> {
        if !t.is_closed() {
            return Err(SchemeError::NotClosed(t.members.clone()));
        }
        let n = self.order();
        let mask = t.mask(self.rank());
        let mut class = vec![usize::MAX; n];
        let mut out = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            let id = out.len();
            let members: Vec<usize> = (0..n).filter(|&y| mask[self.relation(x, y)]).collect();
            for &y in &members {
                class[y] = id;
            }
            out.push(members);
        }
        Ok(out)
    }

    /// `S//T` on the cosets `X/T`. Relation `k` of the factor is the k-th
    /// double coset `TsT` in order of least member, so `T` itself is 0.
    pub fn factor_scheme(&self, t: &RelationSubset) -> Result<Scheme, SchemeError> {
        let cosets = self.cosets(t)?;
        let r = self.rank();
        let mut dc_of = vec![usize::MAX; r];
        let mut count = 0;
        for s in 0..r {
            if dc_of[s] == usize::MAX {
                for u in self.double_coset(t, s) {
                    dc_of[u] = count;
                }
                count += 1;
            }
        }
        let m = cosets.len();
        let table = RelationTable::from_fn(m, |i, j| dc_of[self.relation(cosets[i][0], cosets[j][0])])
            .map_err(|e| SchemeError::Internal(format!("factor table: {e}")))?;
        // Every pair between two cosets must sit in the same double coset.
        for (i, ci) in cosets.iter().enumerate() {
            for (j, cj) in cosets.iter().enumerate() {
                let want = table.get(i, j);
                for &x in ci {
                    for &y in cj {
                        if dc_of[self.relation(x, y)] != want {
                            return Err(SchemeError::Internal(format!(
                                "pairs between cosets {i} and {j} meet two double cosets"
                            )));
                        }
                    }
                }
            }
        }
        Ok(super::verify_scheme(&table)?)
    }

    /// `δ(S) = n_S / n_{O^θ(S)}`.
    pub fn delta(&self) -> Result<usize, SchemeError> {
        let n_t = self.subset_valency(&self.thin_residue());
        if !self.order().is_multiple_of(n_t) {
            return Err(SchemeError::Internal(format!("thin residue valency {n_t} does not divide {}", self.order())));
        }
        Ok(self.order() / n_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;

    fn thin(g: &FiniteGroup) -> Scheme {
        Scheme::thin_from_group(g)
    }

    #[test]
    fn identity_is_neutral_for_complex_products() {
        let s = Scheme::complete(4);
        let one = s.subset([0]).unwrap();
        let x = s.subset([1]).unwrap();
        assert_eq!(s.complex_product(&one, &x).unwrap().members(), &[1]);
        assert_eq!(s.complex_product(&x, &x).unwrap().members(), &[0, 1]);
        let empty = s.subset([]).unwrap();
        assert_eq!(s.complex_product(&empty, &x), Err(SchemeError::EmptySubset));
    }

    #[test]
    fn closure_examples() {
        let c4 = thin(&FiniteGroup::cyclic(4));
        let one = c4.subset([0]).unwrap();
        assert_eq!(c4.closure(&one).unwrap().members(), &[0]);
        let gen = c4.subset([1]).unwrap();
        assert_eq!(c4.closure(&gen).unwrap().members(), &[0, 1, 2, 3]);
        let k3 = Scheme::complete(3);
        let c = k3.closure(&k3.subset([1]).unwrap()).unwrap();
        assert_eq!(c.members(), &[0, 1]);
        assert!(c.is_closed());
    }

    #[test]
    fn radical_and_residue() {
        let c5 = thin(&FiniteGroup::cyclic(5));
        assert_eq!(c5.thin_radical().len(), 5);
        assert_eq!(c5.thin_residue().members(), &[0]);
        let k3 = Scheme::complete(3);
        assert_eq!(k3.thin_radical().members(), &[0]);
        assert_eq!(k3.thin_residue().members(), &[0, 1]);
        assert_eq!(k3.delta().unwrap(), 1);
        assert_eq!(thin(&FiniteGroup::cyclic(2)).delta().unwrap(), 2);
    }

    #[test]
    fn factor_extremes() {
        let g = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let s = thin(&g);
        let trivial = s.factor_scheme(&s.subset([0]).unwrap()).unwrap();
        assert_eq!((trivial.order(), trivial.rank()), (4, 4));
        let all = s.factor_scheme(&s.subset(0..4).unwrap()).unwrap();
        assert_eq!((all.order(), all.rank()), (1, 1));
        let not_closed = s.subset([1]).unwrap();
        assert!(matches!(s.factor_scheme(&not_closed), Err(SchemeError::NotClosed(_))));
    }

    #[test]
    fn strong_normality() {
        let k3 = Scheme::complete(3);
        assert!(!k3.subset([0]).unwrap().flags().strongly_normal);
        assert!(k3.subset([0, 1]).unwrap().flags().strongly_normal);
    }
}
