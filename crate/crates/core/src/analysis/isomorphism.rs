use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::search::{same_label_isomorphism, Counter};
use super::SearchBudget;
use crate::error::SearchError;
use crate::scheme::Scheme;

/// `relation_map[r(x, y)] = r'(point_map[x], point_map[y])` for all points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub point_map: Vec<usize>,
    pub relation_map: Vec<usize>,
}

impl IsoWitness {
    pub fn check(&self, a: &Scheme, b: &Scheme) -> bool {
        let n = a.order();
        if n != b.order() || self.point_map.len() != n || self.relation_map.len() != a.rank() {
            return false;
        }
        let mut hit = vec![false; n];
        if self.point_map.iter().any(|&y| y >= n || std::mem::replace(&mut hit[y], true)) {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| self.relation_map[a.relation(x, y)] == b.relation(self.point_map[x], self.point_map[y]))
        })
    }
}

type Visit<'v, B> = dyn FnMut(&[usize], &mut Counter<'_>) -> Result<ControlFlow<B>, SearchError> + 'v;

fn same_parameters(a: &Scheme, b: &Scheme) -> bool {
    a.order() == b.order() && a.rank() == b.rank() && a.valency_multiset() == b.valency_multiset()
}

/// Calls `visit` on every relation bijection `a -> b` preserving intersection
/// numbers, stopping early on `ControlFlow::Break`.
fn for_each_algebraic<B>(
    a: &Scheme,
    b: &Scheme,
    counter: &mut Counter<'_>,
    mut visit: impl FnMut(&[usize], &mut Counter<'_>) -> Result<ControlFlow<B>, SearchError>,
) -> Result<Option<B>, SearchError> {
    if !same_parameters(a, b) {
        return Ok(None);
    }
    let r = a.rank();
    // Assign in an order that puts each relation next to its transpose.
    let mut order = vec![a.identity()];
    for s in 0..r {
        for x in [s, a.star(s)] {
            if !order.contains(&x) {
                order.push(x);
            }
        }
    }
    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];

    fn consistent(a: &Scheme, b: &Scheme, map: &[usize], s: usize) -> bool {
        let t = map[s];
        if a.valency(s) != b.valency(t) {
            return false;
        }
        let (ss, ts) = (a.star(s), b.star(t));
        if map[ss] != usize::MAX && map[ss] != ts {
            return false;
        }
        let assigned: Vec<usize> = (0..map.len()).filter(|&x| map[x] != usize::MAX).collect();
        for &u in &assigned {
            for &v in &assigned {
                let (mu, mv) = (map[u], map[v]);
                if a.c(s, u, v) != b.c(t, mu, mv) || a.c(u, s, v) != b.c(mu, t, mv) || a.c(u, v, s) != b.c(mu, mv, t) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go<B>(
        a: &Scheme,
        b: &Scheme,
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        counter: &mut Counter<'_>,
        visit: &mut Visit<'_, B>,
    ) -> Result<Option<B>, SearchError> {
        if k == order.len() {
            return Ok(match visit(map, counter)? {
                ControlFlow::Break(x) => Some(x),
                ControlFlow::Continue(()) => None,
            });
        }
        let s = order[k];
        let candidates: Vec<usize> = if s == a.identity() { vec![b.identity()] } else { (0..b.rank()).collect() };
        for t in candidates {
            if used[t] {
                continue;
            }
            counter.tick()?;
            map[s] = t;
            if consistent(a, b, map, s) {
                used[t] = true;
                if let Some(x) = go(a, b, order, k + 1, map, used, counter, visit)? {
                    return Ok(Some(x));
                }
                used[t] = false;
            }
            map[s] = usize::MAX;
        }
        Ok(None)
    }

    go(a, b, &order, 0, &mut map, &mut used, counter, &mut visit)
}

/// A relation bijection preserving all intersection numbers.
pub fn are_algebraically_isomorphic_with(
    a: &Scheme,
    b: &Scheme,
    budget: &SearchBudget,
) -> Result<Option<Vec<usize>>, SearchError> {
    let mut counter = Counter::new(budget);
    for_each_algebraic(a, b, &mut counter, |m, _| Ok(ControlFlow::Break(m.to_vec())))
}

/// Tries each algebraic isomorphism in turn and searches for a point
/// bijection realising it. The returned witness has been rechecked pair by
/// pair.
pub fn are_isomorphic_with(a: &Scheme, b: &Scheme, budget: &SearchBudget) -> Result<Option<IsoWitness>, SearchError> {
    let n = a.order();
    if n > budget.max_points {
        return Err(SearchError::TooManyPoints { points: n, limit: budget.max_points });
    }
    let mut counter = Counter::new(budget);
    for_each_algebraic(a, b, &mut counter, |iota, counter| {
        // Rename b's relations into a's names so both trees share colours.
        let mut back = vec![0usize; iota.len()];
        for (s, &t) in iota.iter().enumerate() {
            back[t] = s;
        }
        let renamed = b.table().relabel_relations(&back);
        Ok(match same_label_isomorphism(a.table(), &renamed, counter)? {
            Some(point_map) => {
                let w = IsoWitness { point_map, relation_map: iota.to_vec() };
                if w.check(a, b) {
                    ControlFlow::Break(w)
                } else {
                    ControlFlow::Continue(())
                }
            }
            None => ControlFlow::Continue(()),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;

    #[test]
    fn self_and_mismatch() {
        let budget = SearchBudget::default();
        let c6 = Scheme::thin_from_group(&FiniteGroup::cyclic(6));
        let w = are_isomorphic_with(&c6, &c6, &budget).unwrap().unwrap();
        assert!(w.check(&c6, &c6));
        assert!(are_isomorphic_with(&c6, &Scheme::complete(6), &budget).unwrap().is_none());
        // C6 and S3 share all parameters but not intersection numbers.
        let s3_rows: Vec<Vec<usize>> = {
            let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
            let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
            perms.iter().map(|a| perms.iter().map(|b| idx([b[a[0]], b[a[1]], b[a[2]]])).collect()).collect()
        };
        let s3 = Scheme::thin_from_group(&FiniteGroup::from_rows(&s3_rows, None).unwrap());
        assert!(are_algebraically_isomorphic_with(&c6, &s3, &budget).unwrap().is_none());
        assert!(are_isomorphic_with(&c6, &s3, &budget).unwrap().is_none());
    }

    #[test]
    fn relabelled_copy_is_found() {
        let budget = SearchBudget::default();
        let k = Scheme::thin_from_group(&FiniteGroup::cyclic(5));
        let perm = [3, 0, 4, 1, 2];
        let moved = k.permute_points(&perm);
        let w = are_isomorphic_with(&k, &moved, &budget).unwrap().unwrap();
        assert!(w.check(&k, &moved));
    }
}
