use super::FiniteGroup;
use crate::error::AlgebraError;
use crate::scheme::{verify_scheme, RelationTable, Scheme};

/// Right action of a finite group on `0..degree`: `perm(g)[x]` is `x^g`, and
/// `x^{gh} = (x^g)^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    degree: usize,
    perms: Vec<Vec<u32>>,
}

impl GroupAction {
    /// Validates that every entry is a permutation and that the map is a
    /// homomorphism for the right-action convention.
    pub fn new(group: FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if perms.len() != group.order() {
            return Err(AlgebraError::BadAction(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        let degree = perms.first().map_or(0, |p| p.len());
        for (g, p) in perms.iter().enumerate() {
            if !is_permutation(p, degree) {
                return Err(AlgebraError::BadAction(format!("image of element {g} is not a permutation")));
            }
        }
        let perms: Vec<Vec<u32>> = perms.into_iter().map(|p| p.into_iter().map(|x| x as u32).collect()).collect();
        let action = Self { group, degree, perms };
        action.check_homomorphism()?;
        Ok(action)
    }

    fn check_homomorphism(&self) -> Result<(), AlgebraError> {
        let e = self.group.identity();
        if (0..self.degree).any(|x| self.image(x, e) != x) {
            return Err(AlgebraError::BadAction("identity does not act trivially".into()));
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                if (0..self.degree).any(|x| self.image(x, gh) != self.image(self.image(x, g), h)) {
                    return Err(AlgebraError::BadAction(format!("x^({g}*{h}) != (x^{g})^{h}")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn image(&self, x: usize, g: usize) -> usize {
        self.perms[g][x] as usize
    }

    pub fn perm(&self, g: usize) -> Vec<usize> {
        self.perms[g].iter().map(|&x| x as usize).collect()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let gens: Vec<Vec<usize>> = self.group.generators().into_iter().map(|g| self.perm(g)).collect();
        orbit_under(self.degree, &gens, x)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.group.order() == self.degree
    }

    /// Elements fixing point `x`.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.image(x, g) == x).collect()
    }
}

fn is_permutation(p: &[usize], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    p.len() == degree && p.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true))
}

/// Orbit of `x` under the group generated by `gens`, sorted.
pub fn orbit_under(degree: usize, gens: &[Vec<usize>], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut stack = vec![x];
    let mut out = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g[y];
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
                out.push(z);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Right cosets `Hg` of a subgroup, and the action of `G` on them by right
/// multiplication.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub action: GroupAction,
    /// `cosets[i]` lists the elements of the i-th coset; coset 0 is `H`.
    pub cosets: Vec<Vec<usize>>,
    /// Coset index of every group element.
    pub coset_of: Vec<usize>,
}

impl CosetAction {
    pub fn is_regular(&self) -> bool {
        self.action.is_regular()
    }
}

/// Action of `G` on the right cosets of `H` by right multiplication.
pub fn coset_action(group: &FiniteGroup, h: &[usize]) -> Result<CosetAction, AlgebraError> {
    group.check_subgroup(h)?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    // The identity comes first so that H is coset 0.
    let order = std::iter::once(group.identity()).chain((0..n).filter(|&g| g != group.identity()));
    for g in order {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let c = group.right_coset(h, g);
        for &x in &c {
            coset_of[x] = cosets.len();
        }
        cosets.push(c);
    }
    let perms: Vec<Vec<u32>> =
        (0..n).map(|k| cosets.iter().map(|c| coset_of[group.mul(c[0], k)] as u32).collect()).collect();
    let degree = cosets.len();
    let action = GroupAction { group: group.clone(), degree, perms };
    Ok(CosetAction { action, cosets, coset_of })
}

/// Partition of ordered pairs into orbits of the group generated by `gens`,
/// returned as a relation table with classes numbered by first row-major
/// occurrence.
pub fn orbitals(degree: usize, gens: &[Vec<usize>]) -> RelationTable {
    let n = degree;
    let mut parent: Vec<u32> = (0..(n * n) as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for g in gens {
        for x in 0..n {
            for y in 0..n {
                let a = find(&mut parent, (x * n + y) as u32);
                let b = find(&mut parent, (g[x] * n + g[y]) as u32);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
    }
    let mut label = vec![u32::MAX; n * n];
    let mut next = 0u32;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let root = find(&mut parent, i as u32) as usize;
        if label[root] == u32::MAX {
            label[root] = next;
            next += 1;
        }
        cells.push(label[root]);
    }
    RelationTable::new(n, next as usize, cells).expect("orbit labels are dense")
}

/// Scheme of orbitals of a transitive action, canonically relabelled and
/// re-verified.
pub fn orbital_scheme(action: &GroupAction) -> Result<Scheme, AlgebraError> {
    if !action.is_transitive() {
        return Err(AlgebraError::Intransitive { orbit: action.orbit(0).len(), degree: action.degree() });
    }
    let gens: Vec<Vec<usize>> = action.group().generators().into_iter().map(|g| action.perm(g)).collect();
    let table = orbitals(action.degree(), &gens);
    let scheme = verify_scheme(&table)?;
    Ok(scheme.canonicalize().0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_action_of_c3() {
        let g = FiniteGroup::cyclic(3);
        let ca = coset_action(&g, &[0]).unwrap();
        assert_eq!(ca.action.degree(), 3);
        assert!(ca.is_regular());
        let s = orbital_scheme(&ca.action).unwrap();
        assert_eq!(s.rank(), 3);
        assert!(s.valencies().iter().all(|&v| v == 1));
    }

    #[test]
    fn symmetric_group_gives_complete_scheme() {
        // S3 acting naturally on three points.
        let perms: Vec<Vec<usize>> =
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1], vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        // x^{ab} = (x^a)^b
        let rows: Vec<Vec<usize>> =
            perms.iter().map(|a| perms.iter().map(|b| idx(&[b[a[0]], b[a[1]], b[a[2]]])).collect()).collect();
        let g = FiniteGroup::from_rows(&rows, None).unwrap();
        let action = GroupAction::new(g, perms.clone()).unwrap();
        assert!(action.is_transitive());
        assert!(!action.is_regular());
        let s = orbital_scheme(&action).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.valency(1), 2);
    }

    #[test]
    fn non_subgroup_and_intransitive_inputs() {
        let g = FiniteGroup::cyclic(4);
        assert!(matches!(coset_action(&g, &[0, 1]), Err(AlgebraError::NotSubgroup(_))));
        let trivial = FiniteGroup::cyclic(1);
        let action = GroupAction::new(trivial, vec![vec![0, 1]]).unwrap();
        assert!(matches!(orbital_scheme(&action), Err(AlgebraError::Intransitive { .. })));
    }

    #[test]
    fn broken_homomorphism_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        assert!(GroupAction::new(g.clone(), vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(GroupAction::new(g, vec![vec![0, 0], vec![1, 0]]).is_err());
    }
}
