//! Affine groups used by the schurian builders. Group products are map
//! compositions: `(f * g)(y) = f(g(y))`.

use std::collections::HashMap;

use super::{FieldElementP3, FiniteGroup, GfP3};

/// `t_{A(a,b), x} : y -> y A(a,b) + x` on row vectors of `F_p^3`, where
/// `A(a,b)` is upper unitriangular with rows `(1 a b)`, `(0 1 a)`, `(0 0 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMapVec3 {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub x: [u64; 3],
}

impl AffineMapVec3 {
    pub fn new(p: u64, a: u64, b: u64, x: [u64; 3]) -> Self {
        Self { p, a: a % p, b: b % p, x: x.map(|c| c % p) }
    }

    pub fn matrix(&self) -> [[u64; 3]; 3] {
        [[1, self.a, self.b], [0, 1, self.a], [0, 0, 1]]
    }

    /// `y A(a,b)`.
    pub fn linear(&self, y: [u64; 3]) -> [u64; 3] {
        let p = self.p;
        let m = self.matrix();
        let mut out = [0u64; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|i| y[i] * m[i][j]).sum::<u64>() % p;
        }
        out
    }

    pub fn apply(&self, y: [u64; 3]) -> [u64; 3] {
        let l = self.linear(y);
        [0, 1, 2].map(|i| (l[i] + self.x[i]) % self.p)
    }

    /// `self ∘ other`: `y -> (y B + z) A + x = y (BA) + (zA + x)`.
    pub fn compose(&self, other: &Self) -> Self {
        let p = self.p;
        // A(a',b') A(a,b) = A(a'+a, b'+b+a'a)
        let a = (other.a + self.a) % p;
        let b = (other.b + self.b + other.a * self.a) % p;
        let za = self.linear(other.x);
        let x = [0, 1, 2].map(|i| (za[i] + self.x[i]) % p);
        Self { p, a, b, x }
    }

    pub fn index(&self) -> usize {
        let p = self.p as usize;
        let xi = self.x[0] as usize + self.x[1] as usize * p + self.x[2] as usize * p * p;
        (self.a as usize * p + self.b as usize) * p * p * p + xi
    }

    pub fn label(&self) -> String {
        format!("t[A({},{}),({},{},{})]", self.a, self.b, self.x[0], self.x[1], self.x[2])
    }
}

/// The group `{ t_{A(a,b), x} }` of order `p^5`; element `i` is the map with
/// [`AffineMapVec3::index`] `i`, and the identity is element 0.
pub fn unitriangular_affine_group(p: u64) -> (FiniteGroup, Vec<AffineMapVec3>) {
    let pu = p as usize;
    let n = pu.pow(5);
    let maps: Vec<AffineMapVec3> = (0..n)
        .map(|i| {
            let xi = (i % (pu * pu * pu)) as u64;
            let ab = (i / (pu * pu * pu)) as u64;
            AffineMapVec3::new(p, ab / p, ab % p, [xi % p, xi / p % p, xi / (p * p)])
        })
        .collect();
    debug_assert!(maps.iter().enumerate().all(|(i, m)| m.index() == i));
    let mut table = Vec::with_capacity(n * n);
    for f in &maps {
        for g in &maps {
            table.push(f.compose(g).index() as u32);
        }
    }
    let labels = maps.iter().map(AffineMapVec3::label).collect();
    (FiniteGroup::from_parts(table, 0, Some(labels)), maps)
}

/// `t_{a,b} : y -> a y + b` on `F_{p^3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMapP3 {
    pub a: FieldElementP3,
    pub b: FieldElementP3,
}

impl AffineMapP3 {
    pub fn apply(&self, f: &GfP3, y: FieldElementP3) -> FieldElementP3 {
        f.add(f.mul(self.a, y), self.b)
    }

    /// `self ∘ other`: `y -> a (a' y + b') + b`.
    pub fn compose(&self, f: &GfP3, other: &Self) -> Self {
        Self { a: f.mul(self.a, other.a), b: f.add(f.mul(self.a, other.b), self.b) }
    }
}

/// `{ t_{a,b} | a ∈ multipliers, b ∈ F_{p^3} }`, elements ordered by
/// (position of `a` in `multipliers`, `b`). `multipliers` must be a
/// multiplicative subgroup containing 1.
pub fn field_affine_group(f: &GfP3, multipliers: &[FieldElementP3]) -> (FiniteGroup, Vec<AffineMapP3>) {
    let q = f.size();
    let maps: Vec<AffineMapP3> =
        multipliers.iter().flat_map(|&a| f.elements().map(move |b| AffineMapP3 { a, b })).collect();
    let index: HashMap<AffineMapP3, usize> = maps.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for g in &maps {
        for h in &maps {
            table.push(index[&g.compose(f, h)] as u32);
        }
    }
    let one = multipliers.iter().position(|&a| a == f.one()).expect("subgroup contains 1");
    let labels = maps.iter().map(|m| format!("t[{},{}]", f.display(m.a), f.display(m.b))).collect();
    debug_assert_eq!(n, multipliers.len() * q);
    (FiniteGroup::from_parts(table, one * q, Some(labels)), maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let f = AffineMapVec3::new(3, 1, 2, [0, 1, 0]);
        let g = AffineMapVec3::new(3, 2, 0, [1, 0, 2]);
        let y = [2, 1, 1];
        assert_eq!(f.compose(&g).apply(y), f.apply(g.apply(y)));

        let field = GfP3::with_default_modulus(3).unwrap();
        let s = AffineMapP3 { a: field.generator_x(), b: field.scalar(2) };
        let t = AffineMapP3 { a: field.scalar(2), b: field.generator_x() };
        let y = field.from_coeffs([1, 2, 1]);
        assert_eq!(s.compose(&field, &t).apply(&field, y), s.apply(&field, t.apply(&field, y)));
    }

    #[test]
    fn unitriangular_group_p2_satisfies_group_laws() {
        let (g, maps) = unitriangular_affine_group(2);
        assert_eq!(g.order(), 32);
        let rows: Vec<Vec<usize>> = (0..32).map(|a| (0..32).map(|b| g.mul(a, b)).collect()).collect();
        assert!(FiniteGroup::from_rows(&rows, None).is_ok());
        assert_eq!(maps[0], AffineMapVec3::new(2, 0, 0, [0, 0, 0]));
        assert!(!g.is_abelian());
    }

    #[test]
    fn field_affine_group_p2() {
        let f = GfP3::with_default_modulus(2).unwrap();
        let k = f.norm_one_subgroup();
        let (g, _) = field_affine_group(&f, &k);
        assert_eq!(g.order(), 56);
        let rows: Vec<Vec<usize>> = (0..56).map(|a| (0..56).map(|b| g.mul(a, b)).collect()).collect();
        assert!(FiniteGroup::from_rows(&rows, None).is_ok());
    }
}
