use std::fmt;

use super::{is_prime, prime_divisors};
use crate::error::AlgebraError;

/// Element of `F_{p^3}` stored as `c0 + c1 p + c2 p^2`, the coefficients of
/// `c0 + c1 x + c2 x^2` in the polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElementP3(pub u32);

/// `F_p[x] / (x^3 + m2 x^2 + m1 x + m0)` for an irreducible cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfP3 {
    p: u64,
    /// `[m0, m1, m2]`.
    modulus: [u64; 3],
}

/// Whether `x^3 + m2 x^2 + m1 x + m0` has no root in `F_p`; for a cubic this
/// is irreducibility.
pub fn cubic_is_irreducible(p: u64, m: [u64; 3]) -> bool {
    (0..p).all(|x| !(x * x % p * x + m[2] * x % p * x + m[1] * x + m[0]).is_multiple_of(p))
}

/// `x^3+x+1` for p = 2, `x^3+2x+1` for p = 3, `x^3+x+1` for p = 5 when
/// irreducible, otherwise the first irreducible monic cubic in
/// lexicographic `(m2, m1, m0)` order.
pub fn default_modulus(p: u64) -> [u64; 3] {
    let preferred = if p == 3 { [1, 2, 0] } else { [1, 1, 0] };
    if cubic_is_irreducible(p, preferred) {
        return preferred;
    }
    for m2 in 0..p {
        for m1 in 0..p {
            for m0 in 1..p {
                if cubic_is_irreducible(p, [m0, m1, m2]) {
                    return [m0, m1, m2];
                }
            }
        }
    }
    unreachable!("irreducible cubics exist over every prime field")
}

impl GfP3 {
    pub fn new(p: u64, modulus: [u64; 3]) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let modulus = modulus.map(|c| c % p);
        if !cubic_is_irreducible(p, modulus) {
            return Err(AlgebraError::ReducibleModulus(modulus.to_vec()));
        }
        Ok(Self { p, modulus })
    }

    pub fn with_default_modulus(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Self::new(p, default_modulus(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> [u64; 3] {
        self.modulus
    }

    pub fn size(&self) -> usize {
        (self.p * self.p * self.p) as usize
    }

    pub fn coeffs(&self, a: FieldElementP3) -> [u64; 3] {
        let p = self.p;
        let v = a.0 as u64;
        [v % p, v / p % p, v / (p * p)]
    }

    pub fn from_coeffs(&self, c: [u64; 3]) -> FieldElementP3 {
        let p = self.p;
        FieldElementP3(((c[0] % p) + (c[1] % p) * p + (c[2] % p) * p * p) as u32)
    }

    pub fn zero(&self) -> FieldElementP3 {
        FieldElementP3(0)
    }

    pub fn one(&self) -> FieldElementP3 {
        FieldElementP3(1)
    }

    /// The class of `x`.
    pub fn generator_x(&self) -> FieldElementP3 {
        self.from_coeffs([0, 1, 0])
    }

    /// Embeds `c ∈ F_p`.
    pub fn scalar(&self, c: u64) -> FieldElementP3 {
        self.from_coeffs([c, 0, 0])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElementP3> {
        (0..self.size() as u32).map(FieldElementP3)
    }

    pub fn add(&self, a: FieldElementP3, b: FieldElementP3) -> FieldElementP3 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        self.from_coeffs([x[0] + y[0], x[1] + y[1], x[2] + y[2]])
    }

    pub fn neg(&self, a: FieldElementP3) -> FieldElementP3 {
        let p = self.p;
        let x = self.coeffs(a);
        self.from_coeffs([(p - x[0]) % p, (p - x[1]) % p, (p - x[2]) % p])
    }

    pub fn sub(&self, a: FieldElementP3, b: FieldElementP3) -> FieldElementP3 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElementP3, b: FieldElementP3) -> FieldElementP3 {
        let p = self.p;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // x^3 = -(m2 x^2 + m1 x + m0)
        for k in (3..5).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                prod[k - 3 + i] = (prod[k - 3 + i] + (p - m) % p * c) % p;
            }
        }
        self.from_coeffs([prod[0], prod[1], prod[2]])
    }

    pub fn pow(&self, a: FieldElementP3, mut e: u64) -> FieldElementP3 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElementP3) -> Option<FieldElementP3> {
        (a != self.zero()).then(|| self.pow(a, self.size() as u64 - 2))
    }

    pub fn multiplicative_order(&self, a: FieldElementP3) -> u64 {
        assert_ne!(a, self.zero());
        let n = self.size() as u64 - 1;
        let mut ord = n;
        for q in prime_divisors(n) {
            while ord.is_multiple_of(q) && self.pow(a, ord / q) == self.one() {
                ord /= q;
            }
        }
        ord
    }

    /// A generator of `F_{p^3}^×`.
    pub fn primitive_element(&self) -> FieldElementP3 {
        let n = self.size() as u64 - 1;
        self.elements().skip(1).find(|&a| self.multiplicative_order(a) == n).expect("multiplicative group is cyclic")
    }

    /// The subgroup of order `p^2 + p + 1`, as the image of `y -> y^(p-1)`,
    /// sorted.
    pub fn norm_one_subgroup(&self) -> Vec<FieldElementP3> {
        let mut k: Vec<FieldElementP3> = self.elements().skip(1).map(|y| self.pow(y, self.p - 1)).collect();
        k.sort_unstable();
        k.dedup();
        k
    }

    pub fn display(&self, a: FieldElementP3) -> impl fmt::Display {
        let c = self.coeffs(a);
        Poly(c)
    }
}

struct Poly([u64; 3]);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => "x^2".into(),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}
