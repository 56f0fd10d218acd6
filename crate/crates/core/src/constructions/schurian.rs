//! Orbital schemes of two affine groups acting on the right cosets of a
//! translation subgroup `H` of order `p`. Only generator permutations are
//! formed, so the group table itself is never built.

use super::{BuildOptions, ConstructionReport};
use crate::algebra::{is_prime, orbitals, AffineMapP3, AffineMapVec3, GfP3};
use crate::error::ConstructionError;
use crate::scheme::verify_scheme;

/// Right cosets `H g` of `H = { t_{I,(c,0,0)} }` in the unitriangular affine
/// group, indexed `(a p + b) p^2 + x1 + x2 p` for the representative with
/// `x0 = 0`, and the permutations induced by right multiplication with the
/// generators `t_{A(1,0),0}`, `t_{A(0,1),0}` and the three unit translations.
pub fn unitriangular_coset_generators(p: u64) -> Vec<Vec<usize>> {
    let pu = p as usize;
    let points = pu.pow(4);
    let rep = |i: usize| {
        let (ab, x) = (i / (pu * pu), i % (pu * pu));
        AffineMapVec3::new(p, (ab / pu) as u64, (ab % pu) as u64, [0, (x % pu) as u64, (x / pu) as u64])
    };
    let index =
        |g: &AffineMapVec3| (g.a as usize * pu + g.b as usize) * pu * pu + g.x[1] as usize + g.x[2] as usize * pu;
    let gens = [
        AffineMapVec3::new(p, 1, 0, [0, 0, 0]),
        AffineMapVec3::new(p, 0, 1, [0, 0, 0]),
        AffineMapVec3::new(p, 0, 0, [1, 0, 0]),
        AffineMapVec3::new(p, 0, 0, [0, 1, 0]),
        AffineMapVec3::new(p, 0, 0, [0, 0, 1]),
    ];
    gens.iter().map(|k| (0..points).map(|i| index(&rep(i).compose(k))).collect()).collect()
}

/// Orbital scheme of `{ t_{A(a,b),x} }` on `p^4` cosets; `delta = p^2`.
pub fn build_affine_unitriangular(p: u64, opts: &BuildOptions) -> Result<ConstructionReport, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::NotPrime(p));
    }
    let points = (p as usize).pow(4);
    opts.guard(points)?;
    let table = orbitals(points, &unitriangular_coset_generators(p));
    let (scheme, _) = verify_scheme(&table)?.canonicalize();
    let labels = (0..scheme.rank()).map(|s| format!("orbital {s}")).collect();
    ConstructionReport::new("sec41", p, serde_json::json!({}), scheme, labels)
}

/// Right cosets of `H = { t_{1,c} | c in F_p }` in `{ t_{a,b} | a in K }`,
/// where `K` is the subgroup of order `p^2 + p + 1`, indexed
/// `pos(a) p^2 + (b1 + b2 p)` for the representative with `b0 = 0`; and the
/// permutations induced by `t_{z,0}` (`z` generating `K`) and the
/// translations by `1, x, x^2`.
pub fn field_affine_coset_generators(field: &GfP3) -> Vec<Vec<usize>> {
    let p = field.characteristic();
    let q = (p * p) as usize;
    let k = field.norm_one_subgroup();
    let pos = |a| k.binary_search(&a).expect("closed under products");
    let z = *k.iter().find(|&&a| field.multiplicative_order(a) as usize == k.len()).expect("K is cyclic");
    let rep = |i: usize| AffineMapP3 { a: k[i / q], b: crate::algebra::FieldElementP3((i % q * p as usize) as u32) };
    let index = |g: &AffineMapP3| {
        let [_, b1, b2] = field.coeffs(g.b);
        pos(g.a) * q + (b1 + b2 * p) as usize
    };
    let gens = [
        AffineMapP3 { a: z, b: field.zero() },
        AffineMapP3 { a: field.one(), b: field.one() },
        AffineMapP3 { a: field.one(), b: field.generator_x() },
        AffineMapP3 { a: field.one(), b: field.from_coeffs([0, 0, 1]) },
    ];
    let points = k.len() * q;
    gens.iter().map(|g| (0..points).map(|i| index(&rep(i).compose(field, g))).collect()).collect()
}

/// Orbital scheme of `{ t_{a,b} | a in K, b in F_{p^3} }` on `p^2 (p^2+p+1)`
/// cosets; `delta = p^2 + p + 1`. Needs an odd prime unless
/// `opts.allow_even` is set.
pub fn build_field_affine(p: u64, opts: &BuildOptions) -> Result<ConstructionReport, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::NotPrime(p));
    }
    if p == 2 && !opts.allow_even {
        return Err(ConstructionError::EvenPrime);
    }
    let points = (p * p * (p * p + p + 1)) as usize;
    opts.guard(points)?;
    let field = match opts.modulus {
        Some(m) => GfP3::new(p, m)?,
        None => GfP3::with_default_modulus(p)?,
    };
    let table = orbitals(points, &field_affine_coset_generators(&field));
    let (scheme, _) = verify_scheme(&table)?.canonicalize();
    let labels = (0..scheme.rank()).map(|s| format!("orbital {s}")).collect();
    let params = serde_json::json!({ "modulus": field.modulus(), "allow_even": opts.allow_even });
    ConstructionReport::new("sec42", p, params, scheme, labels)
}
