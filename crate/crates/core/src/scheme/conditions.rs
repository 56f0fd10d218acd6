use serde::{Deserialize, Serialize};

use super::Scheme;
use crate::algebra::is_prime;
use crate::error::SchemeError;

/// Outcome of the three structural conditions for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    /// Thin residue is elementary abelian of order `p^2`.
    pub a: bool,
    /// `{ n_s | s ∉ O^θ(S) } = { p }`.
    pub b: bool,
    /// `s1 s1* != s2 s2*` whenever `s1, s2 ∉ O^θ(S)` lie in distinct residue cosets.
    pub con_three: bool,
}

/// Evaluates conditions (A), (B) and the distinct-`ss*` condition.
///
/// (B) is read as a set equality, so a scheme with no relations outside its
/// thin residue fails it.
pub fn check_conditions(scheme: &Scheme, p: u64) -> Result<ConditionFlags, SchemeError> {
    if !is_prime(p) {
        return Err(SchemeError::NotPrime(p));
    }
    let residue = scheme.thin_residue();
    let t = residue.members();
    let one = scheme.identity();

    let a = residue.is_thin()
        && t.len() as u64 == p * p
        && t.iter().all(|&x| {
            let mut acc = one;
            for _ in 0..p {
                acc = scheme.thin_product(acc, x);
            }
            acc == one
        })
        && t.iter().all(|&x| t.iter().all(|&y| scheme.thin_product(x, y) == scheme.thin_product(y, x)));

    let outside: Vec<usize> = (0..scheme.rank()).filter(|&s| !residue.contains(s)).collect();
    let b = !outside.is_empty() && outside.iter().all(|&s| scheme.valency(s) as u64 == p);

    let coset = |s: usize| {
        let single = scheme.subset([s]).expect("in range");
        scheme.complex_product(&single, &residue).expect("non-empty").members().to_vec()
    };
    let cosets: Vec<Vec<usize>> = outside.iter().map(|&s| coset(s)).collect();
    let squares: Vec<Vec<usize>> = outside.iter().map(|&s| scheme.product_of(s, scheme.star(s))).collect();
    let mut con_three = true;
    'pairs: for i in 0..outside.len() {
        for j in i + 1..outside.len() {
            if cosets[i] != cosets[j] && squares[i] == squares[j] {
                con_three = false;
                break 'pairs;
            }
        }
    }
    Ok(ConditionFlags { a, b, con_three })
}
