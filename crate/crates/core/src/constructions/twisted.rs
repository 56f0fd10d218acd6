//! Assembly of schemes on `V x G` with `V = F_p^2`: same-fibre pairs are split
//! by difference in `V`, and pairs `(u_b, v_c)` with `b^-1 c = a != 1` are
//! split into the `p` translates of
//! `D_a = U_{x in C_a} (F_a + x) x (S_a + x)`.

use serde::{Deserialize, Serialize};

use super::lc::{vector_index, LineSubgroup};
use crate::algebra::FiniteGroup;
use crate::error::ConstructionError;
use crate::scheme::{verify_scheme, RelationTable, Scheme};

/// Where each named relation of a twisted construction ended up after
/// canonical relabelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedLayout {
    /// `thin[w]` is the relation `h_w = {(u_b, v_b) | u - v = w}`.
    pub thin: Vec<usize>,
    /// `cross[a][j]` is `t_a . h_{j g}` where `g` generates `C_a`; entry
    /// `cross[1]` (the identity) is empty.
    pub cross: Vec<Vec<usize>>,
}

/// Subgroup triple attached to a non-identity group element.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Twist {
    pub first: LineSubgroup,
    pub second: LineSubgroup,
    pub central: LineSubgroup,
}

/// `comp[u] = m` where `u = f + m g` with `f` in `f_sub` and `g` the
/// generator of `c_sub`.
fn complement_coords(p: u64, f_sub: LineSubgroup, c_sub: LineSubgroup) -> Result<Vec<usize>, ConstructionError> {
    let q = (p * p) as usize;
    let mut comp = vec![usize::MAX; q];
    let (f, g) = (f_sub.generator, c_sub.generator);
    for i in 0..p {
        for m in 0..p {
            let u = vector_index(p, [i * f[0] + m * g[0], i * f[1] + m * g[1]]);
            if comp[u] != usize::MAX {
                return Err(ConstructionError::InvalidMaps(format!("subgroups <{f:?}> and <{g:?}> do not span F_p^2")));
            }
            comp[u] = m as usize;
        }
    }
    Ok(comp)
}

/// Builds and verifies the scheme. `twists[a]` must be `Some` exactly for the
/// non-identity elements.
pub(crate) fn assemble(
    p: u64,
    group: &FiniteGroup,
    twists: &[Option<Twist>],
) -> Result<(Scheme, TwistedLayout, Vec<String>), ConstructionError> {
    let q = (p * p) as usize;
    let pu = p as usize;
    let delta = group.order();
    let n = q * delta;

    // Per element: base relation index and the two complement tables.
    let mut base = vec![0usize; delta];
    let mut tables = Vec::with_capacity(delta);
    let mut next = q;
    for a in 0..delta {
        match twists[a] {
            Some(t) => {
                base[a] = next;
                next += pu;
                let first = complement_coords(p, t.first, t.central)?;
                let second = complement_coords(p, t.second, t.central)?;
                tables.push(Some((first, second)));
            }
            None => tables.push(None),
        }
    }
    let rank = next;

    let sub = |u: usize, v: usize| {
        let (a, b) = (u % pu + pu - v % pu, u / pu + pu - v / pu);
        (a % pu) + (b % pu) * pu
    };
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        let (b, u) = (x / q, x % q);
        let binv = group.inv(b);
        for y in 0..n {
            let (c, v) = (y / q, y % q);
            let a = group.mul(binv, c);
            let rel = match &tables[a] {
                None => sub(u, v),
                Some((first, second)) => {
                    // u = f + x with x = m g; class from the C-part of v - x.
                    let g = twists[a].expect("twist").central.generator;
                    let m = first[u] as u64;
                    let shift = vector_index(p, [m * g[0], m * g[1]]);
                    let c_part = second[sub(v, shift)];
                    base[a] + (pu - c_part) % pu
                }
            };
            cells.push(rel as u32);
        }
    }
    let table = RelationTable::new(n, rank, cells)?;
    let scheme = verify_scheme(&table)?;
    let (scheme, map) = scheme.canonicalize();

    let mut labels = vec![String::new(); rank];
    let thin: Vec<usize> = (0..q).map(|w| map[w]).collect();
    for w in 0..q {
        let [w0, w1] = super::lc::vector_coords(p, w);
        labels[map[w]] = format!("h({w0},{w1})");
    }
    let mut cross = vec![Vec::new(); delta];
    for a in 0..delta {
        if let Some(t) = twists[a] {
            let g = t.central.generator;
            cross[a] = (0..pu).map(|j| map[base[a] + j]).collect();
            for j in 0..p {
                labels[map[base[a] + j as usize]] =
                    format!("t[{}]h({},{})", group.label(a), j * g[0] % p, j * g[1] % p);
            }
        }
    }
    Ok((scheme, TwistedLayout { thin, cross }, labels))
}
