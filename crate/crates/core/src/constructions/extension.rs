//! Schemes obtained by gluing a thin scheme `H~` to one relation `t_s` per
//! non-trivial coset `s` of `H`.
//!
//! Points are the elements of a group `G` acting on itself by right
//! multiplication, so `h~ = {(x, xh)}`. The relation for the coset `s` must
//! lie in the region `{(x, y) | x^-1 y in s}`; this orientation makes the
//! region of a product `t_s . t_u` the region of `su`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::lc::{non_identity, subgroups_order_p, LcMaps};
use crate::algebra::FiniteGroup;
use crate::error::ConstructionError;
use crate::scheme::{verify_scheme, RelationTable, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRelation {
    /// Any element of the coset this relation belongs to.
    pub sigma: usize,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub group: FiniteGroup,
    /// Elements of the normal subgroup `H`.
    pub normal: Vec<usize>,
    pub relations: Vec<ExtensionRelation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFlags {
    pub partition: bool,
    pub trans: bool,
    pub product: bool,
}

impl ExtensionFlags {
    pub fn all(&self) -> bool {
        self.partition && self.trans && self.product
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub flags: ExtensionFlags,
    /// One line per violated instance.
    pub witnesses: Vec<String>,
    /// The assembled scheme, present when all three conditions hold.
    pub scheme: Option<Scheme>,
}

type Rel = BTreeSet<(usize, usize)>;

struct Ctx<'a> {
    g: &'a FiniteGroup,
    h: &'a [usize],
    coset_of: Vec<usize>,
}

impl Ctx<'_> {
    /// `h~ . t = {(x h^-1, y) | (x, y) in t}`.
    fn left(&self, h: usize, t: &Rel) -> Rel {
        let hi = self.g.inv(h);
        t.iter().map(|&(x, y)| (self.g.mul(x, hi), y)).collect()
    }

    /// `t . h~ = {(x, y h) | (x, y) in t}`.
    fn right(&self, t: &Rel, h: usize) -> Rel {
        t.iter().map(|&(x, y)| (x, self.g.mul(y, h))).collect()
    }

    fn region_coset(&self, x: usize, y: usize) -> usize {
        self.coset_of[self.g.mul(self.g.inv(x), y)]
    }

    fn family(&self, f: impl Fn(usize) -> Rel) -> Vec<Rel> {
        let set: BTreeSet<Rel> = self.h.iter().map(|&h| f(h)).collect();
        set.into_iter().collect()
    }
}

fn product_counts(n: usize, a: &Rel, b: &Rel) -> Vec<u32> {
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(y, z) in b {
        rows[y].push(z);
    }
    let mut m = vec![0u32; n * n];
    for &(x, y) in a {
        for &z in &rows[y] {
            m[x * n + z] += 1;
        }
    }
    m
}

/// Checks the partition, transpose and product conditions and, when all
/// hold, assembles `{ h~ . t_s }` and verifies it as a scheme.
///
/// The product condition is checked as the literal matrix identity:
/// `A_s A_u` must equal `|K_s| sum_{k in K_s} A_k~` when `su = 1` and a
/// positive multiple of `sum A_r` over the distinct `r = t_{su} . h~`
/// otherwise, with `K_s = { h~ | h~ . t_s = t_s }`.
pub fn verify_extension_conditions(spec: &ExtensionSpec) -> Result<ExtensionOutcome, ConstructionError> {
    let g = &spec.group;
    let n = g.order();
    if !g.is_normal(&spec.normal) {
        return Err(ConstructionError::Extension("H is not a normal subgroup".into()));
    }
    let mut h = spec.normal.clone();
    h.sort_unstable();
    h.dedup();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in std::iter::once(g.identity()).chain(0..n) {
        if coset_of[x] == usize::MAX {
            for y in g.right_coset(&h, x) {
                coset_of[y] = reps.len();
            }
            reps.push(x);
        }
    }
    let m = reps.len();
    let ctx = Ctx { g, h: &h, coset_of };
    let quot = |s: usize, u: usize| ctx.coset_of[g.mul(reps[s], reps[u])];
    let quot_inv = |s: usize| ctx.coset_of[g.inv(reps[s])];

    let mut t: Vec<Option<Rel>> = vec![None; m];
    for r in &spec.relations {
        if r.sigma >= n || r.pairs.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(ConstructionError::Extension("element index out of range".into()));
        }
        let s = ctx.coset_of[r.sigma];
        if s == 0 || t[s].is_some() {
            return Err(ConstructionError::Extension(format!("coset of element {} given twice or trivial", r.sigma)));
        }
        t[s] = Some(r.pairs.iter().copied().collect());
    }
    if let Some(s) = (1..m).find(|&s| t[s].is_none()) {
        return Err(ConstructionError::Extension(format!("no relation for the coset of element {}", reps[s])));
    }
    let t: Vec<Rel> = t.into_iter().map(Option::unwrap_or_default).collect();

    let mut witnesses = Vec::new();
    let mut flags = ExtensionFlags { partition: true, trans: true, product: true };

    // Partition.
    let mut families: Vec<Vec<Rel>> = vec![Vec::new(); m];
    for s in 1..m {
        let lefts = ctx.family(|hh| ctx.left(hh, &t[s]));
        let rights = ctx.family(|hh| ctx.right(&t[s], hh));
        let sigma = reps[s];
        if let Some(&(x, y)) = t[s].iter().find(|&&(x, y)| ctx.region_coset(x, y) != s) {
            flags.partition = false;
            witnesses.push(format!("partition: pair ({x},{y}) of t[{sigma}] lies outside its region"));
        }
        if lefts != rights {
            flags.partition = false;
            witnesses.push(format!("partition: left and right H-translates of t[{sigma}] differ"));
        }
        let mut seen = HashSet::new();
        let mut covered = 0usize;
        for r in &lefts {
            for &pair in r {
                if !seen.insert(pair) {
                    flags.partition = false;
                    witnesses.push(format!("partition: pair {pair:?} lies in two translates of t[{sigma}]"));
                }
                covered += 1;
            }
        }
        let region = n * h.len();
        if seen.len() != region || covered != region {
            flags.partition = false;
            witnesses.push(format!("partition: translates of t[{sigma}] cover {} of {region} pairs", seen.len()));
        }
        families[s] = lefts;
    }

    // Transpose.
    for s in 1..m {
        let star: Rel = t[s].iter().map(|&(x, y)| (y, x)).collect();
        if star != t[quot_inv(s)] {
            flags.trans = false;
            witnesses.push(format!("trans: t[{}]* != t[{}]", reps[s], g.inv(reps[s])));
        }
    }

    // Product.
    for s in 1..m {
        for u in 1..m {
            let got = product_counts(n, &t[s], &t[u]);
            let su = quot(s, u);
            let (pattern, fixed) = if su == 0 {
                let k: Vec<usize> = h.iter().copied().filter(|&hh| ctx.left(hh, &t[s]) == t[s]).collect();
                let mut pat = vec![0u32; n * n];
                for &kk in &k {
                    for x in 0..n {
                        pat[x * n + g.mul(x, kk)] = 1;
                    }
                }
                (pat, Some(k.len() as u32))
            } else {
                let mut pat = vec![0u32; n * n];
                for r in &families[su] {
                    for &(x, y) in r {
                        pat[x * n + y] += 1;
                    }
                }
                (pat, None)
            };
            let scale = fixed.or_else(|| (0..n * n).find(|&i| pattern[i] != 0).map(|i| got[i] / pattern[i].max(1)));
            let ok = matches!(scale, Some(c) if c > 0) && {
                let c = scale.unwrap_or(0);
                got.iter().zip(&pattern).all(|(&a, &b)| a == c * b)
            };
            if !ok {
                flags.product = false;
                witnesses.push(format!("product: A(t[{}]) A(t[{}]) has the wrong form", reps[s], reps[u]));
            }
        }
    }

    let scheme = if flags.all() { Some(assemble(&ctx, &families)?) } else { None };
    Ok(ExtensionOutcome { flags, witnesses, scheme })
}

fn assemble(ctx: &Ctx<'_>, families: &[Vec<Rel>]) -> Result<Scheme, ConstructionError> {
    let g = ctx.g;
    let n = g.order();
    let mut cells = vec![u32::MAX; n * n];
    let mut next = 0u32;
    for &hh in ctx.h {
        for x in 0..n {
            cells[x * n + g.mul(x, hh)] = next;
        }
        next += 1;
    }
    for fam in families.iter().skip(1) {
        for r in fam {
            for &(x, y) in r {
                cells[x * n + y] = next;
            }
            next += 1;
        }
    }
    if cells.contains(&u32::MAX) {
        return Err(ConstructionError::Partition("relations do not cover every pair".into()));
    }
    let table = RelationTable::new(n, next as usize, cells)?;
    Ok(verify_scheme(&table)?.canonicalize().0)
}

/// The thin residue and the relations `t_a` of the twisted construction,
/// written as an extension over `G x F_p^2` (element `g p^2 + w`). The maps
/// are only range-checked, so invalid choices can be fed to the validator.
pub fn lc_extension_spec(p: u64, group: &FiniteGroup, maps: &LcMaps) -> Result<ExtensionSpec, ConstructionError> {
    let subgroups = subgroups_order_p(p)?;
    let elems = non_identity(group);
    if maps.l.len() != elems.len()
        || maps.c.len() != elems.len()
        || maps.l.iter().chain(&maps.c).any(|&i| i > p as usize)
    {
        return Err(ConstructionError::InvalidMaps("maps do not fit the group".into()));
    }
    let v = FiniteGroup::elementary_abelian(p, 2)?;
    let full = FiniteGroup::direct_product(group, &v);
    let q = (p * p) as usize;
    let add = |a: usize, b: usize| v.mul(a, b);
    let normal: Vec<usize> = (0..q).map(|w| group.identity() * q + w).collect();
    let ord = |g: usize| elems.iter().position(|&e| e == g).expect("non-identity");
    let relations = elems
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let first = subgroups[maps.l[k]].elements(p);
            let second = subgroups[maps.l[ord(group.inv(a))]].elements(p);
            let central = subgroups[maps.c[k]].elements(p);
            let mut pairs = Vec::new();
            for b in 0..group.order() {
                let c = group.mul(b, a);
                for &x in &central {
                    for &l1 in &first {
                        for &l2 in &second {
                            pairs.push((b * q + add(l1, x), c * q + add(l2, x)));
                        }
                    }
                }
            }
            ExtensionRelation { sigma: a * q, pairs }
        })
        .collect();
    Ok(ExtensionSpec { group: full, normal, relations })
}
