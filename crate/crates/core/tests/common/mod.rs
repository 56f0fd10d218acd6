//! Fixtures and brute-force oracles shared by the integration tests. Nothing
//! here calls into the library's own counting or search code.
#![allow(dead_code)]

use ascheme_core::algebra::FiniteGroup;
use ascheme_core::constructions::{
    build_affine_unitriangular, build_field_affine, build_from_linear_space, build_lc_scheme, lc_extension_spec,
    verify_extension_conditions, BuildOptions, ConstructionReport, LcMaps,
};
use ascheme_core::geometry::IncidenceStructure;
use ascheme_core::io::translation_action;
use ascheme_core::{RelationTable, Scheme};
use proptest::prelude::*;

pub struct Entry {
    pub name: String,
    pub scheme: Scheme,
    /// Prime of the residue for built schemes.
    pub p: Option<u64>,
}

pub fn s3() -> FiniteGroup {
    let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let rows: Vec<Vec<usize>> =
        perms.iter().map(|a| perms.iter().map(|b| idx([b[a[0]], b[a[1]], b[a[2]]])).collect()).collect();
    FiniteGroup::from_rows(&rows, None).unwrap()
}

pub fn fixtures() -> Vec<Entry> {
    let thin = |name: &str, g: FiniteGroup| Entry { name: name.into(), scheme: Scheme::thin_from_group(&g), p: None };
    let mut out = vec![
        Entry { name: "one point".into(), scheme: Scheme::complete(1), p: None },
        thin("thin C2", FiniteGroup::cyclic(2)),
        thin("thin C3", FiniteGroup::cyclic(3)),
        thin("thin C2xC2", FiniteGroup::elementary_abelian(2, 2).unwrap()),
        thin("thin C5", FiniteGroup::cyclic(5)),
        thin("thin S3", s3()),
        thin("thin C3xC3", FiniteGroup::elementary_abelian(3, 2).unwrap()),
    ];
    for n in 2..=5 {
        out.push(Entry { name: format!("K{n}"), scheme: Scheme::complete(n), p: None });
    }
    out
}

fn entry(name: &str, r: ConstructionReport) -> Entry {
    Entry { name: name.into(), p: Some(r.p), scheme: r.scheme }
}

pub fn thm51(space: IncidenceStructure, p: u64) -> ConstructionReport {
    let action = translation_action(space.points()).unwrap();
    build_from_linear_space(&space, &action, p, &BuildOptions::default()).unwrap()
}

/// Every builder at the sizes the tests can afford, up to `max_points`.
pub fn constructed(max_points: usize) -> Vec<Entry> {
    let o = BuildOptions::default();
    let even = BuildOptions { allow_even: true, ..o.clone() };
    let mut out = Vec::new();
    let mut push = |n: usize, name: &str, f: &dyn Fn() -> ConstructionReport| {
        if n <= max_points {
            out.push(entry(name, f()));
        }
    };
    push(12, "twisted p=2 C3", &|| build_lc_scheme(2, &FiniteGroup::cyclic(3), None, &o).unwrap());
    push(16, "twisted p=2 C4", &|| build_lc_scheme(2, &FiniteGroup::cyclic(4), None, &o).unwrap());
    push(16, "twisted p=2 C2xC2", &|| {
        build_lc_scheme(2, &FiniteGroup::elementary_abelian(2, 2).unwrap(), None, &o).unwrap()
    });
    push(16, "unitriangular p=2", &|| build_affine_unitriangular(2, &o).unwrap());
    push(28, "field p=2", &|| build_field_affine(2, &even).unwrap());
    push(12, "linear space triangle p=2", &|| thm51(IncidenceStructure::triangle(), 2));
    push(27, "linear space triangle p=3", &|| thm51(IncidenceStructure::triangle(), 3));
    push(27, "twisted p=3 C3", &|| build_lc_scheme(3, &FiniteGroup::cyclic(3), None, &o).unwrap());
    push(36, "twisted p=3 C4", &|| build_lc_scheme(3, &FiniteGroup::cyclic(4), None, &o).unwrap());
    push(45, "twisted p=3 C5", &|| build_lc_scheme(3, &FiniteGroup::cyclic(5), None, &o).unwrap());
    push(63, "linear space Fano p=3", &|| thm51(IncidenceStructure::fano(), 3));
    push(81, "unitriangular p=3", &|| build_affine_unitriangular(3, &o).unwrap());
    push(117, "field p=3", &|| build_field_affine(3, &o).unwrap());
    push(150, "twisted p=5 S3", &|| build_lc_scheme(5, &s3(), None, &o).unwrap());
    if max_points >= 12 {
        let maps = LcMaps { l: vec![0, 1], c: vec![2, 2] };
        let spec = lc_extension_spec(2, &FiniteGroup::cyclic(3), &maps).unwrap();
        let scheme = verify_extension_conditions(&spec).unwrap().scheme.unwrap();
        out.push(Entry { name: "extension p=2 C3".into(), scheme, p: Some(2) });
    }
    out
}

pub fn corpus(max_points: usize) -> Vec<Entry> {
    let mut all: Vec<Entry> = fixtures().into_iter().filter(|e| e.scheme.order() <= max_points).collect();
    all.extend(constructed(max_points));
    all
}

/// Intersection numbers by counting `|x s ∩ y t*|` directly, or a reason the
/// table is not a scheme. Indexed `[s][t][u]`.
pub fn brute_intersections(t: &RelationTable) -> Result<Vec<Vec<Vec<u32>>>, String> {
    let n = t.points();
    let r = t.rank();
    let id = t.get(0, 0);
    for x in 0..n {
        for y in 0..n {
            if (t.get(x, y) == id) != (x == y) {
                return Err(format!("diagonal at ({x},{y})"));
            }
        }
    }
    // The transpose of each relation must be a single relation.
    let mut star = vec![None; r];
    for x in 0..n {
        for y in 0..n {
            let (s, back) = (t.get(x, y), t.get(y, x));
            match star[s] {
                None => star[s] = Some(back),
                Some(b) if b != back => return Err(format!("transpose of {s}")),
                _ => {}
            }
        }
    }
    let mut c: Vec<Vec<Vec<Option<u32>>>> = vec![vec![vec![None; r]; r]; r];
    for x in 0..n {
        for y in 0..n {
            let u = t.get(x, y);
            let mut counts = vec![vec![0u32; r]; r];
            for z in 0..n {
                counts[t.get(x, z)][t.get(z, y)] += 1;
            }
            for s in 0..r {
                for tt in 0..r {
                    match c[s][tt][u] {
                        None => c[s][tt][u] = Some(counts[s][tt]),
                        Some(k) if k != counts[s][tt] => return Err(format!("c[{s}][{tt}][{u}] not constant")),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(c.into_iter()
        .map(|a| a.into_iter().map(|b| b.into_iter().map(|v| v.unwrap_or(0)).collect()).collect())
        .collect())
}

/// Counts relation-preserving permutations by plain depth-first extension.
pub fn dfs_automorphism_count(t: &RelationTable) -> u64 {
    fn go(t: &RelationTable, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let k = map.len();
        let n = t.points();
        if k == n {
            return 1;
        }
        let mut total = 0;
        for y in 0..n {
            if used[y] || t.get(k, k) != t.get(y, y) {
                continue;
            }
            if (0..k).all(|i| t.get(i, k) == t.get(map[i], y) && t.get(k, i) == t.get(y, map[i])) {
                used[y] = true;
                map.push(y);
                total += go(t, map, used);
                map.pop();
                used[y] = false;
            }
        }
        total
    }
    go(t, &mut Vec::new(), &mut vec![false; t.points()])
}

/// Counts relation-preserving permutations among all `n!`.
pub fn scan_automorphism_count(t: &RelationTable) -> u64 {
    let n = t.points();
    let mut perm: Vec<usize> = (0..n).collect();
    let preserves = |p: &[usize]| (0..n).all(|x| (0..n).all(|y| t.get(x, y) == t.get(p[x], p[y])));
    // Heap's algorithm.
    let mut count = u64::from(preserves(&perm));
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            count += u64::from(preserves(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}

/// A prime, a group of admissible order, and admissible subgroup maps for
/// the twisted construction: `L` injective, `C` constant on inverse pairs and
/// avoiding both `L` values.
pub fn twisted_input() -> impl Strategy<Value = (u64, FiniteGroup, LcMaps)> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
        .prop_flat_map(|p| {
            let subgroups: Vec<usize> = (0..=p as usize).collect();
            (
                Just(p),
                3..=p as usize + 2,
                Just(subgroups).prop_shuffle(),
                any::<bool>(),
                prop::collection::vec(any::<usize>(), p as usize + 1),
            )
        })
        .prop_map(|(p, delta, shuffled, nonabelian, picks)| {
            let group = if delta == 6 && nonabelian { s3() } else { FiniteGroup::cyclic(delta) };
            let elems: Vec<usize> = (0..delta).filter(|&g| g != group.identity()).collect();
            let l: Vec<usize> = shuffled[..elems.len()].to_vec();
            let ord = |g: usize| elems.iter().position(|&e| e == g).unwrap();
            let mut c = vec![usize::MAX; elems.len()];
            for (k, &a) in elems.iter().enumerate() {
                if c[k] != usize::MAX {
                    continue;
                }
                let j = ord(group.inv(a));
                let allowed: Vec<usize> = (0..=p as usize).filter(|&i| i != l[k] && i != l[j]).collect();
                let pick = allowed[picks[k] % allowed.len()];
                c[k] = pick;
                c[j] = pick;
            }
            (p, group, LcMaps { l, c })
        })
}

/// Scheme identities checked from the library's intersection numbers.
pub fn identity_violations(s: &Scheme) -> Vec<String> {
    let n = s.order();
    let r = s.rank();
    let mut bad = Vec::new();
    if s.valencies().iter().sum::<usize>() != n {
        bad.push("sum of valencies".to_string());
    }
    for a in 0..r {
        for b in 0..r {
            let weighted: usize = (0..r).map(|u| s.c(a, b, u) as usize * s.valency(u)).sum();
            if weighted != s.valency(a) * s.valency(b) {
                bad.push(format!("sum_u c[{a}][{b}][u] n_u"));
            }
        }
        for u in 0..r {
            let row: usize = (0..r).map(|t| s.c(a, t, u) as usize).sum();
            if row != s.valency(a) {
                bad.push(format!("sum_t c[{a}][t][{u}] = {row}"));
            }
        }
    }
    bad
}
