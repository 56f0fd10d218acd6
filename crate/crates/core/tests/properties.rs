mod common;

use ascheme_core::algebra::FiniteGroup;
use ascheme_core::constructions::{build_lc_scheme, BuildOptions};
use ascheme_core::io::{read_scheme, write_scheme};
use ascheme_core::{check_conditions, verify_scheme, Scheme};
use common::{corpus, identity_violations, twisted_input, Entry};
use proptest::prelude::*;

/// `(A) and (B)` imply `delta >= 3`, `delta <= p^2 + p + 1` and
/// `r = p^2 + (delta - 1) p`.
fn structural_violations(s: &Scheme, p: u64) -> Vec<String> {
    let c = check_conditions(s, p).unwrap();
    let delta = s.delta().unwrap();
    let q = p as usize;
    let mut bad = Vec::new();
    if c.a && c.b {
        if delta < 3 {
            bad.push(format!("delta {delta} < 3"));
        }
        if delta > q * q + q + 1 {
            bad.push(format!("delta {delta} > p^2 + p + 1"));
        }
        if s.rank() != q * q + (delta - 1) * q {
            bad.push(format!("rank {} for delta {delta}", s.rank()));
        }
    }
    bad
}

fn primes_for(e: &Entry) -> Vec<u64> {
    e.p.map_or(vec![2, 3, 5], |p| vec![p])
}

#[test]
fn corpus_satisfies_identities_and_bounds() {
    for e in corpus(117) {
        assert_eq!(identity_violations(&e.scheme), Vec::<String>::new(), "{}", e.name);
        for p in primes_for(&e) {
            assert_eq!(structural_violations(&e.scheme, p), Vec::<String>::new(), "{} p={p}", e.name);
        }
        if let Some(p) = e.p {
            let c = check_conditions(&e.scheme, p).unwrap();
            assert!(c.a && c.b, "{}", e.name);
        }
    }
}

#[test]
fn codec_round_trips_the_corpus() {
    for e in corpus(117) {
        let text = write_scheme(&e.scheme);
        let back = read_scheme(&text).unwrap();
        assert_eq!(write_scheme(&back), text, "{}", e.name);
        assert_eq!(back.table(), e.scheme.canonicalize().0.table(), "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn admissible_maps_always_give_a_scheme((p, group, maps) in twisted_input()) {
        let r = build_lc_scheme(p, &group, Some(&maps), &BuildOptions::default()).unwrap();
        prop_assert!(r.conditions.a && r.conditions.b && r.conditions.con_three);
        prop_assert_eq!(r.delta, group.order());
        prop_assert!(identity_violations(&r.scheme).is_empty());
        prop_assert!(structural_violations(&r.scheme, p).is_empty());
    }

    #[test]
    fn relabelling_points_preserves_everything(pick in 0usize..64, seed in prop::collection::vec(any::<u32>(), 45)) {
        let all = corpus(45);
        let e = &all[pick % all.len()];
        let n = e.scheme.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (seed[i % seed.len()], i));
        let moved = verify_scheme(e.scheme.permute_points(&perm).table()).unwrap();
        prop_assert_eq!(moved.valency_multiset(), e.scheme.valency_multiset());
        prop_assert_eq!(moved.delta().unwrap(), e.scheme.delta().unwrap());
        for p in primes_for(e) {
            prop_assert_eq!(check_conditions(&moved, p).unwrap(), check_conditions(&e.scheme, p).unwrap());
        }
    }

    #[test]
    fn thin_schemes_never_meet_b(k in 1usize..40) {
        let s = Scheme::thin_from_group(&FiniteGroup::cyclic(k));
        prop_assert_eq!(s.delta().unwrap(), k);
        for p in [2u64, 3, 5] {
            prop_assert!(!check_conditions(&s, p).unwrap().b);
        }
    }
}
