mod common;

use ascheme_core::analysis::{automorphisms_with, SearchBudget};
use ascheme_core::scheme::{verify_scheme_with, VerifyMode};
use ascheme_core::RelationTable;
use common::{brute_intersections, corpus, dfs_automorphism_count, fixtures, scan_automorphism_count};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn intersection_numbers_match_direct_count() {
    for e in corpus(45) {
        let s = &e.scheme;
        let oracle = brute_intersections(s.table()).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        for a in 0..s.rank() {
            for b in 0..s.rank() {
                for u in 0..s.rank() {
                    assert_eq!(s.c(a, b, u), oracle[a][b][u], "{}: c[{a}][{b}][{u}]", e.name);
                }
            }
        }
    }
}

#[test]
fn both_verify_modes_accept_the_corpus() {
    for e in corpus(28) {
        for mode in [VerifyMode::Fast, VerifyMode::Full] {
            assert!(verify_scheme_with(e.scheme.table(), mode).is_ok(), "{} {mode:?}", e.name);
        }
    }
}

fn swapped(t: &RelationTable, a: (usize, usize), b: (usize, usize)) -> Option<RelationTable> {
    let mut rows = t.rows();
    let va = rows[a.0][a.1];
    rows[a.0][a.1] = rows[b.0][b.1];
    rows[b.0][b.1] = va;
    RelationTable::from_rows(&rows).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Swapping two cells mostly breaks a scheme; whatever happens, both
    /// verification modes must agree with direct counting.
    #[test]
    fn verify_modes_agree_with_direct_count_on_perturbed_tables(
        pick in 0usize..64, cells in prop::array::uniform4(0usize..28)
    ) {
        let all = corpus(28);
        let e = &all[pick % all.len()];
        let t = e.scheme.table();
        let n = t.points();
        let (a, b) = ((cells[0] % n, cells[1] % n), (cells[2] % n, cells[3] % n));
        if let Some(bad) = swapped(t, a, b) {
            let oracle = brute_intersections(&bad).is_ok();
            prop_assert_eq!(verify_scheme_with(&bad, VerifyMode::Fast).is_ok(), oracle);
            prop_assert_eq!(verify_scheme_with(&bad, VerifyMode::Full).is_ok(), oracle);
        }
    }
}

#[test]
fn automorphism_order_matches_exhaustive_scan() {
    let budget = SearchBudget::default();
    for e in fixtures().into_iter().filter(|e| e.scheme.order() <= 6) {
        let order = automorphisms_with(&e.scheme, &budget).unwrap().order;
        assert_eq!(order, BigUint::from(scan_automorphism_count(e.scheme.table())), "{}", e.name);
    }
}

#[test]
fn automorphism_order_matches_depth_first_count() {
    let budget = SearchBudget::default();
    for e in corpus(45) {
        let order = automorphisms_with(&e.scheme, &budget).unwrap().order;
        assert_eq!(order, BigUint::from(dfs_automorphism_count(e.scheme.table())), "{}", e.name);
    }
}

#[test]
fn twisted_scheme_on_45_points_has_five_automorphisms() {
    let e = corpus(45).into_iter().find(|e| e.name == "twisted p=3 C5").unwrap();
    assert_eq!(dfs_automorphism_count(e.scheme.table()), 5);
}
