mod common;

use proptest::prelude::*;
use seqcs::complexity::{
    admissible_cover, cs_complexity_at, sequential_witness, verify_witness, CsComplexity,
};
use seqcs::covering::{cover_within_excluding, CoverMode, CoverOptions};
use seqcs::field::EchelonBasis;
use seqcs::system::{associated_set, system_from_points};
use seqcs::{LinearSystem, Prime};

fn geometric_agrees(sys: &LinearSystem, excluded: &[usize]) {
    let z = associated_set(sys).unwrap();
    let rest: Vec<usize> = (0..sys.num_forms()).filter(|j| !excluded.contains(j)).collect();
    let pts: Vec<Vec<u64>> = rest.iter().map(|&j| z.points[j].clone()).collect();
    let ex: Vec<Vec<u64>> = excluded.iter().map(|&j| z.points[j].clone()).collect();
    for parts in 1..=rest.len().max(1) {
        let algebraic = admissible_cover(sys, &rest, excluded, parts).unwrap();
        let opts = CoverOptions::new(CoverMode::AffineSpans);
        let geometric = cover_within_excluding(z.p, z.dim, &pts, &ex, opts, parts).unwrap();
        assert_eq!(
            algebraic.is_some(),
            geometric.is_some(),
            "excluded {excluded:?}, {parts} parts"
        );
    }
}

#[test]
fn golden_geometric_consistency() {
    for (name, sys) in common::all_golden() {
        if !sys.is_translation_invariant() {
            continue;
        }
        let r = sys.num_forms();
        for i in 0..r {
            geometric_agrees(&sys, &[i]);
        }
        if r <= 8 {
            for i in 0..r {
                for j in i + 1..r {
                    geometric_agrees(&sys, &[i, j]);
                }
            }
        }
        eprintln!("{name}: consistent");
    }
}

/// Least `s` by trying every assignment of the other forms to `s + 1`
/// labelled parts.
fn brute_cs(sys: &LinearSystem, i: usize) -> Option<usize> {
    let p = sys.prime();
    let d = sys.num_vars();
    let rest: Vec<usize> = (0..sys.num_forms()).filter(|&j| j != i).collect();
    let target = sys.form(i);
    for parts in 1..=rest.len().max(1) {
        let total = parts.pow(rest.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut bases = vec![EchelonBasis::new(p, d); parts];
            for &j in &rest {
                bases[c % parts].insert(sys.form(j));
                c /= parts;
            }
            if bases.iter().all(|b| !b.contains(target)) {
                return Some(parts - 1);
            }
        }
    }
    None
}

fn small_system() -> impl Strategy<Value = LinearSystem> {
    (prop::sample::select(vec![2u64, 3, 5]), 2usize..=3, 2usize..=5).prop_flat_map(|(p, d, r)| {
        prop::collection::vec(prop::collection::vec(0..p, d), r).prop_map(move |rows| {
            LinearSystem::from_rows(Prime::new(p).unwrap(), &rows).unwrap()
        })
    })
}

fn ti_points() -> impl Strategy<Value = LinearSystem> {
    (prop::sample::select(vec![3u64, 5]), 1usize..=2, 2usize..=6).prop_flat_map(|(p, m, r)| {
        prop::collection::vec(prop::collection::vec(0..p, m), r).prop_map(move |mut pts| {
            pts.sort();
            pts.dedup();
            system_from_points(Prime::new(p).unwrap(), m, &pts).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cs_complexity_matches_brute_force(sys in small_system()) {
        for i in 0..sys.num_forms() {
            let got = cs_complexity_at(&sys, i).unwrap();
            prop_assert_eq!(got.value(), brute_cs(&sys, i));
            if let CsComplexity::Finite { certificate, .. } = got {
                for part in &certificate.parts {
                    let b = EchelonBasis::from_rows(
                        sys.prime(),
                        sys.num_vars(),
                        part.iter().map(|&j| sys.form(j)),
                    );
                    prop_assert!(!b.contains(sys.form(i)));
                }
            }
        }
    }

    #[test]
    fn found_witnesses_verify(sys in small_system(), k in 0usize..3) {
        for i in 0..sys.num_forms() {
            if let Some(w) = sequential_witness(&sys, i, k, 3).unwrap() {
                prop_assert!(verify_witness(&sys, &w).valid);
                prop_assert_eq!(w.i, i);
                // a length-1 witness is exactly a CS-complexity bound
                if w.len() == 1 {
                    let s = cs_complexity_at(&sys, i).unwrap().value().unwrap();
                    prop_assert!(s <= k);
                }
            }
            let one = sequential_witness(&sys, i, k, 1).unwrap();
            let s = cs_complexity_at(&sys, i).unwrap().value();
            prop_assert_eq!(one.is_some(), s.is_some_and(|s| s <= k));
        }
    }

    #[test]
    fn mutated_witnesses_fail(sys in small_system(), k in 0usize..3, victim in 0usize..8) {
        for i in 0..sys.num_forms() {
            let Some(w) = sequential_witness(&sys, i, k, 3).unwrap() else { continue };
            let mut bad = w.clone();
            let cover = &mut bad.covers[victim % w.len()];
            // parts may overlap, so the form is dropped from all of them
            if let Some(&form) = cover.parts.iter().flatten().next() {
                for part in &mut cover.parts {
                    part.retain(|&j| j != form);
                }
                prop_assert!(!verify_witness(&sys, &bad).valid);
            }
        }
    }

    #[test]
    fn random_geometric_consistency(sys in ti_points()) {
        for i in 0..sys.num_forms() {
            geometric_agrees(&sys, &[i]);
        }
    }
}
