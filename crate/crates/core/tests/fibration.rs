use std::collections::BTreeSet;

use lefschetz::fibration::builders::{build_theorem1, build_theorem3, build_trivial_bundle, build_xn, build_xn_with_d};
use lefschetz::fibration::certificate::certify_indecomposable;
use lefschetz::fibration::cover::{pullback, CoverSpec};
use lefschetz::fibration::io::{factorization_from_json, factorization_to_json};
use lefschetz::fibration::{check_subfactorization, fiber_sum, seam_selection, Engine, FibrationError, Gluing};
use lefschetz::homology::{noncomplex_flag, AbelianGroup, H1Class};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (1u32..(1 << n) - 1).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

#[test]
fn theorem1_family() {
    for g in 3..=6 {
        let f = build_theorem1(g).unwrap();
        assert_eq!(f.fiber_genus, g);
        assert_eq!(f.base_genus, 2);
        assert_eq!(f.critical_points(), 2);
        assert!(f.verify_relation().unwrap());
        assert!(f.verify_relation_in(Engine::Symplectic).unwrap());
        assert!(f.is_torelli_factorization().unwrap());
        assert!(f.is_relatively_minimal().unwrap());
        let cert = certify_indecomposable(&f, 200, 11).unwrap();
        assert!(cert.passed(), "g={g}: {:?}", cert.items);
        assert_eq!(cert.sampled_images.keys().collect::<Vec<_>>(), ["t^2"]);
        assert!(cert.conclusion().is_some());
    }
}

#[test]
fn xn_first_homology_and_noncomplex_flag() {
    let mut seen = BTreeSet::new();
    for n in 1..=20u32 {
        let f = build_xn(3, n).unwrap();
        assert!(f.verify_relation().unwrap(), "n={n}");
        let h1 = f.h1_total_space().unwrap();
        let torsion = if n == 1 { vec![] } else { vec![BigInt::from(n)] };
        assert_eq!(h1, AbelianGroup { torsion, rank: 9 });
        assert!(noncomplex_flag(&h1, 3, 2, f.is_relatively_minimal().unwrap()));
        assert!(seen.insert(h1.to_string()));
    }
    assert_eq!(build_xn(3, 0).unwrap(), build_theorem1(3).unwrap());
}

#[test]
fn xn_rejects_curves_meeting_the_pushed_subsurface() {
    let d = H1Class::a(4, 1);
    assert!(matches!(build_xn_with_d(4, 2, d), Err(FibrationError::BadParams(_))));
    let ok = build_xn_with_d(4, 2, H1Class::b(4, 4)).unwrap();
    assert!(ok.verify_relation().unwrap());
}

#[test]
fn theorem1_has_no_witness_selection() {
    for g in 3..=5 {
        let f = build_theorem1(g).unwrap();
        let total = f.units().len();
        for s in all_subsets(total) {
            let v = check_subfactorization(&f, &s).unwrap();
            assert!(!v.is_witness(), "g={g} selection {s:?}");
        }
    }
}

#[test]
fn fiber_sums_expose_their_seam() {
    let a = build_theorem1(3).unwrap();
    let b = build_xn(3, 2).unwrap();
    for (x, y) in [(&a, &a), (&a, &b), (&b, &a)] {
        let s = fiber_sum(x, y, &Gluing::identity()).unwrap();
        assert!(s.verify_relation().unwrap());
        let v = check_subfactorization(&s, &seam_selection(x)).unwrap();
        assert!(v.is_witness(), "{v:?}");
    }
    let trivial = build_trivial_bundle(3, 1, Some(2)).unwrap();
    let s = fiber_sum(&a, &trivial, &Gluing::identity()).unwrap();
    assert!(check_subfactorization(&s, &seam_selection(&a)).unwrap().is_witness());
}

#[test]
fn random_pullbacks_count_critical_points() {
    let f = build_theorem1(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = rand::Rng::gen_range(&mut rng, 1..=5);
        let cover = CoverSpec::random_transitive(2, m, &mut rng).unwrap();
        let cm = pullback(&f, &cover).unwrap();
        assert_eq!(cm.critical_points(), 2 * m);
        assert_eq!(cm.base_genus, m + 1);
        assert!(cm.verify_peripherals().unwrap());
        assert_eq!(cm.transversal.len(), m);
    }
}

#[test]
fn cyclic_pullback_keeps_the_certificate() {
    let f = build_theorem1(3).unwrap();
    let cm = pullback(&f, &CoverSpec::cyclic(2, 3).unwrap()).unwrap();
    let cert = lefschetz::fibration::certificate::certify(cm.ut.as_ref().unwrap(), 100, 3).unwrap();
    let kernel = cert.items.iter().find(|i| i.name == "kernel loops").unwrap();
    assert!(kernel.passed, "{}", kernel.detail);
    assert_eq!(cert.sampled_images.keys().collect::<Vec<_>>(), ["t^6"]);
}

#[test]
fn files_roundtrip() {
    for f in [build_theorem1(5).unwrap(), build_xn(3, 7).unwrap(), build_trivial_bundle(3, 2, None).unwrap()] {
        let back = factorization_from_json(&factorization_to_json(&f)).unwrap();
        assert_eq!(back, f);
    }
}

#[test]
fn theorem3_pipeline_without_phi() {
    let t = build_theorem3(4, 3, None).unwrap();
    assert!(t.verified());
    assert_eq!(t.omega_torelli.len(), 5);
    assert!(matches!(t.full_monodromy(), Err(FibrationError::MissingPhi)));
    assert!(build_theorem3(3, 3, None).is_err());
}
