mod common;

use common::*;
use lefschetz::braid::{self, BraidWord};
use lefschetz::homology::{
    intersection, is_symplectic, smith_normal_form, standard_form, transvection, H1Class, IntMatrix,
};
use lefschetz::raag::{self, complement_cycle, iterated_commutator, raag_normal_form, CommGraph};
use lefschetz::surface::{t_gen, RandomOrder, SurfaceContext, UtContext};
use lefschetz::words::{Gen, GenMap, Target, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters(rank: u32, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64)]), 0..max)
}

fn word(rank: u32, max: usize) -> impl Strategy<Value = Word> {
    letters(rank, max).prop_map(|v| from_units(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduce_is_idempotent(w in word(4, 30)) {
        let again = Word::reduce(w.letters().iter().copied());
        prop_assert_eq!(&again, &w);
        let units: Vec<Letter> = units(&w);
        prop_assert!(units.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1)));
    }

    #[test]
    fn inverse_cancels(w in word(5, 30)) {
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert!(w.inverse().mul(&w).is_identity());
    }

    #[test]
    fn apply_map_is_multiplicative(u in word(3, 12), v in word(3, 12), imgs in prop::collection::vec(word(4, 6), 3)) {
        let mut map = GenMap::new(Target::Free);
        for (i, img) in imgs.into_iter().enumerate() {
            map.insert(Gen(i as u32), img);
        }
        let lhs = map.apply(&u.mul(&v)).unwrap();
        let rhs = map.apply(&u).unwrap().mul(&map.apply(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dehn_output_has_no_long_piece(h in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SurfaceContext::new(h).unwrap();
        let mut w = normal_closure_product(&mut rng, h, 2, 4);
        w.append(&random_word(&mut rng, 2 * h as u32, 20));
        let out = units(&ctx.dehn_reduce(&w).unwrap());
        prop_assert!(longest_relator_piece(&out, h) <= 2 * h);
        prop_assert!(out.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1)));
    }

    #[test]
    fn dehn_sound_on_normal_closure(h in 2usize..5, k in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SurfaceContext::new(h).unwrap();
        prop_assert!(ctx.is_trivial(&normal_closure_product(&mut rng, h, k, 6)).unwrap());
    }

    #[test]
    fn dehn_sound_on_certified_words(h in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SurfaceContext::new(h).unwrap();
        let w = random_reduced(&mut rng, 2 * h as u32, 1 + (seed % 24) as usize);
        prop_assume!(greendlinger_certified(&w, h));
        prop_assert!(!ctx.is_trivial(&from_units(&w)).unwrap());
    }

    #[test]
    fn ut_relator_is_fiber_power(g0 in 2usize..7) {
        let ctx = UtContext::new(g0).unwrap();
        let x = ctx.reduce(&from_units(&surface_relator(g0)));
        prop_assert!(x.base.is_identity());
        prop_assert_eq!(x.t_exp, 2 * g0 as i64 - 2);
        prop_assert!(x.central.is_empty());
    }

    #[test]
    fn ut_reduction_is_confluent(g0 in 2usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = UtContext::new(g0).unwrap();
        let mut w = normal_closure_product(&mut rng, g0, 2, 3);
        w.append(&random_word(&mut rng, 2 * g0 as u32 + 1, 16));
        let stack = ctx.reduce(&w);
        let ordered = ctx.reduce_with_order(&w, &mut RandomOrder(ChaCha8Rng::seed_from_u64(seed ^ 1)));
        prop_assert!(ctx.equal(&stack, &ordered).unwrap());
        if stack.base.is_identity() || ordered.base.is_identity() {
            prop_assert_eq!(stack, ordered);
        }
    }

    #[test]
    fn ut_reduce_is_multiplicative(g0 in 2usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = UtContext::new(g0).unwrap();
        let u = random_word(&mut rng, 2 * g0 as u32 + 1, 14);
        let v = random_word(&mut rng, 2 * g0 as u32 + 1, 14);
        let lhs = ctx.reduce(&u.mul(&v));
        let rhs = ctx.mul(&ctx.reduce(&u), &ctx.reduce(&v)).unwrap();
        prop_assert!(ctx.equal(&lhs, &rhs).unwrap());
        // t is central
        let t = Word::gen(t_gen(g0));
        prop_assert!(ctx.equal(&ctx.reduce(&t.mul(&u)), &ctx.reduce(&u.mul(&t))).unwrap());
    }

    #[test]
    fn transvections_are_symplectic(g in 1usize..4, coords in prop::collection::vec(-3i64..4, 6), p in -3i64..4) {
        let c = H1Class::new(coords[..2 * g].to_vec());
        let m = transvection(&c, p, g).unwrap();
        let j = standard_form(g);
        prop_assert_eq!(m.matrix().transpose().mul(&j).mul(m.matrix()), j);
        prop_assert!(is_symplectic(m.matrix(), g));
        // det = 1 by an independent elimination
        let rows: Vec<Vec<BigInt>> = (0..2 * g).map(|i| m.matrix().row(i).to_vec()).collect();
        prop_assert_eq!(bareiss_det(&rows), BigInt::one());
    }

    #[test]
    fn transvection_relations(g in 2usize..4, x in prop::collection::vec(-2i64..3, 8), y in prop::collection::vec(-2i64..3, 8)) {
        let c = H1Class::new(x[..2 * g].to_vec());
        let d = H1Class::new(y[..2 * g].to_vec());
        let tc = transvection(&c, 1, g).unwrap();
        let td = transvection(&d, 1, g).unwrap();
        match intersection(&c, &d).unwrap().abs() {
            0 => prop_assert_eq!(tc.mul(&td), td.mul(&tc)),
            1 => prop_assert_eq!(tc.mul(&td).mul(&tc), td.mul(&tc).mul(&td)),
            _ => {}
        }
        prop_assert!(tc.mul(&transvection(&c, -1, g).unwrap()).is_identity());
    }

    #[test]
    fn smith_form_is_sound(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-6i64..7, 16)) {
        let a = IntMatrix::from_rows(&(0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect::<Vec<_>>());
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let square = |m: &IntMatrix| (0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>();
        prop_assert_eq!(bareiss_det(&square(&s.u)).abs(), BigInt::one());
        prop_assert_eq!(bareiss_det(&square(&s.v)).abs(), BigInt::one());
        if rows == cols {
            let prod: BigInt = diag.iter().product();
            prop_assert_eq!(bareiss_det(&square(&a)).abs(), prod);
        }
    }

    #[test]
    fn braid_equal_is_a_congruence(n in 3usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_braid(&mut rng, n, 10);
        let b = rewrite_braid(&mut rng, &a, 30);
        let c = random_braid(&mut rng, n, 6);
        prop_assert!(braid::braid_equal(&a, &b).unwrap());
        prop_assert!(braid::braid_equal(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()).unwrap());
        prop_assert!(braid::braid_equal(&c.mul(&a).unwrap(), &c.mul(&b).unwrap()).unwrap());
        // the exponent sum is an invariant
        let s1 = BraidWord::sigma(n, 1, 1).unwrap();
        prop_assert!(!braid::braid_equal(&a, &b.mul(&s1).unwrap()).unwrap());
    }

    #[test]
    fn deletion_is_a_homomorphism(n in 3usize..6, seed in any::<u64>(), mask in 1u32..32) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_pure(&mut rng, n, 3);
        let y = random_pure(&mut rng, n, 3);
        let keep = strand_set(&(1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect::<Vec<_>>());
        prop_assume!(!keep.is_empty());
        let lhs = braid::delete_strands(&x.mul(&y).unwrap(), &keep).unwrap();
        let rhs = braid::delete_strands(&x, &keep).unwrap().mul(&braid::delete_strands(&y, &keep).unwrap()).unwrap();
        prop_assert!(braid::braid_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn linking_numbers_are_invariant(n in 3usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pure(&mut rng, n, 4);
        let q = rewrite_braid(&mut rng, &p, 40);
        prop_assert_eq!(braid::linking_numbers(&p).unwrap(), braid::linking_numbers(&q).unwrap());
        let sq = pure_generator(n, 1, n);
        let l = braid::linking_numbers(&p.mul(&sq).unwrap()).unwrap();
        prop_assert_eq!(l[0][n - 1], braid::linking_numbers(&p).unwrap()[0][n - 1] + 1);
    }

    #[test]
    fn permutation_is_a_homomorphism(n in 2usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_braid(&mut rng, n, 8);
        let y = random_braid(&mut rng, n, 8);
        let (px, py) = (braid::permutation(&x), braid::permutation(&y));
        let composed: Vec<usize> = (0..n).map(|k| py[px[k]]).collect();
        prop_assert_eq!(braid::permutation(&x.mul(&y).unwrap()), composed);
        prop_assert!(braid::is_pure(&random_pure(&mut rng, n.max(2), 2)));
    }

    #[test]
    fn raag_normal_form_is_canonical(n in 4usize..7, w in letters(6, 14), seed in any::<u64>()) {
        let graph = complement_cycle(n).unwrap();
        let w: Vec<Letter> = w.into_iter().filter(|&(g, _)| (g as usize) < n).collect();
        let nf = raag_normal_form(&from_units(&w), &graph);
        prop_assert_eq!(&raag_normal_form(&nf, &graph), &nf);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shuffled = random_swaps(&mut rng, &w, &graph, 50);
        prop_assert_eq!(&raag_normal_form(&from_units(&shuffled), &graph), &nf);
        prop_assert!(raag::raag_equal(&from_units(&w), &nf, &graph));
    }

    #[test]
    fn raag_normal_form_is_geodesic(n in 4usize..6, w in letters(5, 8)) {
        let graph = complement_cycle(n).unwrap();
        let w: Vec<Letter> = w.into_iter().filter(|&(g, _)| (g as usize) < n).collect();
        let nf = raag_normal_form(&from_units(&w), &graph);
        prop_assert_eq!(nf.len(), raag_geodesic_bfs(&w, &graph));
    }

    #[test]
    fn iterated_commutators_unfold(k in 1usize..6, a in word(2, 4), b in word(2, 4)) {
        let next = iterated_commutator(k + 1, &a, &b);
        prop_assert_eq!(next, Word::commutator(&a, &iterated_commutator(k, &a, &b)));
        prop_assert_eq!(iterated_commutator(1, &a, &b), b);
    }
}

#[test]
fn psi_prime_pattern_small_powers() {
    for n in 3..=6 {
        for p in [1, 2] {
            let g = raag::psi_prime_commutation_graph(n, p, 1_000_000).unwrap();
            assert_eq!(g, complement_cycle(n).unwrap(), "n={n} p={p}");
        }
    }
}

#[test]
fn psi_pattern_on_the_disk() {
    for n in 3..=5 {
        let map = raag::build_psi(n, 3).unwrap().map;
        let g = raag::commutation_graph(&map, n, &raag::BraidOracle { strands: n, budget: 1_000_000 }).unwrap();
        assert_eq!(g, complement_cycle(n).unwrap());
    }
}

#[test]
fn empty_graph_is_free() {
    let graph = CommGraph::new(3, Vec::<(usize, usize)>::new()).unwrap();
    let w = from_units(&[(0, 1), (1, 1), (0, -1)]);
    assert_eq!(raag_normal_form(&w, &graph).len(), 3);
}
