use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selmer_core::matrix::{self, Mat};
use selmer_core::orthogonal::{self, OrthSpace, SoSampler};
use selmer_core::vinberg_pair::{self, PairRep};
use selmer_core::{Error, FiniteField, Ring};

fn rep(m: usize, q: u32) -> PairRep<FiniteField> {
    PairRep::new(FiniteField::prime(q).unwrap(), m).unwrap()
}

fn random_mat(rep: &PairRep<FiniteField>, rng: &mut impl Rng) -> Mat<u32> {
    let n = rep.n();
    let q = rep.field.q();
    Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..q)).collect())
}

fn random_invariants(rep: &PairRep<FiniteField>, rng: &mut impl Rng) -> Vec<u32> {
    (0..rep.n()).map(|_| rng.gen_range(0..rep.field.q())).collect()
}

/// Nonzero band entries, zeros to their right, anything to their left.
fn random_band(rep: &PairRep<FiniteField>, rng: &mut impl Rng) -> Mat<u32> {
    let (m, n, q) = (rep.m, rep.n(), rep.field.q());
    let mut a = random_mat(rep, rng);
    for i in 2..=n {
        let c = if i <= m + 1 { n + 2 - i } else { 2 * m + 2 - i };
        a[(i - 1, c - 1)] = rng.gen_range(1..q);
        for j in c + 1..=n {
            a[(i - 1, j - 1)] = 0;
        }
    }
    a
}

fn so3_f5() -> Vec<Mat<u32>> {
    orthogonal::so_enumerate(&OrthSpace::split(FiniteField::prime(5).unwrap(), 1).unwrap(), 1000).unwrap()
}

#[test]
fn invariant_examples() {
    let r = rep(1, 5);
    let cyclic = Mat::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
    assert_eq!(r.invariants(&cyclic), vec![0, 0, 1]);
    assert_eq!(r.invariants(&Mat::filled(3, 3, 0)), vec![0, 0, 0]);
    let f = &r.field;
    assert_eq!(r.char_poly(&[0, 0, 1]), selmer_core::poly::PolyRing::new(f.clone()).from_ints(&[1, 0, 0, 1]));
}

#[test]
fn block_char_poly_is_f_of_x_squared() {
    let r = rep(1, 7);
    let f = &r.field;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = random_mat(&r, &mut rng);
        let cp = matrix::charpoly_berkowitz(f, &r.block(&a));
        let g = r.char_poly(&r.invariants(&a));
        for (k, x) in cp.iter().enumerate() {
            let want = if k % 2 == 0 { g.coeffs().get(k / 2).copied().unwrap_or(0) } else { 0 };
            assert_eq!(*x, want, "degree {k}");
        }
    }
}

#[test]
fn kostant_templates_for_m1() {
    let r = rep(1, 7);
    assert_eq!(r.kostant(&[0, 0, 1], 1), Mat::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]));
    let f = &r.field;
    let half = |x: u32| f.mul(&x, &4);
    for c in [[1u32, 2, 3], [6, 0, 5], [3, 3, 0]] {
        let want = Mat::from_rows(vec![vec![f.neg(&half(c[1])), c[2], 0], vec![half(c[0]), 0, 1], vec![1, 0, 0]]);
        let k = r.kostant(&c, 1);
        assert_eq!(k, want);
        assert_eq!(matrix::det_gauss(f, &k), c[2]);
        assert_eq!(r.kostant(&c, 2), k.adjoint());
    }
}

#[test]
fn second_section_round_trip_over_f5() {
    let r = rep(1, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = random_invariants(&r, &mut rng);
        let k = r.kostant(&c, 2);
        assert_eq!(r.invariants(&k), c);
        assert!(r.is_regular(&k));
    }
}

#[test]
fn kostant_sections_hold_for_many_invariants() {
    for (m, q) in [(1usize, 5u32), (2, 7), (3, 11)] {
        let r = rep(m, q);
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64 * 100 + q as u64);
        for _ in 0..1000 {
            let c = random_invariants(&r, &mut rng);
            for which in [1, 2] {
                let k = r.kostant(&c, which);
                assert_eq!(matrix::det_gauss(&r.field, &k), c[2 * m]);
                assert_eq!(r.invariants(&k), c);
            }
        }
    }
}

#[test]
fn regularity_examples() {
    let r = rep(1, 5);
    let f = &r.field;
    assert!(!r.is_regular(&Mat::filled(3, 3, 0)));
    assert!(!r.is_regular(&Mat::identity(f, 3)));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let c = random_invariants(&r, &mut rng);
        assert!(r.is_regular(&r.kostant(&c, 1)));
        assert!(r.is_regular(&r.kostant(&c, 2)));
    }
}

#[test]
fn characteristic_hypothesis() {
    assert!(matches!(rep(1, 3).check_characteristic(), Err(Error::Precondition(_))));
    assert!(rep(1, 5).check_characteristic().is_ok());
    assert!(matches!(PairRep::new(FiniteField::prime(5).unwrap(), 0), Err(Error::Domain(_))));
}

#[test]
fn stabilizer_examples() {
    let r = rep(1, 5);
    let g = so3_f5();
    // x^3 - x, x(x^2 + 2), x^3 + x + 1
    for (c, want) in [([0u32, 4, 0], 4u64), ([0, 2, 0], 2), ([0, 1, 1], 1)] {
        let poly = r.char_poly(&c);
        assert_eq!(vinberg_pair::stabilizer_order_pair(&r.field, &poly).unwrap(), want, "c = {c:?}");
        for which in [1, 2] {
            assert_eq!(r.stabilizer_count(&r.kostant(&c, which), &g), want, "c = {c:?}");
        }
    }
}

#[test]
fn x_squared_detection() {
    let f = FiniteField::prime(5).unwrap();
    assert!(vinberg_pair::x_squared_divides(&f, &[3, 0, 0]));
    assert!(!vinberg_pair::x_squared_divides(&f, &[3, 1, 0]));
    assert!(!vinberg_pair::x_squared_divides(&f, &[3, 0, 2]));
}

#[test]
fn reduce_fixes_the_kostant_form() {
    let r = rep(1, 7);
    let k = r.kostant(&[2, 5, 3], 1);
    let id = Mat::identity(&r.field, 3);
    assert_eq!(vinberg_pair::kostant_reduce_pair(&r, &k).unwrap(), (id.clone(), id));
}

#[test]
fn reduce_undoes_a_torus_pair() {
    let r = rep(1, 7);
    let f = &r.field;
    let t1 = orthogonal::torus(f, &[3]).unwrap();
    let t2 = orthogonal::torus(f, &[5]).unwrap();
    let k = r.kostant(&[1, 4, 2], 1);
    let a = r.act(&t1, &t2, &k);
    let (b, c) = vinberg_pair::kostant_reduce_pair(&r, &a).unwrap();
    assert_eq!(r.act(&b, &c, &a), k);
    let bt = matrix::mul(f, &b, &t1);
    let ct = matrix::mul(f, &c, &t2);
    assert_eq!(r.act(&bt, &ct, &k), k);
}

#[test]
fn reduce_random_band_forms() {
    for (m, q, count) in [(1usize, 7u32, 100), (2, 7, 100), (3, 11, 20)] {
        let r = rep(m, q);
        let space = OrthSpace::split(r.field.clone(), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17 + m as u64);
        for _ in 0..count {
            let a = random_band(&r, &mut rng);
            let (b, c) = vinberg_pair::kostant_reduce_pair(&r, &a).unwrap();
            assert!(orthogonal::is_special_orthogonal(&space, &b));
            assert!(orthogonal::is_special_orthogonal(&space, &c));
            assert_eq!(r.act(&b, &c, &a), r.kostant(&r.invariants(&a), 1));
        }
    }
}

#[test]
fn reduce_refuses_a_zero_band_entry() {
    let r = rep(1, 7);
    let mut a = r.kostant(&[1, 1, 1], 1);
    a[(1, 2)] = 0;
    assert!(matches!(vinberg_pair::kostant_reduce_pair(&r, &a), Err(Error::Precondition(_))));
}

#[test]
fn census_1_5() {
    let r = rep(1, 5);
    let mut c = vinberg_pair::pair_census_counts(&r, 0, 2);
    c.merge(&vinberg_pair::pair_census_counts(&r, 1, 2));
    assert_eq!(c.total, 1_953_125);
    assert_eq!(c.regular, 1_872_000);
    assert_eq!(c.products_failures, 0);
    assert_eq!(c.fiber_regular.iter().sum::<u64>(), c.regular);
    let pr = selmer_core::poly::PolyRing::new(r.field.clone());
    for (idx, &size) in c.fiber_regular.iter().enumerate() {
        assert!(size <= 28_800);
        let inv = r.invariants_at(idx as u64);
        let poly = r.char_poly(&inv);
        let transversal = !r.field.is_zero(&pr.discriminant(&poly).unwrap()) && !vinberg_pair::x_squared_divides(&r.field, &inv);
        if transversal {
            assert_eq!(size, 14_400, "c = {inv:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariants_are_invariant(seed in any::<u64>(), m in 1usize..=2) {
        let r = rep(m, 7);
        let space = OrthSpace::split(r.field.clone(), m).unwrap();
        let sampler = SoSampler::new(&space);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_mat(&r, &mut rng);
        let b = sampler.sample(&mut rng);
        let c = sampler.sample(&mut rng);
        let moved = r.act(&b, &c, &a);
        prop_assert_eq!(r.invariants(&moved), r.invariants(&a));
        prop_assert_eq!(r.is_regular(&moved), r.is_regular(&a));
    }

    #[test]
    fn constant_term_is_det_squared(seed in any::<u64>(), m in 1usize..=3) {
        let r = rep(m, 11);
        let f = &r.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_mat(&r, &mut rng);
        let minus = matrix::mul(f, &a, &a.adjoint()).map(|x| f.neg(x));
        let cp = matrix::charpoly_berkowitz(f, &minus);
        let e = r.invariants(&a)[2 * m];
        prop_assert_eq!(e, matrix::det_gauss(f, &a));
        prop_assert_eq!(cp[0], f.mul(&e, &e));
    }
}
