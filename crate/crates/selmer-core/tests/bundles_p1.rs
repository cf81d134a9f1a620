use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selmer_core::bundles::{self, Group, Section};
use selmer_core::matrix::Mat;
use selmer_core::orthogonal;
use selmer_core::p1::{Chapter, Place, TPoly};
use selmer_core::poly::PolyRing;
use selmer_core::vinberg_odd::{self, OddRep};
use selmer_core::vinberg_pair;
use selmer_core::{Error, FiniteField, Ring};

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pw(q: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(q).pow(e))
}

fn f5() -> FiniteField {
    FiniteField::prime(5).unwrap()
}

fn random_poly(r: &PolyRing<FiniteField>, deg: usize, rng: &mut impl Rng) -> TPoly {
    r.from_coeffs((0..=deg).map(|_| rng.gen_range(0..r.base.q())).collect())
}

#[test]
fn zeta_values() {
    assert_eq!(bundles::zeta_p1(5, 2), rat(125, 96));
    assert_eq!(bundles::zeta_p1(3, 2), rat(27, 16));
    assert_eq!(bundles::zeta_p1(3, 4), rat(2187, 2080));
    for (q, s) in [(3u64, 2u32), (5, 2), (7, 4)] {
        let one = BigRational::one();
        let want = (&one / (&one - pw(q, s).recip())) / (&one - pw(q, s - 1).recip());
        assert_eq!(bundles::zeta_p1(q, s), want);
    }
}

#[test]
fn zeta_euler_product_converges() {
    let full = bundles::zeta_p1(3, 2);
    let trunc = bundles::zeta_p1_truncated(3, 2, 6);
    assert!(trunc < full);
    // omitted places have degree at least 7
    let gap = (&full - &trunc) / &full;
    assert!(gap < rat(1, 3u64.pow(6)), "{gap}");
    assert!(bundles::zeta_p1_truncated(3, 2, 8) > trunc);
}

#[test]
fn automorphism_orders() {
    assert_eq!(bundles::aut_order(&[2], 5).unwrap(), BigUint::from(500u32));
    assert_eq!(bundles::aut_order(&[0], 5).unwrap(), BigUint::from(120u32));
    assert_eq!(bundles::aut_order(&[3, 1], 3).unwrap(), BigUint::from(19_131_876u64));
    assert!(matches!(bundles::aut_order(&[1, 2], 3), Err(Error::Domain(_))));
    assert!(bundles::aut_order(&[], 3).is_err());
}

#[test]
fn trivial_bundle_has_the_full_group() {
    for n in 1..=3usize {
        for q in [3u64, 5, 7, 11] {
            let want = orthogonal::so_order(n, q).unwrap();
            assert_eq!(bundles::aut_order(&vec![0; n], q).unwrap(), BigUint::from(want));
        }
    }
}

#[test]
fn distinct_positive_parts_have_a_torus_levi() {
    // pairings of (5, 2): 3, 7, 5, 2
    assert_eq!(bundles::aut_order(&[5, 2], 3).unwrap(), BigUint::from(4u32) * BigUint::from(3u32).pow(21));
    // (4, 4): GL_2 block, pairings 0, 8, 4, 4
    let gl2 = (9u64 - 1) * (9 - 3);
    assert_eq!(bundles::aut_order(&[4, 4], 3).unwrap(), BigUint::from(gl2) * BigUint::from(3u32).pow(9 + 5 + 5));
}

#[test]
fn group_products() {
    let g = Group::parse("so3xso3").unwrap();
    assert_eq!((g.dim(), g.tamagawa()), (6, 4));
    let got = bundles::aut_order_group(&g, &[vec![2], vec![0]], 5).unwrap();
    assert_eq!(got, BigUint::from(500u32 * 120));
    assert!(bundles::aut_order_group(&g, &[vec![2]], 5).is_err());
    assert!(matches!(Group::parse("so7"), Err(Error::Parse(_))));
}

#[test]
fn so3_series_over_f3_term_by_term() {
    let s = bundles::mass_series(&Group::so(1), 3, 40).unwrap();
    let mut want = rat(1, 24);
    for d in 1..=40u32 {
        want += (rat(2, 1) * pw(3, d + 1)).recip();
    }
    assert_eq!(s.partial, want);
    assert_eq!(s.terms, 41);
}

#[test]
fn masses_match_the_tamagawa_prediction() {
    for q in [3u64, 5] {
        let g = Group::so(1);
        let pred = bundles::mass_predicted(&g, q);
        assert_eq!(pred, rat(2, (q * q - 1) * (q - 1)));
        for cutoff in [40, 60] {
            let s = bundles::mass_series(&g, q, cutoff).unwrap();
            let gap = &pred - &s.partial;
            assert!(gap.is_positive());
            assert!(gap <= s.tail_bound);
            assert!(bundles::to_f64(&gap) < 1e-12);
        }
    }
    assert_eq!(bundles::mass_predicted(&Group::so(1), 3), rat(1, 8));
    assert_eq!(bundles::mass_predicted(&Group::so(1), 5), rat(1, 48));
    assert_eq!(bundles::mass_predicted(&Group::parse("so3xso3").unwrap(), 3), rat(1, 64));
}

#[test]
fn closed_forms_equal_predictions() {
    for name in ["so3", "so5", "so3xso3"] {
        let g = Group::parse(name).unwrap();
        for q in [3u64, 5, 7] {
            assert_eq!(bundles::mass_closed_form(&g, q).unwrap(), bundles::mass_predicted(&g, q), "{name} q={q}");
        }
    }
    assert_eq!(bundles::mass_closed_form(&Group::so(2), 3).unwrap(), rat(1, 16_640));
}

#[test]
fn product_series_converges() {
    let g = Group::parse("so3xso3").unwrap();
    let s = bundles::mass_series(&g, 3, 30).unwrap();
    let gap = bundles::mass_predicted(&g, 3) - &s.partial;
    assert!(!gap.is_negative() && gap <= s.tail_bound);
    assert!(bundles::mass_series(&g, 1, 30).is_err());
}

#[test]
fn section_bounds_follow_the_weights() {
    let b = bundles::section_bounds(Chapter::Odd { n: 1 }, 1, &[1]).unwrap();
    let got: Vec<Vec<Option<usize>>> = b.to_rows();
    assert_eq!(got, vec![vec![Some(2), Some(3), Some(4)], vec![Some(1), Some(2), Some(3)], vec![Some(0), Some(1), Some(2)]]);
    let b = bundles::section_bounds(Chapter::Odd { n: 1 }, 1, &[2]).unwrap();
    assert_eq!(b[(2, 0)], None);
    assert!(bundles::section_bounds(Chapter::Odd { n: 2 }, 1, &[1]).is_err());
}

#[test]
fn sampled_sections_respect_their_shape() {
    let f = f5();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = PolyRing::new(f.clone());
    for _ in 0..50 {
        let s = bundles::sample_section(&f, Chapter::Odd { n: 1 }, 2, &[], &mut rng).unwrap();
        assert!(s.mat.data().iter().all(|e| e.degree().map_or(true, |g| g <= 4)));
        assert_eq!(orthogonal::adjoint(&s.mat), s.mat);
        let tr = (0..3).fold(r.zero(), |acc, i| r.add(&acc, &s.mat[(i, i)]));
        assert!(tr.is_zero());
        let datum = s.invariants().unwrap();
        assert_eq!(datum.d, 2);
    }
    for _ in 0..50 {
        let s = bundles::sample_section(&f, Chapter::Pair { m: 1 }, 1, &[], &mut rng).unwrap();
        assert_eq!((s.mat.rows(), s.mat.cols()), (3, 3));
        assert!(s.mat.data().iter().all(|e| e.degree().map_or(true, |g| g <= 1)));
        s.invariants().unwrap();
    }
}

#[test]
fn sampling_is_deterministic() {
    let f = f5();
    let a = bundles::sample_section(&f, Chapter::Odd { n: 1 }, 2, &[], &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let b = bundles::sample_section(&f, Chapter::Odd { n: 1 }, 2, &[], &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(a.mat, b.mat);
}

fn odd_kostant_section(n: usize, d: usize, rng: &mut impl Rng) -> Section {
    let f = f5();
    let r = PolyRing::new(f.clone());
    let coeffs: Vec<TPoly> = (2..=2 * n + 1).map(|i| random_poly(&r, 2 * i * d, rng)).collect();
    let mat = vinberg_odd::kostant_matrix(&r, n, |i| if (2..=2 * n + 1).contains(&i) { coeffs[i - 2].clone() } else { r.zero() });
    let profile: Vec<i64> = (1..=n).rev().map(|k| (2 * k * d) as i64).collect();
    let bounds = bundles::section_bounds(Chapter::Odd { n }, d, &profile).unwrap();
    Section { field: f, chapter: Chapter::Odd { n }, d, mat, bounds }
}

fn pair_kostant_section(d: usize, rng: &mut impl Rng) -> Section {
    let f = f5();
    let r = PolyRing::new(f.clone());
    let c: Vec<TPoly> = [2 * d, 4 * d, 3 * d].iter().map(|&g| random_poly(&r, g, rng)).collect();
    let mat = vinberg_pair::pair_kostant(&r, 1, &c);
    let bounds = bundles::section_bounds(Chapter::Pair { m: 1 }, d, &[2 * d as i64, -(d as i64)]).unwrap();
    Section { field: f, chapter: Chapter::Pair { m: 1 }, d, mat, bounds }
}

#[test]
fn kostant_sections_are_everywhere_regular() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 0..1000 {
        let s = odd_kostant_section(1, 1 + k % 2, &mut rng);
        let v = bundles::is_everywhere_regular(&s).unwrap();
        assert!(v.holds, "{:?}", v.witness);
    }
    for _ in 0..50 {
        let s = odd_kostant_section(2, 1, &mut rng);
        assert!(bundles::is_everywhere_regular(&s).unwrap().holds);
    }
    for k in 0..1000 {
        let s = pair_kostant_section(1 + k % 2, &mut rng);
        let v = bundles::is_everywhere_regular(&s).unwrap();
        assert!(v.holds, "{:?}", v.witness);
    }
}

#[test]
fn scalar_block_section_is_nowhere_regular() {
    let f = f5();
    let r = PolyRing::new(f.clone());
    let a = r.from_ints(&[1, 2, 1]);
    let mut mat = Mat::filled(3, 3, r.zero());
    mat[(0, 0)] = a.clone();
    mat[(1, 1)] = r.scale(&a, &3);
    mat[(2, 2)] = a;
    let bounds = bundles::section_bounds(Chapter::Odd { n: 1 }, 1, &[]).unwrap();
    let s = Section { field: f, chapter: Chapter::Odd { n: 1 }, d: 1, mat, bounds };
    let v = bundles::is_everywhere_regular(&s).unwrap();
    assert!(!v.holds);
    assert!(matches!(v.witness, Some(Place::Finite(_))));
}

#[test]
fn constant_kostant_section_fails_at_infinity() {
    let f = f5();
    let r = PolyRing::new(f.clone());
    let rep = OddRep::new(f.clone(), 1).unwrap();
    let mat = rep.kostant(&[1, 2]).map(|x| r.constant(*x));
    let bounds = bundles::section_bounds(Chapter::Odd { n: 1 }, 1, &[]).unwrap();
    let s = Section { field: f, chapter: Chapter::Odd { n: 1 }, d: 1, mat, bounds };
    let v = bundles::is_everywhere_regular(&s).unwrap();
    assert_eq!((v.holds, v.witness), (false, Some(Place::Infinity)));
}

#[test]
fn planted_failure_at_infinity() {
    // N + t^2 D with N nilpotent regular and D = diag(1, -2, 1): at a finite
    // point s = t^2 the matrix is lower triangular with eigenvalues s, -2s, s
    // and a one-dimensional s-eigenspace, so only the leading term D fails.
    let f = f5();
    let r = PolyRing::new(f.clone());
    let mut mat = Mat::filled(3, 3, r.zero());
    mat[(0, 0)] = r.from_ints(&[0, 0, 1]);
    mat[(1, 1)] = r.from_ints(&[0, 0, -2]);
    mat[(2, 2)] = r.from_ints(&[0, 0, 1]);
    mat[(1, 0)] = r.one();
    mat[(2, 1)] = r.one();
    let bounds = bundles::section_bounds(Chapter::Odd { n: 1 }, 1, &[]).unwrap();
    let s = Section { field: f.clone(), chapter: Chapter::Odd { n: 1 }, d: 1, mat, bounds };
    let rep = OddRep::new(f, 1).unwrap();
    assert!(rep.is_regular(&s.mat.map(|e| r.eval(e, &3))));
    assert!(!rep.is_regular(&s.fibre_at_infinity()));
    let v = bundles::is_everywhere_regular(&s).unwrap();
    assert_eq!((v.holds, v.witness), (false, Some(Place::Infinity)));
}

#[test]
fn mc_predictions() {
    assert_eq!(bundles::mc_regular_predicted(5, Chapter::Odd { n: 1 }), Some(rat(96, 125)));
    assert_eq!(bundles::mc_regular_predicted(3, Chapter::Odd { n: 2 }), Some(rat(16, 27) * rat(2080, 2187)));
    assert_eq!(bundles::mc_regular_predicted(5, Chapter::Pair { m: 1 }), None);
    assert!((bundles::mc_tolerance(0.5, 100) - 0.15).abs() < 1e-12);
    assert_eq!(bundles::mc_tolerance(0.5, 1_000_000), 0.01);
}

#[test]
fn mc_refuses_characteristic_three_for_n1() {
    let f3 = FiniteField::prime(3).unwrap();
    assert!(matches!(bundles::mc_regular_range(&f3, Chapter::Odd { n: 1 }, 1, 0, 0, 10), Err(Error::Precondition(_))));
}

#[test]
fn mc_is_shardable() {
    let f = f5();
    let all = bundles::mc_regular_range(&f, Chapter::Odd { n: 1 }, 2, 4, 0, 400).unwrap();
    let mut parts = bundles::mc_regular_range(&f, Chapter::Odd { n: 1 }, 2, 4, 0, 150).unwrap();
    parts.merge(&bundles::mc_regular_range(&f, Chapter::Odd { n: 1 }, 2, 4, 150, 400).unwrap());
    assert_eq!(all, parts);
}

#[test]
fn mc_odd_1_5_degree_4() {
    let f = f5();
    let samples = 10_000;
    let c = bundles::mc_regular_range(&f, Chapter::Odd { n: 1 }, 4, 11, 0, samples).unwrap();
    let p = 96.0 / 125.0;
    assert!((c.fraction() - p).abs() <= bundles::mc_tolerance(p, samples), "{}", c.fraction());
}

#[test]
fn mc_odd_2_3_degree_2() {
    let f = FiniteField::prime(3).unwrap();
    let samples = 10_000;
    let c = bundles::mc_regular_range(&f, Chapter::Odd { n: 2 }, 2, 5, 0, samples).unwrap();
    let p = bundles::to_f64(&bundles::mc_regular_predicted(3, Chapter::Odd { n: 2 }).unwrap());
    assert!((c.fraction() - p).abs() <= bundles::mc_tolerance(p, samples), "{} vs {p}", c.fraction());
}

#[test]
fn pair_sections_can_be_scanned() {
    let f = f5();
    let c = bundles::mc_regular_range(&f, Chapter::Pair { m: 1 }, 1, 2, 0, 200).unwrap();
    assert_eq!(c.samples, 200);
    assert!(c.regular > 0 && c.regular < 200);
    assert!(BigRational::zero() < rat(c.regular, 200));
}
