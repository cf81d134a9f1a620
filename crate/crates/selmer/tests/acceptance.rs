//! End-to-end acceptance checks against frozen values, one line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;

use selmer_core::bundles::{self, Group};
use selmer_core::densities::{self, DensityModel};
use selmer_core::matrix::{self, Mat};
use selmer_core::orthogonal::{self, OrthSpace, SoSampler};
use selmer_core::p1::{self, Chapter, ScanMode};
use selmer_core::poly::PolyRing;
use selmer_core::rng::stream;
use selmer_core::vinberg_odd::{self, OddRep};
use selmer_core::vinberg_pair::{self, PairRep};
use selmer_core::{FiniteField, Ring};

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn field(q: u32) -> FiniteField {
    FiniteField::prime(q).unwrap()
}

fn jobs() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

/// Contiguous pieces of `0..total`.
fn chunks(total: u64, parts: u64) -> Vec<(u64, u64)> {
    let parts = parts.max(1);
    (0..parts).map(|k| (total * k / parts, total * (k + 1) / parts)).collect()
}

fn group_orders() -> Outcome {
    let mut out = Vec::new();
    let mut ok = true;
    for (q, want) in [(5u32, 120u128), (3, 24)] {
        let space = OrthSpace::split(field(q), 1).unwrap();
        let got = orthogonal::so_enumerate(&space, 10_000).unwrap().len() as u128;
        ok &= got == want && orthogonal::so_order(1, q as u64) == Some(want);
        out.push(format!("|SO3(F{q})| = {got}"));
    }
    check(ok, out.join(", "))
}

fn odd_census_1_5() -> Outcome {
    let f = field(5);
    let rep = OddRep::new(f.clone(), 1).unwrap();
    let c = vinberg_odd::odd_census_counts(&rep, 0, 1);
    let fibers_ok = c.fiber_regular.iter().all(|&x| x == 120);
    let group = orthogonal::so_enumerate(&OrthSpace::split(f.clone(), 1).unwrap(), 1000).unwrap();
    let orbits = vinberg_odd::odd_regular_orbits(&rep, &group);
    let pr = PolyRing::new(f);
    let mut orbits_ok = orbits.len() == 25;
    for (idx, sizes) in &orbits {
        let s = pr.factor(&rep.char_poly(&rep.invariants_at(*idx))).len() as u32;
        let k = 1u64 << (s - 1);
        orbits_ok &= sizes.len() as u64 == k && sizes.iter().all(|&x| x == 120 / k);
    }
    check(
        c.total == 3125 && c.regular == 3000 && fibers_ok && orbits_ok,
        format!("regular {} of {}, fibers all 120: {fibers_ok}, orbit counts 2^(s-1): {orbits_ok}", c.regular, c.total),
    )
}

fn odd_census_2_3() -> Outcome {
    let rep = OddRep::new(field(3), 2).unwrap();
    let shards = jobs() * 4;
    let parts: Vec<_> = (0..shards).into_par_iter().map(|s| vinberg_odd::odd_census_counts(&rep, s, shards)).collect();
    let mut c = parts[0].clone();
    for p in &parts[1..] {
        c.merge(p);
    }
    let fibers_ok = c.fiber_regular.iter().all(|&x| x == 51_840);
    check(
        c.total == 4_782_969 && c.regular == 4_199_040 && c.regular == 81 * 51_840 && fibers_ok,
        format!("regular {} of {}, fibers all 51840: {fibers_ok}", c.regular, c.total),
    )
}

/// Zeros of `-4p^3 - 27q^2` over `F_5[ε]`, by hand.
fn alpha_oracle_1_5() -> u64 {
    let q = 5i64;
    let mul = |a: (i64, i64), b: (i64, i64)| ((a.0 * b.0) % q, (a.0 * b.1 + a.1 * b.0) % q);
    let mut zeros = 0;
    for i in 0..q * q {
        for j in 0..q * q {
            let p = (i % q, i / q);
            let r = (j % q, j / q);
            let p3 = mul(mul(p, p), p);
            let r2 = mul(r, r);
            let d0 = (-4 * p3.0 - 27 * r2.0).rem_euclid(q);
            let d1 = (-4 * p3.1 - 27 * r2.1).rem_euclid(q);
            if d0 == 0 && d1 == 0 {
                zeros += 1;
            }
        }
    }
    zeros
}

fn density_identity() -> Outcome {
    let rep = OddRep::new(field(5), 1).unwrap();
    let (alpha, _) = densities::alpha_brute(&rep, u64::MAX).unwrap();
    let beta = densities::beta_brute(&rep, u64::MAX).unwrap();
    let oracle = alpha_oracle_1_5();
    let ratio = densities::density_ratio(&alpha.ratio(), &beta.ratio()).unwrap();
    let predicted = BigRational::one() - rat(1, 25);
    check(
        alpha.bad == 45 && oracle == 45 && alpha.total == 625 && beta.total == 9_765_625 && ratio == predicted,
        format!("alpha {}/{} (oracle {oracle}), beta {}, ratio {ratio}", alpha.bad, alpha.total, beta.ratio()),
    )
}

fn pair_census() -> Outcome {
    let f = field(5);
    let rep = PairRep::new(f.clone(), 1).unwrap();
    let shards = jobs() * 4;
    let parts: Vec<_> = (0..shards).into_par_iter().map(|s| vinberg_pair::pair_census_counts(&rep, s, shards)).collect();
    let mut c = parts[0].clone();
    for p in &parts[1..] {
        c.merge(p);
    }
    let mut bounded = true;
    let mut transversal = 0;
    let mut transversal_ok = true;
    let mut kostant_ok = true;
    for (idx, &size) in c.fiber_regular.iter().enumerate() {
        let inv = rep.invariants_at(idx as u64);
        bounded &= size <= 28_800;
        if !f.is_zero(&rep.discriminant(&inv)) && !vinberg_pair::x_squared_divides(&f, &inv) {
            transversal += 1;
            transversal_ok &= size == 14_400;
        }
        for which in [1, 2] {
            let k = rep.kostant(&inv, which);
            kostant_ok &= rep.is_regular(&k) && rep.invariants(&k) == inv;
        }
    }
    check(
        c.total == 1_953_125 && bounded && transversal_ok && kostant_ok,
        format!(
            "regular {}, max fiber {}, {transversal} transversal fibers all 14400: {transversal_ok}, kostant: {kostant_ok}",
            c.regular,
            c.fiber_regular.iter().max().unwrap()
        ),
    )
}

fn random_borel_odd(rep: &OddRep<FiniteField>, rng: &mut impl Rng) -> Mat<u32> {
    let q = rep.field.q();
    let x: Vec<u32> = rep
        .coordinates()
        .iter()
        .map(|&(i, j)| match i {
            i if i > j + 1 => 0,
            i if i == j + 1 => rng.gen_range(1..q),
            _ => rng.gen_range(0..q),
        })
        .collect();
    rep.from_coords(&x)
}

fn random_band_pair(rep: &PairRep<FiniteField>, rng: &mut impl Rng) -> Mat<u32> {
    let (m, n, q) = (rep.m, rep.n(), rep.field.q());
    let mut a = Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..q)).collect());
    for i in 2..=n {
        let c = if i <= m + 1 { n + 2 - i } else { 2 * m + 2 - i };
        a[(i - 1, c - 1)] = rng.gen_range(1..q);
        for j in c + 1..=n {
            a[(i - 1, j - 1)] = 0;
        }
    }
    a
}

fn kostant_round_trips() -> Outcome {
    let mut out = Vec::new();
    let mut ok = true;
    for (n, q) in [(1usize, 5u32), (2, 7)] {
        let rep = OddRep::new(field(q), n).unwrap();
        let good = (0..1000u64)
            .filter(|&i| {
                let mut rng = stream(SEED, i);
                let c: Vec<u32> = (0..2 * n).map(|_| rng.gen_range(0..q)).collect();
                let t = rep.kostant(&c);
                rep.is_regular(&t) && rep.invariants(&t) == c
            })
            .count();
        ok &= good == 1000;
        out.push(format!("odd({n},{q}) {good}/1000"));
    }
    for (m, q) in [(1usize, 5u32), (2, 7)] {
        let rep = PairRep::new(field(q), m).unwrap();
        let good = (0..1000u64)
            .filter(|&i| {
                let mut rng = stream(SEED + 1, i);
                let c: Vec<u32> = (0..2 * m + 1).map(|_| rng.gen_range(0..q)).collect();
                [1, 2].iter().all(|&w| {
                    let a = rep.kostant(&c, w);
                    rep.is_regular(&a) && rep.invariants(&a) == c && matrix::det_gauss(&rep.field, &a) == c[2 * m]
                })
            })
            .count();
        ok &= good == 1000;
        out.push(format!("pair({m},{q}) {good}/1000"));
    }
    let rep = OddRep::new(field(5), 1).unwrap();
    let space = OrthSpace::split(rep.field.clone(), 1).unwrap();
    let good = (0..100u64)
        .filter(|&i| {
            let t = random_borel_odd(&rep, &mut stream(SEED + 2, i));
            vinberg_odd::kostant_reduce_odd(&rep, &t).is_ok_and(|g| {
                orthogonal::is_special_orthogonal(&space, &g) && rep.act(&g, &t) == rep.kostant(&rep.invariants(&t))
            })
        })
        .count();
    ok &= good == 100;
    out.push(format!("reduce odd {good}/100"));
    let rep = PairRep::new(field(7), 1).unwrap();
    let space = OrthSpace::split(rep.field.clone(), 1).unwrap();
    let good = (0..100u64)
        .filter(|&i| {
            let a = random_band_pair(&rep, &mut stream(SEED + 3, i));
            vinberg_pair::kostant_reduce_pair(&rep, &a).is_ok_and(|(b, c)| {
                orthogonal::is_special_orthogonal(&space, &b)
                    && orthogonal::is_special_orthogonal(&space, &c)
                    && rep.act(&b, &c, &a) == rep.kostant(&rep.invariants(&a), 1)
            })
        })
        .count();
    ok &= good == 100;
    out.push(format!("reduce pair {good}/100"));
    check(ok, out.join(", "))
}

fn two_torsion_embedding() -> Outcome {
    let f = field(5);
    let pr = PolyRing::new(f.clone());
    let rep = OddRep::new(f.clone(), 1).unwrap();
    let space = OrthSpace::split(f.clone(), 1).unwrap();
    let group = orthogonal::so_enumerate(&space, 1000).unwrap();
    let minus_one = pr.from_ints(&[-1]);
    let mut tried = 0;
    let mut good = 0;
    let mut i = 0;
    while tried < 20 {
        let mut rng = stream(SEED + 4, i);
        i += 1;
        let c = [rng.gen_range(0..5u32), rng.gen_range(0..5u32)];
        if f.is_zero(&rep.discriminant(&c)) {
            continue;
        }
        tried += 1;
        let poly = rep.char_poly(&c);
        let t = rep.kostant(&c);
        let gens = vinberg_odd::two_torsion_polys(&f, &poly).unwrap();
        let product = gens.iter().fold(pr.one(), |acc, g| pr.mulmod(&acc, &g.p, &poly));
        let mats = vinberg_odd::two_torsion_matrices(&rep, &gens, &t);
        let involutions = mats.iter().all(|m| matrix::is_identity(&f, &matrix::mul(&f, m, m)));
        let generated: BTreeSet<Vec<u32>> =
            vinberg_odd::generated_group(&f, &mats, 3).iter().map(|m| m.data().to_vec()).collect();
        let brute: BTreeSet<Vec<u32>> = group
            .iter()
            .filter(|g| rep.act(g, &t) == t)
            .map(|g| g.data().to_vec())
            .collect();
        if product == minus_one && involutions && generated == brute {
            good += 1;
        }
    }
    check(good == 20, format!("{good}/20 squarefree cubics"))
}

fn zeta(q: u64, s: u32) -> BigRational {
    let one = BigRational::one();
    let qs = BigRational::from_integer(num_traits::pow(q.into(), s as usize));
    let qs1 = BigRational::from_integer(num_traits::pow(q.into(), s as usize - 1));
    &one / ((&one - qs.recip()) * (&one - qs1.recip()))
}

fn mass_formulas() -> Outcome {
    let q_pow = |q: u64, e: usize| BigRational::from_integer(num_traits::pow(q.into(), e));
    let cases = [
        ("so3", 3u64, rat(1, 8), rat(2, 1) / q_pow(3, 3) * zeta(3, 2)),
        ("so3", 5, rat(1, 48), rat(2, 1) / q_pow(5, 3) * zeta(5, 2)),
        ("so5", 3, rat(1, 16_640), rat(2, 1) / q_pow(3, 10) * zeta(3, 2) * zeta(3, 4)),
        ("so3xso3", 3, rat(1, 64), rat(4, 1) / q_pow(3, 6) * zeta(3, 2) * zeta(3, 2)),
    ];
    let mut ok = true;
    let mut out = Vec::new();
    for (name, q, want, tamagawa) in cases {
        let g = Group::parse(name).unwrap();
        let s = bundles::mass_series(&g, q, 60).unwrap();
        let gap = &want - &s.partial;
        let bound = s.tail_bound.to_f64().unwrap_or(1.0);
        let this = want == tamagawa
            && bundles::mass_predicted(&g, q) == want
            && !gap.is_negative()
            && gap <= s.tail_bound
            && bound < 1e-12;
        ok &= this;
        out.push(format!("{name}@{q} = {want} (tail {bound:.1e})"));
    }
    check(ok, out.join(", "))
}

fn mc_count(f: &FiniteField, samples: u64, parts: u64) -> u64 {
    chunks(samples, parts)
        .into_par_iter()
        .map(|(a, b)| bundles::mc_regular_range(f, Chapter::Odd { n: 1 }, 4, SEED, a, b).unwrap().regular)
        .sum()
}

fn mc_regular() -> Outcome {
    let f = field(5);
    let samples = 100_000;
    let hits = mc_count(&f, samples, jobs() * 4);
    let again = mc_count(&f, samples, 7);
    let observed = hits as f64 / samples as f64;
    let p = 0.768;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt();
    let tol = (3.0 * sigma).max(0.01);
    check(
        (observed - p).abs() <= tol && hits == again,
        format!("observed {observed:.5} vs 0.768 (tolerance {tol:.4}), deterministic: {}", hits == again),
    )
}

fn family_scans() -> Outcome {
    let f = field(5);
    let samples = 100_000;
    let odd = Chapter::Odd { n: 1 };
    let hits: u64 = chunks(samples, jobs() * 4)
        .into_par_iter()
        .map(|(a, b)| p1::family_scan_range(&f, odd, 2, ScanMode::Transversal, SEED, a, b).unwrap().hits)
        .sum();
    // Δ = 0 over F_Q[ε]: Q - 1 smooth points with Q lifts each, plus the cusp with Q^2.
    let mut predicted = BigRational::one();
    for r in 1..=4usize {
        let qr = 5u64.pow(r as u32);
        let alpha = rat(2 * qr - 1, qr * qr * qr);
        predicted *= num_traits::pow(BigRational::one() - alpha, p1::place_count(5, r) as usize);
    }
    let pred = predicted.to_f64().unwrap();
    let reported = p1::predicted_fraction(5, odd, ScanMode::Transversal, 4, u64::MAX).unwrap();
    let observed = hits as f64 / samples as f64;
    let sigma = (pred * (1.0 - pred) / samples as f64).sqrt();
    let within = (observed - pred).abs() <= 3.0 * sigma + reported.tail_bound;
    let mut minimal = true;
    for (m, q) in [(1usize, 5u64), (2, 3)] {
        let n = 2 * m + 1;
        let (factor, conditions) = densities::minimal_local_factor(m, q);
        let by_weights: usize = (1..=2 * m).map(|i| 2 * i).sum::<usize>() + n;
        let want = BigRational::new(1.into(), num_traits::pow(q.into(), n * n));
        minimal &= conditions == n * n
            && by_weights == n * n
            && factor == want
            && densities::minimal_fraction_truncated(&field(q as u32), m) == want;
    }
    check(
        within && reported.truncated == predicted && minimal,
        format!("transversal {observed:.5} vs {pred:.5} (3 sigma {:.5}), minimal factors: {minimal}", 3.0 * sigma),
    )
}

fn property_suites() -> Outcome {
    let cases = 10_000u64;
    let f7 = field(7);
    let pr = PolyRing::new(f7.clone());
    let mut failures = Vec::new();

    let homogeneous = (0..cases).all(|i| {
        let mut rng = stream(SEED + 10, i);
        let n = if i % 2 == 0 { 3 } else { 5 };
        let lambda = rng.gen_range(1..7u32);
        let c: Vec<u32> = (0..n).map(|_| rng.gen_range(0..7)).collect();
        let mut fc = vec![0u32; n + 1];
        let mut gc = vec![0u32; n + 1];
        fc[n] = 1;
        gc[n] = 1;
        for k in 1..=n {
            fc[n - k] = c[k - 1];
            gc[n - k] = f7.mul(&c[k - 1], &f7.pow(&lambda, k as u64));
        }
        let df = pr.discriminant(&pr.from_coeffs(fc)).unwrap();
        let dg = pr.discriminant(&pr.from_coeffs(gc)).unwrap();
        dg == f7.mul(&df, &f7.pow(&lambda, (n * (n - 1)) as u64))
    });
    if !homogeneous {
        failures.push("homogeneity");
    }

    let f5 = field(5);
    let implies = (0..cases).all(|i| {
        let mut rng = stream(SEED + 11, i);
        let chapter = if i % 2 == 0 { Chapter::Odd { n: 1 } } else { Chapter::Pair { m: 1 } };
        let x = p1::random_datum(&f5, chapter, 1, &mut rng);
        match p1::is_transversal(&x) {
            Ok(v) if v.holds => p1::is_minimal(&x).unwrap().holds,
            _ => true,
        }
    });
    if !implies {
        failures.push("transversal => minimal");
    }

    let odd = OddRep::new(f7.clone(), 1).unwrap();
    let pair = PairRep::new(f7.clone(), 1).unwrap();
    let space = OrthSpace::split(f7.clone(), 1).unwrap();
    let sampler = SoSampler::new(&space);
    let invariant = (0..cases).all(|i| {
        let mut rng = stream(SEED + 12, i);
        let g = sampler.sample(&mut rng);
        let h = sampler.sample(&mut rng);
        let x: Vec<u32> = (0..odd.dim_v()).map(|_| rng.gen_range(0..7)).collect();
        let t = odd.from_coords(&x);
        let a = Mat::from_vec(3, 3, (0..9).map(|_| rng.gen_range(0..7)).collect());
        odd.invariants(&odd.act(&g, &t)) == odd.invariants(&t) && pair.invariants(&pair.act(&g, &h, &a)) == pair.invariants(&a)
    });
    if !invariant {
        failures.push("G-invariance");
    }

    let adjoint = (0..cases).all(|i| {
        let mut rng = stream(SEED + 13, i);
        let d = 1 + (i % 5) as usize;
        let a = Mat::from_vec(d, d, (0..d * d).map(|_| rng.gen_range(0..7)).collect());
        let b = Mat::from_vec(d, d, (0..d * d).map(|_| rng.gen_range(0..7)).collect());
        a.adjoint().adjoint() == a && matrix::mul(&f7, &a, &b).adjoint() == matrix::mul(&f7, &b.adjoint(), &a.adjoint())
    });
    if !adjoint {
        failures.push("adjoint");
    }

    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
    let trivial = (0..cases).all(|i| {
        let mut rng = stream(SEED + 14, i);
        let n = rng.gen_range(1..=3usize);
        let q = primes[rng.gen_range(0..primes.len())];
        let want = orthogonal::so_order(n, q).unwrap();
        bundles::aut_order(&vec![0; n], q).unwrap() == want.into()
    });
    if !trivial {
        failures.push("aut_order at 0");
    }

    let detail = if failures.is_empty() {
        format!("5 suites x {cases} cases green")
    } else {
        format!("failed: {}", failures.join(", "))
    };
    check(failures.is_empty(), detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("group orders", group_orders),
        ("odd census (1,5)", odd_census_1_5),
        ("odd census (2,3)", odd_census_2_3),
        ("local density identity (1,5)", density_identity),
        ("pair census (1,5)", pair_census),
        ("kostant round trips and reductions", kostant_round_trips),
        ("two-torsion embedding", two_torsion_embedding),
        ("mass formulas", mass_formulas),
        ("mc regular sections", mc_regular),
        ("family scans", family_scans),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({ms} ms)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {detail} ({ms} ms)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
