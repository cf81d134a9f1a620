//! Orthogonal bundles on `P^1_{F_q}`: zeta values, automorphism groups,
//! masses, and random sections of the associated vector bundles.
//!
//! A split bundle has a dominant cocharacter `λ = (d_1 ≥ .. ≥ d_n ≥ 0)` per
//! factor `SO_{2n+1}`; the fibre `W` then has weights `(λ, 0, -λ reversed)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::{self, Mat};
use crate::p1::{Chapter, FamilyDatum, FqT, Place, TPoly, Verdict};
use crate::poly::PolyRing;
use crate::ring::Ring;
use crate::vinberg_odd::OddRep;
use crate::vinberg_pair::PairRep;

fn big(q: u64) -> BigInt {
    BigInt::from(q)
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `ζ_{P^1}(s) = 1/((1 - q^{-s})(1 - q^{1-s}))`.
pub fn zeta_p1(q: u64, s: u32) -> BigRational {
    let qs = num_traits::pow(big(q), s as usize);
    let qs1 = num_traits::pow(big(q), s as usize - 1);
    rat(&qs * &qs1, (&qs - 1) * (&qs1 - 1))
}

/// Euler product over places of degree at most `b`.
pub fn zeta_p1_truncated(q: u64, s: u32, b: usize) -> BigRational {
    let mut acc = BigRational::one();
    for r in 1..=b {
        let qrs = num_traits::pow(big(q), r * s as usize);
        let local = rat(qrs.clone(), qrs - 1);
        acc *= num_traits::pow(local, crate::p1::place_count(q, r) as usize);
    }
    acc
}

/// `SO_{2n_1+1} × SO_{2n_2+1} × ..`, given by the ranks of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub ranks: Vec<usize>,
}

impl Group {
    pub fn so(n: usize) -> Self {
        Group { ranks: vec![n] }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "so3" => Ok(Group::so(1)),
            "so5" => Ok(Group::so(2)),
            "so3xso3" => Ok(Group { ranks: vec![1, 1] }),
            _ => Err(Error::Parse(alloc::format!("unknown group `{name}`"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.ranks.iter().map(|n| n * (2 * n + 1)).sum()
    }

    /// Tamagawa number `2^{#factors}`.
    pub fn tamagawa(&self) -> u64 {
        1 << self.ranks.len()
    }
}

fn gl_order(m: usize, q: u64) -> BigUint {
    let qm = num_traits::pow(BigUint::from(q), m);
    (0..m).map(|i| &qm - num_traits::pow(BigUint::from(q), i)).product()
}

fn so_order_big(n: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut acc = num_traits::pow(qb.clone(), n * n);
    for i in 1..=n {
        acc *= num_traits::pow(qb.clone(), 2 * i) - 1u32;
    }
    acc
}

/// Pairings `⟨α, λ⟩` over the positive roots `e_i ± e_j`, `e_i` of `B_n`.
fn root_pairings(lambda: &[u64]) -> Vec<u64> {
    let n = lambda.len();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i + 1..n {
            out.push(lambda[i] - lambda[j]);
            out.push(lambda[i] + lambda[j]);
        }
        out.push(lambda[i]);
    }
    out
}

/// `|Aut_L(F_q)|` for the Levi of `λ`: `GL` blocks for equal nonzero parts,
/// `SO` for the zero block.
fn levi_order(lambda: &[u64], q: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 0;
    while i < lambda.len() {
        let mut j = i;
        while j < lambda.len() && lambda[j] == lambda[i] {
            j += 1;
        }
        if lambda[i] == 0 {
            acc *= so_order_big(j - i, q);
        } else {
            acc *= gl_order(j - i, q);
        }
        i = j;
    }
    acc
}

fn check_dominant(lambda: &[u64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain("cocharacter must be non-increasing".into()));
    }
    Ok(())
}

/// `|Aut(E_λ)| = |Aut_L| · q^{Σ_{⟨α,λ⟩ > 0} (⟨α,λ⟩ + 1)}` for `SO_{2n+1}`, `n = λ.len()`.
pub fn aut_order(lambda: &[u64], q: u64) -> Result<BigUint> {
    check_dominant(lambda)?;
    if lambda.is_empty() {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    let e: u64 = root_pairings(lambda).iter().filter(|&&a| a > 0).map(|a| a + 1).sum();
    Ok(levi_order(lambda, q) * num_traits::pow(BigUint::from(q), e as usize))
}

/// Product of [`aut_order`] over the factors of `group`.
pub fn aut_order_group(group: &Group, lambdas: &[Vec<u64>], q: u64) -> Result<BigUint> {
    if lambdas.len() != group.ranks.len() || lambdas.iter().zip(&group.ranks).any(|(l, &n)| l.len() != n) {
        return Err(Error::Domain("one cocharacter of the right rank per factor".into()));
    }
    let mut acc = BigUint::one();
    for l in lambdas {
        acc *= aut_order(l, q)?;
    }
    Ok(acc)
}

/// `τ(G) q^{-dim G} ∏ ζ_{P^1}(2i)` over the exponents of each factor.
pub fn mass_predicted(group: &Group, q: u64) -> BigRational {
    let mut acc = rat(big(group.tamagawa()), num_traits::pow(big(q), group.dim()));
    for &n in &group.ranks {
        for i in 1..=n {
            acc *= zeta_p1(q, 2 * i as u32);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassSeries {
    /// Sum over bundles with every `d_1 ≤ cutoff`.
    pub partial: BigRational,
    /// Upper bound for the omitted terms.
    pub tail_bound: BigRational,
    pub cutoff: u64,
    pub terms: u64,
}

fn dominant_up_to(n: usize, cutoff: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, top: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in 0..=top {
            cur.push(d);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    rec(n, cutoff, &mut cur, &mut out);
    out
}

fn factor_series(n: usize, q: u64, cutoff: u64) -> Result<(BigRational, BigRational, u64)> {
    if q < 3 {
        return Err(Error::Domain("q must be at least 3".into()));
    }
    let mut partial = BigRational::zero();
    let mut terms = 0;
    for l in dominant_up_to(n, cutoff) {
        partial += rat(BigInt::one(), BigInt::from(aut_order(&l, q)?));
        terms += 1;
    }
    // Slice d_1 = d has at most (d+1)^{n-1} bundles, each of mass at most 1/((q-1) q^{d+1}).
    let t = |d: u64| {
        rat(
            num_traits::pow(big(d + 1), n - 1),
            big(q - 1) * num_traits::pow(big(q), d as usize + 1),
        )
    };
    let c = cutoff;
    let r = rat(num_traits::pow(big(c + 3), n - 1), num_traits::pow(big(c + 2), n - 1) * big(q));
    if r >= BigRational::one() {
        return Err(Error::Domain("cutoff too small for a geometric tail bound".into()));
    }
    let tail = t(c + 1) / (BigRational::one() - r);
    Ok((partial, tail, terms))
}

/// `Σ 1/|Aut(E)|` over bundles with every `d_1 ≤ cutoff`, with a geometric tail bound.
pub fn mass_series(group: &Group, q: u64, cutoff: u64) -> Result<MassSeries> {
    let parts = group
        .ranks
        .iter()
        .map(|&n| factor_series(n, q, cutoff))
        .collect::<Result<Vec<_>>>()?;
    let partial = parts.iter().fold(BigRational::one(), |acc, p| acc * &p.0);
    let mut tail_bound = BigRational::zero();
    for k in 0..parts.len() {
        let mut term = parts[k].1.clone();
        for (j, p) in parts.iter().enumerate() {
            if j != k {
                term *= &p.0 + &p.1;
            }
        }
        tail_bound += term;
    }
    let terms = parts.iter().map(|p| p.2).product();
    Ok(MassSeries { partial, tail_bound, cutoff, terms })
}

/// Exact mass by summing geometric series over each pattern of vanishing gaps `d_j - d_{j+1}`.
pub fn mass_closed_form(group: &Group, q: u64) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for &n in &group.ranks {
        acc *= factor_closed_form(n, q)?;
    }
    Ok(acc)
}

fn factor_closed_form(n: usize, q: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    // ⟨2ρ, ω_j⟩ with 2ρ = Σ (2n - 2i + 1) e_i.
    let c: Vec<usize> = (1..=n).map(|j| (1..=j).map(|i| 2 * n - 2 * i + 1).sum()).collect();
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << n) {
        // Bit j set: gap j is positive; the representative takes every positive gap equal to 1.
        let mut lambda = vec![0u64; n];
        for j in 0..n {
            if mask >> j & 1 == 1 {
                for l in lambda.iter_mut().take(j + 1) {
                    *l += 1;
                }
            }
        }
        let positive = root_pairings(&lambda).iter().filter(|&&a| a > 0).count();
        let mut term = rat(BigInt::one(), BigInt::from(levi_order(&lambda, q)) * num_traits::pow(big(q), positive));
        for (j, &cj) in c.iter().enumerate() {
            if mask >> j & 1 == 1 {
                term /= rat(num_traits::pow(big(q), cj) - 1, BigInt::one());
            }
        }
        total += term;
    }
    Ok(total)
}

/// A section of the representation bundle twisted by `L = O(d)`.
#[derive(Clone, Debug)]
pub struct Section {
    pub field: FiniteField,
    pub chapter: Chapter,
    pub d: usize,
    /// `T(t)` (odd) or `A(t)` (pair).
    pub mat: Mat<TPoly>,
    /// Degree bound per entry; `None` where the entry vanishes identically.
    pub bounds: Mat<Option<usize>>,
}

/// Weights `(λ, 0, -λ reversed)` of the fibre.
fn fibre_weights(lambda: &[i64]) -> Vec<i64> {
    let mut w: Vec<i64> = lambda.to_vec();
    w.push(0);
    w.extend(lambda.iter().rev().map(|x| -x));
    w
}

fn entry_bounds(rows: &[i64], cols: &[i64], base: i64) -> Mat<Option<usize>> {
    let mut b = Mat::filled(rows.len(), cols.len(), None);
    for (i, wi) in rows.iter().enumerate() {
        for (j, wj) in cols.iter().enumerate() {
            let v = base + wi - wj;
            b[(i, j)] = (v >= 0).then_some(v as usize);
        }
    }
    b
}

/// Degree bounds of a section with the given splitting profile: for the odd
/// chapter `λ` of length `n` and entries of degree `≤ 2d + w_i - w_j`; for the
/// pair chapter `(λ, μ)` of length `2m` and entries of degree `≤ d + λ_i - μ_j`.
/// An empty profile is the trivial bundle.
pub fn section_bounds(chapter: Chapter, d: usize, profile: &[i64]) -> Result<Mat<Option<usize>>> {
    let r = chapter.rank();
    let need = match chapter {
        Chapter::Odd { .. } => r,
        Chapter::Pair { .. } => 2 * r,
    };
    let profile: Vec<i64> = if profile.is_empty() { vec![0; need] } else { profile.to_vec() };
    if profile.len() != need {
        return Err(Error::Domain(alloc::format!("profile needs {need} entries")));
    }
    Ok(match chapter {
        Chapter::Odd { .. } => {
            let w = fibre_weights(&profile);
            entry_bounds(&w, &w, 2 * d as i64)
        }
        Chapter::Pair { .. } => {
            let (l, m) = profile.split_at(r);
            entry_bounds(&fibre_weights(l), &fibre_weights(m), d as i64)
        }
    })
}

fn random_poly<G: Rng + ?Sized>(r: &FqT, bound: Option<usize>, rng: &mut G) -> TPoly {
    match bound {
        None => r.zero(),
        Some(b) => {
            let q = r.base.q();
            r.from_coeffs((0..=b).map(|_| rng.gen_range(0..q)).collect())
        }
    }
}

/// Uniform section with the given profile.
pub fn sample_section<G: Rng + ?Sized>(
    field: &FiniteField,
    chapter: Chapter,
    d: usize,
    profile: &[i64],
    rng: &mut G,
) -> Result<Section> {
    if !field.is_prime_field() {
        return Err(Error::Domain("sections are supported over prime fields".into()));
    }
    let bounds = section_bounds(chapter, d, profile)?;
    let r = PolyRing::new(field.clone());
    let mat = match chapter {
        Chapter::Odd { n } => {
            let rep = OddRep::new(field.clone(), n)?;
            let coords: Vec<TPoly> = rep
                .coordinates()
                .iter()
                .map(|&ij| random_poly(&r, bounds[ij], rng))
                .collect();
            rep.from_coords_in(&r, &coords)
        }
        Chapter::Pair { m } => {
            let n = 2 * m + 1;
            let mut a = Mat::filled(n, n, r.zero());
            for i in 0..n {
                for j in 0..n {
                    a[(i, j)] = random_poly(&r, bounds[(i, j)], rng);
                }
            }
            a
        }
    };
    Ok(Section { field: field.clone(), chapter, d, mat, bounds })
}

impl Section {
    pub fn ring(&self) -> FqT {
        PolyRing::new(self.field.clone())
    }

    /// Invariant tuple as a family datum.
    pub fn invariants(&self) -> Result<FamilyDatum> {
        let r = self.ring();
        let coeffs = match self.chapter {
            Chapter::Odd { n } => OddRep::new(self.field.clone(), n)?.invariants_in(&r, &self.mat),
            Chapter::Pair { m } => PairRep::new(self.field.clone(), m)?.invariants_in(&r, &self.mat),
        };
        FamilyDatum::new(self.field.clone(), self.chapter, self.d, coeffs)
    }

    /// Fibre at `∞` in the chart `s = 1/t`: the coefficient of `t^{bound}` of each entry.
    pub fn fibre_at_infinity(&self) -> Mat<u32> {
        let r = self.ring();
        let mut out = Mat::filled(self.mat.rows(), self.mat.cols(), 0u32);
        for i in 0..self.mat.rows() {
            for j in 0..self.mat.cols() {
                if let Some(b) = self.bounds[(i, j)] {
                    out[(i, j)] = r.coeff(&self.mat[(i, j)], b);
                }
            }
        }
        out
    }

    /// Fibre at a finite place `π`, with entries in `F_q[t]/(π)`.
    pub fn fibre_at(&self, pi: &TPoly) -> Result<(FiniteField, Mat<u32>)> {
        let r = self.ring();
        let rf = FiniteField::with_modulus(self.field.p(), pi.coeffs().to_vec())?;
        let k = pi.degree().unwrap_or(0);
        let red = self.mat.map(|a| {
            let rem = r.rem(a, pi);
            let mut c = rem.coeffs().to_vec();
            c.resize(k.max(1), 0);
            rf.from_coeffs(&c)
        });
        Ok((rf, red))
    }

    fn regular_in(&self, f: &FiniteField, a: &Mat<u32>) -> Result<bool> {
        Ok(match self.chapter {
            Chapter::Odd { n } => OddRep::new(f.clone(), n)?.is_regular(a),
            Chapter::Pair { m } => PairRep::new(f.clone(), m)?.is_regular(a),
        })
    }

    /// The matrix whose maximal minors cut out the non-regular locus:
    /// the Krylov matrix `[vec(T^k)]` (odd) or the Lie matrix (pair).
    fn degeneracy_matrix(&self) -> Result<Mat<TPoly>> {
        let r = self.ring();
        Ok(match self.chapter {
            Chapter::Odd { .. } => {
                let n = self.mat.rows();
                let mut k = Mat::filled(n * n, n, r.zero());
                let mut pw = Mat::identity(&r, n);
                for c in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            k[(i * n + j, c)] = pw[(i, j)].clone();
                        }
                    }
                    pw = matrix::mul(&r, &pw, &self.mat);
                }
                k
            }
            Chapter::Pair { m } => PairRep::new(self.field.clone(), m)?.lie_matrix_in(&r, &self.mat),
        })
    }
}

/// Row subsets for maximal minors: for the odd chapter the cyclic-vector
/// Krylov blocks come first, then all subsets in lexicographic order.
struct MinorRows {
    cur: Option<Vec<usize>>,
    total: usize,
    first: Vec<Vec<usize>>,
}

impl MinorRows {
    fn new(total: usize, k: usize, first: Vec<Vec<usize>>) -> Self {
        let cur = (k <= total).then(|| (0..k).collect());
        MinorRows { cur, total, first }
    }
}

impl Iterator for MinorRows {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if let Some(f) = self.first.pop() {
            return Some(f);
        }
        let cur = self.cur.as_mut()?;
        let out = cur.clone();
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.total - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Nonzero minors folded into the gcd before falling back to factoring it.
const MINOR_PATIENCE: usize = 8;

/// Regular fibre at every place of `P^1`, with the first failing place.
///
/// Finite places where the fibre is not regular divide every maximal minor of
/// the degeneracy matrix, so the gcd of a handful of minors is factored and
/// each factor is checked in its residue field.
pub fn is_everywhere_regular(s: &Section) -> Result<Verdict> {
    let r = s.ring();
    let k = s.degeneracy_matrix()?;
    let cols = k.cols();
    let first = match s.chapter {
        Chapter::Odd { .. } => {
            let n = s.mat.rows();
            (0..n).rev().map(|j| (0..n).map(|i| i * n + j).collect()).collect()
        }
        Chapter::Pair { .. } => Vec::new(),
    };
    let all: Vec<usize> = (0..cols).collect();
    let mut g = r.zero();
    let mut used = 0;
    for rows in MinorRows::new(k.rows(), cols, first) {
        let minor = matrix::det_bareiss(&r, &k.select(&rows, &all));
        if minor.is_zero() {
            continue;
        }
        g = if g.is_zero() { r.monic(&minor) } else { r.gcd(&g, &minor) };
        used += 1;
        if g.degree() == Some(0) || used >= MINOR_PATIENCE {
            break;
        }
    }
    if g.is_zero() {
        return Ok(Verdict { holds: false, witness: Some(Place::Finite(r.x())) });
    }
    if g.degree() != Some(0) {
        for (pi, _) in r.factor(&g) {
            let (rf, fibre) = s.fibre_at(&pi)?;
            if !s.regular_in(&rf, &fibre)? {
                return Ok(Verdict { holds: false, witness: Some(Place::Finite(pi)) });
            }
        }
    }
    if !s.regular_in(&s.field, &s.fibre_at_infinity())? {
        return Ok(Verdict { holds: false, witness: Some(Place::Infinity) });
    }
    Ok(Verdict { holds: true, witness: None })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegularCounts {
    pub samples: u64,
    pub regular: u64,
}

impl RegularCounts {
    pub fn merge(&mut self, o: &RegularCounts) {
        self.samples += o.samples;
        self.regular += o.regular;
    }

    pub fn fraction(&self) -> f64 {
        self.regular as f64 / self.samples.max(1) as f64
    }
}

fn check_mc(field: &FiniteField, chapter: Chapter) -> Result<()> {
    match chapter {
        Chapter::Odd { n } => {
            let p = field.p() as usize;
            if p == 2 || (2 * n + 1) % p == 0 {
                return Err(Error::Precondition(alloc::format!("characteristic {p} divides 2(2n+1)")));
            }
            Ok(())
        }
        Chapter::Pair { m } => PairRep::new(field.clone(), m)?.check_characteristic(),
    }
}

/// Samples `start..end` of the trivial-bundle section scan; sample `i` uses stream `i` of `seed`.
pub fn mc_regular_range(
    field: &FiniteField,
    chapter: Chapter,
    d: usize,
    seed: u64,
    start: u64,
    end: u64,
) -> Result<RegularCounts> {
    check_mc(field, chapter)?;
    let mut out = RegularCounts::default();
    for i in start..end {
        let mut rng = crate::rng::stream(seed, i);
        let s = sample_section(field, chapter, d, &[], &mut rng)?;
        out.samples += 1;
        if is_everywhere_regular(&s)?.holds {
            out.regular += 1;
        }
    }
    Ok(out)
}

/// `∏_{i=1}^n ζ_{P^1}(2i)^{-1}` for the odd chapter.
pub fn mc_regular_predicted(q: u64, chapter: Chapter) -> Option<BigRational> {
    match chapter {
        Chapter::Odd { n } => Some((1..=n).fold(BigRational::one(), |acc, i| acc / zeta_p1(q, 2 * i as u32))),
        Chapter::Pair { .. } => None,
    }
}

/// `max(0.01, 3σ)` for a proportion `p` estimated from `samples` draws.
pub fn mc_tolerance(p: f64, samples: u64) -> f64 {
    let sigma = (p * (1.0 - p) / samples.max(1) as f64).sqrt();
    (3.0f64 * sigma).max(0.01)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
