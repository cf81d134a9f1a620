//! Families of invariant tuples over `P^1_{F_q}`.
//!
//! A datum assigns to coordinate `i` of the invariant tuple a polynomial in
//! `t` of degree at most `w_i d`, where `w_i` is the weight of the coordinate.
//! Orders at `∞` are read off in the chart `s = 1/t` as `w_i d - deg`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::densities::alpha_fibered;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};
use crate::vinberg_odd::{odd_char_poly, OddRep};
use crate::vinberg_pair::{pair_char_poly, PairRep};

pub type FqT = PolyRing<FiniteField>;
pub type TPoly = Poly<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chapter {
    Odd { n: usize },
    Pair { m: usize },
}

impl Chapter {
    /// Degree of the characteristic polynomial in `x`.
    pub fn degree(&self) -> usize {
        match *self {
            Chapter::Odd { n } => 2 * n + 1,
            Chapter::Pair { m } => 2 * m + 1,
        }
    }

    /// Weights of the invariant coordinates: `2i` for `a_i`, and `2m+1` for `e`.
    pub fn weights(&self) -> Vec<usize> {
        match *self {
            Chapter::Odd { n } => (2..=2 * n + 1).map(|i| 2 * i).collect(),
            Chapter::Pair { m } => {
                let mut w: Vec<usize> = (1..=2 * m).map(|i| 2 * i).collect();
                w.push(2 * m + 1);
                w
            }
        }
    }

    /// Weight of the discriminant, `2N(N-1)`.
    pub fn disc_weight(&self) -> usize {
        let n = self.degree();
        2 * n * (n - 1)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Chapter::Odd { .. } => "odd",
            Chapter::Pair { .. } => "pair",
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Chapter::Odd { n } => n,
            Chapter::Pair { m } => m,
        }
    }

    fn check(&self, field: &FiniteField) -> Result<()> {
        if self.rank() == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        match *self {
            Chapter::Odd { n } => OddRep::new(field.clone(), n)?.check_characteristic(),
            Chapter::Pair { m } => PairRep::new(field.clone(), m)?.check_characteristic(),
        }
    }
}

/// A closed point of `P^1`: a monic irreducible in `t`, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(TPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    /// `inf`, or ascending coefficients such as `1,0,1`.
    pub fn label(&self) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(p) => {
                let parts: Vec<String> = p.coeffs().iter().map(|c| alloc::format!("{c}")).collect();
                parts.join(",")
            }
        }
    }
}

/// Number of degree-`r` places of `P^1_{F_q}`: `q + 1` for `r = 1`, the
/// count of monic irreducibles otherwise.
pub fn place_count(q: u64, r: usize) -> u64 {
    if r == 1 {
        return q + 1;
    }
    let mut acc: i128 = 0;
    for k in 1..=r {
        if r % k == 0 {
            acc += mobius(k) as i128 * (q as i128).pow((r / k) as u32);
        }
    }
    (acc / r as i128) as u64
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Every place of degree at most `b`, in place order with `∞` first.
pub fn places_up_to(field: &FiniteField, b: usize) -> Vec<Place> {
    let r = PolyRing::new(field.clone());
    let mut out = vec![Place::Infinity];
    for d in 1..=b {
        for g in r.monic_of_degree(d) {
            if r.is_irreducible(&g) {
                out.push(Place::Finite(g));
            }
        }
    }
    out
}

/// Order of `f` at `v`, where `bound` is the degree bound defining the chart at `∞`.
pub fn order_at(ring: &FqT, v: &Place, f: &TPoly, bound: usize) -> Option<usize> {
    if f.is_zero() {
        return None;
    }
    match v {
        Place::Finite(p) => ring.valuation(f, p),
        Place::Infinity => Some(bound - f.degree().unwrap()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDatum {
    pub field: FiniteField,
    pub chapter: Chapter,
    pub d: usize,
    /// One polynomial per invariant coordinate.
    pub coeffs: Vec<TPoly>,
}

impl FamilyDatum {
    pub fn new(field: FiniteField, chapter: Chapter, d: usize, coeffs: Vec<TPoly>) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::Domain("families are supported over prime fields".into()));
        }
        chapter.check(&field)?;
        let w = chapter.weights();
        if coeffs.len() != w.len() {
            return Err(Error::Domain(alloc::format!("expected {} coefficients", w.len())));
        }
        for (k, (c, wi)) in coeffs.iter().zip(&w).enumerate() {
            if c.degree().is_some_and(|g| g > wi * d) {
                return Err(Error::Domain(alloc::format!("coefficient {k} exceeds degree {}", wi * d)));
            }
        }
        Ok(FamilyDatum { field, chapter, d, coeffs })
    }

    pub fn ring(&self) -> FqT {
        PolyRing::new(self.field.clone())
    }

    pub fn bounds(&self) -> Vec<usize> {
        self.chapter.weights().iter().map(|w| w * self.d).collect()
    }

    /// The characteristic polynomial as a polynomial in `x` over `F_q[t]`.
    pub fn char_poly(&self) -> Poly<TPoly> {
        let r = self.ring();
        match self.chapter {
            Chapter::Odd { .. } => odd_char_poly(&r, &self.coeffs),
            Chapter::Pair { .. } => pair_char_poly(&r, &self.coeffs),
        }
    }

    /// Multiplies coordinate `i` by `λ^{w_i}` (pair `e` by `λ^{2m+1}`).
    pub fn rescale(&self, lambda: u32) -> FamilyDatum {
        let r = self.ring();
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.chapter.weights())
            .map(|(c, w)| r.scale(c, &f.pow(&lambda, w as u64)))
            .collect();
        FamilyDatum { coeffs, ..self.clone() }
    }
}

/// Draws every coefficient of every coordinate uniformly.
pub fn random_datum<G: Rng + ?Sized>(field: &FiniteField, chapter: Chapter, d: usize, rng: &mut G) -> FamilyDatum {
    let r = PolyRing::new(field.clone());
    let q = field.q();
    let coeffs = chapter
        .weights()
        .iter()
        .map(|w| r.from_coeffs((0..=w * d).map(|_| rng.gen_range(0..q)).collect()))
        .collect();
    FamilyDatum { field: field.clone(), chapter, d, coeffs }
}

/// `Δ(t)` by fraction-free elimination of the Sylvester matrix over `F_q[t]`.
pub fn discriminant_section(datum: &FamilyDatum) -> Result<TPoly> {
    let xr = PolyRing::new(datum.ring());
    xr.discriminant_bareiss(&datum.char_poly())
}

/// Outcome of a local test over all places, with the first failing place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Place>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(v: Place) -> Self {
        Verdict { holds: false, witness: Some(v) }
    }
}

/// `Δ` squarefree on `A^1` and `ord_∞ Δ ≤ 1`; refuses `Δ = 0`.
pub fn is_transversal(datum: &FamilyDatum) -> Result<Verdict> {
    let r = datum.ring();
    let disc = discriminant_section(datum)?;
    let Some(deg) = disc.degree() else {
        return Err(Error::Precondition("invalid curve: discriminant vanishes identically".into()));
    };
    Ok(transversal_from_disc(&r, &disc, deg, datum.chapter.disc_weight() * datum.d))
}

fn transversal_from_disc(r: &FqT, disc: &TPoly, deg: usize, bound: usize) -> Verdict {
    let g = r.gcd(disc, &r.derivative(disc));
    if g.degree() != Some(0) {
        let first = r.factor(&g).into_iter().next().unwrap().0;
        return Verdict::fail(Place::Finite(first));
    }
    if bound - deg >= 2 {
        return Verdict::fail(Place::Infinity);
    }
    Verdict::pass()
}

/// No place `v` with `ord_v(c_i) ≥ w_i` for every coordinate.
pub fn is_minimal(datum: &FamilyDatum) -> Result<Verdict> {
    let r = datum.ring();
    let w = datum.chapter.weights();
    let bounds = datum.bounds();
    let nonzero: Vec<&TPoly> = datum.coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Verdict::fail(Place::Finite(r.x())));
    }
    let divisible = |v: &Place| {
        datum
            .coeffs
            .iter()
            .zip(w.iter().zip(&bounds))
            .all(|(c, (&wi, &b))| order_at(&r, v, c, b).map_or(true, |o| o >= wi))
    };
    let g = nonzero.iter().skip(1).fold(r.monic(nonzero[0]), |acc, c| r.gcd(&acc, c));
    if g.degree() != Some(0) {
        for (p, _) in r.factor(&g) {
            let v = Place::Finite(p);
            if divisible(&v) {
                return Ok(Verdict::fail(v));
            }
        }
    }
    if divisible(&Place::Infinity) {
        return Ok(Verdict::fail(Place::Infinity));
    }
    Ok(Verdict::pass())
}

/// `a - b·(a div b)` after scaling `a` by `lc(b)^{deg a - deg b + 1}`.
fn pseudo_rem(xr: &PolyRing<FqT>, a: &Poly<TPoly>, b: &Poly<TPoly>) -> Poly<TPoly> {
    let db = b.degree().unwrap();
    let lb = b.leading().unwrap().clone();
    let mut rem = a.clone();
    while let Some(da) = rem.degree() {
        if da < db {
            break;
        }
        let la = rem.leading().unwrap().clone();
        let lhs = xr.scale(&rem, &lb);
        let rhs = xr.shift(&xr.scale(b, &la), da - db);
        rem = xr.sub(&lhs, &rhs);
    }
    rem
}

fn content(r: &FqT, f: &Poly<TPoly>) -> TPoly {
    f.coeffs().iter().filter(|c| !c.is_zero()).fold(r.zero(), |acc, c| {
        if acc.is_zero() {
            r.monic(c)
        } else {
            r.gcd(&acc, c)
        }
    })
}

fn primitive_part(xr: &PolyRing<FqT>, f: &Poly<TPoly>) -> Poly<TPoly> {
    let r = &xr.base;
    let c = content(r, f);
    let co = f.coeffs().iter().map(|a| r.div_exact_poly(a, &c).unwrap()).collect();
    xr.from_coeffs(co)
}

/// Monic gcd in `F_q(t)[x]` of polynomials with `F_q[t]` coefficients, with
/// `F_q[t]` coefficients when one input is monic.
pub fn gcd_over_fq_t(xr: &PolyRing<FqT>, f: &Poly<TPoly>, g: &Poly<TPoly>) -> Poly<TPoly> {
    let (mut a, mut b) = if f.degree() >= g.degree() { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    if b.is_zero() {
        return normalize_over_fq_t(xr, &a);
    }
    a = primitive_part(xr, &a);
    b = primitive_part(xr, &b);
    while !b.is_zero() {
        let rem = pseudo_rem(xr, &a, &b);
        a = b;
        b = if rem.is_zero() { rem } else { primitive_part(xr, &rem) };
    }
    normalize_over_fq_t(xr, &a)
}

fn normalize_over_fq_t(xr: &PolyRing<FqT>, a: &Poly<TPoly>) -> Poly<TPoly> {
    let r = &xr.base;
    if a.is_zero() {
        return a.clone();
    }
    let a = primitive_part(xr, a);
    let lc = a.leading().unwrap().clone();
    if lc.degree() == Some(0) {
        let inv = r.base.inv(&lc.coeffs()[0]).unwrap();
        return xr.scale(&a, &r.constant(inv));
    }
    a
}

/// Quotient and remainder by a monic divisor in `x`.
pub fn divrem_monic(xr: &PolyRing<FqT>, f: &Poly<TPoly>, g: &Poly<TPoly>) -> (Poly<TPoly>, Poly<TPoly>) {
    let r = &xr.base;
    let dg = g.degree().expect("nonzero divisor");
    debug_assert!(r.is_one(g.leading().unwrap()));
    let mut rem = f.coeffs().to_vec();
    let Some(df) = f.degree() else {
        return (xr.zero(), xr.zero());
    };
    if df < dg {
        return (xr.zero(), f.clone());
    }
    let mut quo = vec![r.zero(); df - dg + 1];
    for k in (0..=df - dg).rev() {
        let c = rem[k + dg].clone();
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs().iter().enumerate() {
            rem[k + j] = r.sub(&rem[k + j], &r.mul(&c, gj));
        }
        quo[k] = c;
    }
    rem.truncate(dg);
    (xr.from_coeffs(quo), xr.from_coeffs(rem))
}

/// Squarefree kernel of a monic `f` over `F_q(t)`, as `f / gcd(f, f')`.
pub fn radical_over_fq_t(base: &FiniteField, f: &Poly<TPoly>) -> Result<Poly<TPoly>> {
    let r = PolyRing::new(base.clone());
    let xr = PolyRing::new(r.clone());
    if f.degree().unwrap_or(0) == 0 || !r.is_one(f.leading().unwrap()) {
        return Err(Error::Domain("radical needs a monic polynomial of positive degree".into()));
    }
    let df = xr.derivative(f);
    if df.is_zero() {
        return Err(Error::Domain("inseparable polynomial".into()));
    }
    let g = gcd_over_fq_t(&xr, f, &df);
    let (quo, rem) = divrem_monic(&xr, f, &g);
    debug_assert!(rem.is_zero());
    Ok(quo)
}

const FACTOR_SEARCH_LIMIT: u64 = 20_000_000;

/// `2^{s-1}`, with `s` the number of irreducible factors of the
/// characteristic polynomial over `F_q(t)`; needs `Δ ≠ 0` and degree at most 5.
pub fn two_torsion_point_count(datum: &FamilyDatum) -> Result<u64> {
    if datum.chapter.degree() > 5 {
        return Err(Error::Domain("factor search supports degree at most 5".into()));
    }
    if discriminant_section(datum)?.is_zero() {
        return Err(Error::Precondition("discriminant vanishes identically".into()));
    }
    let s = factor_count(datum)?;
    Ok(1 << (s - 1))
}

fn monic_divisors(r: &FqT, c: &TPoly, max_deg: usize) -> Vec<TPoly> {
    let mut out = vec![r.one()];
    for (p, m) in r.factor(c) {
        let dp = p.degree().unwrap();
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..m {
                if cur.degree().unwrap() + dp > max_deg {
                    break;
                }
                cur = r.mul(&cur, &p);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out
}

/// Candidates `u·D` with `D` a monic divisor of `c` of degree at most `max_deg`.
fn divisor_candidates(r: &FqT, c: &TPoly, max_deg: usize) -> Vec<TPoly> {
    let f = &r.base;
    let mut out = Vec::new();
    for d in monic_divisors(r, c, max_deg) {
        for u in 1..f.q() {
            out.push(r.scale(&d, &u));
        }
    }
    out
}

fn factor_count(datum: &FamilyDatum) -> Result<usize> {
    let r = datum.ring();
    let xr = PolyRing::new(r.clone());
    let root_bound = 2 * datum.d;
    let mut g = datum.char_poly();
    let mut s = 0;
    'roots: loop {
        if g.degree() == Some(0) {
            return Ok(s);
        }
        let c0 = xr.coeff(&g, 0);
        let cands = if c0.is_zero() { vec![r.zero()] } else { divisor_candidates(&r, &c0, root_bound) };
        for root in cands {
            if xr.eval(&g, &root).is_zero() {
                let lin = xr.from_coeffs(vec![r.neg(&root), r.one()]);
                g = divrem_monic(&xr, &g, &lin).0;
                s += 1;
                continue 'roots;
            }
        }
        break;
    }
    let k = g.degree().unwrap();
    if k <= 3 {
        return Ok(s + 1);
    }
    let c0 = xr.coeff(&g, 0);
    let vs = divisor_candidates(&r, &c0, 2 * root_bound);
    let q = datum.field.q() as u64;
    let us = q.pow(root_bound as u32 + 1);
    let work = us.saturating_mul(vs.len() as u64);
    if work > FACTOR_SEARCH_LIMIT {
        return Err(Error::Budget { needed: work, budget: FACTOR_SEARCH_LIMIT });
    }
    for v in &vs {
        for code in 0..us {
            let mut c = Vec::with_capacity(root_bound + 1);
            let mut x = code;
            for _ in 0..=root_bound {
                c.push((x % q) as u32);
                x /= q;
            }
            let u = r.from_coeffs(c);
            let quad = xr.from_coeffs(vec![v.clone(), u, r.one()]);
            if divrem_monic(&xr, &g, &quad).1.is_zero() {
                return Ok(s + 2);
            }
        }
    }
    Ok(s + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Transversal,
    Minimal,
    TwoTorsion,
}

impl ScanMode {
    pub fn name(&self) -> &'static str {
        match self {
            ScanMode::Transversal => "transversal",
            ScanMode::Minimal => "minimal",
            ScanMode::TwoTorsion => "two-torsion",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanCounts {
    pub samples: u64,
    pub hits: u64,
    /// Two-torsion point counts (or `0` when `Δ = 0`) with frequencies.
    pub histogram: BTreeMap<u64, u64>,
}

impl ScanCounts {
    pub fn merge(&mut self, o: &ScanCounts) {
        self.samples += o.samples;
        self.hits += o.hits;
        for (k, v) in &o.histogram {
            *self.histogram.entry(*k).or_default() += v;
        }
    }

    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.samples.max(1) as f64
    }
}

/// Scans samples `start..end`; sample `i` uses stream `i` of `seed`.
pub fn family_scan_range(
    field: &FiniteField,
    chapter: Chapter,
    d: usize,
    mode: ScanMode,
    seed: u64,
    start: u64,
    end: u64,
) -> Result<ScanCounts> {
    FamilyDatum::new(field.clone(), chapter, d, vec![PolyRing::new(field.clone()).zero(); chapter.weights().len()])?;
    let mut out = ScanCounts::default();
    for i in start..end {
        let mut rng = crate::rng::stream(seed, i);
        let datum = random_datum(field, chapter, d, &mut rng);
        out.samples += 1;
        let hit = match mode {
            ScanMode::Transversal => match is_transversal(&datum) {
                Ok(v) => v.holds,
                Err(Error::Precondition(_)) => false,
                Err(e) => return Err(e),
            },
            ScanMode::Minimal => is_minimal(&datum)?.holds,
            ScanMode::TwoTorsion => {
                let k = match two_torsion_point_count(&datum) {
                    Ok(k) => k,
                    Err(Error::Precondition(_)) => 0,
                    Err(e) => return Err(e),
                };
                *out.histogram.entry(k).or_default() += 1;
                k > 0
            }
        };
        if hit {
            out.hits += 1;
        }
    }
    Ok(out)
}

/// Product over places of degree at most `b` of the local factors, with a
/// bound on the omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    pub truncated: BigRational,
    pub tail_bound: f64,
    pub trunc_b: usize,
    /// Local densities per place degree `1..=b`.
    pub local: Vec<BigRational>,
}

impl Prediction {
    pub fn value(&self) -> f64 {
        self.truncated.to_f64().unwrap_or(f64::NAN)
    }
}

/// Bad-density `α` of the invariant tuples over `F_{q^r}[ε]`, exhaustive over residues.
pub fn transversal_local(p: u32, chapter: Chapter, r: usize, budget: u64) -> Result<BigRational> {
    let f = FiniteField::new(p, r as u32)?;
    let c = match chapter {
        Chapter::Odd { n } => alpha_fibered(&OddRep::new(f, n)?, budget)?,
        Chapter::Pair { m } => alpha_fibered(&PairRep::new(f, m)?, budget)?,
    };
    Ok(c.ratio())
}

fn pow_rat(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Truncated product predicting the scan fraction for `mode`.
pub fn predicted_fraction(q: u64, chapter: Chapter, mode: ScanMode, trunc_b: usize, budget: u64) -> Result<Prediction> {
    let p = q as u32;
    let field = FiniteField::prime(p)?;
    chapter.check(&field)?;
    let mut local = Vec::new();
    let mut prod = BigRational::one();
    let tail_terms = 64;
    // Beyond degree b, at most q^r / r places of degree r.
    let tail_bound;
    match mode {
        ScanMode::Transversal => {
            let mut c = 0f64;
            for r in 1..=trunc_b {
                let a = transversal_local(p, chapter, r, budget)?;
                let qr = (q as f64).powi(r as i32);
                c = c.max(a.to_f64().unwrap() * qr * qr);
                prod *= pow_rat(&(BigRational::one() - &a), place_count(q, r));
                local.push(a);
            }
            tail_bound = (trunc_b + 1..trunc_b + tail_terms)
                .map(|r| c * (q as f64).powi(-(r as i32)) / r as f64)
                .sum();
        }
        ScanMode::Minimal => {
            let e: usize = chapter.weights().iter().sum();
            for r in 1..=trunc_b {
                let a = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(q), r * e));
                prod *= pow_rat(&(BigRational::one() - &a), place_count(q, r));
                local.push(a);
            }
            tail_bound = (trunc_b + 1..trunc_b + tail_terms)
                .map(|r| (q as f64).powi(r as i32 - (r * e) as i32) / r as f64)
                .sum();
        }
        ScanMode::TwoTorsion => {
            return Err(Error::Domain("no product prediction for the two-torsion histogram".into()));
        }
    }
    Ok(Prediction { truncated: prod, tail_bound, trunc_b, local })
}
