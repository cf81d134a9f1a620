//! Local densities over `R = F_q[ε]/(ε²)`.
//!
//! `α` counts invariant tuples over `R` with vanishing discriminant, `β`
//! counts representation elements over `R` whose reduction is non-regular or
//! whose discriminant vanishes in `R`. Both are computed twice: by brute force
//! over `R`-points and by fibering over residue points, where the
//! `ε`-part of the discriminant is a linear functional on the tangent
//! direction, so each residue point contributes `q^{dim - rank}` bad lifts.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::dual::{Dual, DualRing};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, FiniteRing, Ring};
use crate::vinberg_odd::{odd_char_poly, OddRep};
use crate::vinberg_pair::{pair_char_poly, PairRep};

/// A representation with a polynomial invariant map, in coordinates.
pub trait DensityModel {
    type F: FiniteRing;

    fn field(&self) -> &Self::F;
    fn dim_v(&self) -> usize;
    fn dim_s(&self) -> usize;
    fn matrix_in<R: Ring>(&self, r: &R, x: &[R::Elem]) -> Mat<R::Elem>;
    fn invariants_in<R: Ring>(&self, r: &R, m: &Mat<R::Elem>) -> Vec<R::Elem>;
    fn char_poly_in<R: Ring>(&self, r: &R, c: &[R::Elem]) -> Poly<R::Elem>;
    fn is_regular_at(&self, x: &[<Self::F as Ring>::Elem]) -> bool;
    /// `|G(F_q)|`.
    fn group_order(&self) -> u128;
}

impl<F: FiniteRing> DensityModel for OddRep<F> {
    type F = F;

    fn field(&self) -> &F {
        &self.field
    }

    fn dim_v(&self) -> usize {
        self.dim()
    }

    fn dim_s(&self) -> usize {
        2 * self.n
    }

    fn matrix_in<R: Ring>(&self, r: &R, x: &[R::Elem]) -> Mat<R::Elem> {
        self.from_coords_in(r, x)
    }

    fn invariants_in<R: Ring>(&self, r: &R, m: &Mat<R::Elem>) -> Vec<R::Elem> {
        OddRep::invariants_in(self, r, m)
    }

    fn char_poly_in<R: Ring>(&self, r: &R, c: &[R::Elem]) -> Poly<R::Elem> {
        odd_char_poly(r, c)
    }

    fn is_regular_at(&self, x: &[F::Elem]) -> bool {
        self.is_regular(&self.from_coords(x))
    }

    fn group_order(&self) -> u128 {
        crate::orthogonal::so_order(self.n, self.field.order()).expect("group order fits in u128")
    }
}

impl<F: FiniteRing> DensityModel for PairRep<F> {
    type F = F;

    fn field(&self) -> &F {
        &self.field
    }

    fn dim_v(&self) -> usize {
        self.n() * self.n()
    }

    fn dim_s(&self) -> usize {
        self.n()
    }

    fn matrix_in<R: Ring>(&self, _r: &R, x: &[R::Elem]) -> Mat<R::Elem> {
        Mat::from_vec(self.n(), self.n(), x.to_vec())
    }

    fn invariants_in<R: Ring>(&self, r: &R, m: &Mat<R::Elem>) -> Vec<R::Elem> {
        PairRep::invariants_in(self, r, m)
    }

    fn char_poly_in<R: Ring>(&self, r: &R, c: &[R::Elem]) -> Poly<R::Elem> {
        pair_char_poly(r, c)
    }

    fn is_regular_at(&self, x: &[F::Elem]) -> bool {
        self.is_regular(&Mat::from_vec(self.n(), self.n(), x.to_vec()))
    }

    fn group_order(&self) -> u128 {
        let g = crate::orthogonal::so_order(self.m, self.field.order()).expect("group order fits in u128");
        g * g
    }
}

/// Base-`q` digits of `idx`, most significant first.
pub fn digits<F: FiniteRing>(f: &F, mut idx: u64, len: usize) -> Vec<F::Elem> {
    let q = f.order();
    let mut out = vec![f.zero(); len];
    for k in (0..len).rev() {
        out[k] = f.elem(idx % q);
        idx /= q;
    }
    out
}

fn dual_digits<F: FiniteRing>(d: &DualRing<F>, mut idx: u64, len: usize) -> Vec<Dual<F::Elem>> {
    let q2 = d.order();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(d.elem(idx % q2));
        idx /= q2;
    }
    out.reverse();
    out
}

fn dual_index<F: FiniteRing>(d: &DualRing<F>, x: &[Dual<F::Elem>]) -> u64 {
    let q = d.base.order();
    x.iter().fold(0, |acc, v| acc * q * q + d.base.index(&v.a) + q * d.base.index(&v.b))
}

/// Exact count `bad / total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count {
    pub bad: u128,
    pub total: u128,
}

impl Count {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.bad), BigInt::from(self.total))
    }
}

fn discriminant_dual<M: DensityModel>(m: &M, d: &DualRing<M::F>, c: &[Dual<<M::F as Ring>::Elem>]) -> Dual<<M::F as Ring>::Elem> {
    PolyRing::new(d.clone()).discriminant(&m.char_poly_in(d, c)).expect("monic of positive degree")
}

fn checked_size(q: u64, exp: usize, budget: u64) -> Result<u64> {
    match q.checked_pow(exp as u32) {
        Some(s) if s <= budget => Ok(s),
        Some(s) => Err(Error::Budget { needed: s, budget }),
        None => Err(Error::Budget { needed: u64::MAX, budget }),
    }
}

/// `α` by scanning all of `S(R)`; also returns the zero table indexed by the dual encoding.
pub fn alpha_brute<M: DensityModel>(m: &M, budget: u64) -> Result<(Count, Vec<bool>)> {
    let d = DualRing::new(m.field().clone());
    let k = m.dim_s();
    let size = checked_size(d.order(), k, budget)?;
    let mut zero = vec![false; size as usize];
    let mut bad = 0u128;
    for idx in 0..size {
        let c = dual_digits(&d, idx, k);
        if d.is_zero(&discriminant_dual(m, &d, &c)) {
            zero[idx as usize] = true;
            bad += 1;
        }
    }
    Ok((Count { bad, total: size as u128 }, zero))
}

/// Rank (0 or 1) of `b -> ε-part of Δ(ā + εb)` and whether `Δ(ā) = 0`.
struct Gradients<M: DensityModel> {
    /// Per residue tuple: `None` if `Δ(ā) ≠ 0`, else the gradient.
    table: Vec<Option<Vec<<M::F as Ring>::Elem>>>,
}

impl<M: DensityModel> Gradients<M> {
    fn new(m: &M, budget: u64) -> Result<Self> {
        let f = m.field();
        let d = DualRing::new(f.clone());
        let k = m.dim_s();
        let size = checked_size(f.order(), k, budget)?;
        let mut table = Vec::with_capacity(size as usize);
        for idx in 0..size {
            let a = digits(f, idx, k);
            let lifted: Vec<_> = a.iter().map(|x| d.lift(x)).collect();
            if !d.is_zero(&discriminant_dual(m, &d, &lifted)) {
                table.push(None);
                continue;
            }
            let grad = (0..k)
                .map(|j| {
                    let mut c = lifted.clone();
                    c[j].b = f.one();
                    discriminant_dual(m, &d, &c).b
                })
                .collect();
            table.push(Some(grad));
        }
        Ok(Gradients { table })
    }
}

/// `α` by fibering over residue tuples.
pub fn alpha_fibered<M: DensityModel>(m: &M, budget: u64) -> Result<Count> {
    let f = m.field();
    let q = f.order() as u128;
    let k = m.dim_s();
    let g = Gradients::new(m, budget)?;
    let mut bad = 0u128;
    for grad in g.table.iter().flatten() {
        let rank = grad.iter().any(|x| !f.is_zero(x)) as u32;
        bad += q.pow(k as u32 - rank);
    }
    Ok(Count { bad, total: q.pow(2 * k as u32) })
}

/// `β` by scanning every `R`-point of the representation.
pub fn beta_brute<M: DensityModel>(m: &M, budget: u64) -> Result<Count> {
    let f = m.field();
    let d = DualRing::new(f.clone());
    let dim = m.dim_v();
    let outer = checked_size(f.order(), dim, budget)?;
    let total = checked_size(d.order(), dim, budget)?;
    let (_, zero) = alpha_brute(m, budget)?;
    let mut bad = 0u128;
    for ti in 0..outer {
        let tb = digits(f, ti, dim);
        if !m.is_regular_at(&tb) {
            bad += outer as u128;
            continue;
        }
        for hi in 0..outer {
            let h = digits(f, hi, dim);
            let x: Vec<_> = tb.iter().zip(&h).map(|(a, b)| d.make(a.clone(), b.clone())).collect();
            let c = m.invariants_in(&d, &m.matrix_in(&d, &x));
            if zero[dual_index(&d, &c) as usize] {
                bad += 1;
            }
        }
    }
    Ok(Count { bad, total: total as u128 })
}

/// Bad lifts above one residue point, out of `q^{dim V}`.
fn bad_lifts<M: DensityModel>(m: &M, g: &Gradients<M>, tb: &[<M::F as Ring>::Elem]) -> u128 {
    let f = m.field();
    let q = f.order() as u128;
    let dim = m.dim_v();
    if !m.is_regular_at(tb) {
        return q.pow(dim as u32);
    }
    let c = m.invariants_in(f, &m.matrix_in(f, tb));
    let idx = c.iter().fold(0u64, |acc, x| acc * f.order() + f.index(x));
    let grad = match &g.table[idx as usize] {
        None => return 0,
        Some(grad) => grad,
    };
    if grad.iter().all(|x| f.is_zero(x)) {
        return q.pow(dim as u32);
    }
    let d = DualRing::new(f.clone());
    let lifted: Vec<_> = tb.iter().map(|x| d.lift(x)).collect();
    for k in 0..dim {
        let mut x = lifted.clone();
        x[k].b = f.one();
        let dc = m.invariants_in(&d, &m.matrix_in(&d, &x));
        let mut phi = f.zero();
        for (gj, cj) in grad.iter().zip(&dc) {
            phi = f.mul_add(&phi, gj, &cj.b);
        }
        if !f.is_zero(&phi) {
            return q.pow(dim as u32 - 1);
        }
    }
    q.pow(dim as u32)
}

/// `β` exactly, fibering over residue points.
pub fn beta_fibered<M: DensityModel>(m: &M, budget: u64) -> Result<Count> {
    beta_fibered_shard(m, budget, 0, 1)
}

/// Residue indices `k ≡ shard (mod shards)` only; totals add across shards.
pub fn beta_fibered_shard<M: DensityModel>(m: &M, budget: u64, shard: u64, shards: u64) -> Result<Count> {
    let f = m.field();
    let dim = m.dim_v();
    let outer = checked_size(f.order(), dim, budget)?;
    let g = Gradients::new(m, budget)?;
    let mut bad = 0u128;
    let mut ti = shard;
    while ti < outer {
        bad += bad_lifts(m, &g, &digits(f, ti, dim));
        ti += shards.max(1);
    }
    let q = f.order() as u128;
    Ok(Count { bad, total: q.pow(2 * dim as u32) })
}

/// Monte Carlo estimate of `β` from uniformly sampled residue points, each
/// contributing its exact bad-lift fraction. Returns `(mean, σ)`.
pub fn beta_sampled<M: DensityModel>(m: &M, samples: u64, seed: u64) -> Result<(f64, f64)> {
    let f = m.field();
    let dim = m.dim_v();
    let outer = checked_size(f.order(), dim, u64::MAX)?;
    let g = Gradients::new(m, u64::MAX)?;
    let full = (f.order() as f64).powi(dim as i32);
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    for i in 0..samples {
        let mut rng = crate::rng::stream(seed, i);
        let ti = rng.gen_range(0..outer);
        let x = bad_lifts(m, &g, &digits(f, ti, dim)) as f64 / full;
        s1 += x;
        s2 += x * x;
    }
    let n = samples as f64;
    let mean = s1 / n;
    let var = (s2 / n - mean * mean).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// `|G(F_q)| / q^{dim V - dim S}`, the predicted value of `(1-β)/(1-α)`.
pub fn predicted_ratio<M: DensityModel>(m: &M) -> BigRational {
    let q = BigInt::from(m.field().order());
    BigRational::new(
        BigInt::from(m.group_order()),
        num_traits::pow(q, m.dim_v() - m.dim_s()),
    )
}

/// `(1-β)/(1-α)`.
pub fn density_ratio(alpha: &BigRational, beta: &BigRational) -> Option<BigRational> {
    let one = BigRational::from_integer(BigInt::from(1));
    let den = &one - alpha;
    if num_traits::Zero::is_zero(&den) {
        return None;
    }
    Some((&one - beta) / den)
}

/// For a residue point, the number of `ε`-lifts `H` over each tangent value
/// `b`, indexed by the encoding of `b`.
pub fn lift_histogram<M: DensityModel>(m: &M, tb: &[<M::F as Ring>::Elem], budget: u64) -> Result<Vec<u64>> {
    let f = m.field();
    let d = DualRing::new(f.clone());
    let dim = m.dim_v();
    let k = m.dim_s();
    let outer = checked_size(f.order(), dim, budget)?;
    let mut hist = vec![0u64; f.order().pow(k as u32) as usize];
    for hi in 0..outer {
        let h = digits(f, hi, dim);
        let x: Vec<_> = tb.iter().zip(&h).map(|(a, b)| d.make(a.clone(), b.clone())).collect();
        let c = m.invariants_in(&d, &m.matrix_in(&d, &x));
        let idx = c.iter().fold(0u64, |acc, v| acc * f.order() + f.index(&v.b));
        hist[idx as usize] += 1;
    }
    Ok(hist)
}

/// Residue tuples in `S(F)` with vanishing discriminant.
pub fn discriminant_locus_count<M: DensityModel>(m: &M, budget: u64) -> Result<u64> {
    let g = Gradients::new(m, budget)?;
    Ok(g.table.iter().filter(|x| x.is_some()).count() as u64)
}

/// Local factor `q^{-(2m+1)^2}` of the minimal-tuple density, with the number of
/// linear conditions imposed by `ord(a_i) >= 2i`, `ord(e) >= 2m+1`.
pub fn minimal_local_factor(m: usize, q: u64) -> (BigRational, usize) {
    let n = 2 * m + 1;
    let bounds = minimal_bounds(m);
    let conditions: usize = bounds.iter().sum();
    let factor = BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(q), n * n));
    (factor, conditions)
}

/// Divisibility exponents `2, 4, .., 4m` and `2m+1`.
pub fn minimal_bounds(m: usize) -> Vec<usize> {
    let mut b: Vec<usize> = (1..=2 * m).map(|i| 2 * i).collect();
    b.push(2 * m + 1);
    b
}

/// Fraction of tuples in `(F_q[t]/t^K)^{2m+1}` meeting the divisibility bounds,
/// by enumerating truncated power series coordinate by coordinate.
pub fn minimal_fraction_truncated<F: FiniteRing>(f: &F, m: usize) -> BigRational {
    let bounds = minimal_bounds(m);
    let k = *bounds.iter().max().unwrap();
    let q = f.order();
    let total = q.pow(k as u32);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for &b in &bounds {
        let hits = (0..total)
            .filter(|&idx| {
                let c = digits(f, idx, k);
                // digits are most significant first; the series coefficient of t^j is c[k-1-j]
                (0..b).all(|j| f.is_zero(&c[k - 1 - j]))
            })
            .count();
        num *= BigInt::from(hits);
        den *= BigInt::from(total);
    }
    BigRational::new(num, den)
}
