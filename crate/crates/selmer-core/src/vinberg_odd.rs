//! `V = Sym^2_0(W)` for `W` split orthogonal of dimension `2n+1`: self-adjoint
//! traceless operators under conjugation by `SO(W)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::{self, Mat};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, FiniteRing, Ring};

#[derive(Clone, Debug)]
pub struct OddRep<F> {
    pub field: F,
    pub n: usize,
    coords: Vec<(usize, usize)>,
}

impl<F: Field> OddRep<F> {
    pub fn new(field: F, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if field.characteristic() == 2 {
            return Err(Error::Domain("characteristic 2 is not supported".into()));
        }
        let big = 2 * n + 1;
        let mut coords = Vec::new();
        for i in 0..big {
            for j in 0..big - i {
                if !(i == n && j == n) {
                    coords.push((i, j));
                }
            }
        }
        Ok(OddRep { field, n, coords })
    }

    /// Checks the characteristic hypothesis `p ∤ 2(2n+1)`.
    pub fn check_characteristic(&self) -> Result<()> {
        let p = self.field.characteristic() as usize;
        if (2 * self.n + 1) % p == 0 {
            return Err(Error::Precondition(alloc::format!(
                "characteristic {p} divides 2(2n+1) = {}",
                2 * (2 * self.n + 1)
            )));
        }
        Ok(())
    }

    pub fn dim_w(&self) -> usize {
        2 * self.n + 1
    }

    /// `dim V = 2n^2 + 3n`.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Free coordinates: entries on or above the anti-diagonal, minus the centre.
    pub fn coordinates(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn is_element(&self, t: &Mat<F::Elem>) -> bool {
        t.rows() == self.dim_w() && *t == t.adjoint() && self.field.is_zero(&matrix::trace(&self.field, t))
    }

    pub fn from_coords(&self, x: &[F::Elem]) -> Mat<F::Elem> {
        self.from_coords_in(&self.field, x)
    }

    /// Same coordinates over any ring of the same characteristic.
    pub fn from_coords_in<R: Ring>(&self, r: &R, x: &[R::Elem]) -> Mat<R::Elem> {
        let big = self.dim_w();
        let mut t = Mat::filled(big, big, r.zero());
        for (&(i, j), v) in self.coords.iter().zip(x) {
            t[(i, j)] = v.clone();
            t[(big - 1 - j, big - 1 - i)] = v.clone();
        }
        let mut tr = r.zero();
        for i in 0..self.n {
            tr = r.add(&tr, &t[(i, i)]);
        }
        t[(self.n, self.n)] = r.neg(&r.add(&tr, &tr));
        t
    }

    pub fn to_coords(&self, t: &Mat<F::Elem>) -> Vec<F::Elem> {
        self.coords.iter().map(|&ij| t[ij].clone()).collect()
    }

    /// `(c_2, .., c_{2n+1})` with `det(x - T) = x^{2n+1} + c_2 x^{2n-1} + .. + c_{2n+1}`.
    pub fn invariants(&self, t: &Mat<F::Elem>) -> Vec<F::Elem> {
        let cp = matrix::charpoly_hessenberg(&self.field, t);
        let big = self.dim_w();
        (2..=big).map(|i| cp[big - i].clone()).collect()
    }

    /// Invariants over any commutative ring, by the division-free characteristic polynomial.
    pub fn invariants_in<R: Ring>(&self, r: &R, t: &Mat<R::Elem>) -> Vec<R::Elem> {
        let cp = matrix::charpoly_berkowitz(r, t);
        let big = self.dim_w();
        (2..=big).map(|i| cp[big - i].clone()).collect()
    }

    pub fn char_poly(&self, c: &[F::Elem]) -> Poly<F::Elem> {
        odd_char_poly(&self.field, c)
    }

    pub fn discriminant(&self, c: &[F::Elem]) -> F::Elem {
        let r = PolyRing::new(self.field.clone());
        r.discriminant(&self.char_poly(c)).expect("monic of positive degree")
    }

    /// The Kostant section: lower shift blocks plus the tri-anti-diagonal block
    /// holding `-a_i` and `-a_i/2`.
    pub fn kostant(&self, c: &[F::Elem]) -> Mat<F::Elem> {
        kostant_matrix(&self.field, self.n, |i| {
            if (2..=2 * self.n + 1).contains(&i) {
                c[i - 2].clone()
            } else {
                self.field.zero()
            }
        })
    }

    /// `I, T, .., T^{2n}` independent, i.e. minimal polynomial = characteristic polynomial.
    pub fn is_regular(&self, t: &Mat<F::Elem>) -> bool {
        matrix::krylov_rank(&self.field, t, self.dim_w()) == self.dim_w()
    }

    /// Conjugation `g T g*`.
    pub fn act(&self, g: &Mat<F::Elem>, t: &Mat<F::Elem>) -> Mat<F::Elem> {
        let f = &self.field;
        matrix::mul(f, &matrix::mul(f, g, t), &g.adjoint())
    }
}

/// `x^{2n+1} + c_2 x^{2n-1} + .. + c_{2n+1}`.
pub fn odd_char_poly<F: Ring>(f: &F, c: &[F::Elem]) -> Poly<F::Elem> {
    let big = c.len() + 1;
    let mut co = vec![f.zero(); big + 1];
    co[big] = f.one();
    for (k, v) in c.iter().enumerate() {
        co[big - 2 - k] = v.clone();
    }
    PolyRing::new(f.clone()).from_coeffs(co)
}

/// Kostant matrix for the coefficient function `a(i)`, `a(1) = 0`.
pub fn kostant_matrix<R: Ring>(r: &R, n: usize, a: impl Fn(usize) -> R::Elem) -> Mat<R::Elem> {
    let big = 2 * n + 1;
    let mut t = Mat::filled(big, big, r.zero());
    for i in 1..=n {
        t[(i, i - 1)] = r.one();
    }
    for k in 0..n {
        t[(n + 1 + k, n + k)] = r.one();
    }
    let half = halve(r);
    // 1-indexed block row i, block column j sits at (i-1, n+j-1).
    let mut put = |i: usize, j: isize, v: R::Elem| {
        if (1..=n as isize + 1).contains(&j) {
            t[(i - 1, n + j as usize - 1)] = r.neg(&v);
        }
    };
    for i in 1..=n + 1 {
        let ii = i as isize;
        let aget = |k: isize| if k >= 1 { a(k as usize) } else { r.zero() };
        put(i, n as isize + 2 - ii, aget(2 * n as isize + 3 - 2 * ii));
        put(i, n as isize + 1 - ii, r.mul(&half, &aget(2 * n as isize + 2 - 2 * ii)));
        put(i, n as isize + 3 - ii, r.mul(&half, &aget(2 * n as isize + 4 - 2 * ii)));
    }
    t
}

/// `1/2` in a ring of odd characteristic, as `(p+1)/2`.
pub(crate) fn halve<R: Ring>(r: &R) -> R::Elem {
    let p = r.characteristic() as i64;
    r.from_i64((p + 1) / 2)
}

impl<F: FiniteRing> OddRep<F> {
    pub fn size(&self) -> u64 {
        self.field.order().pow(self.dim() as u32)
    }

    /// Element with index `idx`; the first coordinate is the most significant digit.
    pub fn element(&self, mut idx: u64) -> Mat<F::Elem> {
        let q = self.field.order();
        let d = self.dim();
        let mut x = vec![self.field.zero(); d];
        for k in (0..d).rev() {
            x[k] = self.field.elem(idx % q);
            idx /= q;
        }
        self.from_coords(&x)
    }

    pub fn index(&self, t: &Mat<F::Elem>) -> u64 {
        let q = self.field.order();
        self.coords.iter().fold(0, |acc, &ij| acc * q + self.field.index(&t[ij]))
    }

    pub fn invariant_index(&self, c: &[F::Elem]) -> u64 {
        let q = self.field.order();
        c.iter().fold(0, |acc, x| acc * q + self.field.index(x))
    }

    pub fn invariants_at(&self, mut idx: u64) -> Vec<F::Elem> {
        let q = self.field.order();
        let k = 2 * self.n;
        let mut c = vec![self.field.zero(); k];
        for i in (0..k).rev() {
            c[i] = self.field.elem(idx % q);
            idx /= q;
        }
        c
    }

    /// All `g` in `group` with `g T = T g`.
    pub fn stabilizer_points(&self, t: &Mat<F::Elem>, group: &[Mat<F::Elem>]) -> Result<Vec<Mat<F::Elem>>> {
        if !self.is_regular(t) {
            return Err(Error::Precondition("stabilizer of a non-regular element is not finite".into()));
        }
        let f = &self.field;
        Ok(group
            .iter()
            .filter(|g| matrix::mul(f, g, t) == matrix::mul(f, t, g))
            .cloned()
            .collect())
    }
}

/// `2^{s-1}` where `s` is the number of distinct monic irreducible factors.
pub fn norm_kernel_order<F: FiniteRing>(f: &F, poly: &Poly<F::Elem>) -> Result<u64> {
    let s = PolyRing::new(f.clone()).distinct_factor_count(poly)?;
    Ok(1u64 << (s - 1))
}

/// One two-torsion generator: the polynomial `p` with `p ≡ -1 mod pi^m` and
/// `p ≡ 1 mod f / pi^m`, and `g = ±p(T)` normalized into `SO`.
#[derive(Clone, Debug)]
pub struct TwoTorsionGen<E> {
    pub factor: Poly<E>,
    pub multiplicity: usize,
    pub p: Poly<E>,
    /// True when `g = -p(T)`, i.e. `m deg(pi)` is odd.
    pub negated: bool,
}

/// Generators indexed by the monic irreducible factors of `f` over the base field.
pub fn two_torsion_polys<F: FiniteRing>(field: &F, f: &Poly<F::Elem>) -> Result<Vec<TwoTorsionGen<F::Elem>>> {
    let r = PolyRing::new(field.clone());
    if !r.is_monic(f) || f.degree().unwrap_or(0) % 2 == 0 {
        return Err(Error::Domain("two-torsion generators need a monic polynomial of odd degree".into()));
    }
    let fac = r.factor(f);
    let mut out = Vec::with_capacity(fac.len());
    for (pi, m) in fac {
        let a = r.pow(&pi, m as u64);
        out.push(TwoTorsionGen {
            p: idempotent_sign(&r, f, &a)?,
            negated: (m * pi.degree().unwrap()) % 2 == 1,
            factor: pi,
            multiplicity: m,
        });
    }
    Ok(out)
}

/// `p ≡ -1 mod a`, `p ≡ 1 mod f/a`, reduced mod `f`.
fn idempotent_sign<F: Field>(r: &PolyRing<F>, f: &Poly<F::Elem>, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    let b = r.div_exact_poly(f, a).ok_or_else(|| Error::Domain("factor does not divide".into()))?;
    if b.degree() == Some(0) {
        return Ok(r.from_ints(&[-1]));
    }
    let (g, _u, v) = r.ext_gcd(a, &b);
    if g.degree() != Some(0) {
        return Err(Error::Domain("cofactors are not coprime".into()));
    }
    let ginv = r.base.inv(&g.coeffs()[0]).unwrap();
    let vb = r.scale(&r.mul(&v, &b), &ginv);
    let two = r.base.from_i64(2);
    Ok(r.rem(&r.sub(&r.one(), &r.scale(&vb, &two)), f))
}

/// Root-wise generators over a splitting field `F_{p^k}` of `f` in `F_p[x]`:
/// `p_i ≡ -1 mod (x - α_i)^{m_i}`, `p_i ≡ 1` modulo the rest.
pub struct SplitTwoTorsion {
    pub field: FiniteField,
    pub roots: Vec<(u32, usize)>,
    pub polys: Vec<Poly<u32>>,
}

/// Largest splitting field used for root-wise generators.
pub const MAX_SPLIT_ORDER: u64 = 1 << 20;

pub fn two_torsion_split(base: &FiniteField, f: &Poly<u32>) -> Result<SplitTwoTorsion> {
    if !base.is_prime_field() {
        return Err(Error::Domain("root-wise generators are implemented over prime fields".into()));
    }
    let r = PolyRing::new(base.clone());
    let mut k = 1u32;
    for (pi, _) in r.factor(f) {
        k = num_integer::lcm(k, pi.degree().unwrap() as u32);
    }
    let p = base.p();
    if (p as u64).checked_pow(k).map_or(true, |q| q > MAX_SPLIT_ORDER) {
        return Err(Error::Domain(alloc::format!("splitting field F_{p}^{k} exceeds the supported size")));
    }
    let ext = FiniteField::new(p, k)?;
    let re = PolyRing::new(ext.clone());
    let fe = re.from_coeffs(f.coeffs().to_vec());
    let roots = re.roots(&fe);
    let mut polys = Vec::with_capacity(roots.len());
    for (alpha, m) in &roots {
        let lin = re.from_coeffs(vec![ext.neg(alpha), 1]);
        polys.push(idempotent_sign(&re, &fe, &re.pow(&lin, *m as u64))?);
    }
    Ok(SplitTwoTorsion { field: ext, roots, polys })
}

/// `p(T)` by Horner.
pub fn eval_at_matrix<R: Ring>(r: &R, p: &Poly<R::Elem>, t: &Mat<R::Elem>) -> Mat<R::Elem> {
    matrix::eval_poly(r, p.coeffs(), t)
}

/// The elements `±p_i(T)` in `SO(W)`.
pub fn two_torsion_matrices<F: FiniteRing>(
    rep: &OddRep<F>,
    gens: &[TwoTorsionGen<F::Elem>],
    t: &Mat<F::Elem>,
) -> Vec<Mat<F::Elem>> {
    let f = &rep.field;
    gens.iter()
        .map(|g| {
            let m = eval_at_matrix(f, &g.p, t);
            if g.negated {
                m.map(|x| f.neg(x))
            } else {
                m
            }
        })
        .collect()
}

/// The elementary abelian group generated by commuting involutions.
pub fn generated_group<F: Field>(f: &F, gens: &[Mat<F::Elem>], dim: usize) -> Vec<Mat<F::Elem>> {
    let mut elems: Vec<Mat<F::Elem>> = vec![Mat::identity(f, dim)];
    for g in gens {
        if elems.contains(g) {
            continue;
        }
        let new: Vec<_> = elems.iter().map(|e| matrix::mul(f, e, g)).collect();
        for x in new {
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
    }
    elems
}

/// `g` in `SO(W)` with `g T g* = κ(π(T))` for `T` upper Hessenberg with
/// nonzero subdiagonal.
pub fn kostant_reduce_odd<F: Field>(rep: &OddRep<F>, t: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    let f = &rep.field;
    let big = rep.dim_w();
    let n = rep.n;
    if !rep.is_element(t) {
        return Err(Error::Domain("input is not self-adjoint and traceless".into()));
    }
    for i in 0..big {
        for j in 0..i.saturating_sub(1) {
            if !f.is_zero(&t[(i, j)]) {
                return Err(Error::Domain("input has entries below the subdiagonal".into()));
            }
        }
    }
    if (0..big - 1).any(|i| f.is_zero(&t[(i + 1, i)])) {
        return Err(Error::Precondition("zero subdiagonal entry".into()));
    }
    // Torus making the subdiagonal all ones.
    let mut d = vec![f.one(); big];
    for i in (0..n).rev() {
        d[i] = f.mul(&d[i + 1], &t[(i + 1, i)]);
    }
    for i in n..big - 1 {
        d[i + 1] = f.div(&d[i], &t[(i + 1, i)]).unwrap();
    }
    let tor = crate::orthogonal::torus(f, &d[..n]).unwrap();
    debug_assert!((0..big).all(|i| tor[(i, i)] == d[i]));
    let t1 = rep.act(&tor, t);
    let kappa = rep.kostant(&rep.invariants(t));
    // h T1 = κ h with h unipotent upper triangular.
    let kk = krylov_e1(f, &kappa);
    let kt = krylov_e1(f, &t1);
    let h = matrix::mul(f, &kk, &matrix::inverse(f, &kt).expect("unit subdiagonal"));
    // z = (h* h)^{-1/2}, a polynomial in T1.
    let m = matrix::mul(f, &h.adjoint(), &h);
    let nil = matrix::sub(f, &m, &Mat::identity(f, big));
    let mut z = Mat::identity(f, big);
    let mut pw = Mat::identity(f, big);
    for k in 1..big {
        pw = matrix::mul(f, &pw, &nil);
        let c = binom_minus_half(f, k);
        z = matrix::add(f, &z, &matrix::scale(f, &pw, &c));
    }
    let g = matrix::mul(f, &matrix::mul(f, &h, &z), &tor);
    if rep.act(&g, t) != kappa || !crate::orthogonal::is_orthogonal(f, &g) {
        return Err(Error::Domain("reduction failed verification".into()));
    }
    Ok(g)
}

/// Columns `e_1, X e_1, .., X^{N-1} e_1`.
fn krylov_e1<R: Ring>(r: &R, x: &Mat<R::Elem>) -> Mat<R::Elem> {
    let big = x.rows();
    let mut out = Mat::filled(big, big, r.zero());
    let mut v = vec![r.zero(); big];
    v[0] = r.one();
    for j in 0..big {
        for i in 0..big {
            out[(i, j)] = v[i].clone();
        }
        let mut w = vec![r.zero(); big];
        for i in 0..big {
            for k in 0..big {
                w[i] = r.mul_add(&w[i], &x[(i, k)], &v[k]);
            }
        }
        v = w;
    }
    out
}

/// `binom(-1/2, k) = (-1)^k C(2k, k) / 4^k`.
fn binom_minus_half<F: Field>(f: &F, k: usize) -> F::Elem {
    let mut c = f.one();
    for i in 0..k {
        // C(2k,k)/4^k = prod (2i+1)/(2i+2)
        c = f.mul(&c, &f.div(&f.from_i64(2 * i as i64 + 1), &f.from_i64(2 * i as i64 + 2)).unwrap());
    }
    if k % 2 == 1 {
        f.neg(&c)
    } else {
        c
    }
}

/// Per-fiber regular counts, mergeable across shards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCounts {
    pub total: u64,
    pub regular: u64,
    /// Indexed by the encoded invariant tuple.
    pub fiber_regular: Vec<u64>,
}

impl OddCounts {
    pub fn merge(&mut self, other: &OddCounts) {
        self.total += other.total;
        self.regular += other.regular;
        for (a, b) in self.fiber_regular.iter_mut().zip(&other.fiber_regular) {
            *a += b;
        }
    }
}

/// Counts over element indices `k` in `range` with `k % shards == shard`.
pub fn odd_census_counts<F: FiniteRing>(rep: &OddRep<F>, shard: u64, shards: u64) -> OddCounts {
    let fibers = rep.field.order().pow(2 * rep.n as u32) as usize;
    let mut out = OddCounts { total: 0, regular: 0, fiber_regular: vec![0; fibers] };
    let size = rep.size();
    let shards = shards.max(1);
    let mut idx = shard;
    while idx < size {
        let t = rep.element(idx);
        out.total += 1;
        if rep.is_regular(&t) {
            out.regular += 1;
            out.fiber_regular[rep.invariant_index(&rep.invariants(&t)) as usize] += 1;
        }
        idx += shards;
    }
    out
}

/// Orbit sizes of regular elements per fiber, by marking orbits in index order.
pub fn odd_regular_orbits<F: FiniteRing>(rep: &OddRep<F>, group: &[Mat<F::Elem>]) -> BTreeMap<u64, Vec<u64>> {
    let size = rep.size() as usize;
    let mut seen = vec![0u64; size.div_ceil(64)];
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for idx in 0..size {
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let t = rep.element(idx as u64);
        if !rep.is_regular(&t) {
            continue;
        }
        let mut count = 0u64;
        for g in group {
            let j = rep.index(&rep.act(g, &t)) as usize;
            if seen[j / 64] >> (j % 64) & 1 == 0 {
                seen[j / 64] |= 1 << (j % 64);
                count += 1;
            }
        }
        let key = rep.invariant_index(&rep.invariants(&t));
        out.entry(key).or_default().push(count);
    }
    out
}
