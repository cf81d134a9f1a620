//! Dense univariate polynomials over a ring object.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{ExactDiv, Field, FiniteRing, Ring};

/// Ascending coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.c.last()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut c: Vec<R::Elem>) -> Poly<R::Elem> {
        while c.last().map_or(false, |x| self.base.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(&self, c: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(c.iter().map(|&x| self.base.from_i64(x)).collect())
    }

    pub fn constant(&self, a: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![a])
    }

    /// `a x^d`
    pub fn monomial(&self, a: R::Elem, d: usize) -> Poly<R::Elem> {
        let mut c = vec![self.base.zero(); d + 1];
        c[d] = a;
        self.from_coeffs(c)
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, f: &Poly<R::Elem>, i: usize) -> R::Elem {
        f.c.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.leading().map_or(false, |l| self.base.is_one(l))
    }

    pub fn scale(&self, f: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(f.c.iter().map(|x| self.base.mul(x, a)).collect())
    }

    /// `f * x^k`
    pub fn shift(&self, f: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let mut c = vec![self.base.zero(); k];
        c.extend(f.c.iter().cloned());
        Poly { c }
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for a in f.c.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), a);
        }
        acc
    }

    /// Evaluates `f` at an element of an extension, given the embedding of coefficients.
    pub fn eval_in<S: Ring>(
        &self,
        f: &Poly<R::Elem>,
        target: &S,
        embed: impl Fn(&R::Elem) -> S::Elem,
        x: &S::Elem,
    ) -> S::Elem {
        let mut acc = target.zero();
        for a in f.c.iter().rev() {
            acc = target.add(&target.mul(&acc, x), &embed(a));
        }
        acc
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        if f.c.len() <= 1 {
            return Poly { c: Vec::new() };
        }
        let c = f.c[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| self.base.mul(&self.base.from_i64(i as i64 + 1), a))
            .collect();
        self.from_coeffs(c)
    }

    /// Applies `g` to every coefficient.
    pub fn map<S: Ring>(&self, f: &Poly<R::Elem>, target: &PolyRing<S>, g: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        target.from_coeffs(f.c.iter().map(g).collect())
    }

    /// `f(x) -> f(u x)`, i.e. the i-th coefficient times `u^i`.
    pub fn scale_var(&self, f: &Poly<R::Elem>, u: &R::Elem) -> Poly<R::Elem> {
        let mut pw = self.base.one();
        let mut c = Vec::with_capacity(f.c.len());
        for a in &f.c {
            c.push(self.base.mul(a, &pw));
            pw = self.base.mul(&pw, u);
        }
        self.from_coeffs(c)
    }

    /// Sylvester matrix of `f` (degree m) and `g` (degree k): k shifted rows of
    /// `f` then m shifted rows of `g`, coefficients in descending order.
    pub fn sylvester(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Mat<R::Elem>> {
        match (f.degree(), g.degree()) {
            (Some(m), Some(k)) if m + k > 0 => Ok(self.sylvester_formal(f, m, g, k)),
            _ => Err(Error::Domain("Sylvester matrix needs nonzero inputs of positive total degree".into())),
        }
    }

    /// Sylvester matrix with formal degrees `m >= deg f`, `k >= deg g`.
    pub fn sylvester_formal(&self, f: &Poly<R::Elem>, m: usize, g: &Poly<R::Elem>, k: usize) -> Mat<R::Elem> {
        let n = m + k;
        let mut s = Mat::filled(n, n, self.base.zero());
        for r in 0..k {
            for i in 0..=m {
                s[(r, r + i)] = self.coeff(f, m - i);
            }
        }
        for r in 0..m {
            for i in 0..=k {
                s[(k + r, r + i)] = self.coeff(g, k - i);
            }
        }
        s
    }

    fn disc_sylvester(&self, f: &Poly<R::Elem>) -> Result<(usize, Mat<R::Elem>)> {
        let n = self.discriminant_degree(f)?;
        if n == 1 {
            return Ok((1, Mat::identity(&self.base, 1)));
        }
        Ok((n, self.sylvester_formal(f, n, &self.derivative(f), n - 1)))
    }

    /// Resultant as the division-free determinant of the Sylvester matrix.
    pub fn resultant(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<R::Elem> {
        let s = self.sylvester(f, g)?;
        Ok(crate::matrix::det_berkowitz(&self.base, &s))
    }

    /// `(-1)^{N(N-1)/2} R(f, f')` for monic `f` of degree `N`; for `N = 2n+1`
    /// the sign is `(-1)^n`.
    pub fn discriminant(&self, f: &Poly<R::Elem>) -> Result<R::Elem> {
        let (n, s) = self.disc_sylvester(f)?;
        Ok(disc_sign(&self.base, n, crate::matrix::det_berkowitz(&self.base, &s)))
    }

    fn discriminant_degree(&self, f: &Poly<R::Elem>) -> Result<usize> {
        if !self.is_monic(f) {
            return Err(Error::Domain("discriminant needs a monic polynomial".into()));
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::Domain("discriminant of a constant".into()));
        }
        Ok(n)
    }
}

fn disc_sign<R: Ring>(r: &R, n: usize, v: R::Elem) -> R::Elem {
    if (n * (n - 1) / 2) % 2 == 1 {
        r.neg(&v)
    } else {
        v
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { c: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        let (long, short) = if f.c.len() >= g.c.len() { (f, g) } else { (g, f) };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(short.c.iter()) {
            *x = self.base.add(x, y);
        }
        self.from_coeffs(c)
    }

    fn sub(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        let n = f.c.len().max(g.c.len());
        let c = (0..n)
            .map(|i| match (f.c.get(i), g.c.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(c)
    }

    fn neg(&self, f: &Self::Elem) -> Self::Elem {
        Poly { c: f.c.iter().map(|x| self.base.neg(x)).collect() }
    }

    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.base.zero(); f.c.len() + g.c.len() - 1];
        for (i, a) in f.c.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in g.c.iter().enumerate() {
                c[i + j] = self.base.mul_add(&c[i + j], a, b);
            }
        }
        self.from_coeffs(c)
    }

    fn is_zero(&self, f: &Self::Elem) -> bool {
        f.is_zero()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }
}

impl<F: Field> PolyRing<F> {
    /// Quotient and remainder; `None` when dividing by zero.
    pub fn divrem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
        let dg = g.degree()?;
        let lead_inv = self.base.inv(g.leading().unwrap())?;
        let mut r = f.c.clone();
        if r.len() <= dg {
            return Some((self.zero(), f.clone()));
        }
        let mut q = vec![self.base.zero(); r.len() - dg];
        for top in (dg..r.len()).rev() {
            let c = self.base.mul(&r[top], &lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (i, b) in g.c.iter().enumerate() {
                let idx = top - dg + i;
                r[idx] = self.base.sub(&r[idx], &self.base.mul(&c, b));
            }
            q[top - dg] = c;
        }
        r.truncate(dg);
        Some((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(f, g).expect("division by zero polynomial").1
    }

    pub fn divides(&self, g: &Poly<F::Elem>, f: &Poly<F::Elem>) -> bool {
        match self.divrem(f, g) {
            Some((_, r)) => r.is_zero(),
            None => f.is_zero(),
        }
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(l) => self.scale(f, &self.base.inv(l).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(d, s, t)` with `s f + t g = d = gcd(f, g)` monic.
    pub fn ext_gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).unwrap();
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(l).unwrap();
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    pub fn mulmod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    /// Exact quotient `f / g`; `None` if `g` does not divide `f`.
    pub fn div_exact_poly(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(f, g)?;
        r.is_zero().then_some(q)
    }

    /// Multiplicity of `g` (non-constant) as a factor of nonzero `f`.
    pub fn valuation(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<usize> {
        if f.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut h = f.clone();
        while let Some(q) = self.div_exact_poly(&h, g) {
            h = q;
            k += 1;
        }
        Some(k)
    }

    /// Discriminant through the field Sylvester determinant (Gaussian elimination).
    pub fn discriminant_field(&self, f: &Poly<F::Elem>) -> Result<F::Elem> {
        let (n, s) = self.disc_sylvester(f)?;
        Ok(disc_sign(&self.base, n, crate::matrix::det_gauss(&self.base, &s)))
    }

    pub fn resultant_field(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<F::Elem> {
        let s = self.sylvester(f, g)?;
        Ok(crate::matrix::det_gauss(&self.base, &s))
    }
}

impl<F: FiniteRing> PolyRing<F> {
    /// `h^q mod m`.
    pub fn frobenius(&self, h: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.powmod(h, self.base.order() as u128, m)
    }

    /// p-th root of a polynomial all of whose exponents are multiples of p.
    fn pth_root(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let p = self.base.characteristic() as usize;
        let q = self.base.order();
        // a^(q/p) is the p-th root of a in F_q.
        let e = q / p as u64;
        let c = f.c.iter().step_by(p).map(|a| self.base.pow(a, e)).collect();
        self.from_coeffs(c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// `f = prod g_i^i`, each `g_i` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        let mut out = Vec::new();
        if f.degree().map_or(true, |d| d == 0) {
            return out;
        }
        let f = self.monic(f);
        let p = self.base.characteristic() as usize;
        let df = self.derivative(&f);
        let mut c = self.gcd(&f, &df);
        let mut w = self.div_exact_poly(&f, &c).unwrap();
        let mut i = 1;
        while w.degree().unwrap() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_exact_poly(&w, &y).unwrap();
            if z.degree().unwrap() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = self.div_exact_poly(&c, &w).unwrap();
        }
        if c.degree().unwrap() > 0 {
            let root = self.pth_root(&c);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * p));
            }
        }
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// Monic squarefree polynomial with the same roots as `f`.
    pub fn radical(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if f.is_zero() {
            return Err(Error::Domain("radical of the zero polynomial".into()));
        }
        let mut r = self.one();
        for (g, _) in self.squarefree_decomposition(f) {
            r = self.mul(&r, &g);
        }
        Ok(r)
    }

    /// Ben-Or test: `gcd(f, x^{q^i} - x) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(&self, f: &Poly<F::Elem>) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic(f);
        let x = self.x();
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = self.frobenius(&h, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self, f: &Poly<F::Elem>) -> Vec<(usize, Poly<F::Elem>)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = self.x();
        let mut h = x.clone();
        let mut d = 0;
        while rest.degree().map_or(false, |n| n > 0) {
            d += 1;
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.degree().unwrap(), rest.clone()));
                break;
            }
            h = self.frobenius(&h, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.degree().unwrap() > 0 {
                rest = self.div_exact_poly(&rest, &g).unwrap();
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
        }
        out
    }

    /// Number of distinct monic irreducible factors.
    pub fn distinct_factor_count(&self, f: &Poly<F::Elem>) -> Result<usize> {
        let r = self.radical(f)?;
        Ok(self
            .distinct_degree(&r)
            .iter()
            .map(|(d, g)| g.degree().unwrap() / d)
            .sum())
    }

    /// Berlekamp splitting of a monic squarefree polynomial into irreducibles.
    fn berlekamp(&self, f: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
        let n = f.degree().unwrap();
        if n <= 1 {
            return vec![f.clone()];
        }
        // Rows: x^{q i} mod f - x^i.
        let xq = self.frobenius(&self.x(), f);
        let mut rows = Mat::filled(n, n, self.base.zero());
        let mut cur = self.one();
        for i in 0..n {
            for j in 0..n {
                rows[(i, j)] = self.coeff(&cur, j);
            }
            rows[(i, i)] = self.base.sub(&rows[(i, i)], &self.base.one());
            cur = self.mulmod(&cur, &xq, f);
        }
        // Kernel of v -> v Q' as row vectors: solve Q'^T v = 0.
        let kernel = crate::matrix::nullspace(&self.base, &rows.transpose());
        if kernel.len() == 1 {
            return vec![f.clone()];
        }
        let mut factors = vec![f.clone()];
        for v in kernel.iter() {
            let vp = self.from_coeffs(v.clone());
            if vp.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let mut next = Vec::new();
            for g in factors {
                if g.degree().unwrap() <= 1 {
                    next.push(g);
                    continue;
                }
                let mut rest = g.clone();
                for s in self.base.elements() {
                    if rest.degree().unwrap() == 0 {
                        break;
                    }
                    let h = self.gcd(&rest, &self.sub(&vp, &self.constant(s)));
                    let dh = h.degree().unwrap();
                    if dh > 0 && dh < rest.degree().unwrap() {
                        rest = self.div_exact_poly(&rest, &h).unwrap();
                        next.push(h);
                    }
                }
                if rest.degree().unwrap() > 0 {
                    next.push(rest);
                }
            }
            factors = next;
            if factors.len() == kernel.len() {
                break;
            }
        }
        factors
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree, then lexicographically from the top coefficient.
    pub fn factor(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(f) {
            for (_, part) in self.distinct_degree(&g) {
                for h in self.berlekamp(&part) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|a, b| self.place_cmp(&a.0, &b.0));
        out
    }

    /// Order by degree, then by coefficients compared from the top down.
    pub fn place_cmp(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> core::cmp::Ordering {
        a.c.len().cmp(&b.c.len()).then_with(|| {
            for i in (0..a.c.len()).rev() {
                let o = self.base.index(&a.c[i]).cmp(&self.base.index(&b.c[i]));
                if o != core::cmp::Ordering::Equal {
                    return o;
                }
            }
            core::cmp::Ordering::Equal
        })
    }

    /// Roots in the coefficient field by exhaustive scan, with multiplicities.
    pub fn roots(&self, f: &Poly<F::Elem>) -> Vec<(F::Elem, usize)> {
        let mut out = Vec::new();
        if f.is_zero() {
            return out;
        }
        for a in self.base.elements() {
            if self.base.is_zero(&self.eval(f, &a)) {
                let lin = self.from_coeffs(vec![self.base.neg(&a), self.base.one()]);
                out.push((a, self.valuation(f, &lin).unwrap()));
            }
        }
        out
    }

    /// All monic polynomials of degree `d`, in place order.
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = Poly<F::Elem>> + '_ {
        let q = self.base.order();
        let total = q.pow(d as u32);
        (0..total).map(move |code| {
            let mut c = Vec::with_capacity(d + 1);
            let mut r = code;
            for _ in 0..d {
                c.push(self.base.elem(r % q));
                r /= q;
            }
            c.push(self.base.one());
            Poly { c }
        })
    }

    /// Ascending integer text `c0,c1,...` (extension coefficients via the field's element format).
    pub fn parse(&self, s: &str, parse_elem: impl Fn(&str) -> Result<F::Elem>) -> Result<Poly<F::Elem>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(self.zero());
        }
        let mut c = Vec::new();
        for tok in split_top_level(s) {
            c.push(parse_elem(tok)?);
        }
        Ok(self.from_coeffs(c))
    }
}

/// Splits on commas outside square brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl<F: Field> ExactDiv for PolyRing<F> {
    fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        self.div_exact_poly(a, b)
    }
}

impl<R: ExactDiv> PolyRing<R> {
    /// Resultant by fraction-free (Bareiss) elimination of the Sylvester matrix.
    pub fn resultant_bareiss(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<R::Elem> {
        let s = self.sylvester(f, g)?;
        Ok(crate::matrix::det_bareiss(&self.base, &s))
    }

    pub fn discriminant_bareiss(&self, f: &Poly<R::Elem>) -> Result<R::Elem> {
        let (n, s) = self.disc_sylvester(f)?;
        Ok(disc_sign(&self.base, n, crate::matrix::det_bareiss(&self.base, &s)))
    }
}
