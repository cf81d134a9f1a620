//! `V1 ⊗ V2` for two split orthogonal spaces of dimension `n = 2m+1`, in block
//! form `T = [[0, A], [-A*, 0]]` with `(B, C)` acting by `A -> B A C*`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{self, Mat};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, FiniteRing, Ring};
use crate::vinberg_odd::halve;

#[derive(Clone, Debug)]
pub struct PairRep<F> {
    pub field: F,
    pub m: usize,
    /// Basis of `so_n` as index pairs `(i, j)`, `i + j < n - 1`, for `E_ij - E_{n-1-j, n-1-i}`.
    so_basis: Vec<(usize, usize)>,
}

impl<F: Field> PairRep<F> {
    pub fn new(field: F, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("m must be at least 1".into()));
        }
        let n = 2 * m + 1;
        let mut so_basis = Vec::new();
        for i in 0..n {
            for j in 0..n - 1 - i {
                so_basis.push((i, j));
            }
        }
        Ok(PairRep { field, m, so_basis })
    }

    /// Characteristic must exceed 3.
    pub fn check_characteristic(&self) -> Result<()> {
        let p = self.field.characteristic();
        if p <= 3 {
            return Err(Error::Precondition(alloc::format!("characteristic {p} must be greater than 3")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        2 * self.m + 1
    }

    pub fn block(&self, a: &Mat<F::Elem>) -> Mat<F::Elem> {
        let f = &self.field;
        let n = self.n();
        let ad = a.adjoint();
        let mut t = Mat::filled(2 * n, 2 * n, f.zero());
        for i in 0..n {
            for j in 0..n {
                t[(i, n + j)] = a[(i, j)].clone();
                t[(n + i, j)] = f.neg(&ad[(i, j)]);
            }
        }
        t
    }

    /// `(a_1, .., a_{2m}, e)` with `det(x + A A*) = x^n + a_1 x^{n-1} + .. + a_{2m} x + e^2`, `e = det A`.
    pub fn invariants(&self, a: &Mat<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.n();
        let aa = matrix::mul(f, a, &a.adjoint()).map(|x| f.neg(x));
        let cp = matrix::charpoly_hessenberg(f, &aa);
        let mut out: Vec<F::Elem> = (1..n).map(|i| cp[n - i].clone()).collect();
        out.push(matrix::det_gauss(f, a));
        out
    }

    pub fn invariants_in<R: Ring>(&self, r: &R, a: &Mat<R::Elem>) -> Vec<R::Elem> {
        let n = self.n();
        let aa = matrix::mul(r, a, &a.adjoint()).map(|x| r.neg(x));
        let cp = matrix::charpoly_berkowitz(r, &aa);
        let mut out: Vec<R::Elem> = (1..n).map(|i| cp[n - i].clone()).collect();
        out.push(matrix::det_berkowitz(r, a));
        out
    }

    /// `x^n + a_1 x^{n-1} + .. + a_{2m} x + e^2`.
    pub fn char_poly(&self, c: &[F::Elem]) -> Poly<F::Elem> {
        pair_char_poly(&self.field, c)
    }

    pub fn discriminant(&self, c: &[F::Elem]) -> F::Elem {
        PolyRing::new(self.field.clone()).discriminant(&self.char_poly(c)).unwrap()
    }

    /// First Kostant section; the second is its adjoint.
    pub fn kostant(&self, c: &[F::Elem], which: u8) -> Mat<F::Elem> {
        let a = pair_kostant(&self.field, self.m, c);
        if which == 2 {
            a.adjoint()
        } else {
            a
        }
    }

    /// Trivial Lie centralizer: no nonzero `(X1, X2)` in `so × so` with `X1 A = A X2`.
    pub fn is_regular(&self, a: &Mat<F::Elem>) -> bool {
        let mut sys = self.lie_matrix_in(&self.field, a);
        matrix::rank_in_place(&self.field, &mut sys) == sys.cols()
    }

    /// Matrix of `(X1, X2) -> X1 A - A X2` on the `so × so` basis, rows indexed by entries.
    pub fn lie_matrix_in<R: Ring>(&self, r: &R, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        let n = self.n();
        let k = self.so_basis.len();
        let mut sys = Mat::filled(n * n, 2 * k, r.zero());
        for (col, &(i, j)) in self.so_basis.iter().enumerate() {
            let (i2, j2) = (n - 1 - j, n - 1 - i);
            // X1 = E_ij - E_i2j2 contributes rows i and i2 of A.
            for c in 0..n {
                let row = i * n + c;
                sys[(row, col)] = r.add(&sys[(row, col)], &a[(j, c)]);
                let row = i2 * n + c;
                sys[(row, col)] = r.sub(&sys[(row, col)], &a[(j2, c)]);
            }
            // -A X2 with X2 = E_ij - E_i2j2 contributes columns j and j2.
            for r0 in 0..n {
                let row = r0 * n + j;
                sys[(row, k + col)] = r.sub(&sys[(row, k + col)], &a[(r0, i)]);
                let row = r0 * n + j2;
                sys[(row, k + col)] = r.add(&sys[(row, k + col)], &a[(r0, i2)]);
            }
        }
        sys
    }

    /// `A A*` and `A* A` both regular as `n × n` operators.
    pub fn products_regular(&self, a: &Mat<F::Elem>) -> bool {
        let f = &self.field;
        let n = self.n();
        let ad = a.adjoint();
        matrix::krylov_rank(f, &matrix::mul(f, a, &ad), n) == n
            && matrix::krylov_rank(f, &matrix::mul(f, &ad, a), n) == n
    }

    /// `I, T, .., T^{2n-1}` independent for the block operator.
    pub fn block_krylov_regular(&self, a: &Mat<F::Elem>) -> bool {
        let n2 = 2 * self.n();
        matrix::krylov_rank(&self.field, &self.block(a), n2) == n2
    }

    pub fn act(&self, b: &Mat<F::Elem>, c: &Mat<F::Elem>, a: &Mat<F::Elem>) -> Mat<F::Elem> {
        let f = &self.field;
        matrix::mul(f, &matrix::mul(f, b, a), &c.adjoint())
    }
}

pub fn pair_char_poly<F: Ring>(f: &F, c: &[F::Elem]) -> Poly<F::Elem> {
    let n = c.len();
    let mut co = vec![f.zero(); n + 1];
    co[n] = f.one();
    for i in 1..n {
        co[n - i] = c[i - 1].clone();
    }
    let e = &c[n - 1];
    co[0] = f.mul(e, e);
    PolyRing::new(f.clone()).from_coeffs(co)
}

/// First Kostant section for `c = (a_1, .., a_{2m}, e)`, with `b_i = (-1)^{i-1} a_i / 2`.
pub fn pair_kostant<R: Ring>(r: &R, m: usize, c: &[R::Elem]) -> Mat<R::Elem> {
    let n = 2 * m + 1;
    let half = halve(r);
    let b = |i: usize| {
        let v = r.mul(&half, &c[i - 1]);
        if i % 2 == 0 {
            r.neg(&v)
        } else {
            v
        }
    };
    let mut a = Mat::filled(n, n, r.zero());
    for j in 0..m {
        a[(0, j)] = b(2 * m - j);
        a[(m, j)] = b(m - j);
    }
    a[(0, m)] = c[2 * m].clone();
    // 1-indexed rows 2..=m+1 carry a one at column 2m+3-i.
    for i in 2..=m + 1 {
        a[(i - 1, 2 * m + 2 - i)] = r.one();
    }
    for j in 1..=m {
        a[(m + j, m - j)] = r.one();
    }
    a
}

impl<F: FiniteRing> PairRep<F> {
    pub fn size(&self) -> u64 {
        self.field.order().pow((self.n() * self.n()) as u32)
    }

    /// Row-major digits, first entry most significant.
    pub fn element(&self, mut idx: u64) -> Mat<F::Elem> {
        let q = self.field.order();
        let n = self.n();
        let mut data = vec![self.field.zero(); n * n];
        for k in (0..n * n).rev() {
            data[k] = self.field.elem(idx % q);
            idx /= q;
        }
        Mat::from_vec(n, n, data)
    }

    pub fn index(&self, a: &Mat<F::Elem>) -> u64 {
        let q = self.field.order();
        a.data().iter().fold(0, |acc, x| acc * q + self.field.index(x))
    }

    pub fn invariant_index(&self, c: &[F::Elem]) -> u64 {
        let q = self.field.order();
        c.iter().fold(0, |acc, x| acc * q + self.field.index(x))
    }

    pub fn invariants_at(&self, mut idx: u64) -> Vec<F::Elem> {
        let q = self.field.order();
        let k = 2 * self.m + 1;
        let mut c = vec![self.field.zero(); k];
        for i in (0..k).rev() {
            c[i] = self.field.elem(idx % q);
            idx /= q;
        }
        c
    }

    /// Pairs `(B, C)` from `group` with `B A C* = A`.
    pub fn stabilizer_count(&self, a: &Mat<F::Elem>, group: &[Mat<F::Elem>]) -> u64 {
        let f = &self.field;
        let acs: Vec<_> = group.iter().map(|c| matrix::mul(f, a, &c.adjoint())).collect();
        let mut count = 0;
        for b in group {
            for ac in &acs {
                if matrix::mul(f, b, ac) == *a {
                    count += 1;
                }
            }
        }
        count
    }
}

/// `2^{s-1}`, the rational points of the kernel of the norm on `Res μ2`.
pub fn stabilizer_order_pair<F: FiniteRing>(f: &F, poly: &Poly<F::Elem>) -> Result<u64> {
    crate::vinberg_odd::norm_kernel_order(f, poly)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub total: u64,
    pub regular: u64,
    pub fiber_regular: Vec<u64>,
    /// Regular elements with `A A*` and `A* A` both regular.
    pub products_regular: u64,
    /// Regular elements failing that, outside the fibers with `x^2 | f`.
    pub products_failures: u64,
}

impl PairCounts {
    pub fn merge(&mut self, o: &PairCounts) {
        self.total += o.total;
        self.regular += o.regular;
        self.products_regular += o.products_regular;
        self.products_failures += o.products_failures;
        for (a, b) in self.fiber_regular.iter_mut().zip(&o.fiber_regular) {
            *a += b;
        }
    }
}

pub fn pair_census_counts<F: FiniteRing>(rep: &PairRep<F>, shard: u64, shards: u64) -> PairCounts {
    let f = &rep.field;
    let fibers = f.order().pow(rep.n() as u32) as usize;
    let mut out = PairCounts {
        total: 0,
        regular: 0,
        fiber_regular: vec![0; fibers],
        products_regular: 0,
        products_failures: 0,
    };
    let size = rep.size();
    let shards = shards.max(1);
    let mut idx = shard;
    while idx < size {
        let a = rep.element(idx);
        out.total += 1;
        if rep.is_regular(&a) {
            out.regular += 1;
            let c = rep.invariants(&a);
            out.fiber_regular[rep.invariant_index(&c) as usize] += 1;
            if rep.products_regular(&a) {
                out.products_regular += 1;
            } else if !x_squared_divides(f, &c) {
                out.products_failures += 1;
            }
        }
        idx += shards;
    }
    out
}

/// `x^2 | f`, i.e. `a_{2m} = e = 0`.
pub fn x_squared_divides<F: Ring>(f: &F, c: &[F::Elem]) -> bool {
    let k = c.len();
    f.is_zero(&c[k - 1]) && f.is_zero(&c[k - 2])
}

/// Orbit sizes of regular elements per fiber under `SO × SO`.
pub fn pair_regular_orbits<F: FiniteRing>(rep: &PairRep<F>, group: &[Mat<F::Elem>]) -> BTreeMap<u64, Vec<u64>> {
    let f = &rep.field;
    let size = rep.size() as usize;
    let mut seen = vec![0u64; size.div_ceil(64)];
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let adj: Vec<_> = group.iter().map(|c| c.adjoint()).collect();
    for idx in 0..size {
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let a = rep.element(idx as u64);
        if !rep.is_regular(&a) {
            continue;
        }
        let mut count = 0u64;
        for cs in &adj {
            let ac = matrix::mul(f, &a, cs);
            for b in group {
                let j = rep.index(&matrix::mul(f, b, &ac)) as usize;
                if seen[j / 64] >> (j % 64) & 1 == 0 {
                    seen[j / 64] |= 1 << (j % 64);
                    count += 1;
                }
            }
        }
        out.entry(rep.invariant_index(&rep.invariants(&a))).or_default().push(count);
    }
    out
}

/// `(B, C)` in `SO × SO` with `B A C* = κ1(π(A))` for `A` in anti-triangular unit form.
pub fn kostant_reduce_pair<F: Field>(rep: &PairRep<F>, a: &Mat<F::Elem>) -> Result<(Mat<F::Elem>, Mat<F::Elem>)> {
    let f = &rep.field;
    let m = rep.m;
    let n = rep.n();
    // 1-indexed band: rows i = 2..=m+1 at column n+2-i, rows m+1+j at column m+1-j.
    let band_col = |i: usize| -> usize {
        if i <= m + 1 {
            n + 2 - i
        } else {
            m + 1 - (i - m - 1)
        }
    };
    for i in 2..=n {
        let c = band_col(i);
        if f.is_zero(&a[(i - 1, c - 1)]) {
            return Err(Error::Precondition("zero entry on the anti-diagonal band".into()));
        }
        if (c + 1..=n).any(|j| !f.is_zero(&a[(i - 1, j - 1)])) {
            return Err(Error::Domain("input is not in anti-triangular unit form".into()));
        }
    }
    // Torus: entry (i, j) scales by t1_i t2_{n+1-j}.
    let band_entry = |i: usize| a[(i - 1, band_col(i) - 1)].clone();
    let cp = |k: usize| a[(n - k, k - 1)].clone();
    let mut x = vec![f.one(); m + 1];
    let mut y = vec![f.one(); m + 1];
    y[m] = f.inv(&band_entry(m + 1)).unwrap();
    x[m] = f.div(&cp(m), &y[m]).unwrap();
    for i in (2..=m).rev() {
        y[i - 1] = f.inv(&f.mul(&band_entry(i), &x[i])).unwrap();
        x[i - 1] = f.div(&cp(i - 1), &y[i - 1]).unwrap();
    }
    let t1 = crate::orthogonal::torus(f, &x[1..]).unwrap();
    let t2 = crate::orthogonal::torus(f, &y[1..]).unwrap();
    let a1 = rep.act(&t1, &t2, a);
    let c = rep.invariants(a);
    let kappa = rep.kostant(&c, 1);
    let (b, cm) = solve_unipotent_pair(rep, &a1, &kappa)?;
    let bt = matrix::mul(f, &b, &t1);
    let ct = matrix::mul(f, &cm, &t2);
    if rep.act(&bt, &ct, a) != kappa
        || !crate::orthogonal::is_orthogonal(f, &bt)
        || !crate::orthogonal::is_orthogonal(f, &ct)
        || !f.is_one(&matrix::det_gauss(f, &bt))
        || !f.is_one(&matrix::det_gauss(f, &ct))
    {
        return Err(Error::Domain("reduction failed verification".into()));
    }
    Ok((bt, ct))
}

/// Upper unipotent `B` and lower unipotent `C` with `B A = κ C`,
/// `B (A A*) = (κ κ*) B` and `C (A* A) = (κ* κ) C`.
fn solve_unipotent_pair<F: Field>(
    rep: &PairRep<F>,
    a: &Mat<F::Elem>,
    kappa: &Mat<F::Elem>,
) -> Result<(Mat<F::Elem>, Mat<F::Elem>)> {
    let f = &rep.field;
    let n = rep.n();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let lower: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let nb = upper.len();
    let unknowns = nb + lower.len();
    let aa = matrix::mul(f, a, &a.adjoint());
    let ada = matrix::mul(f, &a.adjoint(), a);
    let kk = matrix::mul(f, kappa, &kappa.adjoint());
    let kdk = matrix::mul(f, &kappa.adjoint(), kappa);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut rhs: Vec<F::Elem> = Vec::new();
    // Each equation is `L(B) - R(C) = const` entrywise; constants come from the unit diagonals.
    // B A - κ C = 0
    for r in 0..n {
        for s in 0..n {
            let mut row = vec![f.zero(); unknowns];
            for (k, &(i, j)) in upper.iter().enumerate() {
                if i == r {
                    row[k] = f.add(&row[k], &a[(j, s)]);
                }
            }
            for (k, &(i, j)) in lower.iter().enumerate() {
                if j == s {
                    row[nb + k] = f.sub(&row[nb + k], &kappa[(r, i)]);
                }
            }
            rhs.push(f.sub(&kappa[(r, s)], &a[(r, s)]));
            rows.push(row);
        }
    }
    // B X - Y B = 0 and C X - Y C = 0.
    let mut commute = |pos: &[(usize, usize)], off: usize, x: &Mat<F::Elem>, y: &Mat<F::Elem>| {
        for r in 0..n {
            for s in 0..n {
                let mut row = vec![f.zero(); unknowns];
                for (k, &(i, j)) in pos.iter().enumerate() {
                    if i == r {
                        row[off + k] = f.add(&row[off + k], &x[(j, s)]);
                    }
                    if j == s {
                        row[off + k] = f.sub(&row[off + k], &y[(r, i)]);
                    }
                }
                rhs.push(f.sub(&y[(r, s)], &x[(r, s)]));
                rows.push(row);
            }
        }
    };
    commute(&upper, 0, &aa, &kk);
    commute(&lower, nb, &ada, &kdk);
    let sys = Mat::from_rows(rows);
    let sol = matrix::solve(f, &sys, &rhs).ok_or_else(|| Error::Domain("no unipotent conjugator".into()))?;
    let mut b = Mat::identity(f, n);
    let mut c = Mat::identity(f, n);
    for (k, &ij) in upper.iter().enumerate() {
        b[ij] = sol[k].clone();
    }
    for (k, &ij) in lower.iter().enumerate() {
        c[ij] = sol[nb + k].clone();
    }
    Ok((b, c))
}
