//! Split odd orthogonal spaces with anti-diagonal Gram matrix.
//!
//! With `J` the anti-diagonal matrix, `g^T J g = J` is the same as
//! `g* g = I` where `*` reflects about the anti-diagonal. A Gram matrix of
//! `-J` gives the same group, so the sign only travels along as a label.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{self, Mat};
use crate::ring::{FiniteRing, Ring};

#[derive(Clone, Debug)]
pub struct OrthSpace<F> {
    pub field: F,
    pub n: usize,
    /// Gram matrix is `sign` times the anti-diagonal.
    pub sign: i8,
}

impl<F: FiniteRing> OrthSpace<F> {
    pub fn new(field: F, n: usize, sign: i8) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("orthogonal space needs dimension at least 3".into()));
        }
        if field.characteristic() == 2 {
            return Err(Error::Domain("characteristic 2 is not supported".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Domain("Gram sign must be 1 or -1".into()));
        }
        Ok(OrthSpace { field, n, sign })
    }

    pub fn split(field: F, n: usize) -> Result<Self> {
        Self::new(field, n, 1)
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn gram(&self) -> Mat<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let s = f.from_i64(self.sign as i64);
        let mut g = Mat::filled(d, d, f.zero());
        for i in 0..d {
            g[(i, d - 1 - i)] = s.clone();
        }
        g
    }

    /// `B(x, y) = x^T J y` up to the Gram sign.
    fn pairing(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let d = x.len();
        let mut acc = f.zero();
        for k in 0..d {
            acc = f.mul_add(&acc, &x[k], &y[d - 1 - k]);
        }
        acc
    }
}

/// Reflection about the anti-diagonal.
pub fn adjoint<E: Clone>(m: &Mat<E>) -> Mat<E> {
    m.adjoint()
}

/// `M* M = I`.
pub fn is_orthogonal<R: Ring>(ring: &R, m: &Mat<R::Elem>) -> bool {
    m.is_square() && matrix::is_identity(ring, &matrix::mul(ring, &m.adjoint(), m))
}

pub fn is_special_orthogonal<F: FiniteRing>(space: &OrthSpace<F>, m: &Mat<F::Elem>) -> bool {
    let f = &space.field;
    m.rows() == space.dim() && is_orthogonal(f, m) && f.is_one(&matrix::det_gauss(f, m))
}

/// `|SO_{2n+1}(F_q)| = q^{n^2} prod_{i=1}^n (q^{2i} - 1)`, or `None` on overflow.
pub fn so_order(n: usize, q: u64) -> Option<u128> {
    let q = q as u128;
    let mut acc = q.checked_pow((n * n) as u32)?;
    for i in 1..=n {
        acc = acc.checked_mul(q.checked_pow(2 * i as u32)? - 1)?;
    }
    Some(acc)
}

fn check_budget(n: usize, q: u64, budget: u64) -> Result<u64> {
    let order = so_order(n, q).map_or(u64::MAX, |o| o.min(u64::MAX as u128) as u64);
    if order > budget {
        return Err(Error::Budget { needed: order, budget });
    }
    Ok(order)
}

/// Column-by-column extension of partial isometries.
struct Extender<'a, F: FiniteRing> {
    space: &'a OrthSpace<F>,
}

impl<F: FiniteRing> Extender<'_, F> {
    /// Particular solution and kernel basis for the linear constraints on
    /// column `j` given columns `0..j`.
    fn affine(&self, cols: &[Vec<F::Elem>]) -> (Vec<F::Elem>, Vec<Vec<F::Elem>>) {
        let f = &self.space.field;
        let d = self.space.dim();
        let j = cols.len();
        if j == 0 {
            let basis = (0..d)
                .map(|k| {
                    let mut v = vec![f.zero(); d];
                    v[k] = f.one();
                    v
                })
                .collect();
            return (vec![f.zero(); d], basis);
        }
        let mut a = Mat::filled(j, d, f.zero());
        let mut rhs = vec![f.zero(); j];
        for (i, v) in cols.iter().enumerate() {
            for k in 0..d {
                a[(i, k)] = v[d - 1 - k].clone();
            }
            if i + j == d - 1 {
                rhs[i] = f.one();
            }
        }
        let x0 = matrix::solve(f, &a, &rhs).expect("independent columns give consistent constraints");
        (x0, matrix::nullspace(f, &a))
    }

    fn accepts(&self, cols: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
        let f = &self.space.field;
        let d = self.space.dim();
        let j = cols.len();
        let want = if 2 * j == d - 1 { f.one() } else { f.zero() };
        if self.space.pairing(v, v) != want {
            return false;
        }
        if j == 0 {
            return v.iter().any(|x| !f.is_zero(x));
        }
        let mut m = Mat::filled(j + 1, d, f.zero());
        for (i, c) in cols.iter().chain(core::iter::once(&v.to_vec())).enumerate() {
            for k in 0..d {
                m[(i, k)] = c[k].clone();
            }
        }
        matrix::rank_in_place(f, &mut m) == j + 1
    }

    fn combine(&self, x0: &[F::Elem], basis: &[Vec<F::Elem>], mut idx: u64) -> Vec<F::Elem> {
        let f = &self.space.field;
        let q = f.order();
        let mut v = x0.to_vec();
        for b in basis {
            let c = f.elem(idx % q);
            idx /= q;
            if f.is_zero(&c) {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = f.mul_add(vi, &c, bi);
            }
        }
        v
    }

    fn candidates(&self, cols: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let (x0, basis) = self.affine(cols);
        let total = self.space.field.order().pow(basis.len() as u32);
        (0..total)
            .map(|i| self.combine(&x0, &basis, i))
            .filter(|v| self.accepts(cols, v))
            .collect()
    }

    fn walk(&self, cols: &mut Vec<Vec<F::Elem>>, visit: &mut impl FnMut(Mat<F::Elem>)) {
        let d = self.space.dim();
        if cols.len() == d {
            let f = &self.space.field;
            let mut m = Mat::filled(d, d, f.zero());
            for (j, c) in cols.iter().enumerate() {
                for i in 0..d {
                    m[(i, j)] = c[i].clone();
                }
            }
            if f.is_one(&matrix::det_gauss(f, &m)) {
                visit(m);
            }
            return;
        }
        for v in self.candidates(cols) {
            cols.push(v);
            self.walk(cols, visit);
            cols.pop();
        }
    }
}

/// Calls `visit` on every element of `SO(space)` whose first column is the
/// `k`-th admissible first column with `k % shards == shard`.
pub fn so_visit_shard<F: FiniteRing>(
    space: &OrthSpace<F>,
    budget: u64,
    shard: usize,
    shards: usize,
    mut visit: impl FnMut(Mat<F::Elem>),
) -> Result<()> {
    check_budget(space.n, space.field.order(), budget)?;
    let ext = Extender { space };
    let firsts = ext.candidates(&[]);
    for (k, v) in firsts.into_iter().enumerate() {
        if k % shards.max(1) != shard {
            continue;
        }
        let mut cols = vec![v];
        ext.walk(&mut cols, &mut visit);
    }
    Ok(())
}

/// All of `SO(space)` in a fixed order; refuses when the group order exceeds `budget`.
pub fn so_enumerate<F: FiniteRing>(space: &OrthSpace<F>, budget: u64) -> Result<Vec<Mat<F::Elem>>> {
    let order = check_budget(space.n, space.field.order(), budget)?;
    let mut out = Vec::with_capacity(order as usize);
    so_visit_shard(space, budget, 0, 1, |m| out.push(m))?;
    Ok(out)
}

/// Uniform sampler on `SO(space)`.
///
/// Each column is drawn uniformly from the admissible extensions of the
/// previous ones; every partial isometry has the same number of completions,
/// so the result is uniform on `O`, and `g -> -g` folds `O` onto `SO`.
pub struct SoSampler<'a, F: FiniteRing> {
    space: &'a OrthSpace<F>,
}

impl<'a, F: FiniteRing> SoSampler<'a, F> {
    pub fn new(space: &'a OrthSpace<F>) -> Self {
        SoSampler { space }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat<F::Elem> {
        let ext = Extender { space: self.space };
        let f = &self.space.field;
        let d = self.space.dim();
        let q = f.order();
        let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(d);
        while cols.len() < d {
            let (x0, basis) = ext.affine(&cols);
            let total = q.pow(basis.len() as u32);
            loop {
                let v = ext.combine(&x0, &basis, rng.gen_range(0..total));
                if ext.accepts(&cols, &v) {
                    cols.push(v);
                    break;
                }
            }
        }
        let mut m = Mat::filled(d, d, f.zero());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..d {
                m[(i, j)] = c[i].clone();
            }
        }
        if f.is_one(&matrix::det_gauss(f, &m)) {
            m
        } else {
            m.map(|x| f.neg(x))
        }
    }
}

/// `diag(l_1, .., l_n, 1, l_n^{-1}, .., l_1^{-1})`.
pub fn torus<F: crate::ring::Field>(f: &F, l: &[F::Elem]) -> Option<Mat<F::Elem>> {
    let n = l.len();
    let d = 2 * n + 1;
    let mut m = Mat::filled(d, d, f.zero());
    m[(n, n)] = f.one();
    for (i, x) in l.iter().enumerate() {
        m[(i, i)] = x.clone();
        m[(d - 1 - i, d - 1 - i)] = f.inv(x)?;
    }
    Some(m)
}
