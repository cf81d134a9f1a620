//! Dense matrices over a ring object: determinants, ranks, kernels and
//! characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::ring::{ExactDiv, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Mat::filled(n, n, ring.zero());
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    /// Reflection about the anti-diagonal: `(M*)_{ij} = M_{N+1-j, N+1-i}`.
    pub fn adjoint(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..c {
            for j in 0..r {
                data.push(self[(r - 1 - j, c - 1 - i)].clone());
            }
        }
        Mat { rows: c, cols: r, data }
    }

    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> Mat<F> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: rows.len(), cols: cols.len(), data }
    }
}

impl<E> Index<(usize, usize)> for Mat<E> {
    type Output = E;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Mat<E> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mul<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch");
    let mut out = Mat::filled(a.rows, b.cols, ring.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                out[(i, j)] = ring.mul_add(&out[(i, j)], x, &b[(k, j)]);
            }
        }
    }
    out
}

pub fn add<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn sub<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect(),
    }
}

pub fn scale<R: Ring>(ring: &R, a: &Mat<R::Elem>, c: &R::Elem) -> Mat<R::Elem> {
    a.map(|x| ring.mul(x, c))
}

pub fn is_identity<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> bool {
    a.is_square()
        && (0..a.rows).all(|i| {
            (0..a.cols).all(|j| if i == j { ring.is_one(&a[(i, j)]) } else { ring.is_zero(&a[(i, j)]) })
        })
}

pub fn trace<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> R::Elem {
    let mut t = ring.zero();
    for i in 0..a.rows.min(a.cols) {
        t = ring.add(&t, &a[(i, i)]);
    }
    t
}

/// `p(M)` for ascending coefficients `p`.
pub fn eval_poly<R: Ring>(ring: &R, p: &[R::Elem], m: &Mat<R::Elem>) -> Mat<R::Elem> {
    let n = m.rows;
    let mut acc = Mat::filled(n, n, ring.zero());
    for c in p.iter().rev() {
        acc = mul(ring, &acc, m);
        for i in 0..n {
            acc[(i, i)] = ring.add(&acc[(i, i)], c);
        }
    }
    acc
}

/// Determinant by Gaussian elimination.
pub fn det_gauss<F: Field>(f: &F, a: &Mat<F::Elem>) -> F::Elem {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut det = f.one();
    for col in 0..n {
        let piv = match (col..n).find(|&r| !f.is_zero(&m[(r, col)])) {
            Some(r) => r,
            None => return f.zero(),
        };
        if piv != col {
            swap_rows(&mut m, piv, col);
            det = f.neg(&det);
        }
        let p = m[(col, col)].clone();
        det = f.mul(&det, &p);
        let pinv = f.inv(&p).unwrap();
        for r in col + 1..n {
            if f.is_zero(&m[(r, col)]) {
                continue;
            }
            let factor = f.mul(&m[(r, col)], &pinv);
            for c in col..n {
                let v = f.sub(&m[(r, c)], &f.mul(&factor, &m[(col, c)]));
                m[(r, c)] = v;
            }
        }
    }
    det
}

fn swap_rows<E>(m: &mut Mat<E>, a: usize, b: usize) {
    if a == b {
        return;
    }
    let c = m.cols;
    for j in 0..c {
        m.data.swap(a * c + j, b * c + j);
    }
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm; ascending coefficients, monic, length `n + 1`.
pub fn charpoly_berkowitz<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> Vec<R::Elem> {
    assert!(a.is_square());
    let n = a.rows;
    // Descending coefficients of the leading principal minors' char polys.
    let mut v: Vec<R::Elem> = vec![ring.one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C.
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(&a[(r, r)]));
        let mut col: Vec<R::Elem> = (0..r).map(|i| a[(i, r)].clone()).collect();
        for _ in 0..r {
            let mut s = ring.zero();
            for (j, c) in col.iter().enumerate() {
                s = ring.mul_add(&s, &a[(r, j)], c);
            }
            t.push(ring.neg(&s));
            let next: Vec<R::Elem> = (0..r)
                .map(|i| {
                    let mut s = ring.zero();
                    for (j, c) in col.iter().enumerate() {
                        s = ring.mul_add(&s, &a[(i, j)], c);
                    }
                    s
                })
                .collect();
            col = next;
        }
        let mut w = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = ring.zero();
            for j in 0..v.len() {
                if i >= j {
                    s = ring.mul_add(&s, &t[i - j], &v[j]);
                }
            }
            w.push(s);
        }
        v = w;
    }
    v.reverse();
    v
}

/// Determinant over any commutative ring.
pub fn det_berkowitz<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> R::Elem {
    let n = a.rows;
    let cp = charpoly_berkowitz(ring, a);
    if n % 2 == 0 {
        cp[0].clone()
    } else {
        ring.neg(&cp[0])
    }
}

/// Determinant by fraction-free elimination over an integral domain.
pub fn det_bareiss<R: ExactDiv>(ring: &R, a: &Mat<R::Elem>) -> R::Elem {
    assert!(a.is_square());
    let n = a.rows;
    if n == 0 {
        return ring.one();
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[(k, k)]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&m[(r, k)])) {
                Some(r) => {
                    swap_rows(&mut m, r, k);
                    sign = !sign;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&m[(i, j)], &m[(k, k)]),
                    &ring.mul(&m[(i, k)], &m[(k, j)]),
                );
                m[(i, j)] = ring.div_exact(&num, &prev).expect("Bareiss division must be exact");
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign {
        ring.neg(&d)
    } else {
        d
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let piv = match (row..m.rows).find(|&r| !f.is_zero(&m[(r, col)])) {
            Some(r) => r,
            None => continue,
        };
        swap_rows(m, piv, row);
        let inv = f.inv(&m[(row, col)]).unwrap();
        for c in col..m.cols {
            m[(row, c)] = f.mul(&m[(row, c)], &inv);
        }
        for r in 0..m.rows {
            if r == row || f.is_zero(&m[(r, col)]) {
                continue;
            }
            let factor = m[(r, col)].clone();
            for c in col..m.cols {
                let v = f.sub(&m[(r, c)], &f.mul(&factor, &m[(row, c)]));
                m[(r, c)] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut m = m.clone();
    rank_in_place(f, &mut m)
}

/// Rank by forward elimination only, destroying `m`.
pub fn rank_in_place<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> usize {
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let piv = match (row..m.rows).find(|&r| !f.is_zero(&m[(r, col)])) {
            Some(r) => r,
            None => continue,
        };
        swap_rows(m, piv, row);
        let inv = f.inv(&m[(row, col)]).unwrap();
        for r in row + 1..m.rows {
            if f.is_zero(&m[(r, col)]) {
                continue;
            }
            let factor = f.mul(&m[(r, col)], &inv);
            for c in col..m.cols {
                let v = f.sub(&m[(r, c)], &f.mul(&factor, &m[(row, c)]));
                m[(r, c)] = v;
            }
        }
        row += 1;
    }
    row
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let mut out = Vec::new();
    for free in 0..m.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&r[(i, free)]);
        }
        out.push(v);
    }
    out
}

/// Some solution of `M x = b`, or `None` if inconsistent.
pub fn solve<F: Field>(f: &F, m: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut aug = Mat::filled(m.rows, m.cols + 1, f.zero());
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(i, m.cols)].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    assert!(m.is_square());
    let n = m.rows;
    let mut aug = Mat::filled(n, 2 * n, f.zero());
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = f.one();
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Mat::filled(n, n, f.zero());
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = aug[(i, n + j)].clone();
        }
    }
    Some(out)
}

/// Characteristic polynomial over a field via reduction to Hessenberg form;
/// ascending, monic.
pub fn charpoly_hessenberg<F: Field>(f: &F, a: &Mat<F::Elem>) -> Vec<F::Elem> {
    assert!(a.is_square());
    let n = a.rows;
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let piv = match (j + 1..n).find(|&r| !f.is_zero(&h[(r, j)])) {
            Some(r) => r,
            None => continue,
        };
        if piv != j + 1 {
            swap_rows(&mut h, piv, j + 1);
            for r in 0..n {
                h.data.swap(r * n + piv, r * n + j + 1);
            }
        }
        let inv = f.inv(&h[(j + 1, j)]).unwrap();
        for i in j + 2..n {
            if f.is_zero(&h[(i, j)]) {
                continue;
            }
            let u = f.mul(&h[(i, j)], &inv);
            // row_i -= u row_{j+1}; col_{j+1} += u col_i
            for c in 0..n {
                let v = f.sub(&h[(i, c)], &f.mul(&u, &h[(j + 1, c)]));
                h[(i, c)] = v;
            }
            for r in 0..n {
                let v = f.add(&h[(r, j + 1)], &f.mul(&u, &h[(r, i)]));
                h[(r, j + 1)] = v;
            }
        }
    }
    // p_k = char poly of leading k x k block, ascending.
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 1..=n {
        let hk = &h[(k - 1, k - 1)];
        // (x - h_kk) p_{k-1}
        let prev = &polys[k - 1];
        let mut p = vec![f.zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            p[i + 1] = f.add(&p[i + 1], c);
            p[i] = f.sub(&p[i], &f.mul(hk, c));
        }
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = f.mul(&prod, &h[(i, i - 1)]);
            if f.is_zero(&prod) {
                break;
            }
            let coef = f.mul(&prod, &h[(i - 1, k - 1)]);
            for (t, c) in polys[i - 1].iter().enumerate() {
                p[t] = f.sub(&p[t], &f.mul(&coef, c));
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

/// Rank of `{vec(I), vec(A), ..., vec(A^{k-1})}`.
pub fn krylov_rank<F: Field>(f: &F, a: &Mat<F::Elem>, k: usize) -> usize {
    let n = a.rows;
    let mut m = Mat::filled(k, n * n, f.zero());
    let mut pw = Mat::identity(f, n);
    for r in 0..k {
        for (j, x) in pw.data.iter().enumerate() {
            m[(r, j)] = x.clone();
        }
        if r + 1 < k {
            pw = mul(f, &pw, a);
        }
    }
    rank_in_place(f, &mut m)
}
