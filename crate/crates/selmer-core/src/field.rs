//! Finite fields `F_p` and `F_{p^k}` with small `q`.
//!
//! Elements are `u32` codes: `c0 + c1 p + ... + c_{k-1} p^{k-1}` for the
//! residue class of `c0 + c1 x + ...` modulo the field's defining polynomial.
//! Multiplication in proper extensions goes through discrete log tables.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::PolyRing;
use crate::ring::{ExactDiv, Field, FiniteRing, Ring};

/// Largest field order for which log tables are built.
pub const MAX_TABLE_ORDER: u32 = 1 << 20;

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Ascending coefficients, monic, length `k + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    prime_inv: Vec<u32>,
}

/// Trial-division primality test for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime(p)).then_some((p as u32, k))
}

fn check_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::Domain(alloc::format!("{p} is not an odd prime")));
    }
    if p >= 1 << 15 {
        return Err(Error::Domain(alloc::format!("prime {p} too large")));
    }
    Ok(())
}

/// Lexicographically smallest monic irreducible polynomial of degree `k` over
/// `F_p`, with coefficients compared from the top down. Returned ascending.
pub fn irreducible_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::Domain("extension degree must be at least 1".into()));
    }
    let fp = FiniteField::prime(p)?;
    let ring = PolyRing::new(fp);
    let total = (p as u64).checked_pow(k).ok_or(Error::Budget {
        needed: u64::MAX,
        budget: u64::MAX,
    })?;
    for code in 0..total {
        let mut c = Vec::with_capacity(k as usize + 1);
        let mut r = code;
        for _ in 0..k {
            c.push((r % p as u64) as u32);
            r /= p as u64;
        }
        c.push(1);
        let f = ring.from_coeffs(c.clone());
        if ring.is_irreducible(&f) {
            return Ok(c);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        check_prime(p)?;
        let mut prime_inv = vec![0u32; p as usize];
        for a in 1..p {
            prime_inv[a as usize] = pow_mod(a, p - 2, p);
        }
        Ok(FiniteField {
            inner: Arc::new(Inner {
                p,
                k: 1,
                q: p,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
                prime_inv,
            }),
        })
    }

    /// `F_{p^k}` with the deterministic modulus of [`irreducible_modulus`].
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        let m = irreducible_modulus(p, k)?;
        Self::with_modulus(p, m)
    }

    /// Field of order `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Domain(alloc::format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    /// `F_p[x]/(modulus)`; the modulus is checked for irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let base = Self::prime(p)?;
        let k = modulus.len() as u32 - 1;
        if k == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::Domain("modulus must be monic of positive degree".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        let pr = PolyRing::new(base.clone());
        if !pr.is_irreducible(&pr.from_coeffs(modulus.clone())) {
            return Err(Error::Domain("modulus is reducible".into()));
        }
        let q64 = (p as u64).pow(k);
        if q64 > MAX_TABLE_ORDER as u64 {
            return Err(Error::Domain(alloc::format!("field order {q64} too large")));
        }
        let q = q64 as u32;
        let mut f = Inner {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            prime_inv: base.inner.prime_inv.clone(),
        };
        let (exp, log) = build_tables(&f);
        f.exp = exp;
        f.log = log;
        Ok(FiniteField { inner: Arc::new(f) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Ascending coefficients of the defining polynomial (`x` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    /// Coefficients `c0..c_{k-1}` of an element.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        let p = self.inner.p;
        let mut r = a;
        (0..self.inner.k)
            .map(|_| {
                let c = r % p;
                r /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        let p = self.inner.p;
        let mut acc = 0u32;
        for &x in c.iter().rev() {
            acc = acc * p + x % p;
        }
        acc
    }

    /// The class of `x` (a generator over the prime field).
    pub fn gen(&self) -> u32 {
        if self.inner.k == 1 {
            0
        } else {
            self.inner.p
        }
    }

    /// True iff the element lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.inner.p
    }

    pub fn fmt_elem(&self, a: u32) -> String {
        if self.inner.k == 1 {
            alloc::format!("{a}")
        } else {
            let parts: Vec<String> = self.coeffs(a).iter().map(|c| alloc::format!("{c}")).collect();
            alloc::format!("[{}]", parts.join(" "))
        }
    }

    /// Parses `c` (prime fields) or `[c0 c1 ...]`.
    pub fn parse_elem(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || Error::Parse(alloc::format!("bad field element `{s}`"));
        if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let mut c = Vec::new();
            for tok in body.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| bad())?;
                c.push(v.rem_euclid(self.inner.p as i64) as u32);
            }
            if c.len() > self.inner.k as usize {
                return Err(bad());
            }
            Ok(self.from_coeffs(&c))
        } else {
            let v: i64 = s.parse().map_err(|_| bad())?;
            Ok(self.from_i64(v))
        }
    }

    fn add_digits(&self, a: u32, b: u32, negate_b: bool) -> u32 {
        let p = self.inner.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.inner.k {
            let x = a % p;
            let y = b % p;
            let y = if negate_b && y != 0 { p - y } else { y };
            let s = (x + y) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Multiplication by schoolbook product and reduction; used to build tables.
fn mul_slow(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let k = f.k as usize;
    let digits = |mut v: u32| {
        let mut d = vec![0u64; k];
        for x in d.iter_mut() {
            *x = (v % f.p) as u64;
            v /= f.p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for top in (k..2 * k - 1).rev() {
        let c = prod[top];
        if c != 0 {
            for i in 0..k {
                let m = f.modulus[i] as u64;
                prod[top - k + i] = (prod[top - k + i] + (p - c) * m) % p;
            }
            prod[top] = 0;
        }
    }
    let mut out = 0u32;
    for i in (0..k).rev() {
        out = out * f.p + prod[i] as u32;
    }
    out
}

fn build_tables(f: &Inner) -> (Vec<u32>, Vec<u32>) {
    let q = f.q;
    for g in 2..q {
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = mul_slow(f, x, g);
            if x == 1 || exp.len() >= q as usize {
                break;
            }
        }
        if exp.len() == q as usize - 1 && x == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return (exp, log);
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.inner.p, self.inner.k, self.inner.modulus)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl Ring for FiniteField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.inner.k == 1 {
            let s = a + b;
            if s >= self.inner.p {
                s - self.inner.p
            } else {
                s
            }
        } else {
            self.add_digits(*a, *b, false)
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if self.inner.k == 1 {
            if a >= b {
                a - b
            } else {
                a + self.inner.p - b
            }
        } else {
            self.add_digits(*a, *b, true)
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.sub(&0, a)
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if self.inner.k == 1 {
            ((*a as u64 * *b as u64) % self.inner.p as u64) as u32
        } else if *a == 0 || *b == 0 {
            0
        } else {
            let n = self.inner.q - 1;
            let s = self.inner.log[*a as usize] + self.inner.log[*b as usize];
            self.inner.exp[(if s >= n { s - n } else { s }) as usize]
        }
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    fn characteristic(&self) -> u32 {
        self.inner.p
    }
}

impl Field for FiniteField {
    #[inline]
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else if self.inner.k == 1 {
            Some(self.inner.prime_inv[*a as usize])
        } else {
            let n = self.inner.q - 1;
            let l = self.inner.log[*a as usize];
            Some(self.inner.exp[((n - l) % n) as usize])
        }
    }

    fn order(&self) -> u64 {
        self.inner.q as u64
    }
}

impl ExactDiv for FiniteField {
    fn div_exact(&self, a: &u32, b: &u32) -> Option<u32> {
        self.div(a, b)
    }
}

impl FiniteRing for FiniteField {
    fn elem(&self, i: u64) -> u32 {
        i as u32
    }

    fn index(&self, a: &u32) -> u64 {
        *a as u64
    }
}
