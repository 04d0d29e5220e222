//! Univariate polynomial arithmetic over Z/pZ for word-sized odd primes,
//! with distinct-degree and equal-degree (Cantor-Zassenhaus) factorization.
//! This is the modular engine behind factoring over the integers.

use num_bigint::BigUint;
use num_traits::One;

use crate::rng::XorShift;

#[allow(dead_code)] // test-only counterpart of sub_mod
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // p < 2^63 keeps this from overflowing
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_scalar(a % p, p - 2, p)
}

/// Dense polynomial over Z/pZ, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct ZpPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl ZpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = ZpPoly { coeffs, p };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        ZpPoly { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        ZpPoly::new(vec![1], p)
    }

    pub fn var(p: u64) -> Self {
        ZpPoly::new(vec![0, 1], p)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(0)) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().expect("lc of zero")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[allow(dead_code)] // test-only counterpart of sub
    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), rhs.coeff(i), self.p))
            .collect();
        ZpPoly::new(coeffs, self.p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), rhs.coeff(i), self.p))
            .collect();
        ZpPoly::new(coeffs, self.p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        let pp = self.p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let v = acc[i + j] + a as u128 * b as u128;
                acc[i + j] = v % pp;
            }
        }
        ZpPoly::new(acc.into_iter().map(|v| v as u64).collect(), self.p)
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        ZpPoly::new(coeffs, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero());
        let dd = div.degree().unwrap();
        let lcinv = inv_mod(div.lc(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (ZpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = mul_mod(rem[k], lcinv, self.p);
            if factor == 0 {
                continue;
            }
            quot[k - dd] = factor;
            for (j, &b) in div.coeffs.iter().enumerate() {
                rem[k - dd + j] = sub_mod(rem[k - dd + j], mul_mod(factor, b, self.p), self.p);
            }
        }
        (ZpPoly::new(quot, self.p), ZpPoly::new(rem, self.p))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.div_rem(div).1
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ZpPoly::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % self.p, self.p))
            .collect();
        ZpPoly::new(coeffs, self.p)
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` monic with `s*self + t*rhs = g`.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (ZpPoly::zero(p), ZpPoly::zero(p), ZpPoly::zero(p));
        }
        let c = inv_mod(r0.lc(), p);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// `self^e mod m` with a word exponent.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = ZpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m` with an arbitrary-precision exponent.
    pub fn pow_mod_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = ZpPoly::one(self.p);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < e.bits() {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Distinct-degree decomposition of a monic squarefree polynomial:
/// list of `(product of irreducibles, their common degree)`.
fn distinct_degree(f: &ZpPoly) -> Vec<(ZpPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut v = f.clone();
    let mut h = ZpPoly::var(p);
    let mut d = 0usize;
    while v.degree().map_or(false, |dv| dv >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(p, &v);
        let g = h.sub(&ZpPoly::var(p)).gcd(&v);
        if g.degree() > Some(0) {
            v = v.div_rem(&g).0;
            h = h.rem(&v);
            out.push((g, d));
        }
    }
    if v.degree() > Some(0) {
        let dv = v.degree().unwrap();
        out.push((v, dv));
    }
    out
}

/// Equal-degree splitting: factor a monic product of distinct irreducibles
/// of known common degree `d`.
fn equal_degree(f: &ZpPoly, d: usize, rng: &mut XorShift) -> Vec<ZpPoly> {
    let deg = f.degree().unwrap();
    if deg == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.below(p)).collect();
        let a = ZpPoly::new(coeffs, p);
        if a.degree().map_or(true, |da| da == 0) {
            continue;
        }
        let g = a.gcd(f);
        if g.degree() > Some(0) && g.degree() < f.degree() {
            let rest = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
        let b = a.pow_mod_big(&exp, f);
        let t = b.sub(&ZpPoly::one(p)).gcd(f);
        if t.degree() > Some(0) && t.degree() < f.degree() {
            let rest = f.div_rem(&t).0;
            let mut out = equal_degree(&t, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// Factor a monic polynomial into monic irreducibles over Z/pZ, provided it
/// is squarefree mod p; `None` signals a repeated factor (pick another
/// prime).
pub fn factor_squarefree_mod_p(f: &ZpPoly, rng: &mut XorShift) -> Option<Vec<ZpPoly>> {
    debug_assert!(f.lc() == 1);
    if f.degree() == Some(0) {
        return Some(Vec::new());
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return None;
    }
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Some(out)
}
