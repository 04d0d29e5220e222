//! Dense univariate polynomials over a generic field.
//!
//! `Poly<F>` stores coefficients in ascending order and keeps itself trimmed,
//! so the zero polynomial is the empty coefficient vector.  The degree of the
//! zero polynomial is `None`, which under `Option`'s ordering compares below
//! every `Some(n)` — exactly the −∞ convention the degree arithmetic in the
//! reduction and bound formulas relies on.

use super::field::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::monomial(F::one(), 1)
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial (reads as −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as an `i64` with −1 standing in for −∞ is *not* used here;
    /// callers that need arithmetic on degrees work with `Option<i64>`.
    pub fn degree_i64(&self) -> Option<i64> {
        self.degree().map(|d| d as i64)
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &F {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lc_inv = div.lc().inv();
        let mut rem = self.clone();
        let mut quot_coeffs = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.lc().mul(&lc_inv);
            let shift = rd - dd;
            quot_coeffs[shift] = factor.clone();
            // rem -= factor * t^shift * div
            let mut new_coeffs = rem.coeffs.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                new_coeffs[shift + j] = new_coeffs[shift + j].sub(&factor.mul(b));
            }
            rem = Poly::from_coeffs(new_coeffs);
            debug_assert!(rem.degree().map_or(true, |d| d < rd));
        }
        (Poly::from_coeffs(quot_coeffs), rem)
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.div_rem(div).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic normalization: returns `(lc, self/lc)`; zero maps to `(1, 0)`.
    pub fn monic(&self) -> (F, Self) {
        if self.is_zero() {
            return (F::one(), Poly::zero());
        }
        let lc = self.lc().clone();
        (lc.clone(), self.scale(&lc.inv()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    /// Extended Euclid: returns monic `g` and `s, t` with `s*self + t*other = g`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
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
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let c = r0.lc().inv();
        (r0.scale(&c), s0.scale(&c), t0.scale(&c))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        self.mul(&other.exact_div(&g)).monic().1
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Composition with a linear polynomial: `p(a*t + b)`.
    pub fn compose_linear(&self, a: &F, b: &F) -> Self {
        let mut acc = Poly::zero();
        let lin = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Taylor shift `p(t + k)` for an integer `k`.
    pub fn shift_int(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self.compose_linear(&F::one(), &F::from_i64(k))
    }

    /// Map coefficients through `f`, re-trimming afterwards.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| f(c)).collect())
    }

    /// Evaluate at a polynomial argument (composition).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Resultant of `self` and `other`, with the Sylvester-determinant sign
    /// convention, computed by a remainder sequence over the field.
    pub fn resultant(&self, other: &Self) -> F {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            return F::zero();
        }
        let mut acc = F::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                // res(a, c) = c^deg(a)
                let mut p = F::one();
                for _ in 0..da {
                    p = p.mul(b.lc());
                }
                return acc.mul(&p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            let dr = r.degree().unwrap();
            // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            let mut p = F::one();
            for _ in 0..(da - dr) {
                p = p.mul(b.lc());
            }
            acc = acc.mul(&p);
            a = b;
            b = r;
        }
    }

    /// Yun squarefree decomposition (characteristic zero): pairwise coprime
    /// monic squarefree parts with their multiplicities, `self = lc · Π aᵢ^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero());
        let f = self.monic().1;
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut b = f.exact_div(&g);
        let mut d = df.exact_div(&g).sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > Some(0) {
            let a = b.gcd(&d);
            if a.degree() > Some(0) {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            d = d.exact_div(&a).sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(F, F)]) -> Self {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut numer = Poly::constant(yi.clone());
            let mut denom = F::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                numer = numer.mul(&Poly::from_coeffs(vec![xj.neg(), F::one()]));
                denom = denom.mul(&xi.sub(xj));
            }
            acc = acc.add(&numer.scale(&denom.inv()));
        }
        acc
    }
}

/// Compare degrees with the −∞ convention: `degree(0) < degree(c) = 0` for
/// any nonzero constant `c`.
pub fn deg_le(a: Option<i64>, b: Option<i64>) -> bool {
    a <= b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, rat_int, Rat};

    fn p(coeffs: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn degree_of_zero_is_none_and_compares_below_everything() {
        assert_eq!(Poly::<Rat>::zero().degree(), None);
        assert!(Poly::<Rat>::zero().degree_i64() < Some(0));
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, 0, -3, 2, 1]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let g = p(&[1, 1]); // t + 1
        let a = g.mul(&p(&[3, 0, 1]));
        let b = g.mul(&p(&[-2, 1]));
        let d = a.gcd(&b);
        assert_eq!(d, g);
        assert!(d.divides(&a) && d.divides(&b));
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let a = p(&[1, 3, 1]);
        let b = p(&[4, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.lc().is_one());
    }

    #[test]
    fn taylor_shift_and_composition() {
        let a = p(&[0, 0, 1]); // t^2
        assert_eq!(a.shift_int(1), p(&[1, 2, 1]));
        assert_eq!(a.shift_int(1).shift_int(-1), a);
        assert_eq!(a.compose_linear(&rat_int(2), &rat_int(-1)), p(&[1, -4, 4]));
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        // res(t - 2, t - 5) = 2 - 5 = -3 with the Sylvester convention
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-5, 1])), rat_int(-3));
        // res(2t + 1, t) = 2^1 * 1^1 * (-1/2 - 0) = -1
        assert_eq!(p(&[1, 2]).resultant(&p(&[0, 1])), rat_int(-1));
        // common root => 0
        let c = p(&[1, 1]);
        assert_eq!(c.mul(&p(&[1, 1, 1])).resultant(&c.mul(&p(&[7, 1]))), rat_int(0));
    }

    #[test]
    fn resultant_matches_sylvester_determinant_small_case() {
        // res(t^2 + 3t + 1, 2t - 4) via the 3x3 Sylvester determinant:
        // | 1 3 1 |
        // | 2 -4 0 |
        // | 0 2 -4 |  -> expand: 1*(16-0) - 3*(-8-0) + 1*(4+0) = 16+24+4 = 44
        assert_eq!(p(&[1, 3, 1]).resultant(&p(&[-4, 2])), rat_int(44));
    }

    #[test]
    fn interpolation_reproduces_polynomial() {
        let a = p(&[3, -2, 0, 1]);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|i| (rat_int(i), a.eval(&rat_int(i)))).collect();
        assert_eq!(Poly::interpolate(&pts), a);
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let a = p(&[1, 1]);
        let b = p(&[2, 1]);
        assert_eq!(a.lcm(&b), a.mul(&b));
        assert_eq!(a.lcm(&a), a);
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // 3 * (t+1) * (t^2+2)^3
        let f = p(&[1, 1]).mul(&p(&[2, 0, 1]).pow(3)).scale(&rat_int(3));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(p(&[1, 1]), 1), (p(&[2, 0, 1]), 3)]);
        // squarefree input comes back whole
        let g = p(&[1, 1, 1]);
        assert_eq!(g.squarefree_decomposition(), vec![(g.clone(), 1)]);
        assert!(p(&[7]).squarefree_decomposition().is_empty());
    }

    #[test]
    fn interpolate_rational_nodes() {
        let pts = vec![(rat_int(0), rat(1, 2)), (rat_int(1), rat(3, 2))];
        let q = Poly::interpolate(&pts);
        assert_eq!(q, Poly::from_coeffs(vec![rat(1, 2), rat_int(1)]));
    }
}
