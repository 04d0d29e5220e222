//! Coefficient fields for the polynomial tower.
//!
//! Everything in this crate is built from dense univariate polynomials over a
//! field, stacked twice: ℚ → ℚ[x] → ℚ(x) → ℚ(x)[y] → ℚ(x)(y).  The `Field`
//! trait is the minimal interface the generic polynomial code needs; it is
//! implemented for `Rat` (arbitrary-precision rationals) and for rational
//! function fields built on top of polynomials (see `ratfun`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

use super::poly::Poly;

/// Exact rational number with arbitrary precision.  Always kept reduced with
/// a positive denominator by the underlying implementation.
pub type Rat = BigRational;

/// A field of characteristic zero with exact arithmetic.
///
/// Elements are self-contained values; all operations are pure.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse.  Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    /// Canonical image of an integer.
    fn from_i64(n: i64) -> Self;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Monic gcd of polynomials over this field.  The default is plain
    /// Euclid, which is fine over ℚ; fraction fields override it with a
    /// content-stripped remainder sequence to avoid coefficient blowup.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        let mut a = a.monic().1;
        let mut b = b.monic().1;
        while !b.is_zero() {
            let r = a.rem(&b).monic().1;
            a = b;
            b = r;
        }
        a
    }
    /// Divide a family of polynomials by a common scalar factor to keep
    /// representations small (a no-op by default; ℚ strips the rational
    /// content so remainder sequences behave like integer-primitive ones).
    fn strip_scalar_content(vs: &mut [Poly<Self>])
    where
        Self: Sized,
    {
        let _ = vs;
    }
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Self {
        assert!(!<Rat as Zero>::is_zero(self), "division by zero in Rat");
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn strip_scalar_content(vs: &mut [Poly<Self>]) {
        use num_integer::Integer;
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for p in vs.iter() {
            for c in p.coeffs() {
                if !<Rat as Zero>::is_zero(c) {
                    num_gcd = num_gcd.gcd(c.numer());
                    den_lcm = den_lcm.lcm(c.denom());
                }
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        let factor = Rat::new(den_lcm, num_gcd);
        if <Rat as One>::is_one(&factor) {
            return;
        }
        for p in vs.iter_mut() {
            *p = p.scale(&factor);
        }
    }
}

/// The rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Floor of a rational number as a `BigInt`.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Integer power with a possibly negative exponent.  Panics on `0^-k`.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return <Rat as One>::one();
    }
    let e: i32 = exp.unsigned_abs().try_into().expect("exponent too large");
    let positive = base.pow(e);
    if exp > 0 {
        positive
    } else {
        assert!(!<Rat as Zero>::is_zero(base), "0 raised to a negative power");
        positive.recip()
    }
}

/// Render a rational for display: `3`, `-3`, `1/2`, `-5/7`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True if the rational is negative (used by pretty-printers).
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}
