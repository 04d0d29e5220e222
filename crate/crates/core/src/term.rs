//! Hypergeometric terms T(x, y) represented by their shift quotients
//! f = σ_x(T)/T and g = σ_y(T)/T, plus the structured product expressions
//! (factorials, binomials, Pochhammer symbols, powers, rational factors)
//! they are assembled from.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::field::{rat_int, rat_pow, Field, Rat};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::xy::{ratx_int, PolyY, RatXY};
use crate::error::Error;

/// An integer-linear argument λx + μy + c with rational constant.
#[derive(Clone, Debug, PartialEq)]
pub struct LinArg {
    pub lambda: i64,
    pub mu: i64,
    pub constant: Rat,
}

impl LinArg {
    pub fn new(lambda: i64, mu: i64, constant: Rat) -> Self {
        LinArg { lambda, mu, constant }
    }

    pub fn of_ints(lambda: i64, mu: i64, constant: i64) -> Self {
        Self::new(lambda, mu, rat_int(constant))
    }

    pub fn as_poly(&self) -> PolyY {
        let x_part = Poly::from_coeffs(vec![self.constant.clone(), rat_int(self.lambda)]);
        Poly::from_coeffs(vec![RatFun::from_poly(x_part), ratx_int(self.mu)])
    }

    pub fn sub(&self, o: &LinArg) -> LinArg {
        LinArg {
            lambda: self.lambda - o.lambda,
            mu: self.mu - o.mu,
            constant: &self.constant - &o.constant,
        }
    }

    pub fn add_int(&self, k: i64) -> LinArg {
        LinArg {
            lambda: self.lambda,
            mu: self.mu,
            constant: &self.constant + rat_int(k),
        }
    }

    fn value_at(&self, x: i64, y: i64) -> Rat {
        rat_int(self.lambda * x + self.mu * y) + &self.constant
    }
}

/// One multiplicative building block of a term.
#[derive(Clone, Debug, PartialEq)]
pub enum TermAtom {
    /// A nonzero rational function of x and y.
    Rational(RatXY),
    /// `arg!`
    Factorial(LinArg),
    /// `C(top, bottom) = top! / (bottom!·(top−bottom)!)`
    Binomial(LinArg, LinArg),
    /// Rising factorial `(base)_count = Γ(base+count)/Γ(base)`.
    Pochhammer(LinArg, LinArg),
    /// `base ^ exponent` with rational base.
    Power(Rat, LinArg),
}

/// A product of atoms with integer exponents.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TermExpr {
    pub factors: Vec<(TermAtom, i64)>,
}

impl TermExpr {
    pub fn new(factors: Vec<(TermAtom, i64)>) -> Self {
        TermExpr { factors }
    }
}

/// A term given by its two shift quotients; compatibility
/// σ_x(g)·f = σ_y(f)·g is enforced at construction.
#[derive(Clone, Debug)]
pub struct HyperTerm {
    pub f: RatXY,
    pub g: RatXY,
    pub provenance: Option<TermExpr>,
}

impl HyperTerm {
    pub fn from_quotients(f: RatXY, g: RatXY) -> Result<Self, Error> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::BadTerm("shift quotient is zero".into()));
        }
        if g.shift_x(1).mul(&f) != f.shift_y(1).mul(&g) {
            return Err(Error::CompatibilityViolation);
        }
        Ok(HyperTerm { f, g, provenance: None })
    }
}

/// Integer power of a nonzero rational function.
pub fn ratxy_pow(q: &RatXY, e: i64) -> RatXY {
    if e >= 0 {
        RatFun::new(q.num().pow(e as usize), q.den().pow(e as usize))
    } else {
        RatFun::new(q.den().pow((-e) as usize), q.num().pow((-e) as usize))
    }
}

/// Quotient `(a+s)! / a!` as a rational function of the argument polynomial:
/// the rising product for s ≥ 0, the reciprocal falling product otherwise.
fn factorial_shift_ratio(a: &PolyY, s: i64) -> RatXY {
    if s >= 0 {
        let mut num = PolyY::one();
        for j in 1..=s {
            num = num.mul(&a.add(&Poly::constant(ratx_int(j))));
        }
        RatFun::from_poly(num)
    } else {
        let mut den = PolyY::one();
        for j in 0..-s {
            den = den.mul(&a.sub(&Poly::constant(ratx_int(j))));
        }
        RatFun::new(PolyY::one(), den)
    }
}

/// The (f, g) pair contributed by one atom at exponent 1.
fn atom_quotients(atom: &TermAtom) -> Result<(RatXY, RatXY), Error> {
    let factorial_pair = |arg: &LinArg| {
        let p = arg.as_poly();
        (
            factorial_shift_ratio(&p, arg.lambda),
            factorial_shift_ratio(&p, arg.mu),
        )
    };
    match atom {
        TermAtom::Rational(r) => {
            if r.is_zero() {
                return Err(Error::BadTerm("rational factor is zero".into()));
            }
            Ok((r.shift_x(1).div(r), r.shift_y(1).div(r)))
        }
        TermAtom::Factorial(a) => Ok(factorial_pair(a)),
        TermAtom::Binomial(a, b) => {
            let (fa, ga) = factorial_pair(a);
            let (fb, gb) = factorial_pair(b);
            let (fc, gc) = factorial_pair(&a.sub(b));
            Ok((fa.div(&fb).div(&fc), ga.div(&gb).div(&gc)))
        }
        TermAtom::Pochhammer(a, b) => {
            // (a)_b = (a+b−1)! / (a−1)!
            let top = a.add_int(-1);
            let (fn_, gn) = factorial_pair(&LinArg {
                lambda: top.lambda + b.lambda,
                mu: top.mu + b.mu,
                constant: &top.constant + &b.constant,
            });
            let (fd, gd) = factorial_pair(&top);
            Ok((fn_.div(&fd), gn.div(&gd)))
        }
        TermAtom::Power(base, l) => {
            if base.is_zero() {
                return Err(Error::BadTerm("power base is zero".into()));
            }
            Ok((
                RatFun::constant(RatFun::constant(rat_pow(base, l.lambda))),
                RatFun::constant(RatFun::constant(rat_pow(base, l.mu))),
            ))
        }
    }
}

/// Assemble the shift quotients of a product expression.
pub fn shift_quotients(ast: &TermExpr) -> Result<HyperTerm, Error> {
    let mut f: RatXY = RatFun::one();
    let mut g: RatXY = RatFun::one();
    for (atom, e) in &ast.factors {
        let (af, ag) = atom_quotients(atom)?;
        f = f.mul(&ratxy_pow(&af, *e));
        g = g.mul(&ratxy_pow(&ag, *e));
    }
    if g.shift_x(1).mul(&f) != f.shift_y(1).mul(&g) {
        return Err(Error::CompatibilityViolation);
    }
    Ok(HyperTerm { f, g, provenance: Some(ast.clone()) })
}

fn big_factorial(n: i64) -> Rat {
    let mut acc = BigInt::from(1);
    for j in 2..=n {
        acc *= j;
    }
    Rat::from_integer(acc)
}

fn atom_value(atom: &TermAtom, x: i64, y: i64) -> Option<Rat> {
    let nonneg_int = |v: &Rat| -> Option<i64> {
        if v.is_integer() {
            v.to_integer().to_i64().filter(|&n| n >= 0)
        } else {
            None
        }
    };
    match atom {
        TermAtom::Rational(r) => r.eval_xy(&rat_int(x), &rat_int(y)),
        TermAtom::Factorial(a) => Some(big_factorial(nonneg_int(&a.value_at(x, y))?)),
        TermAtom::Binomial(a, b) => {
            let top = nonneg_int(&a.value_at(x, y))?;
            let bot = nonneg_int(&b.value_at(x, y))?;
            let rest = nonneg_int(&a.sub(b).value_at(x, y))?;
            Some(big_factorial(top) / (big_factorial(bot) * big_factorial(rest)))
        }
        TermAtom::Pochhammer(a, b) => {
            let count = nonneg_int(&b.value_at(x, y))?;
            let base = a.value_at(x, y);
            let mut acc = Rat::one();
            for j in 0..count {
                acc = acc * (&base + rat_int(j));
            }
            Some(acc)
        }
        TermAtom::Power(base, l) => {
            let v = l.value_at(x, y);
            if !v.is_integer() {
                return None;
            }
            let e = v.to_integer().to_i64()?;
            if base.is_zero() {
                return match e {
                    _ if e > 0 => Some(Rat::zero()),
                    0 => Some(Rat::one()),
                    _ => None,
                };
            }
            Some(rat_pow(base, e))
        }
    }
}

/// Evaluate a product expression at an integer point, when defined.
pub fn eval_integer_point(expr: &TermExpr, x: i64, y: i64) -> Option<Rat> {
    let mut acc = Rat::one();
    for (atom, e) in &expr.factors {
        let v = atom_value(atom, x, y)?;
        if v.is_zero() && *e < 0 {
            return None;
        }
        if v.is_zero() {
            return Some(Rat::zero());
        }
        acc = acc * rat_pow(&v, *e);
    }
    Some(acc)
}
