//! The concrete coefficient tower used throughout the crate:
//!
//! - `PolyX`  = Q[x]
//! - `RatX`   = Q(x)
//! - `PolyY`  = Q(x)[y]
//! - `RatXY`  = Q(x)(y)
//!
//! plus the shift automorphisms σ_x, σ_y, evaluation maps, denominator
//! clearing between Q(x)[y] and Q[x][y], and the canonical display form
//! (expanded monomials ordered by (deg_y, deg_x) descending).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{rat_int, Rat};
use super::poly::Poly;
use super::ratfun::RatFun;

pub type PolyX = Poly<Rat>;
pub type RatX = RatFun<Rat>;
pub type PolyY = Poly<RatX>;
pub type RatXY = RatFun<RatX>;

/// Q[x] polynomial from ascending integer coefficients.
pub fn polyx(coeffs: &[i64]) -> PolyX {
    Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
}

pub fn ratx(p: PolyX) -> RatX {
    RatFun::from_poly(p)
}

pub fn ratx_int(n: i64) -> RatX {
    RatFun::constant(rat_int(n))
}

/// Q(x)[y] polynomial from a list of `(coeff, deg_x, deg_y)` monomials.
pub fn bivar(terms: &[(i64, usize, usize)]) -> PolyY {
    let mut acc = PolyY::zero();
    for &(c, dx, dy) in terms {
        let m = Poly::monomial(ratx(Poly::monomial(rat_int(c), dx)), dy);
        acc = acc.add(&m);
    }
    acc
}

/// `y + c` as an element of Q(x)[y].
pub fn yplus(c: i64) -> PolyY {
    Poly::from_coeffs(vec![ratx_int(c), ratx_int(1)])
}

impl Poly<Rat> {
    /// σ_x^k on Q[x].
    pub fn shift_x(&self, k: i64) -> PolyX {
        self.shift_int(k)
    }

    /// Positive scalar `c` such that `c * self` has coprime integer
    /// coefficients; `1` for the zero polynomial.
    pub fn integer_primitive_scale(&self) -> Rat {
        rat_vec_primitive_scale(self.coeffs())
    }
}

/// Positive scalar `c` with `c * v` integral and content-free.
pub fn rat_vec_primitive_scale(v: &[Rat]) -> Rat {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(&(c.numer() * &l / c.denom()));
    }
    if g.is_zero() {
        return Rat::one();
    }
    Rat::new(l, g)
}

/// Scale a coefficient vector of Q[x] polynomials by the common positive
/// scalar that makes all coefficients integers with overall content 1.
pub fn integer_primitive_vector(ps: &[PolyX]) -> Vec<PolyX> {
    let flat: Vec<Rat> = ps.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let c = rat_vec_primitive_scale(&flat);
    ps.iter().map(|p| p.scale(&c)).collect()
}

impl RatFun<Rat> {
    /// σ_x^k on Q(x); shifts are ring automorphisms, so normal form is kept.
    pub fn shift_x(&self, k: i64) -> RatX {
        if k == 0 {
            return self.clone();
        }
        RatFun::from_reduced_parts(self.num().shift_int(k), self.den().shift_int(k))
    }

    /// Evaluate at a rational point; `None` when the denominator vanishes.
    pub fn eval_rat(&self, a: &Rat) -> Option<Rat> {
        let d = self.den().eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.num().eval(a) / d)
    }
}

impl Poly<RatX> {
    /// σ_y^k on Q(x)[y].
    pub fn shift_y(&self, k: i64) -> PolyY {
        self.shift_int(k)
    }

    /// σ_x^k applied coefficient-wise.
    pub fn shift_x(&self, k: i64) -> PolyY {
        if k == 0 {
            return self.clone();
        }
        self.map_coeffs(|c| c.shift_x(k))
    }

    /// Substitute a rational value for x, giving a Q[y] polynomial;
    /// `None` when some coefficient denominator vanishes at the point.
    pub fn eval_x(&self, a: &Rat) -> Option<Poly<Rat>> {
        let mut coeffs = Vec::with_capacity(self.coeffs().len());
        for c in self.coeffs() {
            coeffs.push(c.eval_rat(a)?);
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Write `self = (1/d) * Σ n_i y^i` with `d` in Q[x] monic being the
    /// least common denominator of the coefficients.
    pub fn clear_x_denominators(&self) -> (PolyX, Vec<PolyX>) {
        let mut d = PolyX::one();
        for c in self.coeffs() {
            d = d.lcm(c.den());
        }
        let numers = self
            .coeffs()
            .iter()
            .map(|c| c.num().mul(&d.exact_div(c.den())))
            .collect();
        (d, numers)
    }

    /// Inverse of [`clear_x_denominators`](Self::clear_x_denominators).
    pub fn from_x_parts(d: &PolyX, numers: &[PolyX]) -> PolyY {
        let dr = ratx(d.clone());
        Poly::from_coeffs(
            numers
                .iter()
                .map(|n| ratx(n.clone()).div(&dr))
                .collect(),
        )
    }

    /// View as Q[y] when no coefficient involves x.
    pub fn as_univariate_y(&self) -> Option<Poly<Rat>> {
        let mut coeffs = Vec::with_capacity(self.coeffs().len());
        for c in self.coeffs() {
            if !c.den().is_one() || c.num().degree() > Some(0) {
                return None;
            }
            coeffs.push(c.num().coeff(0));
        }
        Some(Poly::from_coeffs(coeffs))
    }

    pub fn from_univariate_y(p: &Poly<Rat>) -> PolyY {
        p.map_coeffs(|c| RatFun::constant(c.clone()))
    }

    /// Total x-degree after clearing denominators: max over `d` and the
    /// cleared numerators.  `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<usize> {
        let (d, numers) = self.clear_x_denominators();
        let mut m = d.degree();
        for n in &numers {
            m = m.max(n.degree());
        }
        m
    }
}

impl RatFun<RatX> {
    pub fn shift_y(&self, k: i64) -> RatXY {
        if k == 0 {
            return self.clone();
        }
        RatFun::from_reduced_parts(self.num().shift_y(k), self.den().shift_y(k))
    }

    pub fn shift_x(&self, k: i64) -> RatXY {
        if k == 0 {
            return self.clone();
        }
        RatFun::from_reduced_parts(self.num().shift_x(k), self.den().shift_x(k))
    }

    /// Evaluate at a rational point (x, y); `None` at poles (including
    /// points where intermediate coefficient denominators vanish).
    pub fn eval_xy(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        let n = self.num().eval_x(x)?.eval(y);
        let d = self.den().eval_x(x)?.eval(y);
        if d.is_zero() {
            return None;
        }
        Some(n / d)
    }
}

/// Difference operator Δ_y on Q(x)(y): `σ_y(r) − r`.
pub fn delta_y(r: &RatXY) -> RatXY {
    r.shift_y(1).sub(r)
}

// ---------------------------------------------------------------------------
// Canonical display: expanded monomials, ordered by (deg_y, deg_x) descending.
// ---------------------------------------------------------------------------

fn fmt_monomials(f: &mut fmt::Formatter<'_>, terms: &[(Rat, usize, usize)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (c, dx, dy)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let a = c.abs();
        let mut vars = String::new();
        if *dx > 0 {
            vars.push('x');
            if *dx > 1 {
                vars.push_str(&format!("^{dx}"));
            }
        }
        if *dy > 0 {
            if !vars.is_empty() {
                vars.push('*');
            }
            vars.push('y');
            if *dy > 1 {
                vars.push_str(&format!("^{dy}"));
            }
        }
        if vars.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{vars}")?;
        } else {
            write!(f, "{a}*{vars}")?;
        }
    }
    Ok(())
}

fn bivar_terms(numers: &[PolyX]) -> Vec<(Rat, usize, usize)> {
    let mut terms = Vec::new();
    for (dy, n) in numers.iter().enumerate().rev() {
        for dx in (0..n.coeffs().len()).rev() {
            let c = n.coeff(dx);
            if !c.is_zero() {
                terms.push((c, dx, dy));
            }
        }
    }
    terms
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, usize, usize)> = (0..self.coeffs().len())
            .rev()
            .filter_map(|dx| {
                let c = self.coeff(dx);
                (!c.is_zero()).then_some((c, dx, 0))
            })
            .collect();
        fmt_monomials(f, &terms)
    }
}

impl fmt::Display for Poly<RatX> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, numers) = self.clear_x_denominators();
        let terms = bivar_terms(&numers);
        if d.is_one() {
            fmt_monomials(f, &terms)
        } else {
            write!(f, "(")?;
            fmt_monomials(f, &terms)?;
            write!(f, ")/({d})")
        }
    }
}

impl fmt::Display for RatFun<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}

impl fmt::Display for RatFun<RatX> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    #[test]
    fn display_orders_by_deg_y_then_deg_x_descending() {
        // x - y prints with the y term first
        assert_eq!(bivar(&[(1, 1, 0), (-1, 0, 1)]).to_string(), "-y + x");
        assert_eq!(
            bivar(&[(1, 0, 2), (3, 2, 1), (1, 1, 1), (-2, 0, 0)]).to_string(),
            "y^2 + 3*x^2*y + x*y - 2"
        );
    }

    #[test]
    fn display_rational_coefficients() {
        let p = Poly::from_coeffs(vec![rat(3, 4), rat_int(-1), rat_int(2)]);
        assert_eq!(p.to_string(), "2*x^2 - x + 3/4");
        assert_eq!(PolyX::zero().to_string(), "0");
        assert_eq!(polyx(&[1]).to_string(), "1");
    }

    #[test]
    fn display_clears_x_denominators() {
        let third = RatFun::new(polyx(&[1]), polyx(&[1, 1]));
        let p: PolyY = Poly::from_coeffs(vec![third, ratx_int(1)]);
        assert_eq!(p.to_string(), "(x*y + y + 1)/(x + 1)");
    }

    #[test]
    fn shifts_are_automorphisms() {
        let r = RatFun::new(polyx(&[0, 1]), polyx(&[1, 1])); // x/(x+1)
        assert_eq!(r.shift_x(2), RatFun::new(polyx(&[2, 1]), polyx(&[3, 1])));
        assert_eq!(r.shift_x(2).shift_x(-2), r);

        let p = bivar(&[(1, 0, 2), (1, 1, 1)]);
        let q = bivar(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(p.shift_y(3).mul(&q.shift_y(3)), p.mul(&q).shift_y(3));
        assert_eq!(p.shift_x(1).add(&q.shift_x(1)), p.add(&q).shift_x(1));
    }

    #[test]
    fn clear_and_rebuild_round_trip() {
        let c0 = RatFun::new(polyx(&[1]), polyx(&[1, 1]));
        let c1 = RatFun::new(polyx(&[0, 1]), polyx(&[2]));
        let p: PolyY = Poly::from_coeffs(vec![c0, c1]);
        let (d, numers) = p.clear_x_denominators();
        assert_eq!(d, polyx(&[1, 1]));
        assert_eq!(PolyY::from_x_parts(&d, &numers), p);
    }

    #[test]
    fn eval_and_delta() {
        let r = RatFun::new(bivar(&[(1, 1, 0), (-1, 0, 1)]), bivar(&[(1, 0, 1), (1, 0, 0)]));
        assert_eq!(r.eval_xy(&rat_int(3), &rat_int(1)), Some(rat_int(1)));
        // Δ_y(y) = 1
        let y = RatFun::from_poly(yplus(0));
        assert_eq!(delta_y(&y), RatFun::from_poly(PolyY::one()));
    }

    #[test]
    fn integer_primitive_scaling() {
        let p = Poly::from_coeffs(vec![rat(2, 3), rat_int(4)]);
        let c = p.integer_primitive_scale();
        assert_eq!(c, rat(3, 2));
        assert_eq!(p.scale(&c), polyx(&[1, 6]));
        let v = integer_primitive_vector(&[polyx(&[2]), polyx(&[0, -4])]);
        assert_eq!(v, vec![polyx(&[1]), polyx(&[0, -2])]);
    }
}
