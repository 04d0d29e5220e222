//! Partial fraction decomposition in y over Q(x).
//!
//! The proper part splits along the coprime blocks p^e of the factored
//! denominator by the extended Euclidean identity; numerators are reduced
//! modulo their block, so each term is `num / p^e` with deg_y num < e·deg_y p
//! and p monic irreducible.

use super::factor::factor_y;
use super::ratfun::RatFun;
use super::xy::{PolyY, RatXY};

#[derive(Clone, Debug, PartialEq)]
pub struct FractionTerm {
    pub num: PolyY,
    pub base: PolyY,
    pub power: usize,
}

#[derive(Clone, Debug)]
pub struct PartialFractions {
    pub poly: PolyY,
    pub terms: Vec<FractionTerm>,
}

impl PartialFractions {
    /// Fold back into a single rational function (test/verification aid).
    pub fn reassemble(&self) -> RatXY {
        let mut acc = RatFun::from_poly(self.poly.clone());
        for t in &self.terms {
            acc = acc.add(&RatFun::new(t.num.clone(), t.base.pow(t.power)));
        }
        acc
    }
}

fn split_blocks(num: &PolyY, blocks: &[(PolyY, usize)], out: &mut Vec<FractionTerm>) {
    if num.is_zero() {
        return;
    }
    if blocks.len() == 1 {
        out.push(FractionTerm {
            num: num.clone(),
            base: blocks[0].0.clone(),
            power: blocks[0].1,
        });
        return;
    }
    let mid = blocks.len() / 2;
    let mut a = PolyY::one();
    for (p, e) in &blocks[..mid] {
        a = a.mul(&p.pow(*e));
    }
    let mut b = PolyY::one();
    for (p, e) in &blocks[mid..] {
        b = b.mul(&p.pow(*e));
    }
    let (g, s, t) = a.ext_gcd(&b);
    debug_assert!(g.is_one());
    let num_a = num.mul(&t).rem(&a);
    let num_b = num.mul(&s).rem(&b);
    split_blocks(&num_a, &blocks[..mid], out);
    split_blocks(&num_b, &blocks[mid..], out);
}

/// Decompose `r` into polynomial part plus proper fractions over the
/// irreducible-power blocks of its denominator.
pub fn partial_fractions_y(r: &RatXY) -> PartialFractions {
    let (quot, rem) = r.num().div_rem(r.den());
    if rem.is_zero() {
        return PartialFractions { poly: quot, terms: Vec::new() };
    }
    let (unit, blocks) = factor_y(r.den());
    debug_assert!(crate::algebra::field::Field::is_one(&unit)); // denominators are monic
    let mut terms = Vec::new();
    split_blocks(&rem, &blocks, &mut terms);
    PartialFractions { poly: quot, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::xy::{bivar, yplus};

    #[test]
    fn two_simple_poles() {
        // 1 / (y (y+1)) = 1/y - 1/(y+1)
        let r = RatFun::new(PolyY::one(), yplus(0).mul(&yplus(1)));
        let pf = partial_fractions_y(&r);
        assert!(pf.poly.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.reassemble(), r);
        let at_y = pf.terms.iter().find(|t| t.base == yplus(0)).unwrap();
        assert_eq!(at_y.num, PolyY::one());
        assert_eq!(at_y.power, 1);
        let at_y1 = pf.terms.iter().find(|t| t.base == yplus(1)).unwrap();
        assert_eq!(at_y1.num, PolyY::one().neg());
    }

    #[test]
    fn repeated_factor_stays_grouped() {
        // 1 / (y^2 (y+1)): the y-block carries power 2 and num of degree < 2
        let r = RatFun::new(PolyY::one(), yplus(0).pow(2).mul(&yplus(1)));
        let pf = partial_fractions_y(&r);
        assert_eq!(pf.terms.len(), 2);
        let at_y = pf.terms.iter().find(|t| t.base == yplus(0)).unwrap();
        assert_eq!(at_y.power, 2);
        assert!(at_y.num.degree() < Some(2));
        assert_eq!(pf.reassemble(), r);
    }

    #[test]
    fn polynomial_part_and_bivariate_pole() {
        // (y^3 + x) / (y^2 + x): poly part y, remainder proper
        let den = bivar(&[(1, 0, 2), (1, 1, 0)]);
        let num = bivar(&[(1, 0, 3), (1, 1, 0)]);
        let r = RatFun::new(num, den.clone());
        let pf = partial_fractions_y(&r);
        assert_eq!(pf.poly, yplus(0));
        assert_eq!(pf.terms.len(), 1);
        assert_eq!(pf.terms[0].base, den);
        assert_eq!(pf.reassemble(), r);
    }

    #[test]
    fn pure_polynomial_input() {
        let r = RatFun::from_poly(bivar(&[(2, 1, 1), (3, 0, 0)]));
        let pf = partial_fractions_y(&r);
        assert!(pf.terms.is_empty());
        assert_eq!(pf.reassemble(), r);
    }

    #[test]
    fn mixed_shifted_linear_poles() {
        // (3y + x) / ((y+2)(y-1)^2 (y^2+x))
        let den = yplus(2).mul(&yplus(-1).pow(2)).mul(&bivar(&[(1, 0, 2), (1, 1, 0)]));
        let num = bivar(&[(3, 0, 1), (1, 1, 0)]);
        let r = RatFun::new(num, den);
        let pf = partial_fractions_y(&r);
        assert_eq!(pf.terms.len(), 3);
        assert_eq!(pf.reassemble(), r);
        for t in &pf.terms {
            assert!(t.num.degree() < t.base.pow(t.power).degree());
            assert!(t.base.lc().is_one());
        }
    }
}
