//! Integer roots of rational polynomials.
//!
//! Constant terms of the polynomials we probe (specialized resultants) can be
//! hundreds of digits, so the rational-root/divisor method is useless here.
//! Instead: squarefree part, Sturm chain, and bisection down to unit
//! intervals inside the Cauchy root bound.  Everything stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rat;
use super::poly::Poly;
use super::xy::PolyX;

/// Scale by a positive rational so the coefficients are coprime integers.
/// Positive scaling preserves every sign, so Sturm counts are unaffected,
/// while the remainder chain stays free of compounding fraction growth.
fn positive_primitive(p: &PolyX) -> PolyX {
    if p.is_zero() {
        return p.clone();
    }
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for c in p.coeffs() {
        num = num.gcd(&(c.numer() * &den / c.denom()));
    }
    p.scale(&Rat::new(den, num))
}

fn sturm_chain(p: &PolyX) -> Vec<PolyX> {
    let mut chain = vec![positive_primitive(p), positive_primitive(&p.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        if chain[n - 1].degree() == Some(0) {
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return chain;
        }
        chain.push(positive_primitive(&r));
    }
}

fn sign_variations(chain: &[PolyX], at: &Rat) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for p in chain {
        let v = p.eval(at);
        let s: i8 = if v.is_zero() {
            continue;
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// All integer roots of a nonzero polynomial, ascending, without
/// multiplicities.
pub fn integer_roots(p: &PolyX) -> Vec<BigInt> {
    assert!(!p.is_zero(), "integer roots of the zero polynomial");
    let mut roots = Vec::new();

    // Strip the power of t dividing p; it contributes the root 0.
    let mut q = p.clone();
    if q.coeff(0).is_zero() {
        roots.push(BigInt::zero());
        while q.coeff(0).is_zero() && q.degree() > Some(0) {
            q = q.exact_div(&Poly::monomial(Rat::one(), 1));
        }
    }
    if q.degree().map_or(true, |d| d == 0) {
        roots.sort();
        return roots;
    }

    // Squarefree part: Sturm theory wants simple roots.
    let g = q.gcd(&q.derivative());
    if g.degree() > Some(0) {
        q = q.exact_div(&g);
    }

    // Cauchy bound: all real roots lie in (-m, m).
    let lc = q.lc().clone();
    let mut m = Rat::zero();
    for c in q.coeffs().iter().take(q.coeffs().len() - 1) {
        let t = (c / &lc).abs();
        if t > m {
            m = t;
        }
    }
    m = m + Rat::one();
    let bound: BigInt = m.ceil().to_integer() + BigInt::one();

    let chain = sturm_chain(&q);
    let at = |n: &BigInt| sign_variations(&chain, &Rat::from_integer(n.clone()));
    // Endpoint counts ride along with each interval, so every point is
    // evaluated exactly once.
    let lo = -&bound;
    let (n_lo, n_hi) = (at(&lo), at(&bound));
    let mut stack = vec![(lo, bound.clone(), n_lo, n_hi)];
    while let Some((lo, hi, n_lo, n_hi)) = stack.pop() {
        if n_lo == n_hi {
            continue; // no real roots in (lo, hi]
        }
        if &hi - &lo == BigInt::one() {
            if q.eval(&Rat::from_integer(hi.clone())).is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi) / 2;
        let n_mid = at(&mid);
        stack.push((lo, mid.clone(), n_lo, n_mid));
        stack.push((mid, hi, n_mid, n_hi));
    }

    roots.sort();
    roots
}

/// Integer roots that fit in an `i64` (all of them in practice; asserted).
pub fn integer_roots_i64(p: &PolyX) -> Vec<i64> {
    integer_roots(p)
        .into_iter()
        .map(|r| r.to_i64().expect("integer root exceeds i64 range"))
        .collect()
}
