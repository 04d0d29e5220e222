//! Kernel-shell decompositions of shift quotients: every f ∈ Q(x)(y) factors
//! as f = K·σ_y(S)/S with K shift-reduced (the kernel) and S the shell.
//! The reshaping moves trade kernel factors for shell factors without
//! changing f, and the normalization coalesces each shift class of the
//! kernel so its numerator and denominator become shift-free.

use crate::algebra::factor::factor_y;
use crate::algebra::field::Field;
use crate::algebra::ratfun::RatFun;
use crate::algebra::xy::{PolyY, RatXY};
use crate::error::Error;
use crate::shifts::{dispersion_set, is_strongly_prime_with, shift_classes_y};
use crate::term::HyperTerm;

/// f = K·σ_y(S)/S with K = u/v shift-reduced, gcd(u, v) = 1, v monic.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelShell {
    pub k: RatXY,
    pub u: PolyY,
    pub v: PolyY,
    pub s: RatXY,
}

impl KernelShell {
    fn assemble(u: PolyY, v: PolyY, s: RatXY) -> KernelShell {
        debug_assert!(v.lc().is_one());
        debug_assert!(u.gcd(&v).is_one());
        let k = RatFun::from_reduced_parts(u.clone(), v.clone());
        KernelShell { k, u, v, s }
    }

    /// Validated constructor for externally supplied kernels.
    pub fn from_parts(u: PolyY, v: PolyY, s: RatXY) -> Result<KernelShell, Error> {
        if u.is_zero() || v.is_zero() || s.is_zero() {
            return Err(Error::ZeroInput("KernelShell::from_parts"));
        }
        let k = RatFun::new(u, v);
        if !dispersion_set(k.num(), k.den())?.is_empty() {
            return Err(Error::KernelNotShiftReduced);
        }
        let (u, v) = (k.num().clone(), k.den().clone());
        Ok(KernelShell { k, u, v, s })
    }

    /// The quotient this decomposition represents: K·σ_y(S)/S.
    pub fn source_quotient(&self) -> RatXY {
        self.k.mul(&self.s.shift_y(1)).div(&self.s)
    }

    /// Is `p` coprime with every σ_y^{−i}(u) and σ_y^{i}(v), i ≥ 0?
    pub fn is_strongly_prime(&self, p: &PolyY) -> Result<bool, Error> {
        is_strongly_prime_with(p, &self.u, &self.v)
    }
}

/// Shift-reduced rational normal form of a nonzero quotient.
///
/// Collisions gcd(num, σ_y^h(den)) ≠ 1 are cleared largest positive h first,
/// then most negative; each step moves a telescoping product into the shell,
/// and the numerator+denominator degree strictly drops.
pub fn rnf(f: &RatXY) -> Result<KernelShell, Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput("rnf"));
    }
    let mut num = f.num().clone();
    let mut den = f.den().clone();
    let mut s: RatXY = RatFun::one();
    loop {
        // dispersion_set(den, num) = { h : gcd(num, σ_y^h(den)) ≠ 1 }
        let collisions: Vec<i64> = dispersion_set(&den, &num)?
            .into_iter()
            .filter(|&h| h != 0)
            .collect();
        let h = match collisions.iter().copied().filter(|&h| h > 0).max() {
            Some(h) => h,
            None => match collisions.first() {
                Some(&h) => h,
                None => break,
            },
        };
        let g = num.gcd(&den.shift_y(h));
        num = num.exact_div(&g);
        den = den.exact_div(&g.shift_y(-h));
        if h > 0 {
            for j in 1..=h {
                s = s.mul(&RatFun::from_poly(g.shift_y(-j)));
            }
        } else {
            for j in 0..-h {
                s = s.div(&RatFun::from_poly(g.shift_y(j)));
            }
        }
    }
    let k = RatFun::new(num, den);
    let ks = KernelShell {
        u: k.num().clone(),
        v: k.den().clone(),
        k,
        s,
    };
    assert_eq!(ks.source_quotient(), *f, "rnf invariance");
    Ok(ks)
}

/// Kernel and shell of the y-shift quotient of a term: T = S·H with
/// σ_y(H)/H = K.
pub fn kernel_shell_of_term(t: &HyperTerm) -> Result<KernelShell, Error> {
    rnf(&t.g)
}

/// Trade p^α in v for σ_y(p)^α, absorbing p^α into the shell.
pub fn move_denominator_factor(
    ks: &KernelShell,
    p: &PolyY,
    alpha: usize,
) -> Result<KernelShell, Error> {
    debug_assert!(p.lc().is_one() && p.degree() > Some(0));
    let pa = p.pow(alpha);
    if !pa.divides(&ks.v) {
        return Err(Error::NotAFactor);
    }
    let v = ks.v.exact_div(&pa).mul(&p.shift_y(1).pow(alpha));
    let s = ks.s.mul(&RatFun::from_poly(pa));
    let out = KernelShell::assemble(ks.u.clone(), v, s);
    debug_assert_eq!(out.source_quotient(), ks.source_quotient());
    Ok(out)
}

/// Trade p^α in u for σ_y^{−1}(p)^α, absorbing σ_y^{−1}(p)^α into the shell.
pub fn move_numerator_factor(
    ks: &KernelShell,
    p: &PolyY,
    alpha: usize,
) -> Result<KernelShell, Error> {
    debug_assert!(p.lc().is_one() && p.degree() > Some(0));
    let pa = p.pow(alpha);
    if !pa.divides(&ks.u) {
        return Err(Error::NotAFactor);
    }
    let down = p.shift_y(-1).pow(alpha);
    let u = ks.u.exact_div(&pa).mul(&down);
    let s = ks.s.mul(&RatFun::from_poly(down));
    let out = KernelShell::assemble(u, ks.v.clone(), s);
    debug_assert_eq!(out.source_quotient(), ks.source_quotient());
    Ok(out)
}

/// Coalesce every shift class of v at its maximal y-offset and every shift
/// class of u at its minimal y-offset; both become shift-free and f is
/// unchanged.
pub fn normalize_kernel_shift_free(ks: &KernelShell) -> KernelShell {
    let mut cur = ks.clone();
    // Denominator members only ever move up, so the total distance to each
    // class maximum strictly decreases.
    loop {
        let (_, parts) = factor_y(&cur.v);
        let step = shift_classes_y(&parts).into_iter().find_map(|c| {
            let top = c.members.last().expect("nonempty class").0;
            c.members
                .iter()
                .find(|&&(o, _)| o < top)
                .map(|&(o, m)| (c.representative.shift_y(o), m))
        });
        match step {
            Some((p, m)) => {
                cur = move_denominator_factor(&cur, &p, m).expect("member of v")
            }
            None => break,
        }
    }
    loop {
        let (_, parts) = factor_y(&cur.u);
        let step = shift_classes_y(&parts).into_iter().find_map(|c| {
            let bottom = c.members.first().expect("nonempty class").0;
            c.members
                .iter()
                .find(|&&(o, _)| o > bottom)
                .map(|&(o, m)| (c.representative.shift_y(o), m))
        });
        match step {
            Some((p, m)) => cur = move_numerator_factor(&cur, &p, m).expect("member of u"),
            None => break,
        }
    }
    debug_assert_eq!(cur.source_quotient(), ks.source_quotient());
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::xy::{bivar, ratx_int, yplus};
    use crate::rng::XorShift;
    use crate::shifts::{is_shift_free_y, is_shift_reduced};
    use crate::term::{shift_quotients, LinArg, TermAtom, TermExpr};

    #[test]
    fn rnf_spec_examples() {
        // (y+2)/y -> K = 1, S = y(y+1)
        let f = RatFun::new(yplus(2), yplus(0));
        let ks = rnf(&f).unwrap();
        assert!(ks.k.is_one());
        assert_eq!(ks.s, RatFun::from_poly(yplus(0).mul(&yplus(1))));

        // (x−y)/(y+1) is already shift-reduced
        let f = RatFun::new(bivar(&[(1, 1, 0), (-1, 0, 1)]), yplus(1));
        let ks = rnf(&f).unwrap();
        assert_eq!(ks.k, f);
        assert!(ks.s.is_one());
        assert_eq!(ks.u, bivar(&[(1, 1, 0), (-1, 0, 1)]));
        assert_eq!(ks.v, yplus(1));

        // (y+1)²/y -> K = y+1, S = y
        let f = RatFun::new(yplus(1).pow(2), yplus(0));
        let ks = rnf(&f).unwrap();
        assert_eq!(ks.k, RatFun::from_poly(yplus(1)));
        assert_eq!(ks.s, RatFun::from_poly(yplus(0)));
    }

    #[test]
    fn rnf_clears_negative_collisions() {
        // y/(y+2): the only collision is gcd(num, σ^{−2}(den)) ≠ 1
        let f = RatFun::new(yplus(0), yplus(2));
        let ks = rnf(&f).unwrap();
        assert!(ks.k.is_one());
        assert!(is_shift_reduced(&ks.k).unwrap());
        assert_eq!(ks.source_quotient(), f);
    }

    #[test]
    fn kernel_shell_of_term_examples() {
        let binom = TermExpr::new(vec![(
            TermAtom::Binomial(LinArg::of_ints(1, 0, 0), LinArg::of_ints(0, 1, 0)),
            1,
        )]);
        let ks = kernel_shell_of_term(&shift_quotients(&binom).unwrap()).unwrap();
        assert_eq!(ks.u, bivar(&[(1, 1, 0), (-1, 0, 1)]));
        assert_eq!(ks.v, yplus(1));
        assert!(ks.s.is_one());

        let fact = TermExpr::new(vec![(TermAtom::Factorial(LinArg::of_ints(0, 1, 0)), 1)]);
        let ks = kernel_shell_of_term(&shift_quotients(&fact).unwrap()).unwrap();
        assert_eq!(ks.k, RatFun::from_poly(yplus(1)));
        assert!(ks.s.is_one());

        // rational T: kernel 1, shell differs from T by at most a constant
        let t_rat: RatXY = RatFun::new(yplus(0), bivar(&[(1, 1, 0), (2, 0, 1)]));
        let g = t_rat.shift_y(1).div(&t_rat);
        let ks = rnf(&g).unwrap();
        assert!(ks.k.is_one());
        let ratio = ks.s.div(&t_rat);
        assert_eq!(ratio.shift_y(1), ratio);
    }

    #[test]
    fn move_denominator_examples() {
        let base = KernelShell::from_parts(
            PolyY::one(),
            yplus(0).mul(&yplus(2)),
            RatFun::one(),
        )
        .unwrap();
        let moved = move_denominator_factor(&base, &yplus(0), 1).unwrap();
        assert_eq!(moved.v, yplus(1).mul(&yplus(2)));
        assert_eq!(moved.s, RatFun::from_poly(yplus(0)));

        let binom_k = KernelShell::from_parts(
            bivar(&[(1, 1, 0), (-1, 0, 1)]),
            yplus(1),
            RatFun::one(),
        )
        .unwrap();
        let moved = move_denominator_factor(&binom_k, &yplus(1), 1).unwrap();
        assert_eq!(moved.v, yplus(2));
        assert_eq!(moved.s, RatFun::from_poly(yplus(1)));

        assert!(matches!(
            move_denominator_factor(&base, &yplus(0), 2),
            Err(Error::NotAFactor)
        ));
    }

    #[test]
    fn move_numerator_examples() {
        let base =
            KernelShell::from_parts(yplus(1), PolyY::one(), RatFun::one()).unwrap();
        let moved = move_numerator_factor(&base, &yplus(1), 1).unwrap();
        assert_eq!(moved.u, yplus(0));
        assert_eq!(moved.s, RatFun::from_poly(yplus(0)));

        // y(y+3) in u: moving y+3 down introduces y+2
        let k2 = KernelShell::from_parts(
            yplus(0).mul(&yplus(3)),
            PolyY::one(),
            RatFun::one(),
        )
        .unwrap();
        let moved = move_numerator_factor(&k2, &yplus(3), 1).unwrap();
        assert_eq!(moved.u, yplus(0).mul(&yplus(2)));

        assert!(matches!(
            move_numerator_factor(&base, &yplus(5), 1),
            Err(Error::NotAFactor)
        ));
    }

    #[test]
    fn normalization_examples() {
        // 1/(y(y+2)) -> 1/(y+2)², shell gains y(y+1)
        let ks = KernelShell::from_parts(
            PolyY::one(),
            yplus(0).mul(&yplus(2)),
            RatFun::one(),
        )
        .unwrap();
        let n = normalize_kernel_shift_free(&ks);
        assert_eq!(n.v, yplus(2).pow(2));
        assert_eq!(n.s, RatFun::from_poly(yplus(0).mul(&yplus(1))));
        assert_eq!(n.source_quotient(), ks.source_quotient());

        // already shift-free: unchanged
        let free = KernelShell::from_parts(
            bivar(&[(1, 1, 0), (-1, 0, 1)]),
            yplus(1),
            RatFun::one(),
        )
        .unwrap();
        assert_eq!(normalize_kernel_shift_free(&free), free);

        // y(y+1) in the numerator coalesces at the lowest offset: y²
        let ks = KernelShell::from_parts(
            yplus(0).mul(&yplus(1)),
            PolyY::one(),
            RatFun::one(),
        )
        .unwrap();
        let n = normalize_kernel_shift_free(&ks);
        assert_eq!(n.u, yplus(0).pow(2));
        assert!(is_shift_free_y(&n.u).unwrap());
        assert_eq!(n.source_quotient(), ks.source_quotient());
    }

    #[test]
    fn randomized_quotients_stay_invariant_and_reduced() {
        let mut rng = XorShift::new(0xD15EA5E);
        for _ in 0..12 {
            // random product of shifted linear factors with signed exponents
            let mut f: RatXY = RatFun::constant(ratx_int(rng.range_i64(1, 5)));
            for _ in 0..rng.range_i64(1, 4) {
                let base = if rng.chance(1, 2) {
                    yplus(rng.range_i64(-3, 4))
                } else {
                    bivar(&[(1, 1, 0), (rng.range_i64(-2, 3), 0, 1), (rng.range_i64(-2, 3), 0, 0)])
                };
                let e = rng.range_i64(-2, 3);
                if e != 0 && base.degree() > Some(0) {
                    f = f.mul(&crate::term::ratxy_pow(&RatFun::from_poly(base), e));
                }
            }
            let ks = rnf(&f).unwrap();
            assert_eq!(ks.source_quotient(), f);
            assert!(is_shift_reduced(&ks.k).unwrap());
            let n = normalize_kernel_shift_free(&ks);
            assert_eq!(n.source_quotient(), f);
            if n.u.degree() > Some(0) {
                assert!(is_shift_free_y(&n.u).unwrap());
            }
            if n.v.degree() > Some(0) {
                assert!(is_shift_free_y(&n.v).unwrap());
            }
        }
    }
}
