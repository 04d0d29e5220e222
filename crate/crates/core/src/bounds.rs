//! Order bounds for telescopers.
//!
//! Everything here reads off the significant denominator `b` of the reduced
//! input and the kernel `u/v`.  The authoritative upper bound counts the
//! equations a telescoper candidate must satisfy: the degree of a common
//! denominator housing every reduced shift of the input, plus the dimension
//! of the complement space.  Next to it sit a cheaper closed-form upper
//! bound, a congruence lower bound, and the two classical bounds
//! (Abramov–Le and Apagodu–Zeilberger) for comparison.

use num_traits::ToPrimitive;

use crate::algebra::factor::factor_y;
use crate::algebra::field::{rat_int, rat_pow, Field, Rat};
use crate::algebra::ratfun::RatFun;
use crate::algebra::xy::{PolyY, RatXY};
use crate::error::Error;
use crate::reduction::{shell_reduce, ComplementBasis, ResidualForm};
use crate::rnf::{kernel_shell_of_term, KernelShell};
use crate::shifts::{
    detect_integer_linear_unchecked, integer_linear_decomposition, is_strongly_prime_with,
    z_class_key, IntegerLinearForm,
};
use crate::telescoping::existence_check;
use crate::term::{ratxy_pow, HyperTerm, LinArg, TermAtom, TermExpr};

/// Slot of a Γ-factor in a proper product; the sign of the y-coefficient is
/// folded into the kind so stored coefficients stay nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaKind {
    NumeratorPlus,
    NumeratorMinus,
    DenominatorPlus,
    DenominatorMinus,
}

/// One factor `(coeff_x·x ± coeff_y·y + constant − 1)!` of a proper product.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaFactor {
    pub kind: GammaKind,
    pub coeff_x: i64,
    pub coeff_y: i64,
    pub constant: Rat,
}

/// `poly · w^x · z^y · Π Γ-factors`, the shape behind the classical order
/// bound of Apagodu and Zeilberger.
#[derive(Clone, Debug, PartialEq)]
pub struct ProperTermSpec {
    pub poly: PolyY,
    pub w: Rat,
    pub z: Rat,
    pub factors: Vec<GammaFactor>,
}

/// max of the two Γ-coefficient sums: numerator-plus with denominator-minus,
/// and numerator-minus with denominator-plus.
pub fn apagodu_zeilberger_bound(spec: &ProperTermSpec) -> usize {
    let (mut s1, mut s2) = (0i64, 0i64);
    for f in &spec.factors {
        match f.kind {
            GammaKind::NumeratorPlus | GammaKind::DenominatorMinus => s1 += f.coeff_y,
            GammaKind::NumeratorMinus | GammaKind::DenominatorPlus => s2 += f.coeff_y,
        }
    }
    s1.max(s2).max(0) as usize
}

/// Inverse of `a` modulo `m ≥ 1`; requires gcd(a, m) = 1.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of {a} mod {m}");
    t0.rem_euclid(m)
}

/// Least ρ ≥ 1 with λ·ρ ≡ delta (mod μ).
fn min_positive_congruent(lambda: i64, mu: i64, delta: i64) -> usize {
    debug_assert!(mu >= 1);
    if mu == 1 {
        return 1;
    }
    let r = (mod_inverse(lambda, mu) as i128 * delta.rem_euclid(mu) as i128)
        .rem_euclid(mu as i128) as i64;
    if r == 0 {
        mu as usize
    } else {
        r as usize
    }
}

/// Least s ≥ 0 with λ·s ≡ delta (mod μ).
fn min_nonnegative_congruent(lambda: i64, mu: i64, delta: i64) -> usize {
    debug_assert!(mu >= 1);
    if mu == 1 {
        return 0;
    }
    (mod_inverse(lambda, mu) as i128 * delta.rem_euclid(mu) as i128).rem_euclid(mu as i128)
        as usize
}

/// One slope family of a polynomial's factors: a canonical anchor P together
/// with every present position, as `P(λx+μy+offset)` with multiplicity.
struct SlopeFamily {
    form: IntegerLinearForm,
    /// (z-offset, multiplicity), ascending offsets.
    members: Vec<(i64, usize)>,
}

impl SlopeFamily {
    fn max_multiplicity(&self) -> usize {
        self.members.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }
}

/// Group the y-dependent irreducible factors of `p` by slope and anchor.
/// Factors that are not integer-linear are an error, or skipped when
/// `lenient` (they can never interact with integer-linear ones).
fn slope_families(p: &PolyY, lenient: bool) -> Result<Vec<SlopeFamily>, Error> {
    let mut out: Vec<SlopeFamily> = Vec::new();
    for (f, m) in factor_y(p).1 {
        let Some(form) = detect_integer_linear_unchecked(&f) else {
            if lenient {
                continue;
            }
            return Err(Error::NotIntegerLinear { factor: f.to_string() });
        };
        debug_assert!(form.mu >= 1, "y-dependent factor with horizontal slope");
        let (anchor, off) = z_class_key(&form.p);
        let slot = out.iter_mut().find(|c| {
            c.form.lambda == form.lambda && c.form.mu == form.mu && c.form.p == anchor
        });
        match slot {
            Some(c) => c.members.push((off, m)),
            None => out.push(SlopeFamily {
                form: IntegerLinearForm { lambda: form.lambda, mu: form.mu, p: anchor },
                members: vec![(off, m)],
            }),
        }
    }
    for c in &mut out {
        c.members.sort_unstable();
    }
    out.sort_by(|a, b| {
        (a.form.mu, a.form.lambda)
            .cmp(&(b.form.mu, b.form.lambda))
            .then_with(|| format!("{}", a.form.p).cmp(&format!("{}", b.form.p)))
    });
    Ok(out)
}

/// z-offset ≡ j (mod μ) whose factor is strongly prime with the kernel,
/// scanning outward from 0 and preferring the negative side on ties.
fn strongly_prime_position(
    form: &IntegerLinearForm,
    j: i64,
    ks: &KernelShell,
) -> Result<i64, Error> {
    for l in 0i64.. {
        for pos in [j - l * form.mu, j + l * form.mu] {
            let rep = form.substituted(pos).monic().1;
            if is_strongly_prime_with(&rep, &ks.u, &ks.v)? {
                return Ok(pos);
            }
            if l == 0 {
                break;
            }
        }
    }
    unreachable!("dispersion sets are finite")
}

/// Common denominator for the reduced shifts of the input: per slope family
/// of `b` and per y-shift residue inside it, the member already present (at
/// most one, by shift-freeness) or a strongly prime representative near 0,
/// raised to the family's maximal multiplicity.
pub fn build_common_denominator(b: &PolyY, ks: &KernelShell) -> Result<PolyY, Error> {
    let mut big = PolyY::one();
    for family in slope_families(b, false)? {
        let m = family.max_multiplicity();
        for j in 0..family.form.mu {
            let pos = match family.members.iter().find(|&&(c, _)| c.rem_euclid(family.form.mu) == j)
            {
                Some(&(c, _)) => c,
                None => strongly_prime_position(&family.form, j, ks)?,
            };
            let rep = family.form.substituted(pos).monic().1;
            big = big.mul(&rep.pow(m));
        }
    }
    Ok(big)
}

/// Degree-count upper bound: kernel degree, minus one when the kernel
/// difference loses its leading term, plus the slope-weighted factor count
/// of `b`.  Caps the dimension-based bound for every constructible kernel;
/// reported alongside it for comparison.
fn closed_form_upper(ks: &KernelShell, b: &PolyY) -> Result<i64, Error> {
    let du = ks.u.degree().unwrap_or(0) as i64;
    let dv = ks.v.degree().unwrap_or(0) as i64;
    let mut bound = du.max(dv);
    if ks.u != ks.v {
        let dd = ks.u.sub(&ks.v).degree().unwrap_or(0) as i64;
        if dd <= du - 1 {
            bound -= 1;
        }
    }
    for family in slope_families(b, false)? {
        let dp = family.form.p.degree().unwrap_or(0) as i64;
        bound += family.form.mu * family.max_multiplicity() as i64 * dp;
    }
    Ok(bound)
}

/// Upper bound for the minimal telescoper order: the equation count
/// `deg_y(B) + dim 𝕎` (authoritative), paired with the closed-form bound.
pub fn upper_bound(t: &HyperTerm) -> Result<(usize, i64), Error> {
    let ks = kernel_shell_of_term(t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    existence_check(&r)?;
    let big = build_common_denominator(&r.b, &ks)?;
    let dim = ComplementBasis::full(&ks).dim();
    Ok((big.degree().unwrap_or(0) + dim, closed_form_upper(&ks, &r.b)?))
}

fn lower_bound_from(r: &ResidualForm) -> Result<usize, Error> {
    if r.is_zero() {
        return Err(Error::NotApplicable);
    }
    let mut best = 1usize;
    for family in slope_families(&r.b, false)? {
        for &(cp, alpha) in &family.members {
            let rho = family
                .members
                .iter()
                .filter(|&&(_, mq)| mq >= alpha)
                .map(|&(cq, _)| min_positive_congruent(family.form.lambda, family.form.mu, cp - cq))
                .min()
                .expect("every member partners at least with itself");
            best = best.max(rho);
        }
    }
    Ok(best)
}

/// Congruence lower bound for the minimal telescoper order.  Each factor of
/// the significant denominator must, after ρ x-steps, land on a y-shift of a
/// factor of at least its multiplicity; the earliest such ρ per factor,
/// maximized over factors.  Not applicable to summable input (order 0).
pub fn lower_bound(t: &HyperTerm) -> Result<usize, Error> {
    let ks = kernel_shell_of_term(t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    lower_bound_from(&r)
}

fn abramov_le_from(t: &HyperTerm, ks: &KernelShell, r: &ResidualForm) -> Result<usize, Error> {
    if r.is_zero() {
        return Err(Error::NotApplicable);
    }
    // x-quotient of H/v, where σ_x(H)/H = f·S/σ_x(S).
    let n = t.f.mul(&ks.s).div(&ks.s.shift_x(1));
    let stripped = n
        .mul(&RatFun::from_poly(ks.v.clone()))
        .div(&RatFun::from_poly(ks.v.shift_x(1)));
    let d_families = slope_families(stripped.den(), true)?;
    let mut best = 1usize;
    for family in slope_families(&r.b, false)? {
        let partners = d_families.iter().find(|g| {
            g.form.lambda == family.form.lambda
                && g.form.mu == family.form.mu
                && g.form.p == family.form.p
        });
        for &(cp, _) in &family.members {
            let direct = family
                .members
                .iter()
                .map(|&(cq, _)| min_positive_congruent(family.form.lambda, family.form.mu, cp - cq))
                .min()
                .expect("nonempty");
            let via_quotient = partners.and_then(|g| {
                g.members
                    .iter()
                    .map(|&(cq, _)| {
                        1 + min_nonnegative_congruent(family.form.lambda, family.form.mu, cp - cq)
                    })
                    .min()
            });
            best = best.max(via_quotient.map_or(direct, |v| direct.min(v)));
        }
    }
    Ok(best)
}

/// Classical two-route bound of Abramov and Le, multiplicities ignored:
/// per factor of `b`, the earliest ρ reaching a y-shift of a factor of `b`
/// itself, or of the stripped x-quotient denominator after ρ−1 steps.
/// Not applicable to summable input.
pub fn abramov_le_bound(t: &HyperTerm) -> Result<usize, Error> {
    let ks = kernel_shell_of_term(t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    abramov_le_from(t, &ks, &r)
}

/// `(arg)!^count` as Γ-factors; rejects negative x-coefficients, which have
/// no slot in a proper product.
fn push_factorial(factors: &mut Vec<GammaFactor>, arg: &LinArg, count: i64) -> Option<()> {
    if arg.lambda < 0 {
        return None;
    }
    let kind = match (count >= 0, arg.mu >= 0) {
        (true, true) => GammaKind::NumeratorPlus,
        (true, false) => GammaKind::NumeratorMinus,
        (false, true) => GammaKind::DenominatorPlus,
        (false, false) => GammaKind::DenominatorMinus,
    };
    for _ in 0..count.unsigned_abs() {
        factors.push(GammaFactor {
            kind,
            coeff_x: arg.lambda,
            coeff_y: arg.mu.abs(),
            constant: &arg.constant + rat_int(1),
        });
    }
    Some(())
}

/// Rewrite the denominator of a rational factor as Γ-quotients: each slope
/// family becomes one quotient spanning its offsets at the maximal
/// multiplicity, and whatever the span covers beyond the actual factors is
/// returned to the polynomial part.  Fails on factors with no linear shape.
fn absorb_rational(
    value: &RatXY,
    poly: &mut RatXY,
    factors: &mut Vec<GammaFactor>,
) -> Option<()> {
    *poly = poly.mul(&RatFun::from_poly(value.num().clone()));
    let den = integer_linear_decomposition(&RatFun::from_poly(value.den().clone())).ok()?;
    *poly = poly.div(&RatFun::constant(den.constant.clone()));
    for class in &den.classes {
        if class.form.p.degree() != Some(1) {
            return None;
        }
        let members: Vec<(i64, usize)> =
            class.xi.iter().map(|&(k, m)| (k, m as usize)).collect();
        let m = members.iter().map(|&(_, m)| m).max().unwrap();
        let (cmin, cmax) = (members.first().unwrap().0, members.last().unwrap().0);
        let p0 = class.form.p.coeff(0);
        let (lambda, mu) = (class.form.lambda, class.form.mu);
        let (top_kind, top_const, bottom_kind, bottom_const) = if lambda >= 0 {
            (
                GammaKind::NumeratorPlus,
                &p0 + rat_int(cmin),
                GammaKind::DenominatorPlus,
                &p0 + rat_int(cmax + 1),
            )
        } else {
            (
                GammaKind::NumeratorMinus,
                -(&p0 + rat_int(cmax)),
                GammaKind::DenominatorMinus,
                -(&p0 + rat_int(cmin - 1)),
            )
        };
        for _ in 0..m {
            factors.push(GammaFactor {
                kind: top_kind,
                coeff_x: lambda.abs(),
                coeff_y: mu,
                constant: top_const.clone(),
            });
            factors.push(GammaFactor {
                kind: bottom_kind,
                coeff_x: lambda.abs(),
                coeff_y: mu,
                constant: bottom_const.clone(),
            });
        }
        for c in cmin..=cmax {
            let have = members.iter().find(|&&(k, _)| k == c).map_or(0, |&(_, m)| m);
            *poly = poly.mul(&RatFun::from_poly(class.form.substituted(c).pow(m - have)));
        }
        if lambda < 0 && (m as i64 * (cmax - cmin + 1)) % 2 == 1 {
            *poly = poly.neg();
        }
    }
    Some(())
}

/// Read a proper-product shape off a term's syntactic form.  Factorials,
/// binomials, Pochhammer symbols and geometric factors map slot by slot;
/// rational factors go through denominator Γ-rewriting.  None when some
/// factor has no such shape.
pub fn proper_term_spec(expr: &TermExpr) -> Option<ProperTermSpec> {
    let mut poly: RatXY = RatFun::one();
    let mut w = Rat::one();
    let mut z = Rat::one();
    let mut factors: Vec<GammaFactor> = Vec::new();
    for (atom, e) in &expr.factors {
        match atom {
            TermAtom::Factorial(a) => push_factorial(&mut factors, a, *e)?,
            TermAtom::Binomial(top, bottom) => {
                push_factorial(&mut factors, top, *e)?;
                push_factorial(&mut factors, bottom, -*e)?;
                push_factorial(&mut factors, &top.sub(bottom), -*e)?;
            }
            TermAtom::Pochhammer(base, count) => {
                let top = LinArg {
                    lambda: base.lambda + count.lambda,
                    mu: base.mu + count.mu,
                    constant: &base.constant + &count.constant,
                };
                push_factorial(&mut factors, &top.add_int(-1), *e)?;
                push_factorial(&mut factors, &base.add_int(-1), -*e)?;
            }
            TermAtom::Power(base, arg) => {
                if base.is_zero() {
                    return None;
                }
                w = &w * rat_pow(base, arg.lambda * e);
                z = &z * rat_pow(base, arg.mu * e);
                let c = &arg.constant * rat_int(*e);
                if !c.is_integer() {
                    return None;
                }
                let scalar = rat_pow(base, c.to_integer().to_i64()?);
                poly = poly.mul(&RatFun::constant(RatFun::constant(scalar)));
            }
            TermAtom::Rational(r) => {
                absorb_rational(&ratxy_pow(r, *e), &mut poly, &mut factors)?;
            }
        }
    }
    if !poly.den().is_one() {
        return None;
    }
    Some(ProperTermSpec { poly: poly.num().clone(), w, z, factors })
}

/// Every bound for one input side by side.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// None when the input is summable (order 0, nothing to bound below).
    pub lower: Option<usize>,
    pub upper: usize,
    pub upper_closed_form: i64,
    pub significant_denominator: PolyY,
    pub common_denominator: PolyY,
    pub complement_dimension: usize,
    /// None when the input is summable.
    pub abramov_le: Option<usize>,
    /// None when the syntactic form does not expose a proper product.
    pub apagodu_zeilberger: Option<usize>,
}

fn optional(r: Result<usize, Error>) -> Result<Option<usize>, Error> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::NotApplicable) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn bounds_report(t: &HyperTerm) -> Result<BoundReport, Error> {
    let ks = kernel_shell_of_term(t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    existence_check(&r)?;
    let big = build_common_denominator(&r.b, &ks)?;
    let dim = ComplementBasis::full(&ks).dim();
    Ok(BoundReport {
        lower: optional(lower_bound_from(&r))?,
        upper: big.degree().unwrap_or(0) + dim,
        upper_closed_form: closed_form_upper(&ks, &r.b)?,
        significant_denominator: r.b.clone(),
        common_denominator: big,
        complement_dimension: dim,
        abramov_le: optional(abramov_le_from(t, &ks, &r))?,
        apagodu_zeilberger: t.provenance.as_ref().and_then(proper_term_spec).map(|s| {
            apagodu_zeilberger_bound(&s)
        }),
    })
}
