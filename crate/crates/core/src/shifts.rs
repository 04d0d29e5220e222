//! Shift structure in y and in (x, y): dispersion sets, the shift-free /
//! shift-reduced / strongly-prime predicates, shift-equivalence classes, and
//! integer-linear structure with its mixed shift operator δ.

use num_traits::ToPrimitive;

use crate::algebra::factor::factor_y;
use crate::algebra::field::{rat_floor, rat_int, Field, Rat};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::unifactor::factor_rat_poly;
use crate::algebra::xy::{ratx_int, PolyX, PolyY, RatX, RatXY};
use crate::error::Error;

/// All h with `deg_y gcd(σ_y^h(p), q) > 0`, ascending.
///
/// Candidates come from a specialization of x that preserves both leading
/// coefficients: a genuine common factor keeps positive degree there, so no
/// h is lost. Over Q the irreducible factors pin h pairwise, because monic f
/// and g of degree d satisfy g = σ^h(f) only for d·h = (subleading of g) −
/// (subleading of f). Each candidate is then confirmed by an exact gcd over
/// Q(x).
pub fn dispersion_set(p: &PolyY, q: &PolyY) -> Result<Vec<i64>, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput("dispersion_set"));
    }
    let (dp, dq) = match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) if dp > 0 && dq > 0 => (dp, dq),
        _ => return Ok(Vec::new()),
    };

    // Specialize x, keeping degrees in y intact.
    let mut specialized = None;
    for idx in 0..128 {
        let a = if idx % 2 == 0 { (idx / 2) as i64 } else { -((idx / 2 + 1) as i64) };
        let a = rat_int(a);
        if let (Some(p0), Some(q0)) = (p.eval_x(&a), q.eval_x(&a)) {
            if p0.degree() == Some(dp) && q0.degree() == Some(dq) {
                specialized = Some((p0, q0));
                break;
            }
        }
    }
    let (p0, q0) = specialized.expect("no specialization point preserves degrees");

    let pf = factor_rat_poly(&p0).1;
    let qf = factor_rat_poly(&q0).1;
    let mut cands: Vec<i64> = Vec::new();
    for (f, _) in &pf {
        for (g, _) in &qf {
            if f.degree() != g.degree() {
                continue;
            }
            let d = f.degree().expect("nonconstant factor");
            let diff = g.coeff(d - 1) - f.coeff(d - 1);
            let h = diff / rat_int(d as i64);
            if h.is_integer() {
                if let Some(h) = h.to_integer().to_i64() {
                    if !cands.contains(&h) {
                        cands.push(h);
                    }
                }
            }
        }
    }
    let mut out: Vec<i64> = cands
        .into_iter()
        .filter(|&h| p.shift_y(h).gcd(q).degree() > Some(0))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// No two distinct roots (over the algebraic closure, counting factors up to
/// multiplicity) differ by a nonzero integer.
pub fn is_shift_free_y(p: &PolyY) -> Result<bool, Error> {
    if p.is_zero() {
        return Err(Error::ZeroInput("is_shift_free_y"));
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    // Multiplicities never matter here.
    let sf = {
        let d = p.derivative();
        if d.is_zero() {
            p.clone()
        } else {
            p.exact_div(&p.gcd(&d))
        }
    };
    let disp = dispersion_set(&sf, &sf)?;
    Ok(disp.iter().all(|&h| h == 0))
}

/// Numerator coprime with every integer y-shift of the denominator.
pub fn is_shift_reduced(k: &RatXY) -> Result<bool, Error> {
    if k.is_zero() {
        return Err(Error::ZeroInput("is_shift_reduced"));
    }
    Ok(dispersion_set(k.num(), k.den())?.is_empty())
}

/// `p` strongly prime with the kernel `u/v`: coprime with σ_y^{−i}(u) and
/// with σ_y^{i}(v) for every i ≥ 0.
pub fn is_strongly_prime_with(p: &PolyY, u: &PolyY, v: &PolyY) -> Result<bool, Error> {
    if p.is_zero() || u.is_zero() || v.is_zero() {
        return Err(Error::ZeroInput("is_strongly_prime_with"));
    }
    if !dispersion_set(u, v)?.is_empty() {
        return Err(Error::KernelNotShiftReduced);
    }
    // gcd(p, σ^{−i}(u)) ≠ 1 for i ≥ 0 means dispersion_set(p, u) meets Z≥0;
    // gcd(p, σ^{+i}(v)) ≠ 1 for i ≥ 0 means dispersion_set(p, v) meets Z≤0.
    if dispersion_set(p, u)?.into_iter().any(|h| h >= 0) {
        return Ok(false);
    }
    if dispersion_set(p, v)?.into_iter().any(|h| h <= 0) {
        return Ok(false);
    }
    Ok(true)
}

/// Is `p` monic and irreducible in Q(x)[y]?
pub fn is_irreducible_y(p: &PolyY) -> bool {
    if p.is_zero() || p.degree() == Some(0) || !p.lc().is_one() {
        return false;
    }
    let (_, parts) = factor_y(p);
    parts.len() == 1 && parts[0].1 == 1
}

/// Canonical representative of the σ_y-orbit of a monic polynomial and the
/// offset of `p` from it: `p = σ_y^offset(key)`.  Shift-equivalent inputs map
/// to the same key.
pub fn shift_class_key(p: &PolyY) -> (PolyY, i64) {
    let n = p.degree().expect("class key of zero polynomial");
    debug_assert!(p.lc().is_one());
    if n == 0 {
        return (p.clone(), 0);
    }
    // The subleading coefficient of σ_y^l(p) is coeff_{n−1} + n·l, so
    // anchor at the floor of the constant term of its polynomial part.
    let s = p.coeff(n - 1).div(&ratx_int(n as i64));
    let (polypart, _) = s.num().div_rem(s.den());
    let l = rat_floor(&polypart.coeff(0))
        .to_i64()
        .expect("shift offset exceeds i64");
    (p.shift_y(-l), l)
}

/// `Some(l)` with `q = σ_y^l(p)` when the monic irreducible inputs are
/// shift-equivalent in y.
pub fn shift_equivalent_y(p: &PolyY, q: &PolyY) -> Result<Option<i64>, Error> {
    if !is_irreducible_y(p) || !is_irreducible_y(q) {
        return Err(Error::NotIrreducible);
    }
    Ok(shift_equivalent_unchecked(p, q))
}

/// Same as [`shift_equivalent_y`] without the (expensive) irreducibility
/// guard; inputs must be monic of positive degree.
pub fn shift_equivalent_unchecked(p: &PolyY, q: &PolyY) -> Option<i64> {
    if p.degree() != q.degree() {
        return None;
    }
    let (kp, op) = shift_class_key(p);
    let (kq, oq) = shift_class_key(q);
    (kp == kq).then_some(oq - op)
}

/// σ_y-orbit grouping of a factor list.
#[derive(Clone, Debug)]
pub struct ShiftClassY {
    /// Canonical monic representative; every member is an integer shift of it.
    pub representative: PolyY,
    /// `(offset, multiplicity)` with `member = σ_y^offset(representative)`;
    /// offsets pairwise distinct, ascending.
    pub members: Vec<(i64, usize)>,
}

/// Group `(factor, multiplicity)` pairs into σ_y-equivalence classes.
/// Factors must be monic of positive degree and pairwise distinct.
pub fn shift_classes_y(factors: &[(PolyY, usize)]) -> Vec<ShiftClassY> {
    let mut classes: Vec<ShiftClassY> = Vec::new();
    for (f, m) in factors {
        let (key, off) = shift_class_key(f);
        match classes.iter_mut().find(|c| c.representative == key) {
            Some(c) => c.members.push((off, *m)),
            None => classes.push(ShiftClassY {
                representative: key,
                members: vec![(off, *m)],
            }),
        }
    }
    for c in &mut classes {
        c.members.sort_unstable();
    }
    classes
}

/// Multiplicity-preserving bijection of irreducible factors up to y-shift.
pub fn shift_related_y(b1: &PolyY, b2: &PolyY) -> Result<bool, Error> {
    if !is_shift_free_y(b1)? || !is_shift_free_y(b2)? {
        return Err(Error::NotShiftFree);
    }
    if b1.degree() != b2.degree() {
        return Ok(false);
    }
    let (_, parts1) = factor_y(b1);
    let mut parts2 = factor_y(b2).1;
    for (f, m) in &parts1 {
        let pos = parts2
            .iter()
            .position(|(g, mg)| mg == m && shift_equivalent_unchecked(f, g).is_some());
        match pos {
            Some(i) => {
                parts2.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(parts2.is_empty())
}

// ---------------------------------------------------------------------------
// Integer-linear structure.
// ---------------------------------------------------------------------------

/// An irreducible polynomial of the form `P(λx + μy)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerLinearForm {
    pub lambda: i64,
    /// μ ≥ 0, gcd(λ, μ) = 1.
    pub mu: i64,
    /// Monic in z = λx + μy; the input is a constant multiple of `P(z)`.
    pub p: Poly<Rat>,
}

impl IntegerLinearForm {
    /// `P(λx + μy + k)` as an element of Q(x)[y].
    pub fn substituted(&self, k: i64) -> PolyY {
        let z: PolyY = Poly::from_coeffs(vec![
            RatFun::from_poly(Poly::from_coeffs(vec![rat_int(k), rat_int(self.lambda)])),
            ratx_int(self.mu),
        ]);
        self.p.map_coeffs(|c| RatFun::constant(c.clone())).compose(&z)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Detect whether an irreducible polynomial is integer-linear; returns the
/// normalized direction (μ ≥ 0, gcd = 1, pure-x mapped to (1, 0)) and the
/// monic P.
pub fn detect_integer_linear(p: &PolyY) -> Result<Option<IntegerLinearForm>, Error> {
    if !is_irreducible_y(p) {
        return Err(Error::NotIrreducible);
    }
    Ok(detect_integer_linear_unchecked(p))
}

/// Direction candidate from the total-degree top form, then the exact
/// translation-invariance test `p(x+μ, y−λ) = p`.
pub fn detect_integer_linear_unchecked(p: &PolyY) -> Option<IntegerLinearForm> {
    let (_, numers) = p.clear_x_denominators();

    // Total degree and top form coefficients c[j] of x^j y^(n−j).
    let mut n = 0usize;
    for (i, c) in numers.iter().enumerate() {
        if let Some(j) = c.degree() {
            n = n.max(i + j);
        }
    }
    if n == 0 {
        return None;
    }
    let top = |j: usize| -> Rat {
        if j > n || n - j >= numers.len() {
            Rat::zero()
        } else {
            numers[n - j].coeff(j)
        }
    };

    let a0 = top(0); // coefficient of y^n
    let (lambda, mu) = if a0.is_zero() {
        // Only x^n may survive in the top form of P(λx) with μ = 0.
        if (1..n).any(|j| !top(j).is_zero()) || top(n).is_zero() {
            return None;
        }
        (1i64, 0i64)
    } else {
        let a1 = top(1);
        if a1.is_zero() {
            (0i64, 1i64)
        } else {
            // a1/(n·a0) = λ/μ in lowest terms.
            let ratio = a1 / (Rat::from_integer(n.into()) * &a0);
            let lam = ratio.numer().to_i64()?;
            let mu = ratio.denom().to_i64()?;
            (lam, mu)
        }
    };
    if gcd_i64(lambda, mu) != 1 {
        return None;
    }

    // Invariance under (x, y) -> (x+μ, y−λ) characterizes dependence on z.
    if p.shift_x(mu).shift_y(-lambda) != *p {
        return None;
    }

    // Recover P from a line: x = 0 for μ > 0, y = 0 for the pure-x case.
    let p_raw: Poly<Rat> = if mu > 0 {
        let at0 = PolyY::from_x_parts(&PolyX::one(), &numers)
            .eval_x(&Rat::zero())
            .expect("polynomial coefficients");
        let mu_r = rat_int(mu);
        Poly::from_coeffs(
            at0.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c / crate::algebra::field::rat_pow(&mu_r, k as i64))
                .collect(),
        )
    } else {
        numers[0].clone()
    };
    let form = IntegerLinearForm {
        lambda,
        mu,
        p: p_raw.monic().1,
    };
    // p and P(λx+μy) agree up to the leading unit.
    debug_assert_eq!(form.substituted(0).monic().1, p.monic().1);
    Some(form)
}

/// The mixed shift δ = σ_x^α σ_y^β advancing z = λx + μy by exactly 1:
/// αλ + βμ = 1 with 0 ≤ α < μ when μ ≥ 1, and β = 0 when μ = 0.
pub fn delta_op(lambda: i64, mu: i64) -> Result<(i64, i64), Error> {
    if mu < 0 || gcd_i64(lambda, mu) != 1 {
        return Err(Error::BadDirection);
    }
    if mu == 0 {
        // λ = ±1 here; σ_x^λ moves λx by 1.
        return Ok((lambda, 0));
    }
    if mu == 1 {
        return Ok((0, 1));
    }
    // α = λ^{−1} mod μ, taken in [0, μ).
    let (mut old_r, mut r) = (lambda.rem_euclid(mu), mu);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let alpha = (old_s % mu + mu) % mu;
    let beta = (1 - alpha * lambda) / mu;
    debug_assert_eq!(alpha * lambda + beta * mu, 1);
    Ok((alpha, beta))
}

/// One ~_{x,y} class of an integer-linear factorization: members are
/// `δ^k(P(λx+μy))` with signed multiplicities (negative = denominator).
#[derive(Clone, Debug)]
pub struct IntegerLinearFactor {
    pub form: IntegerLinearForm,
    /// `(k, m)` pairs, k ≥ 0 ascending with min k = 0, m ≠ 0.
    pub xi: Vec<(i64, i64)>,
}

impl IntegerLinearFactor {
    /// Π δ^k(P)^{m_k} as a rational function.
    pub fn reassemble(&self) -> RatXY {
        let mut acc: RatXY = RatFun::one();
        for &(k, m) in &self.xi {
            let base = RatFun::from_poly(self.form.substituted(k));
            let pw = if m >= 0 {
                RatFun::from_poly(base.num().pow(m as usize))
            } else {
                RatFun::new(PolyY::one(), base.num().pow((-m) as usize))
            };
            acc = acc.mul(&pw);
        }
        acc
    }
}

/// Shift-homogeneous (integer-linear) multiplicative decomposition.
#[derive(Clone, Debug)]
pub struct ShiftHomDecomposition {
    /// Constant multiplier (a constant embedded in Q(x)).
    pub constant: RatX,
    pub classes: Vec<IntegerLinearFactor>,
}

impl ShiftHomDecomposition {
    pub fn reassemble(&self) -> RatXY {
        let mut acc = RatFun::constant(self.constant.clone());
        for c in &self.classes {
            acc = acc.mul(&c.reassemble());
        }
        acc
    }
}

/// Canonical anchor of a monic P in z under z-translations, with the offset
/// of P from it: `P(z) = anchor(z + offset)`.
pub(crate) fn z_class_key(p: &Poly<Rat>) -> (Poly<Rat>, i64) {
    let n = p.degree().expect("zero class rep");
    if n == 0 {
        return (p.clone(), 0);
    }
    let s = p.coeff(n - 1) / Rat::from_integer(n.into());
    let l = rat_floor(&s).to_i64().expect("offset exceeds i64");
    (p.shift_int(-l), l)
}

/// Decompose a rational function whose irreducible factors are all
/// integer-linear into δ-power classes times a constant.
pub fn integer_linear_decomposition(r: &RatXY) -> Result<ShiftHomDecomposition, Error> {
    if r.is_zero() {
        return Err(Error::ZeroInput("integer_linear_decomposition"));
    }

    // (direction, z-anchor, z-offset, signed multiplicity) for every factor.
    let mut members: Vec<(i64, i64, Poly<Rat>, i64, i64)> = Vec::new();
    let mut collect_side = |poly: &PolyY, sign: i64| -> Result<(), Error> {
        let (unit, parts) = factor_y(poly);
        for (f, m) in parts {
            let form = detect_integer_linear_unchecked(&f)
                .ok_or_else(|| Error::NotIntegerLinear { factor: f.to_string() })?;
            let (anchor, off) = z_class_key(&form.p);
            members.push((form.lambda, form.mu, anchor, off, sign * m as i64));
        }
        // The y-leading unit is a rational function of x; factor it fully.
        for (side, s2) in [(unit.num(), sign), (unit.den(), -sign)] {
            let (_, xparts) = factor_rat_poly(side);
            for (f, m) in xparts {
                let (anchor, off) = z_class_key(&f);
                members.push((1, 0, anchor, off, s2 * m as i64));
            }
        }
        Ok(())
    };
    collect_side(r.num(), 1)?;
    collect_side(r.den(), -1)?;

    // Group by (λ, μ, anchor); merge duplicate offsets, then re-anchor so
    // the smallest δ-power is 0.
    let mut classes: Vec<IntegerLinearFactor> = Vec::new();
    for (lambda, mu, anchor, off, m) in members {
        let found = classes.iter_mut().find(|c| {
            c.form.lambda == lambda && c.form.mu == mu && c.form.p == anchor
        });
        match found {
            Some(c) => match c.xi.iter_mut().find(|(k, _)| *k == off) {
                Some(entry) => entry.1 += m,
                None => c.xi.push((off, m)),
            },
            None => classes.push(IntegerLinearFactor {
                form: IntegerLinearForm { lambda, mu, p: anchor },
                xi: vec![(off, m)],
            }),
        }
    }
    for c in &mut classes {
        c.xi.retain(|&(_, m)| m != 0);
        c.xi.sort_unstable();
        if let Some(&(kmin, _)) = c.xi.first() {
            if kmin != 0 {
                c.form.p = c.form.p.shift_int(kmin);
                for e in &mut c.xi {
                    e.0 -= kmin;
                }
            }
        }
    }
    classes.retain(|c| !c.xi.is_empty());
    classes.sort_by(|a, b| {
        (a.form.mu, a.form.lambda)
            .cmp(&(b.form.mu, b.form.lambda))
            .then_with(|| format!("{:?}", a.form.p).cmp(&format!("{:?}", b.form.p)))
    });

    // The constant is whatever the classes do not account for.
    let mut prod: RatXY = RatFun::one();
    for c in &classes {
        prod = prod.mul(&c.reassemble());
    }
    let q = r.div(&prod);
    let (constant, cd) = match (q.num().degree(), q.den().degree()) {
        (Some(0), Some(0)) => (q.num().coeff(0), q.den().coeff(0)),
        _ => unreachable!("non-constant residue after integer-linear split"),
    };
    Ok(ShiftHomDecomposition {
        constant: constant.div(&cd),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::xy::{bivar, polyx, ratx, yplus};

    fn linear_xy(cx: i64, cy: i64, c0: i64) -> PolyY {
        bivar(&[(cx, 1, 0), (cy, 0, 1), (c0, 0, 0)])
    }

    #[test]
    fn dispersion_set_examples() {
        assert_eq!(dispersion_set(&yplus(0), &yplus(3)).unwrap(), vec![3]);
        let a = linear_xy(1, 1, 0); // y + x
        let b = bivar(&[(2, 0, 1), (2, 1, 0), (1, 0, 0)]); // 2y + 2x + 1
        assert!(dispersion_set(&a, &b).unwrap().is_empty());
        let c = yplus(0).mul(&yplus(2));
        assert_eq!(dispersion_set(&c, &yplus(0)).unwrap(), vec![-2, 0]);
    }

    #[test]
    fn dispersion_matches_brute_force_window() {
        // (y+x)(y+x+4) against (y+x+1): h with σ^h(p) meeting q
        let p = linear_xy(1, 1, 0).mul(&linear_xy(1, 1, 4));
        let q = linear_xy(1, 1, 1);
        let got = dispersion_set(&p, &q).unwrap();
        let brute: Vec<i64> = (-12..=12)
            .filter(|&h| p.shift_y(h).gcd(&q).degree() > Some(0))
            .collect();
        assert_eq!(got, brute);
        assert_eq!(got, vec![-3, 1]);
    }

    #[test]
    fn shift_free_examples() {
        assert!(!is_shift_free_y(&yplus(0).mul(&yplus(1))).unwrap());
        let p = yplus(0).mul(&bivar(&[(2, 0, 1), (1, 0, 0)])); // y(2y+1)
        assert!(is_shift_free_y(&p).unwrap());
        let q = linear_xy(1, 1, 0).mul(&linear_xy(1, 1, 2));
        assert!(!is_shift_free_y(&q).unwrap());
        assert!(matches!(
            is_shift_free_y(&PolyY::zero()),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn shift_reduced_examples() {
        let k = RatFun::new(bivar(&[(1, 1, 0), (-1, 0, 1)]), yplus(1));
        assert!(is_shift_reduced(&k).unwrap());
        let k2 = RatFun::new(yplus(0), yplus(-1));
        assert!(!is_shift_reduced(&k2).unwrap());
        let k3 = RatFun::new(yplus(1).pow(2), yplus(0));
        assert!(!is_shift_reduced(&k3).unwrap());
    }

    #[test]
    fn strongly_prime_examples() {
        let u = bivar(&[(1, 1, 0), (-1, 0, 1)]); // x − y
        let v = yplus(1);
        assert!(!is_strongly_prime_with(&yplus(1), &u, &v).unwrap());
        assert!(!is_strongly_prime_with(&yplus(2), &u, &v).unwrap());
        assert!(is_strongly_prime_with(&yplus(0), &u, &v).unwrap());
        // A kernel that is not shift-reduced is rejected.
        assert!(matches!(
            is_strongly_prime_with(&yplus(0), &yplus(1), &yplus(0)),
            Err(Error::KernelNotShiftReduced)
        ));
    }

    #[test]
    fn shift_equivalence_and_class_keys() {
        let p = linear_xy(1, 1, 0);
        let q = linear_xy(1, 1, 5);
        assert_eq!(shift_equivalent_y(&p, &q).unwrap(), Some(5));
        assert_eq!(shift_equivalent_y(&yplus(0), &p).unwrap(), None);
        assert!(matches!(
            shift_equivalent_y(&yplus(0).pow(2), &yplus(1)),
            Err(Error::NotIrreducible)
        ));
        // keys are translation-invariant
        let (k1, o1) = shift_class_key(&p.shift_y(7));
        let (k2, o2) = shift_class_key(&p);
        assert_eq!(k1, k2);
        assert_eq!(o1 - o2, 7);
    }

    #[test]
    fn class_key_handles_higher_degree_and_fractions() {
        // (y + x/3)(y + x/3 + 1) has subleading with fractional parts
        let f = Poly::from_coeffs(vec![ratx(polyx(&[0, 1])).div(&ratx_int(3)), ratx_int(1)]);
        let g = f.mul(&f.shift_y(1));
        let (key, off) = shift_class_key(&g);
        let (key2, off2) = shift_class_key(&g.shift_y(-4));
        assert_eq!(key, key2);
        assert_eq!(off - off2, 4);
    }

    #[test]
    fn shift_related_examples() {
        let b1 = linear_xy(1, 1, 0).mul(&linear_xy(2, 1, 0));
        let b2 = linear_xy(1, 1, 3).mul(&linear_xy(2, 1, -1));
        assert!(shift_related_y(&b1, &b2).unwrap());
        assert!(!shift_related_y(&linear_xy(1, 1, 0), &linear_xy(2, 1, 0)).unwrap());
        let b = linear_xy(1, 1, 2);
        assert!(shift_related_y(&b, &b).unwrap());
        // multiplicities must match under the bijection
        let c1 = yplus(0).pow(2).mul(&bivar(&[(2, 0, 1), (1, 0, 0)]));
        let c2 = yplus(3).mul(&bivar(&[(2, 0, 1), (5, 0, 0)]).pow(2));
        assert!(!shift_related_y(&c1, &c2).unwrap());
        assert!(matches!(
            shift_related_y(&yplus(0).mul(&yplus(1)), &yplus(0)),
            Err(Error::NotShiftFree)
        ));
    }

    #[test]
    fn detect_integer_linear_examples() {
        // x + 2y + 3 -> (1, 2, z + 3)
        let form = detect_integer_linear(&linear_xy(1, 2, 3).monic().1)
            .unwrap()
            .unwrap();
        assert_eq!((form.lambda, form.mu), (1, 2));
        assert_eq!(form.p, polyx(&[3, 1]));

        // x^2 + y is not integer-linear
        let p = bivar(&[(1, 2, 0), (1, 0, 1)]);
        assert!(detect_integer_linear(&p).unwrap().is_none());

        // 2x − 3y + 1 -> direction (−2, 3); monic P is z − 1 since
        // 2x − 3y + 1 = −((−2x+3y) − 1)
        let form = detect_integer_linear(&linear_xy(2, -3, 1).monic().1)
            .unwrap()
            .unwrap();
        assert_eq!((form.lambda, form.mu), (-2, 3));
        assert_eq!(form.p, polyx(&[-1, 1]));

        // pure directions
        let fy = detect_integer_linear(&yplus(4)).unwrap().unwrap();
        assert_eq!((fy.lambda, fy.mu), (0, 1));
        assert_eq!(fy.p, polyx(&[4, 1]));

        assert!(matches!(
            detect_integer_linear(&yplus(0).pow(2)),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn detect_recovers_random_composites() {
        // P(z) = z^2 + 3z + 5 at (λ, μ) = (3, 2)
        let p_z = polyx(&[5, 3, 1]);
        let form = IntegerLinearForm { lambda: 3, mu: 2, p: p_z.clone() };
        let f = form.substituted(0).monic().1;
        let got = detect_integer_linear_unchecked(&f).unwrap();
        assert_eq!((got.lambda, got.mu), (3, 2));
        assert_eq!(got.p, p_z);
        // negative λ
        let form = IntegerLinearForm { lambda: -2, mu: 5, p: p_z.clone() };
        let f = form.substituted(0).monic().1;
        let got = detect_integer_linear_unchecked(&f).unwrap();
        assert_eq!((got.lambda, got.mu), (-2, 5));
        assert_eq!(got.p, p_z);
    }

    #[test]
    fn delta_op_examples() {
        assert_eq!(delta_op(1, 2).unwrap(), (1, 0));
        assert_eq!(delta_op(0, 1).unwrap(), (0, 1));
        assert_eq!(delta_op(-1, 3).unwrap(), (2, 1));
        assert!(matches!(delta_op(2, 4), Err(Error::BadDirection)));
        assert!(matches!(delta_op(1, -2), Err(Error::BadDirection)));
    }

    #[test]
    fn delta_advances_z_by_one() {
        for &(lambda, mu) in &[(1i64, 2i64), (-1, 3), (3, 2), (1, 0), (-1, 0), (0, 1), (5, 3)] {
            let (alpha, beta) = delta_op(lambda, mu).unwrap();
            let p_z = polyx(&[1, -2, 1, 1]); // arbitrary P
            let form = IntegerLinearForm { lambda, mu, p: p_z };
            let moved = form.substituted(0).shift_x(alpha).shift_y(beta);
            assert_eq!(moved, form.substituted(1));
        }
    }

    #[test]
    fn integer_linear_decomposition_examples() {
        // (x+2y)(x+2y+3)^2: one class, P = z, ξ = δ^0 + 2δ^3
        let f = linear_xy(1, 2, 0).mul(&linear_xy(1, 2, 3).pow(2));
        let d = integer_linear_decomposition(&RatFun::from_poly(f.clone())).unwrap();
        assert_eq!(d.classes.len(), 1);
        let c = &d.classes[0];
        assert_eq!((c.form.lambda, c.form.mu), (1, 2));
        assert_eq!(c.form.p, polyx(&[0, 1]));
        assert_eq!(c.xi, vec![(0, 1), (3, 2)]);
        assert_eq!(d.reassemble(), RatFun::from_poly(f));

        // (x+y)(x−y): two classes
        let g = linear_xy(1, 1, 0).mul(&linear_xy(1, -1, 0));
        let d = integer_linear_decomposition(&RatFun::from_poly(g.clone())).unwrap();
        assert_eq!(d.classes.len(), 2);
        assert_eq!(d.reassemble(), RatFun::from_poly(g));

        // constant
        let five: RatXY = RatFun::constant(ratx_int(5));
        let d = integer_linear_decomposition(&five).unwrap();
        assert!(d.classes.is_empty());
        assert_eq!(d.reassemble(), five);
    }

    #[test]
    fn decomposition_with_denominator_and_x_only_factors() {
        // (x+1)(x+2y+4) / (x+2y+1)^2: x-only class plus one mixed class with
        // both signs
        let num = linear_xy(1, 2, 4).mul(&Poly::constant(ratx(polyx(&[1, 1]))));
        let den = linear_xy(1, 2, 1).pow(2);
        let r = RatFun::new(num, den);
        let d = integer_linear_decomposition(&r).unwrap();
        assert_eq!(d.reassemble(), r);
        assert_eq!(d.classes.len(), 2);
        let mixed = d.classes.iter().find(|c| c.form.mu == 2).unwrap();
        assert_eq!(mixed.xi, vec![(0, -2), (3, 1)]);

        // a non integer-linear factor is reported by name
        let bad = RatFun::from_poly(bivar(&[(1, 2, 0), (1, 0, 2)])); // x^2 + y^2
        assert!(matches!(
            integer_linear_decomposition(&bad),
            Err(Error::NotIntegerLinear { .. })
        ));
    }
}
