//! Additive decomposition of a term relative to a fixed kernel K = u/v:
//! every shell S splits as S = K·σ_y(g) − g + a/b + q/v where b is monic,
//! shift-free, strongly prime with K, deg_y a < deg_y b, and q lies in the
//! standard complement 𝕎_K of the image of φ_K(p) = u·σ_y(p) − v·p.
//! The term S·H is then Δ_y(g·H) + (a/b + q/v)·H, and it is summable in y
//! exactly when the residual a/b + q/v vanishes.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use crate::algebra::factor::factor_y;
use crate::algebra::field::Field;
use crate::algebra::partfrac::partial_fractions_y;
use crate::algebra::ratfun::RatFun;
use crate::algebra::xy::{PolyY, RatX, RatXY};
use crate::error::Error;
use crate::rnf::{kernel_shell_of_term, KernelShell};
use crate::shifts::{is_shift_free_y, is_strongly_prime_with, shift_class_key};
use crate::term::HyperTerm;

/// φ_K(p) = u·σ_y(p) − v·p.
pub fn phi_k(p: &PolyY, ks: &KernelShell) -> PolyY {
    ks.u.mul(&p.shift_y(1)).sub(&ks.v.mul(p))
}

/// Echelon form of the images φ_K(y^d), giving the attainable y-degrees and,
/// as complement, the monomial basis of 𝕎_K.
///
/// Degree bookkeeping: with e = max(deg u, deg v), deg φ_K(y^d) = d + e
/// unless deg u = deg v and lc u = lc v, in which case the top coefficient is
/// d·lc(u) + lc(u−v) at degree d + deg u − 1 and can vanish for at most one
/// d. Inserting images up to cap + e + 2 (and past that single cancellation
/// point) therefore decides attainability for every degree ≤ cap.
pub struct ComplementBasis {
    kernel: KernelShell,
    /// lead degree → (reduced image, preimage w with φ_K(w) = image).
    rows: BTreeMap<usize, (PolyY, PolyY)>,
    /// Degrees ≤ cap with no image of that degree, ascending; complete.
    unattainable: Vec<usize>,
    cap: usize,
}

fn lc_ratio_root(ks: &KernelShell) -> Option<usize> {
    let (du, dv) = (ks.u.degree()?, ks.v.degree()?);
    if du != dv || ks.u.lc() != ks.v.lc() {
        return None;
    }
    let diff = ks.u.sub(&ks.v);
    if diff.is_zero() || diff.degree() != du.checked_sub(1) {
        return None;
    }
    // d·lc(u) + lc(diff) = 0
    let d = diff.lc().neg().div(ks.u.lc());
    let c = d.as_polynomial()?;
    if c.degree() > Some(0) {
        return None;
    }
    let val = c.coeff(0);
    if !val.is_integer() || val.is_negative() {
        return None;
    }
    val.to_integer().to_usize()
}

impl ComplementBasis {
    pub fn new(ks: &KernelShell, cap: usize) -> ComplementBasis {
        let e = ks.u.degree().unwrap_or(0).max(ks.v.degree().unwrap_or(0));
        let mut insert_cap = cap + e + 2;
        if let Some(dstar) = lc_ratio_root(ks) {
            insert_cap = insert_cap.max(dstar + e + 2);
        }
        let mut rows: BTreeMap<usize, (PolyY, PolyY)> = BTreeMap::new();
        for d in 0..=insert_cap {
            let mut w = PolyY::monomial(RatX::one(), d);
            let mut img = phi_k(&w, ks);
            while let Some(deg) = img.degree() {
                match rows.get(&deg) {
                    Some((row_img, row_w)) => {
                        let c = img.lc().div(row_img.lc());
                        img = img.sub(&row_img.scale(&c));
                        w = w.sub(&row_w.scale(&c));
                        debug_assert!(img.degree() != Some(deg));
                    }
                    None => {
                        rows.insert(deg, (img, w));
                        break;
                    }
                }
            }
        }
        let unattainable: Vec<usize> =
            (0..=cap).filter(|d| !rows.contains_key(d)).collect();
        ComplementBasis {
            kernel: ks.clone(),
            rows,
            unattainable,
            cap,
        }
    }

    /// Basis of the full complement space.
    ///
    /// Image degrees of φ_K are d + e except for a single drop at the
    /// lc-ratio root, so nothing above e + root can be missed; a cap just
    /// past that point makes `basis_degrees` exhaustive and `dim` exact.
    pub fn full(ks: &KernelShell) -> ComplementBasis {
        let e = ks.u.degree().unwrap_or(0).max(ks.v.degree().unwrap_or(0));
        ComplementBasis::new(ks, e + lc_ratio_root(ks).unwrap_or(0) + 1)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Monomial degrees spanning 𝕎_K.
    pub fn basis_degrees(&self) -> &[usize] {
        &self.unattainable
    }

    pub fn dim(&self) -> usize {
        self.unattainable.len()
    }

    /// Grow the decided range to at least `need`.
    pub fn ensure(&mut self, need: usize) {
        if need > self.cap {
            *self = ComplementBasis::new(&self.kernel.clone(), need + 8);
        }
    }

    /// Split p = φ_K(w) + q with q supported on the 𝕎_K monomials.
    pub fn reduce(&mut self, p: &PolyY) -> (PolyY, PolyY) {
        if let Some(d) = p.degree() {
            self.ensure(d);
        }
        let mut rem = p.clone();
        let mut w = PolyY::zero();
        let mut q = PolyY::zero();
        while let Some(deg) = rem.degree() {
            match self.rows.get(&deg) {
                Some((row_img, row_w)) => {
                    let c = rem.lc().div(row_img.lc());
                    rem = rem.sub(&row_img.scale(&c));
                    w = w.add(&row_w.scale(&c));
                }
                None => {
                    q = q.add(&PolyY::monomial(rem.lc().clone(), deg));
                    rem = rem.sub(&PolyY::monomial(rem.lc().clone(), deg));
                }
            }
        }
        debug_assert_eq!(phi_k(&w, &self.kernel).add(&q), *p);
        (w, q)
    }
}

/// Standalone construction per the module interface.
pub fn complement_basis(ks: &KernelShell, cap: usize) -> ComplementBasis {
    ComplementBasis::new(ks, cap)
}

/// p = φ_K(w) + q with unique q in the standard complement.
pub fn polynomial_reduce(p: &PolyY, ks: &KernelShell) -> (PolyY, PolyY) {
    let cap = p.degree().unwrap_or(0) + 4;
    ComplementBasis::new(ks, cap).reduce(p)
}

// ---------------------------------------------------------------------------
// Alignment of denominator shift classes.
// ---------------------------------------------------------------------------

/// Per-kernel bookkeeping of which y-offset each denominator shift class is
/// reduced to. Shared across the residuals of σ_x^i(T) so all significant
/// denominators end up dividing one shift-free common denominator.
pub struct AlignmentRegistry {
    u_classes: Vec<(PolyY, Vec<i64>)>,
    v_classes: Vec<(PolyY, Vec<i64>)>,
    targets: Vec<(PolyY, i64)>,
    sealed: bool,
}

impl AlignmentRegistry {
    pub fn new(ks: &KernelShell) -> AlignmentRegistry {
        let collect = |p: &PolyY| -> Vec<(PolyY, Vec<i64>)> {
            let mut out: Vec<(PolyY, Vec<i64>)> = Vec::new();
            for (f, _) in factor_y(p).1 {
                let (key, off) = shift_class_key(&f);
                match out.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, offs)) => offs.push(off),
                    None => out.push((key, vec![off])),
                }
            }
            out
        };
        AlignmentRegistry {
            u_classes: collect(&ks.u),
            v_classes: collect(&ks.v),
            targets: Vec::new(),
            sealed: false,
        }
    }

    fn seal(&mut self) {
        self.sealed = true;
    }

    /// Offsets t admissible for this class: strictly above every u-member
    /// and strictly below every v-member (never both constrained, since the
    /// kernel is shift-reduced).
    fn admissible(&self, key: &PolyY, t: i64) -> bool {
        let u_ok = self
            .u_classes
            .iter()
            .find(|(k, _)| k == key)
            .map_or(true, |(_, offs)| offs.iter().all(|&w| w < t));
        let v_ok = self
            .v_classes
            .iter()
            .find(|(k, _)| k == key)
            .map_or(true, |(_, offs)| offs.iter().all(|&w| w > t));
        u_ok && v_ok
    }

    fn lookup(&self, key: &PolyY) -> Option<i64> {
        self.targets.iter().find(|(k, _)| k == key).map(|(_, t)| *t)
    }

    /// Pin an externally chosen target (alignment to a given denominator).
    fn pin(&mut self, key: PolyY, t: i64) -> Result<(), Error> {
        if !self.admissible(&key, t) {
            return Err(Error::NotAlignable);
        }
        match self.lookup(&key) {
            Some(existing) if existing != t => Err(Error::NotAlignable),
            Some(_) => Ok(()),
            None => {
                self.targets.push((key, t));
                Ok(())
            }
        }
    }

    /// Choose and remember the reduction target for a class: the admissible
    /// present member closest to offset 0 (ties toward negative), or failing
    /// that the admissible integer closest to 0.
    fn choose(&mut self, key: &PolyY, present: &[i64]) -> Result<i64, Error> {
        if let Some(t) = self.lookup(key) {
            return Ok(t);
        }
        if self.sealed {
            return Err(Error::NotAlignable);
        }
        let mut cands: Vec<i64> = present
            .iter()
            .copied()
            .filter(|&o| self.admissible(key, o))
            .collect();
        cands.sort_by_key(|&o| (o.abs(), o > 0));
        let t = match cands.first() {
            Some(&t) => t,
            None => {
                let max_u = self
                    .u_classes
                    .iter()
                    .find(|(k, _)| k == key)
                    .and_then(|(_, offs)| offs.iter().copied().max());
                let min_v = self
                    .v_classes
                    .iter()
                    .find(|(k, _)| k == key)
                    .and_then(|(_, offs)| offs.iter().copied().min());
                match (max_u, min_v) {
                    (Some(m), None) => {
                        if m + 1 <= 0 {
                            0
                        } else {
                            m + 1
                        }
                    }
                    (None, Some(m)) => {
                        if m - 1 >= 0 {
                            0
                        } else {
                            m - 1
                        }
                    }
                    (None, None) => 0,
                    (Some(_), Some(_)) => unreachable!("kernel not shift-reduced"),
                }
            }
        };
        debug_assert!(self.admissible(key, t));
        self.targets.push((key.clone(), t));
        Ok(t)
    }
}

// ---------------------------------------------------------------------------
// Residual forms.
// ---------------------------------------------------------------------------

/// The non-summable remainder r = a/b + q/v of a shell reduction.
#[derive(Clone, Debug)]
pub struct ResidualForm {
    pub a: PolyY,
    pub b: PolyY,
    pub q: PolyY,
    pub kernel: KernelShell,
}

impl ResidualForm {
    pub fn zero(ks: &KernelShell) -> ResidualForm {
        ResidualForm {
            a: PolyY::zero(),
            b: PolyY::one(),
            q: PolyY::zero(),
            kernel: ks.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.q.is_zero()
    }

    /// a/b + q/v as a rational function.
    pub fn value(&self) -> RatXY {
        RatFun::new(self.a.clone(), self.b.clone())
            .add(&RatFun::new(self.q.clone(), self.kernel.v.clone()))
    }

    /// The full invariant suite; used by tests and randomized checks.
    pub fn validate(&self) -> Result<(), Error> {
        if !self.b.lc().is_one() {
            return Err(Error::BadTerm("significant denominator not monic".into()));
        }
        if !self.a.is_zero() && self.a.degree() >= self.b.degree() {
            return Err(Error::BadTerm("numerator degree too large".into()));
        }
        if !self.a.gcd(&self.b).is_one() {
            return Err(Error::BadTerm("residual fraction not reduced".into()));
        }
        if self.b.degree() > Some(0) {
            if !is_shift_free_y(&self.b)? {
                return Err(Error::NotShiftFree);
            }
            if !is_strongly_prime_with(&self.b, &self.kernel.u, &self.kernel.v)? {
                return Err(Error::BadTerm(
                    "significant denominator not strongly prime".into(),
                ));
            }
        }
        if !self.q.is_zero() {
            let basis = ComplementBasis::new(&self.kernel, self.q.degree().unwrap_or(0) + 2);
            let degs = basis.basis_degrees().to_vec();
            for (d, c) in self.q.coeffs().iter().enumerate() {
                if !c.is_zero() && !degs.contains(&d) {
                    return Err(Error::BadTerm("q outside the standard complement".into()));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The reduction engine.
// ---------------------------------------------------------------------------

/// Rewrite `value` as K·σ_y(g) − g + a/b + q/v.
///
/// After a partial-fraction split, each piece is handled by one rule:
/// denominators dividing v join q/v directly; denominators dividing
/// σ_y^{−1}(u) are traded for v-denominators (c/σ_y^{−1}(u) = σ_y(c)/v
/// modulo the image of Δ_K); every other denominator class is walked to its
/// registry target: one down-step replaces a/σ_y^m(b) by
/// σ_y^{−1}(v·a)/(σ_y^{−1}(u)·σ_y^{m−1}(b)), one up-step by
/// u·σ_y(a)/(v·σ_y^{m+1}(b)); the polynomial part and the v-bucket are
/// finished by one polynomial reduction. Every step's certificate
/// contribution is accumulated in g, and the defining identity is asserted
/// exactly before returning.
pub(crate) fn reduce_value(
    value: &RatXY,
    ks: &KernelShell,
    reg: &mut AlignmentRegistry,
    basis: &mut ComplementBasis,
) -> Result<(RatXY, ResidualForm), Error> {
    // Pin targets for every denominator class of the input up front, so the
    // choice sees all present members.
    {
        let mut classes: Vec<(PolyY, Vec<i64>)> = Vec::new();
        for (f, _) in factor_y(value.den()).1 {
            let (key, off) = shift_class_key(&f);
            match classes.iter_mut().find(|(k, _)| *k == key) {
                Some((_, offs)) => offs.push(off),
                None => classes.push((key, vec![off])),
            }
        }
        for (key, present) in classes {
            if reg.lookup(&key).is_none() {
                // In sealed mode unknown classes surface later, and only if
                // a piece actually needs routing.
                if !reg.sealed {
                    reg.choose(&key, &present)?;
                }
            }
        }
    }

    let sigma_inv_u = ks.u.shift_y(-1);
    let mut g: RatXY = RatFun::zero();
    let mut poly_bucket = PolyY::zero();
    let mut v_bucket = PolyY::zero();
    let mut final_fraction: RatXY = RatFun::zero();

    // All pieces moved within one round are summed into a single carry
    // before the next partial-fraction pass; queueing them separately
    // branches on multiplicities and the queue grows exponentially in the
    // move distance.
    let mut carry = value.clone();
    let mut steps = 0usize;
    let trace = std::env::var("HYPERCT_TRACE").is_ok();
    while !carry.is_zero() {
        steps += 1;
        assert!(steps < 20_000, "shell reduction did not terminate; stuck near {carry}");
        let t0 = std::time::Instant::now();
        let pf = partial_fractions_y(&carry);
        if trace {
            eprintln!(
                "round {steps}: den deg {:?}, pf {} pieces in {} ms",
                carry.den().degree(),
                pf.terms.len(),
                t0.elapsed().as_millis()
            );
        }
        carry = RatFun::zero();
        poly_bucket = poly_bucket.add(&pf.poly);
        for piece in pf.terms {
            let dpow = piece.base.pow(piece.power);
            if dpow.divides(&ks.v) {
                v_bucket = v_bucket.add(&piece.num.mul(&ks.v.exact_div(&dpow)));
                continue;
            }
            if dpow.divides(&sigma_inv_u) {
                let cof = sigma_inv_u.exact_div(&dpow);
                v_bucket = v_bucket.add(&piece.num.mul(&cof).shift_y(1));
                g = g.sub(&RatFun::new(piece.num, dpow));
                continue;
            }
            let (key, off) = shift_class_key(&piece.base);
            let target = reg.choose(&key, &[off])?;
            let m = off - target;
            if m == 0 {
                final_fraction = final_fraction.add(&RatFun::new(piece.num, dpow));
            } else if m > 0 {
                let step = RatFun::new(
                    ks.v.mul(&piece.num).shift_y(-1),
                    sigma_inv_u.mul(&dpow.shift_y(-1)),
                );
                g = g.add(&step);
                carry = carry.add(&step);
            } else {
                g = g.sub(&RatFun::new(piece.num.clone(), dpow.clone()));
                let step = RatFun::new(
                    ks.u.mul(&piece.num.shift_y(1)),
                    ks.v.mul(&dpow.shift_y(1)),
                );
                carry = carry.add(&step);
            }
        }
    }

    let n = poly_bucket.mul(&ks.v).add(&v_bucket);
    let (w, q) = basis.reduce(&n);
    g = g.add(&RatFun::from_poly(w));

    let r = ResidualForm {
        a: final_fraction.num().clone(),
        b: final_fraction.den().clone(),
        q,
        kernel: ks.clone(),
    };
    // The defining identity, checked exactly on every call.
    let recombined = ks
        .k
        .mul(&g.shift_y(1))
        .sub(&g)
        .add(&r.value());
    assert_eq!(recombined, *value, "reduction identity violated");
    Ok((g, r))
}

/// Reduce a shell: S = K·σ_y(g) − g + r with r in residual form, so that
/// S·H = Δ_y(g·H) + r·H.
pub fn shell_reduce(s: &RatXY, ks: &KernelShell) -> Result<(RatXY, ResidualForm), Error> {
    let mut reg = AlignmentRegistry::new(ks);
    let mut basis = ComplementBasis::new(ks, 8);
    reduce_value(s, ks, &mut reg, &mut basis)
}

/// Outcome of the summability decision.
pub enum Summability {
    /// T = Δ_y(g·H) exactly.
    Summable { g: RatXY, kernel: KernelShell },
    /// The nonzero residual r with T = Δ_y(g·H) + r·H.
    NotSummable { g: RatXY, r: ResidualForm },
}

/// A term is summable in y iff its shell reduces with residual zero.
pub fn is_summable(t: &HyperTerm) -> Result<Summability, Error> {
    let ks = kernel_shell_of_term(t)?;
    let (g, r) = shell_reduce(&ks.s.clone(), &ks)?;
    if r.is_zero() {
        Ok(Summability::Summable { g, kernel: ks })
    } else {
        Ok(Summability::NotSummable { g, r })
    }
}

/// Move the fraction part of a residual form so its significant denominator
/// divides `target` (shift-free and strongly prime with the kernel), keeping
/// the value equal modulo the image of Δ_K. Returns the certificate of the
/// difference together with the aligned form.
pub fn align_residual(
    r: &ResidualForm,
    target: &PolyY,
) -> Result<(RatXY, ResidualForm), Error> {
    let ks = &r.kernel;
    if target.degree() > Some(0)
        && (!is_shift_free_y(target)?
            || !is_strongly_prime_with(target, &ks.u, &ks.v)?)
    {
        return Err(Error::NotAlignable);
    }
    let mut reg = AlignmentRegistry::new(ks);
    for (f, _) in factor_y(target).1 {
        let (key, off) = shift_class_key(&f);
        reg.pin(key, off)?;
    }
    reg.seal();
    let mut basis = ComplementBasis::new(ks, 8);
    let fraction = RatFun::new(r.a.clone(), r.b.clone());
    let (g, mut aligned) = reduce_value(&fraction, ks, &mut reg, &mut basis)?;
    aligned.q = aligned.q.add(&r.q);
    if !aligned.b.divides(target) && aligned.b.degree() > Some(0) {
        return Err(Error::NotAlignable);
    }
    Ok((g, aligned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;
    use crate::algebra::xy::{bivar, polyx, ratx, ratx_int, yplus};
    use crate::rng::XorShift;
    use crate::rnf::{
        move_denominator_factor, move_numerator_factor, rnf,
    };
    use crate::shifts::shift_related_y;
    use crate::term::{ratxy_pow, shift_quotients, LinArg, TermAtom, TermExpr};

    fn binomial_kernel() -> KernelShell {
        KernelShell::from_parts(
            bivar(&[(1, 1, 0), (-1, 0, 1)]),
            yplus(1),
            RatFun::one(),
        )
        .unwrap()
    }

    fn factorial_kernel() -> KernelShell {
        KernelShell::from_parts(yplus(1), PolyY::one(), RatFun::one()).unwrap()
    }

    fn trivial_kernel() -> KernelShell {
        KernelShell::from_parts(PolyY::one(), PolyY::one(), RatFun::one()).unwrap()
    }

    #[test]
    fn phi_k_examples() {
        // K=(x−y)/(y+1): φ(1) = u − v = x − 2y − 1
        let k = binomial_kernel();
        assert_eq!(
            phi_k(&PolyY::one(), &k),
            bivar(&[(1, 1, 0), (-2, 0, 1), (-1, 0, 0)])
        );
        // K=y+1: φ(1) = y
        assert_eq!(phi_k(&PolyY::one(), &factorial_kernel()), yplus(0));
        // K=1: φ(y) = 1
        assert_eq!(phi_k(&yplus(0), &trivial_kernel()), PolyY::one());
    }

    #[test]
    fn complement_basis_examples() {
        let b = complement_basis(&binomial_kernel(), 6);
        assert_eq!(b.basis_degrees(), &[0]);
        let b = complement_basis(&factorial_kernel(), 6);
        assert_eq!(b.basis_degrees(), &[0]);
        let b = complement_basis(&trivial_kernel(), 6);
        assert!(b.basis_degrees().is_empty());
    }

    #[test]
    fn complement_basis_with_leading_cancellation() {
        // u = y^2−3y+1, v = y^2: equal degree and leading coefficient, and
        // the top coefficient of φ(y^d) is d − 3, vanishing at d = 3. The
        // echelon re-inserts that image at degree 0, so the only gap in the
        // attainable degrees is 4.
        let u = PolyY::from_coeffs(vec![ratx_int(1), ratx_int(-3), ratx_int(1)]);
        let v = PolyY::monomial(RatX::one(), 2);
        let ks = KernelShell::from_parts(u, v, RatFun::one()).unwrap();
        let mut basis = complement_basis(&ks, 8);
        assert_eq!(basis.basis_degrees(), &[4]);
        for d in 0..=8usize {
            let m = PolyY::monomial(RatX::one(), d);
            let (w, q) = basis.reduce(&m);
            assert_eq!(phi_k(&w, &ks).add(&q), m);
        }
    }

    #[test]
    fn polynomial_reduce_examples() {
        // K=y+1, p=y → (1, 0)
        let (w, q) = polynomial_reduce(&yplus(0), &factorial_kernel());
        assert_eq!(w, PolyY::one());
        assert!(q.is_zero());

        // K=(x−y)/(y+1), p=y+1 → (−1/2, (x+1)/2)
        let (w, q) = polynomial_reduce(&yplus(1), &binomial_kernel());
        assert_eq!(w, PolyY::constant(RatFun::constant(rat(-1, 2))));
        assert_eq!(q, PolyY::constant(RatFun::new(polyx(&[1, 1]), polyx(&[2]))));

        let (w, q) = polynomial_reduce(&PolyY::zero(), &binomial_kernel());
        assert!(w.is_zero() && q.is_zero());
    }

    #[test]
    fn shell_reduce_spec_examples() {
        // S=1, K=(x−y)/(y+1): r = (x+1)/(2(y+1)), reached with g = −1/2
        let ks = binomial_kernel();
        let (g, r) = shell_reduce(&RatFun::one(), &ks).unwrap();
        assert_eq!(g, RatFun::constant(RatFun::constant(rat(-1, 2))));
        assert!(r.a.is_zero());
        assert_eq!(r.b, PolyY::one());
        assert_eq!(r.q, PolyY::constant(RatFun::new(polyx(&[1, 1]), polyx(&[2]))));
        assert_eq!(
            r.value(),
            RatFun::new(
                PolyY::constant(ratx(polyx(&[1, 1]))),
                yplus(1).scale(&ratx_int(2))
            )
        );
        r.validate().unwrap();

        // S=y, K=y+1: g=1, r=0 (y·y! = Δ_y(y!))
        let ks = factorial_kernel();
        let (g, r) = shell_reduce(&RatFun::from_poly(yplus(0)), &ks).unwrap();
        assert!(g.is_one());
        assert!(r.is_zero());

        // S=(x+1)/(x+1−y), K=(x−y)/(y+1): r = (x+1)/(y+1) via one u-rule
        let ks = binomial_kernel();
        let s: RatXY = RatFun::new(
            PolyY::constant(ratx(polyx(&[1, 1]))),
            bivar(&[(1, 1, 0), (1, 0, 0), (-1, 0, 1)]),
        );
        let (_, r) = shell_reduce(&s, &ks).unwrap();
        assert!(r.a.is_zero());
        assert_eq!(r.q, PolyY::constant(ratx(polyx(&[1, 1]))));
        r.validate().unwrap();
    }

    #[test]
    fn summability_examples() {
        // y·y! is summable with g·H = y!
        let t = shift_quotients(&TermExpr::new(vec![
            (TermAtom::Rational(RatFun::from_poly(yplus(0))), 1),
            (TermAtom::Factorial(LinArg::of_ints(0, 1, 0)), 1),
        ]))
        .unwrap();
        match is_summable(&t).unwrap() {
            Summability::Summable { g, .. } => assert!(g.is_one()),
            Summability::NotSummable { .. } => panic!("y·y! must be summable"),
        }

        // Binomial(x, y) is not
        let t = shift_quotients(&TermExpr::new(vec![(
            TermAtom::Binomial(LinArg::of_ints(1, 0, 0), LinArg::of_ints(0, 1, 0)),
            1,
        )]))
        .unwrap();
        match is_summable(&t).unwrap() {
            Summability::Summable { .. } => panic!("binomial is not summable"),
            Summability::NotSummable { r, .. } => {
                assert!(!r.is_zero());
                assert_eq!(
                    r.value(),
                    RatFun::new(
                        PolyY::constant(ratx(polyx(&[1, 1]))),
                        yplus(1).scale(&ratx_int(2))
                    )
                );
            }
        }
    }

    #[test]
    fn constructed_telescoped_terms_are_summable() {
        // T = Δ_y(R·H) for rational R and H with kernel K: the shell of T
        // w.r.t. the same H is S = K·σ_y(R) − R, which must reduce to 0.
        let kernels = [binomial_kernel(), factorial_kernel()];
        let rats: [RatXY; 3] = [
            RatFun::from_poly(yplus(2)),
            RatFun::new(yplus(0), yplus(3)),
            RatFun::new(bivar(&[(1, 1, 0), (1, 0, 1), (1, 0, 0)]), yplus(-2)),
        ];
        for ks in &kernels {
            for r in &rats {
                let s = ks.k.mul(&r.shift_y(1)).sub(r);
                if s.is_zero() {
                    continue;
                }
                let (_, res) = shell_reduce(&s, ks).unwrap();
                assert!(res.is_zero(), "Δ_K image must have zero residual");
            }
        }
    }

    #[test]
    fn alignment_examples() {
        // Residual with b = σ_y(p): align to a target containing p.
        let ks = binomial_kernel();
        // class of y: v-member at offset 1, so admissible targets are < 1
        let r = ResidualForm {
            a: PolyY::one(),
            b: yplus(0),
            q: PolyY::zero(),
            kernel: ks.clone(),
        };
        r.validate().unwrap();
        let (gdiff, aligned) = align_residual(&r, &yplus(-1)).unwrap();
        assert_eq!(aligned.b, yplus(-1));
        aligned.validate().unwrap();
        // value difference is exactly K·σ(g) − g
        let lhs = r.value().sub(&aligned.value());
        let rhs = ks.k.mul(&gdiff.shift_y(1)).sub(&gdiff);
        assert_eq!(lhs, rhs);

        // target equal to b: unchanged
        let (g0, same) = align_residual(&r, &yplus(0)).unwrap();
        assert!(g0.is_zero());
        assert_eq!(same.b, yplus(0));
        assert_eq!(same.a, r.a);

        // class mismatch
        let other = bivar(&[(1, 2, 0), (1, 0, 1)]); // y + x^2
        assert!(matches!(
            align_residual(&r, &other),
            Err(Error::NotAlignable)
        ));
    }

    #[test]
    fn residual_forms_respect_x_shift() {
        // A residual form of S, shifted in x, is a residual form w.r.t. the
        // x-shifted kernel.
        let ks = binomial_kernel();
        let s: RatXY = RatFun::new(
            yplus(2),
            yplus(0).mul(&bivar(&[(1, 1, 0), (-1, 0, 1), (2, 0, 0)])),
        );
        let (_, r) = shell_reduce(&s, &ks).unwrap();
        r.validate().unwrap();
        let shifted_kernel = KernelShell::from_parts(
            ks.u.shift_x(1),
            ks.v.shift_x(1),
            RatFun::one(),
        )
        .unwrap();
        let shifted = ResidualForm {
            a: r.a.shift_x(1),
            b: r.b.shift_x(1),
            q: r.q.shift_x(1),
            kernel: shifted_kernel,
        };
        shifted.validate().unwrap();
    }

    #[test]
    fn residuals_of_rnf_variants_are_shift_related() {
        // Two decompositions of the same quotient give residual forms whose
        // significant denominators are shift-related.
        let mut rng = XorShift::new(0xA11CE);
        for round in 0..6 {
            let mut f: RatXY = RatFun::one();
            for _ in 0..3 {
                let base = yplus(rng.range_i64(-3, 4));
                let e = rng.range_i64(-2, 3);
                f = f.mul(&ratxy_pow(&RatFun::from_poly(base), e));
            }
            let extra = bivar(&[(1, 1, 0), (1, 0, 1), (rng.range_i64(0, 3), 0, 0)]);
            f = f.mul(&RatFun::new(extra.shift_y(2), extra));
            let ks1 = rnf(&f).unwrap();
            // randomized alternative decomposition via legal moves
            let mut ks2 = ks1.clone();
            for _ in 0..2 {
                let (_, vparts) = factor_y(&ks2.v);
                if let Some((p, m)) = vparts.first() {
                    if rng.chance(2, 3) {
                        ks2 = move_denominator_factor(&ks2, p, *m).unwrap();
                    }
                }
                let (_, uparts) = factor_y(&ks2.u);
                if let Some((p, m)) = uparts.first() {
                    if rng.chance(1, 2) {
                        ks2 = move_numerator_factor(&ks2, p, *m).unwrap();
                    }
                }
            }
            assert_eq!(ks2.source_quotient(), f, "round {round}");
            let (_, r1) = shell_reduce(&ks1.s, &ks1).unwrap();
            let (_, r2) = shell_reduce(&ks2.s, &ks2).unwrap();
            if r1.b.degree() > Some(0) || r2.b.degree() > Some(0) {
                assert!(
                    shift_related_y(&r1.b, &r2.b).unwrap(),
                    "round {round}: {} vs {}",
                    r1.b,
                    r2.b
                );
            }
        }
    }
}
