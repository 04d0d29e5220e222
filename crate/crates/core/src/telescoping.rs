//! Creative telescoping by reduction.
//!
//! For a term T with shift quotients f = σ_x(T)/T and g = σ_y(T)/T, find a
//! nonzero operator L = Σ e_i(x)·S_x^i with polynomial coefficients and a
//! rational certificate such that L(T) = Δ_y(G).  Writing T = S·H with
//! σ_y(H)/H = K the kernel, every shifted term is σ_x^i(T) = S_i·H for a
//! rational shell S_i; reducing all shells against the same kernel with a
//! shared alignment registry turns the telescoping equation into a linear
//! system over ℚ(x) for the e_i, one that becomes solvable exactly at the
//! minimal telescoper order.

use num_traits::Signed;

use crate::algebra::factor::factor_y;
use crate::algebra::field::Field;
use crate::algebra::ratfun::RatFun;
use crate::algebra::xy::{integer_primitive_vector, ratx, PolyX, PolyY, RatX, RatXY};
use crate::error::Error;
use crate::linalg::nullspace_vector_by;
use crate::reduction::{reduce_value, AlignmentRegistry, ComplementBasis, ResidualForm};
use crate::rnf::{kernel_shell_of_term, KernelShell};
use crate::shifts::detect_integer_linear;
use crate::term::HyperTerm;

/// A telescoper L = Σ e_i(x)·S_x^i together with its certificate.
///
/// The coefficient vector is integer-primitive with no common polynomial
/// factor, and the highest nonzero coefficient has a positive leading
/// coefficient.  The certificate is relative to the kernel part H = T/S:
/// L(T) = Δ_y(certificate·H).
#[derive(Clone, Debug)]
pub struct Telescoper {
    pub coefficients: Vec<PolyX>,
    pub order: usize,
    pub certificate: RatXY,
    pub kernel: KernelShell,
}

impl Telescoper {
    /// G/T, so that the certificate G is this ratio times the term itself.
    pub fn certificate_to_term_ratio(&self) -> RatXY {
        self.certificate.div(&self.kernel.s)
    }
}

/// The linear system over ℚ(x) whose nullspace vectors are telescoper
/// coefficients: Σ e_i·r_i = 0 with all fraction parts brought over the
/// common significant denominator and the complement parts compared
/// coefficient-wise.
#[derive(Clone, Debug)]
pub struct TelescoperSystem {
    /// Residuals r_0..r_ρ of the shifted shells, mutually aligned.
    pub residuals: Vec<ResidualForm>,
    /// Certificates g_i with S_i = K·σ_y(g_i) − g_i + r_i.
    pub certificates: Vec<RatXY>,
    /// lcm of the significant denominators b_i; shift-free and strongly
    /// prime with the kernel.
    pub common_denominator: PolyY,
    /// One row per y-coefficient of the cleared fraction parts, then one row
    /// per y-degree occurring in the complement parts; columns are e_0..e_ρ.
    pub matrix: Vec<Vec<RatX>>,
}

/// The shells S_i = σ_x^i(T)/H of the shifted terms, reduced incrementally
/// against one kernel with one shared alignment registry, so that all
/// residuals stay comparable.
pub struct ResidualSequence {
    kernel: KernelShell,
    /// σ_x(H)/H = f·S/σ_x(S).
    x_quotient: RatXY,
    registry: AlignmentRegistry,
    basis: ComplementBasis,
    shells: Vec<RatXY>,
    pairs: Vec<(RatXY, ResidualForm)>,
}

impl ResidualSequence {
    pub fn new(t: &HyperTerm) -> Result<ResidualSequence, Error> {
        let kernel = kernel_shell_of_term(t)?;
        let x_quotient = t.f.mul(&kernel.s).div(&kernel.s.shift_x(1));
        let registry = AlignmentRegistry::new(&kernel);
        let basis = ComplementBasis::new(&kernel, 8);
        Ok(ResidualSequence {
            kernel,
            x_quotient,
            registry,
            basis,
            shells: Vec::new(),
            pairs: Vec::new(),
        })
    }

    pub fn kernel(&self) -> &KernelShell {
        &self.kernel
    }

    /// Number of shells reduced so far (ρ + 1).
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn shells(&self) -> &[RatXY] {
        &self.shells
    }

    /// (g_i, r_i) with S_i = K·σ_y(g_i) − g_i + r_i.
    pub fn pairs(&self) -> &[(RatXY, ResidualForm)] {
        &self.pairs
    }

    /// Reduce the next shifted shell.
    pub fn extend_one(&mut self) -> Result<(), Error> {
        let shell = match self.shells.last() {
            None => self.kernel.s.clone(),
            Some(prev) => prev.shift_x(1).mul(&self.x_quotient),
        };
        let pair = reduce_value(&shell, &self.kernel, &mut self.registry, &mut self.basis)?;
        self.shells.push(shell);
        self.pairs.push(pair);
        Ok(())
    }

    /// Assemble the linear system for the shells reduced so far.
    pub fn system(&self) -> TelescoperSystem {
        let residuals: Vec<ResidualForm> = self.pairs.iter().map(|(_, r)| r.clone()).collect();
        let certificates: Vec<RatXY> = self.pairs.iter().map(|(g, _)| g.clone()).collect();

        let mut common = PolyY::one();
        for r in &residuals {
            common = common.lcm(&r.b);
        }

        let cleared: Vec<PolyY> = residuals
            .iter()
            .map(|r| r.a.mul(&common.exact_div(&r.b)))
            .collect();

        let mut matrix: Vec<Vec<RatX>> = Vec::new();
        let fraction_rows = common.degree().unwrap_or(0);
        for d in 0..fraction_rows {
            let row: Vec<RatX> = cleared.iter().map(|p| p.coeff(d)).collect();
            if row.iter().any(|c| !c.is_zero()) {
                matrix.push(row);
            }
        }
        let q_rows = residuals
            .iter()
            .filter_map(|r| r.q.degree())
            .max()
            .map_or(0, |d| d + 1);
        for d in 0..q_rows {
            let row: Vec<RatX> = residuals.iter().map(|r| r.q.coeff(d)).collect();
            if row.iter().any(|c| !c.is_zero()) {
                matrix.push(row);
            }
        }

        TelescoperSystem {
            residuals,
            certificates,
            common_denominator: common,
            matrix,
        }
    }
}

/// A telescoper exists if and only if every irreducible factor of the
/// significant denominator of the first residual is integer-linear, i.e. of
/// the form P(λx + μy).  On failure the offending factor is the evidence.
pub fn existence_check(r: &ResidualForm) -> Result<(), Error> {
    for (factor, _) in factor_y(&r.b).1 {
        if factor.degree() <= Some(0) {
            continue;
        }
        if detect_integer_linear(&factor)?.is_none() {
            return Err(Error::NoTelescoper {
                witness: format!("{factor}"),
            });
        }
    }
    Ok(())
}

/// One telescoper coefficient vector from the system, or `None` when the
/// residuals are still independent.  The vector is cleared to ℚ[x],
/// integer-primitive with coprime entries, and the highest nonzero entry
/// has a positive leading coefficient.
pub fn solve_telescoper_system(sys: &TelescoperSystem) -> Option<Vec<PolyX>> {
    let cols = sys.residuals.len();
    let e = nullspace_vector_by(&sys.matrix, cols, |c: &RatX| {
        c.num().degree().unwrap_or(0) + c.den().degree().unwrap_or(0)
    })?;

    let mut den = PolyX::one();
    for c in &e {
        den = den.lcm(c.den());
    }
    let mut polys: Vec<PolyX> = e
        .iter()
        .map(|c| c.num().mul(&den.exact_div(c.den())))
        .collect();
    let mut content = PolyX::zero();
    for p in &polys {
        content = content.gcd(p);
    }
    if content.degree() > Some(0) {
        polys = polys.iter().map(|p| p.exact_div(&content)).collect();
    }
    let mut polys = integer_primitive_vector(&polys);
    let last = polys
        .iter()
        .rposition(|p| !p.is_zero())
        .expect("nullspace vector is nonzero");
    if polys[last].lc().is_negative() {
        for p in polys.iter_mut() {
            *p = p.neg();
        }
    }
    Some(polys)
}

/// Minimal-order telescoper for the term, by incremental reduction.
///
/// Order ρ is tried as 0, 1, 2, … and the first solvable system is returned,
/// so the result is minimal; any solution vector then necessarily engages
/// the last shell.  `max_order` caps the search; exceeding the cap reports
/// an error only after the existence check has already proven a telescoper
/// exists at some higher order.
pub fn reduction_ct(t: &HyperTerm, max_order: Option<usize>) -> Result<Telescoper, Error> {
    let mut seq = ResidualSequence::new(t)?;
    seq.extend_one()?;
    existence_check(&seq.pairs()[0].1)?;
    loop {
        let rho = seq.len() - 1;
        let sys = seq.system();
        if let Some(coefficients) = solve_telescoper_system(&sys) {
            let mut certificate: RatXY = RatFun::zero();
            for (e, (gi, _)) in coefficients.iter().zip(seq.pairs()) {
                if !e.is_zero() {
                    certificate = certificate.add(&RatFun::constant(ratx(e.clone())).mul(gi));
                }
            }
            let order = coefficients
                .iter()
                .rposition(|p| !p.is_zero())
                .expect("solution vector is nonzero");
            debug_assert_eq!(order, rho);
            let telescoper = Telescoper {
                coefficients,
                order,
                certificate,
                kernel: seq.kernel().clone(),
            };
            verify_telescoper(t, &telescoper)?;
            return Ok(telescoper);
        }
        if let Some(cap) = max_order {
            if rho >= cap {
                return Err(Error::OrderCapExceeded { cap });
            }
        }
        assert!(
            rho < 64,
            "telescoper search passed order 64 without finding a solution"
        );
        seq.extend_one()?;
    }
}

/// Exact check of the defining identity: Σ e_i·S_i = K·σ_y(g) − g, which is
/// L(T) = Δ_y(g·H) divided by the common factor H.  The shells are rebuilt
/// from the term, independently of the search.
pub fn verify_telescoper(t: &HyperTerm, tel: &Telescoper) -> Result<(), Error> {
    let ks = &tel.kernel;
    let x_quotient = t.f.mul(&ks.s).div(&ks.s.shift_x(1));
    let mut lhs: RatXY = RatFun::zero();
    let mut shell = ks.s.clone();
    for (i, e) in tel.coefficients.iter().enumerate() {
        if i > 0 {
            shell = shell.shift_x(1).mul(&x_quotient);
        }
        if !e.is_zero() {
            lhs = lhs.add(&RatFun::constant(ratx(e.clone())).mul(&shell));
        }
    }
    let rhs = ks
        .k
        .mul(&tel.certificate.shift_y(1))
        .sub(&tel.certificate);
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::BadTerm(
            "telescoper does not satisfy its certificate identity".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::xy::{bivar, polyx};
    use crate::rng::XorShift;
    use crate::shifts::shift_related_y;
    use crate::term::{shift_quotients, LinArg, TermAtom, TermExpr};

    fn binomial_term() -> HyperTerm {
        let ast = TermExpr::new(vec![(
            TermAtom::Binomial(LinArg::of_ints(1, 0, 0), LinArg::of_ints(0, 1, 0)),
            1,
        )]);
        shift_quotients(&ast).unwrap()
    }

    /// 1/(αx + βy): rational input whose minimal order is β.
    fn linear_denominator_term(alpha: i64, beta: i64) -> HyperTerm {
        let base = bivar(&[(alpha, 1, 0), (beta, 0, 1)]);
        let t = RatFun::new(PolyY::one(), base);
        HyperTerm::from_quotients(
            t.shift_x(1).div(&t),
            t.shift_y(1).div(&t),
        )
        .unwrap()
    }

    #[test]
    fn summable_term_gets_an_order_zero_telescoper() {
        // σ_y(T)/T = (y+1)²/y with T independent of x.
        let g = RatFun::new(
            bivar(&[(1, 0, 2), (2, 0, 1), (1, 0, 0)]),
            bivar(&[(1, 0, 1)]),
        );
        let t = HyperTerm::from_quotients(RatFun::one(), g).unwrap();
        let tel = reduction_ct(&t, None).unwrap();
        assert_eq!(tel.order, 0);
        assert_eq!(tel.coefficients, vec![polyx(&[1])]);
        assert_eq!(tel.certificate, RatFun::one());
        verify_telescoper(&t, &tel).unwrap();
    }

    #[test]
    fn binomial_telescoper_is_shift_minus_two() {
        let t = binomial_term();
        let tel = reduction_ct(&t, None).unwrap();
        assert_eq!(tel.order, 1);
        assert_eq!(tel.coefficients, vec![polyx(&[-2]), polyx(&[1])]);
        verify_telescoper(&t, &tel).unwrap();

        // Residuals that feed the system, pinned exactly.
        let mut seq = ResidualSequence::new(&t).unwrap();
        seq.extend_one().unwrap();
        seq.extend_one().unwrap();
        let r0 = &seq.pairs()[0].1;
        let r1 = &seq.pairs()[1].1;
        assert!(r0.a.is_zero() && r1.a.is_zero());
        assert_eq!(
            r0.q,
            Poly::constant(RatFun::new(polyx(&[1, 1]), polyx(&[2])))
        );
        assert_eq!(r1.q, Poly::constant(ratx(polyx(&[1, 1]))));
    }

    #[test]
    fn rational_input_order_matches_the_y_direction() {
        for (alpha, beta) in [(1i64, 2usize), (2, 3)] {
            let t = linear_denominator_term(alpha, beta as i64);
            let tel = reduction_ct(&t, None).unwrap();
            assert_eq!(tel.order, beta);
            verify_telescoper(&t, &tel).unwrap();
        }
    }

    #[test]
    fn paired_slope_factors_drop_out_of_the_order() {
        // Numerator chosen so the two factors one y-shift apart cancel from
        // the reduced form, leaving only the slope-β factor to drive the
        // order.
        for (alpha, beta) in [(1i64, 2usize), (2, 3)] {
            let num = bivar(&[
                (alpha * alpha, 0, 2),
                (alpha * alpha - alpha * beta as i64, 0, 1),
                (2 * alpha, 1, 1),
                (1, 2, 0),
            ]);
            let den = bivar(&[(1, 1, 0), (alpha, 0, 1), (alpha, 0, 0)])
                .mul(&bivar(&[(1, 1, 0), (alpha, 0, 1)]))
                .mul(&bivar(&[(1, 1, 0), (beta as i64, 0, 1)]));
            let t0 = RatFun::new(num, den);
            let t = HyperTerm::from_quotients(
                t0.shift_x(1).div(&t0),
                t0.shift_y(1).div(&t0),
            )
            .unwrap();
            let tel = reduction_ct(&t, None).unwrap();
            assert_eq!(tel.order, beta);
            verify_telescoper(&t, &tel).unwrap();
        }
    }

    #[test]
    fn aligned_common_denominator_for_interleaved_classes() {
        // 1/(x+2y): the two parity classes of x+2y+j interleave, and the
        // common denominator collects exactly one target from each.
        let t = linear_denominator_term(1, 2);
        let mut seq = ResidualSequence::new(&t).unwrap();
        for _ in 0..3 {
            seq.extend_one().unwrap();
        }
        let sys = seq.system();
        let expected = bivar(&[(1, 1, 0), (2, 0, 1)])
            .mul(&bivar(&[(1, 1, 0), (2, 0, 1), (1, 0, 0)]))
            .monic()
            .1;
        assert_eq!(sys.common_denominator, expected);
        for (i, r) in sys.residuals.iter().enumerate() {
            if r.b.degree() > Some(0) {
                assert!(shift_related_y(&r.b, &sys.residuals[0].b.shift_x(i as i64)).unwrap());
            }
        }
    }

    #[test]
    fn order_cap_reports_instead_of_searching_on() {
        let t = linear_denominator_term(1, 3);
        match reduction_ct(&t, Some(1)) {
            Err(Error::OrderCapExceeded { cap: 1 }) => {}
            other => panic!("expected order cap error, got {other:?}"),
        }
        let tel = reduction_ct(&t, Some(3)).unwrap();
        assert_eq!(tel.order, 3);
    }

    #[test]
    fn non_integer_linear_denominator_has_no_telescoper() {
        let den = bivar(&[(1, 2, 0), (1, 0, 2)]); // x² + y²
        let t0 = RatFun::new(PolyY::one(), den);
        let t = HyperTerm::from_quotients(
            t0.shift_x(1).div(&t0),
            t0.shift_y(1).div(&t0),
        )
        .unwrap();
        match reduction_ct(&t, None) {
            Err(Error::NoTelescoper { witness }) => {
                assert!(witness.contains("y^2"), "witness was {witness}");
            }
            other => panic!("expected no-telescoper evidence, got {other:?}"),
        }
    }

    #[test]
    fn factorial_ratio_telescopes_at_the_kernel_order() {
        // T = 1/((x−2y−2)·(x−2y−2)!): kernel (x−2y−2)(x−2y−3), order 2.
        let f = RatFun::new(
            bivar(&[(1, 1, 0), (-2, 0, 1), (-2, 0, 0)]),
            bivar(&[(1, 1, 0), (-2, 0, 1), (-1, 0, 0)]).pow(2),
        );
        let g = RatFun::new(
            bivar(&[(1, 1, 0), (-2, 0, 1), (-2, 0, 0)])
                .pow(2)
                .mul(&bivar(&[(1, 1, 0), (-2, 0, 1), (-3, 0, 0)])),
            bivar(&[(1, 1, 0), (-2, 0, 1), (-4, 0, 0)]),
        );
        let t = HyperTerm::from_quotients(f, g).unwrap();
        let tel = reduction_ct(&t, None).unwrap();
        assert_eq!(tel.order, 2);
        verify_telescoper(&t, &tel).unwrap();

        // The first significant denominator is the doubly shifted u-class.
        let mut seq = ResidualSequence::new(&t).unwrap();
        seq.extend_one().unwrap();
        let b0 = &seq.pairs()[0].1.b;
        let expected = bivar(&[(1, 1, 0), (-2, 0, 1), (-4, 0, 0)]).monic().1;
        assert_eq!(b0, &expected);
    }

    #[test]
    fn tampered_coefficients_fail_verification() {
        let t = binomial_term();
        let tel = reduction_ct(&t, None).unwrap();
        let mut rng = XorShift::new(0x7E1E);
        for _ in 0..10 {
            let mut bad = tel.clone();
            let i = rng.below(bad.coefficients.len() as u64) as usize;
            let bump = polyx(&[rng.range_i64(1, 5), rng.range_i64(0, 3)]);
            bad.coefficients[i] = bad.coefficients[i].add(&bump);
            assert!(verify_telescoper(&t, &bad).is_err());
        }
        let mut bad = tel.clone();
        bad.certificate = bad.certificate.add(&RatFun::one());
        assert!(verify_telescoper(&t, &bad).is_err());
    }

    #[test]
    fn certificate_ratio_matches_pascal_recurrence() {
        // Exact rational identity at the term level: for L = S_x − 2 on the
        // binomial coefficient, G = certificate·H with H = T, so
        // G/T = certificate/S.
        let t = binomial_term();
        let tel = reduction_ct(&t, None).unwrap();
        let ratio = tel.certificate_to_term_ratio();
        // G = y/(y−x−1)·T vanishes at y = 0 and telescopes the row sum.
        let num = ratio.num();
        let den = ratio.den();
        let y = bivar(&[(1, 0, 1)]);
        assert_eq!(num.gcd(&y), y.monic().1);
        assert_eq!(den.degree(), Some(1));
    }
}
