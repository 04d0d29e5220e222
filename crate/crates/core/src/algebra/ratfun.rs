//! Rational functions `num/den` over a generic coefficient field.
//!
//! Invariant: `den` is monic and `gcd(num, den) = 1`; zero is `0/1`.  With
//! that normalization `RatFun<F>` is itself a `Field`, which lets the same
//! polynomial code run over Q and over Q(x).

use super::field::Field;
use super::poly::Poly;

#[derive(Clone, PartialEq, Debug)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        RatFun { num, den: Poly::one() }
    }

    /// Construct from parts already in normal form (monic denominator,
    /// coprime).  Used by ring automorphisms, which preserve the invariant.
    pub(crate) fn from_reduced_parts(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(!den.is_zero() && den.lc().is_one());
        debug_assert!(num.gcd(&den).degree().map_or(true, |d| d == 0));
        RatFun { num, den }
    }

    pub fn constant(c: F) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if self.den.degree() == Some(0) {
            self.num = self.num.scale(&self.den.coeff(0).inv());
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > Some(0) {
            self.num = self.num.exact_div(&g);
            self.den = self.den.exact_div(&g);
        }
        let (lc, monic_den) = self.den.monic();
        self.den = monic_den;
        self.num = self.num.scale(&lc.inv());
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.degree() > Some(0) { self.num.exact_div(&g1) } else { self.num.clone() };
        let d2 = if g1.degree() > Some(0) { rhs.den.exact_div(&g1) } else { rhs.den.clone() };
        let n2 = if g2.degree() > Some(0) { rhs.num.exact_div(&g2) } else { rhs.num.clone() };
        let d1 = if g2.degree() > Some(0) { self.den.exact_div(&g2) } else { self.den.clone() };
        RatFun::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl<F: Field> Field for RatFun<F> {
    fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }

    fn neg(&self) -> Self {
        RatFun::neg(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        RatFun::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }

    fn inv(&self) -> Self {
        RatFun::inv(self)
    }

    fn from_i64(n: i64) -> Self {
        RatFun::constant(F::from_i64(n))
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        primitive_prs_gcd(a, b)
    }
}

/// Coefficients of `p` with denominators cleared: `p` times the lcm of its
/// coefficient denominators, as a dense vector over `F[t]`.
fn clear_coeff_denominators<F: Field>(p: &Poly<RatFun<F>>) -> Vec<Poly<F>> {
    let mut d: Poly<F> = Poly::one();
    for c in p.coeffs() {
        if !c.is_zero() {
            d = d.lcm(c.den());
        }
    }
    p.coeffs()
        .iter()
        .map(|c| c.num().mul(&d.exact_div(c.den())))
        .collect()
}

fn vec_degree<F: Field>(v: &[Poly<F>]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Gcd of all coefficients (monic); zero vector maps to zero.
fn vec_content<F: Field>(v: &[Poly<F>]) -> Poly<F> {
    let mut g: Poly<F> = Poly::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.degree() == Some(0) {
                break;
            }
        }
    }
    g
}

fn vec_primitive_part<F: Field>(v: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let c = vec_content(&v);
    let mut v = if c.is_zero() || c.degree() == Some(0) {
        v
    } else {
        v.into_iter()
            .map(|p| if p.is_zero() { p } else { p.exact_div(&c) })
            .collect()
    };
    F::strip_scalar_content(&mut v);
    v
}

/// Classical pseudo-remainder: repeatedly scales the dividend by lc(b), so
/// the division stays inside `F[t][y]`.
fn vec_pseudo_rem<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vec<Poly<F>> {
    let db = vec_degree(b).expect("pseudo-division by zero");
    let lcb = b[db].clone();
    let mut r: Vec<Poly<F>> = a.to_vec();
    while let Some(dr) = vec_degree(&r) {
        if dr < db {
            break;
        }
        let lcr = r[dr].clone();
        let mut nr: Vec<Poly<F>> = r[..dr].iter().map(|c| c.mul(&lcb)).collect();
        for (j, bc) in b[..db].iter().enumerate() {
            let k = dr - db + j;
            nr[k] = nr[k].sub(&bc.mul(&lcr));
        }
        r = nr;
    }
    r
}

/// Monic gcd in `K(t)[y]` via the primitive polynomial remainder sequence
/// over `F[t][y]`.  Euclid over the fraction field produces intermediate
/// coefficients of rapidly growing degree; stripping contents keeps every
/// remainder at subresultant size.
fn primitive_prs_gcd<F: Field>(
    pa: &Poly<RatFun<F>>,
    pb: &Poly<RatFun<F>>,
) -> Poly<RatFun<F>> {
    if pa.is_zero() {
        return pb.monic().1;
    }
    if pb.is_zero() {
        return pa.monic().1;
    }
    if pa.degree() == Some(0) || pb.degree() == Some(0) {
        return Poly::one();
    }
    let mut f = vec_primitive_part(clear_coeff_denominators(pa));
    let mut g = vec_primitive_part(clear_coeff_denominators(pb));
    if vec_degree(&f) < vec_degree(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while vec_degree(&g).is_some() {
        let r = vec_primitive_part(vec_pseudo_rem(&f, &g));
        f = g;
        g = r;
    }
    let df = vec_degree(&f).expect("gcd of nonzero polynomials is nonzero");
    if df == 0 {
        return Poly::one();
    }
    let lc = f[df].clone();
    Poly::from_coeffs(
        f.into_iter()
            .take(df + 1)
            .map(|c| RatFun::new(c, lc.clone()))
            .collect(),
    )
}
