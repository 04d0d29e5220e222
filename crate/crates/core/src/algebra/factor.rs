//! Factorization in Q(x)[y].
//!
//! Route: squarefree decomposition over Q(x), denominator and content
//! clearing into Q[x][y], a monicizing substitution y -> y/l(x), then for the
//! monic part evaluation at a good x-point, univariate factorization there,
//! Hensel lifting X-adically to x-degree precision, and subset
//! recombination.  A factor's x-degree never exceeds the product's (Newton
//! polygon), so lifting to deg_x + 1 determines true factors exactly.

use super::field::{rat_int, Field, Rat};
use super::poly::Poly;
use super::unifactor::factor_rat_poly;
use super::xy::{ratx, PolyX, PolyY, RatX};

/// Truncate to degree < k in x.
fn trunc_x(p: &PolyX, k: usize) -> PolyX {
    Poly::from_coeffs(p.coeffs().iter().take(k).cloned().collect())
}

/// Polynomial in y whose coefficients live in Q[x]/(x^k).
#[derive(Clone, Debug)]
struct SeriesY {
    coeffs: Vec<PolyX>, // ascending in y, trimmed
    k: usize,
}

impl SeriesY {
    fn new(raw: Vec<PolyX>, k: usize) -> Self {
        let mut coeffs: Vec<PolyX> = raw.iter().map(|c| trunc_x(c, k)).collect();
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        SeriesY { coeffs, k }
    }

    fn one(k: usize) -> Self {
        SeriesY::new(vec![PolyX::one()], k)
    }

    fn from_uni(p: &Poly<Rat>, k: usize) -> Self {
        SeriesY::new(p.coeffs().iter().map(|c| PolyX::constant(c.clone())).collect(), k)
    }

    fn with_precision(&self, k: usize) -> Self {
        SeriesY::new(self.coeffs.clone(), k)
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> PolyX {
        self.coeffs.get(i).cloned().unwrap_or_else(PolyX::zero)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SeriesY::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect(), self.k)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SeriesY::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect(), self.k)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return SeriesY::new(Vec::new(), self.k);
        }
        let mut acc = vec![PolyX::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].add(&trunc_x(&a.mul(b), self.k));
            }
        }
        SeriesY::new(acc, self.k)
    }

    /// Division by a divisor monic in y.
    fn div_rem(&self, div: &Self) -> (Self, Self) {
        let dd = div.degree().expect("division by zero");
        debug_assert!(div.coeff(dd).is_one());
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (SeriesY::new(Vec::new(), self.k), self.clone());
        }
        let mut quot = vec![PolyX::zero(); rem.len() - dd];
        for t in (dd..rem.len()).rev() {
            let factor = trunc_x(&rem[t], self.k);
            if factor.is_zero() {
                continue;
            }
            quot[t - dd] = factor.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                let delta = trunc_x(&factor.mul(b), self.k);
                rem[t - dd + j] = rem[t - dd + j].sub(&delta);
            }
        }
        (SeriesY::new(quot, self.k), SeriesY::new(rem, self.k))
    }
}

/// One quadratic Hensel step from precision k to k2 ≤ 2k, both factors monic
/// in y.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &SeriesY,
    g: &SeriesY,
    h: &SeriesY,
    s: &SeriesY,
    t: &SeriesY,
    k2: usize,
) -> (SeriesY, SeriesY, SeriesY, SeriesY) {
    let f2 = f.with_precision(k2);
    let g2 = g.with_precision(k2);
    let h2 = h.with_precision(k2);
    let s2 = s.with_precision(k2);
    let t2 = t.with_precision(k2);

    let e = f2.sub(&g2.mul(&h2));
    let (q, r) = s2.mul(&e).div_rem(&h2);
    let g_new = g2.add(&t2.mul(&e)).add(&q.mul(&g2));
    let h_new = h2.add(&r);

    let b = s2.mul(&g_new).add(&t2.mul(&h_new)).sub(&SeriesY::one(k2));
    let (c, d) = s2.mul(&b).div_rem(&h_new);
    let s_new = s2.sub(&d);
    let t_new = t2.sub(&t2.mul(&b)).sub(&c.mul(&g_new));

    (g_new, h_new, s_new, t_new)
}

fn hensel_pair(f: &SeriesY, g0: &Poly<Rat>, h0: &Poly<Rat>, kappa: usize) -> (SeriesY, SeriesY) {
    let (one, s0, t0) = g0.ext_gcd(h0);
    debug_assert!(one.degree() == Some(0));
    let mut k = 1usize;
    let mut g = SeriesY::from_uni(g0, k);
    let mut h = SeriesY::from_uni(h0, k);
    let mut s = SeriesY::from_uni(&s0, k);
    let mut t = SeriesY::from_uni(&t0, k);
    while k < kappa {
        let k2 = (2 * k).min(kappa);
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, k2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        k = k2;
    }
    (g, h)
}

fn hensel_multilift(f: &SeriesY, factors: &[Poly<Rat>], kappa: usize) -> Vec<SeriesY> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let mut g0 = Poly::one();
    for q in &factors[..mid] {
        g0 = g0.mul(q);
    }
    let mut h0 = Poly::one();
    for q in &factors[mid..] {
        h0 = h0.mul(q);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, kappa);
    let mut out = hensel_multilift(&g, &factors[..mid], kappa);
    out.extend(hensel_multilift(&h, &factors[mid..], kappa));
    out
}

fn series_to_polyy(s: &SeriesY) -> PolyY {
    Poly::from_coeffs(s.coeffs.iter().map(|c| ratx(c.clone())).collect())
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Factor a squarefree polynomial, monic in y, with Q[x] coefficients, into
/// monic-in-y irreducible factors over Q(x) (which then also have Q[x]
/// coefficients).
fn factor_monic_bivariate(g: &PolyY) -> Vec<PolyY> {
    let n = g.degree().expect("factor of zero polynomial");
    if n <= 1 {
        return vec![g.clone()];
    }
    if let Some(u) = g.as_univariate_y() {
        return factor_rat_poly(&u)
            .1
            .into_iter()
            .map(|(f, m)| {
                debug_assert_eq!(m, 1);
                PolyY::from_univariate_y(&f)
            })
            .collect();
    }

    // Evaluation point where the specialization stays squarefree.
    let mut point = None;
    for idx in 0..64 {
        let a = if idx % 2 == 0 { (idx / 2) as i64 } else { -((idx / 2 + 1) as i64) };
        let f0 = g.eval_x(&rat_int(a)).expect("polynomial coefficients");
        if f0.degree() == Some(n) && f0.gcd(&f0.derivative()).degree() == Some(0) {
            point = Some((a, f0));
            break;
        }
    }
    let (a, f0) = point.expect("no good evaluation point found");

    let (_, uni_parts) = factor_rat_poly(&f0);
    let uni: Vec<Poly<Rat>> = uni_parts.into_iter().map(|(f, _)| f).collect();
    if uni.len() == 1 {
        return vec![g.clone()];
    }

    let shifted = g.shift_x(a);
    let (d, numers) = shifted.clear_x_denominators();
    debug_assert!(d.is_one());
    let kappa = numers.iter().filter_map(|c| c.degree()).max().unwrap_or(0) + 1;

    let f_series = SeriesY::new(numers, kappa);
    let mut lifted = hensel_multilift(&f_series, &uni, kappa);

    let mut out = Vec::new();
    let mut remaining = shifted;
    'outer: loop {
        let k = lifted.len();
        if k == 0 {
            break;
        }
        if k == 1 {
            out.push(remaining.clone());
            break;
        }
        for size in 1..=k / 2 {
            for subset in subsets_of_size(k, size) {
                let mut prod = SeriesY::one(kappa);
                for &i in &subset {
                    prod = prod.mul(&lifted[i]);
                }
                let cand = series_to_polyy(&prod);
                let (q, r) = remaining.div_rem(&cand);
                if r.is_zero() {
                    out.push(cand);
                    remaining = q;
                    for &i in subset.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
        }
        out.push(remaining.clone());
        break;
    }
    out.into_iter().map(|f| f.shift_x(-a)).collect()
}

/// Factorization over Q(x): `p = unit · Π fᵢ^{eᵢ}` with `unit` the leading
/// y-coefficient and each `fᵢ` monic in y, irreducible, with Q[x]
/// coefficients.
pub fn factor_y(p: &PolyY) -> (RatX, Vec<(PolyY, usize)>) {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let trace = std::env::var("HYPERCT_TRACE").is_ok();
    let t0 = std::time::Instant::now();
    let out = factor_y_inner(p);
    if trace && t0.elapsed().as_millis() > 50 {
        eprintln!(
            "factor_y deg {:?} took {} ms on {}",
            p.degree(),
            t0.elapsed().as_millis(),
            p
        );
    }
    out
}

fn factor_y_inner(p: &PolyY) -> (RatX, Vec<(PolyY, usize)>) {
    let (unit, monic) = p.monic();
    if monic.degree() == Some(0) {
        return (unit, Vec::new());
    }
    let mut out: Vec<(PolyY, usize)> = Vec::new();
    for (part, mult) in monic.squarefree_decomposition() {
        // Into Q[x][y]: clear denominators, drop x-content, monicize in y.
        let (_, numers) = part.clear_x_denominators();
        let mut content = PolyX::zero();
        for c in &numers {
            content = content.gcd(c);
        }
        let primitive: Vec<PolyX> = numers.iter().map(|c| c.exact_div(&content)).collect();
        let ell = primitive.last().unwrap().clone();
        let deg = primitive.len() - 1;
        let monic_xy: PolyY = Poly::from_coeffs(
            primitive
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if i == deg {
                        RatX::one()
                    } else {
                        ratx(c.mul(&ell.pow(deg - 1 - i)))
                    }
                })
                .collect(),
        );
        for h in factor_monic_bivariate(&monic_xy) {
            // Undo y -> y/l: substitute y -> l·y and re-monicize.
            let back = h.compose_linear(&ratx(ell.clone()), &RatX::zero());
            out.push((back.monic().1, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    (unit, out)
}
