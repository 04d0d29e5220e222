//! Factorization in Q[y]: squarefree decomposition, then for each part a
//! modular factorization, Hensel lifting to a coefficient-bound modulus, and
//! subset recombination.  Output factors are monic irreducible over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rat;
use super::poly::Poly;
use super::zp::{factor_squarefree_mod_p, ZpPoly};
use crate::rng::XorShift;

/// Odd primes large enough that a random squarefree polynomial almost never
/// needs a retry, small enough for word arithmetic.
const PRIMES: [u64; 8] = [
    1_000_000_007,
    1_000_000_009,
    998_244_353,
    2_147_483_647,
    754_974_721,
    469_762_049,
    1_004_535_809,
    167_772_161,
];

// ---------------------------------------------------------------------------
// Polynomials with coefficients in Z/mZ for a big modulus m (Hensel side).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct ModPoly {
    coeffs: Vec<BigInt>, // ascending, reduced into [0, m), trimmed
    m: BigInt,
}

impl ModPoly {
    fn new(raw: Vec<BigInt>, m: &BigInt) -> Self {
        let mut coeffs: Vec<BigInt> = raw.into_iter().map(|c| c.mod_floor(m)).collect();
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        ModPoly { coeffs, m: m.clone() }
    }

    fn from_zp(f: &ZpPoly, m: &BigInt) -> Self {
        ModPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect(), m)
    }

    fn one(m: &BigInt) -> Self {
        ModPoly::new(vec![BigInt::one()], m)
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Reinterpret the canonical representatives under a different modulus.
    fn with_modulus(&self, m: &BigInt) -> Self {
        ModPoly::new(self.coeffs.clone(), m)
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), &self.m)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(), &self.m)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::new(Vec::new(), &self.m);
        }
        let mut acc = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        ModPoly::new(acc, &self.m)
    }

    /// Division by a monic divisor.
    fn div_rem(&self, div: &Self) -> (Self, Self) {
        let dd = div.degree().expect("division by zero");
        debug_assert!(div.coeff(dd).is_one());
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (ModPoly::new(Vec::new(), &self.m), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = rem[k].mod_floor(&self.m);
            if factor.is_zero() {
                continue;
            }
            quot[k - dd] = factor.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                let v = (&rem[k - dd + j] - &factor * b).mod_floor(&self.m);
                rem[k - dd + j] = v;
            }
        }
        (ModPoly::new(quot, &self.m), ModPoly::new(rem, &self.m))
    }

    /// Coefficients mapped to the symmetric range (−m/2, m/2].
    fn centered(&self) -> Vec<BigInt> {
        let half = &self.m >> 1;
        self.coeffs
            .iter()
            .map(|c| if c > &half { c - &self.m } else { c.clone() })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

/// One quadratic lift: from `f ≡ g·h (mod m)`, `s·g + t·h ≡ 1 (mod m)` with
/// `g`, `h` monic, to the same congruences mod m².
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &ModPoly,
    g: &ModPoly,
    h: &ModPoly,
    s: &ModPoly,
    t: &ModPoly,
    m2: &BigInt,
) -> (ModPoly, ModPoly, ModPoly, ModPoly) {
    let f2 = f.with_modulus(m2);
    let g2 = g.with_modulus(m2);
    let h2 = h.with_modulus(m2);
    let s2 = s.with_modulus(m2);
    let t2 = t.with_modulus(m2);

    let e = f2.sub(&g2.mul(&h2));
    let (q, r) = s2.mul(&e).div_rem(&h2);
    let g_new = g2.add(&t2.mul(&e)).add(&q.mul(&g2));
    let h_new = h2.add(&r);

    let b = s2.mul(&g_new).add(&t2.mul(&h_new)).sub(&ModPoly::one(m2));
    let (c, d) = s2.mul(&b).div_rem(&h_new);
    let s_new = s2.sub(&d);
    let t_new = t2.sub(&t2.mul(&b)).sub(&c.mul(&g_new));

    (g_new, h_new, s_new, t_new)
}

/// Lift the pair factorization `f ≡ g0·h0 (mod p)` to the fixed modulus
/// `m_final = p^(2^k)`.
fn hensel_pair(f: &ModPoly, g0: &ZpPoly, h0: &ZpPoly, m_final: &BigInt) -> (ModPoly, ModPoly) {
    let p = BigInt::from(g0.modulus());
    let (one, s0, t0) = g0.ext_gcd(h0);
    debug_assert!(one.degree() == Some(0));
    let mut m = p.clone();
    let mut g = ModPoly::from_zp(g0, &m);
    let mut h = ModPoly::from_zp(h0, &m);
    let mut s = ModPoly::from_zp(&s0, &m);
    let mut t = ModPoly::from_zp(&t0, &m);
    while &m < m_final {
        let m2 = &m * &m;
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m2;
    }
    (g, h)
}

/// Lift every modular factor of `f ≡ Π factors (mod p)` to `m_final`,
/// splitting the factor list as a balanced tree of pair lifts.
fn hensel_multilift(f: &ModPoly, factors: &[ZpPoly], m_final: &BigInt) -> Vec<ModPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let p = factors[0].modulus();
    let mut g0 = ZpPoly::one(p);
    for q in &factors[..mid] {
        g0 = g0.mul(q);
    }
    let mut h0 = ZpPoly::one(p);
    for q in &factors[mid..] {
        h0 = h0.mul(q);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, m_final);
    let mut out = hensel_multilift(&g, &factors[..mid], m_final);
    out.extend(hensel_multilift(&h, &factors[mid..], m_final));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus driver.
// ---------------------------------------------------------------------------

fn int_coeffs(p: &Poly<Rat>) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect()
}

fn poly_from_ints(cs: &[BigInt]) -> Poly<Rat> {
    Poly::from_coeffs(cs.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn reduce_mod_p(cs: &[BigInt], p: u64) -> ZpPoly {
    let m = BigInt::from(p);
    ZpPoly::new(
        cs.iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect(),
        p,
    )
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance odometer
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

/// Factor a monic squarefree polynomial with integer coefficients into monic
/// irreducible integer polynomials.
pub(crate) fn factor_monic_squarefree_int(f: &Poly<Rat>) -> Vec<Poly<Rat>> {
    let n = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f.clone()],
        Some(n) => n,
    };
    debug_assert!(f.lc().is_one());
    let fi = int_coeffs(f);

    // Modular factorizations over a few primes; keep the one with the
    // fewest factors (fewer recombination subsets).
    let mut rng = XorShift::new(0x5eed_fac7);
    let mut best: Option<(u64, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fp = reduce_mod_p(&fi, p);
        if fp.degree() != Some(n) {
            continue;
        }
        if let Some(factors) = factor_squarefree_mod_p(&fp.monic(), &mut rng) {
            let better = best.as_ref().map_or(true, |(_, b)| factors.len() < b.len());
            if better {
                best = Some((p, factors));
            }
            tried += 1;
            if tried >= 3 || best.as_ref().unwrap().1.len() == 1 {
                break;
            }
        }
    }
    let (p, modular) = best.expect("no usable prime for modular factorization");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Coefficient bound for any monic divisor, then the lifting modulus.
    let height = fi.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::from(n + 1)) * (BigInt::one() << n) * height;
    let target: BigInt = (&bound << 1) + 1;
    let mut m_final = BigInt::from(p);
    while m_final < target {
        m_final = &m_final * &m_final;
    }

    let f_mod = ModPoly::new(fi.clone(), &m_final);
    let mut lifted = hensel_multilift(&f_mod, &modular, &m_final);

    // Subset recombination: centered products that divide over Z are true
    // factors.
    let mut out = Vec::new();
    let mut remaining = f.clone();
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
                let mut prod = ModPoly::one(&m_final);
                for &i in &subset {
                    prod = prod.mul(&lifted[i]);
                }
                let cand = poly_from_ints(&prod.centered());
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
        // No subset divides: the remaining product is irreducible.
        out.push(remaining.clone());
        break;
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| format!("{a:?}").cmp(&format!("{b:?}")))
    });
    out
}

/// Full factorization over Q: `p = unit · Π fᵢ^{eᵢ}` with the `fᵢ` monic
/// irreducible and pairwise distinct.
pub fn factor_rat_poly(p: &Poly<Rat>) -> (Rat, Vec<(Poly<Rat>, usize)>) {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let (unit, monic) = p.monic();
    if monic.degree() == Some(0) || monic.is_one() {
        return (unit, Vec::new());
    }
    let mut out = Vec::new();
    for (part, mult) in monic.squarefree_decomposition() {
        // Integerize, then monicize by y -> y/l so the Zassenhaus path only
        // ever sees monic integer polynomials.
        let c = part.integer_primitive_scale();
        let q = part.scale(&c); // integer, primitive, lc = c > 0
        let l = q.lc().clone();
        let ln = l.numer().clone();
        let deg = q.degree().unwrap();
        // coeff_i(M) = q_i · l^(deg−1−i); the leading coefficient becomes 1.
        let monic_int = Poly::from_coeffs(
            (0..=deg)
                .map(|i| {
                    if i == deg {
                        Rat::one()
                    } else {
                        let scale = ln.pow((deg - 1 - i) as u32);
                        q.coeff(i) * Rat::from_integer(scale)
                    }
                })
                .collect(),
        );
        for g in factor_monic_squarefree_int(&monic_int) {
            // Undo the substitution: g(l·y), made monic again.
            let back = g.compose_linear(&l, &Rat::zero());
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
