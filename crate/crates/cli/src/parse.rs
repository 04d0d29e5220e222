//! Text form of terms: a recursive-descent parser and the matching printer.
//!
//! The grammar (whitespace-insensitive, byte positions reported in errors):
//!
//! ```text
//! term     := product (('+' | '-') product)*
//! product  := signed (('*' | '/') signed)*
//! signed   := ('+' | '-')* power
//! power    := primary ('^' exponent)?
//! exponent := integer | 'x' | 'y' | '(' term ')'
//! primary  := number | 'x' | 'y' | '(' term ')'
//!           | 'Factorial' '(' term ')'
//!           | 'Binomial' '(' term ',' term ')'
//!           | 'Pochhammer' '(' term ',' term ')'
//! ```
//!
//! Every expression folds into a single rational prefactor times a product
//! of special factors.  Sums and differences are only defined between
//! rational subexpressions; arguments of the named factors (and symbolic
//! exponents) must fold to `lambda*x + mu*y + c` with integer slopes and a
//! rational constant.  A symbolic exponent needs a constant rational base,
//! and an integer exponent always wins the parse: `2^2*y` is `(2^2)*y`,
//! while `2^(2*y)` forces the symbolic reading.
//!
//! [`canonical`] prints a parsed term back in a form this parser accepts,
//! and parsing is a fixed point on its output.

use std::fmt;

use hyperct::algebra::field::{rat_int, Rat};
use hyperct::algebra::ratfun::RatFun;
use hyperct::algebra::xy::{bivar, PolyX, RatXY};
use hyperct::term::{ratxy_pow, LinArg, TermAtom, TermExpr};
use num_traits::{One, ToPrimitive, Zero};

/// Why an input string was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// The input deviates from the grammar at `position` (a byte offset);
    /// `expected` names what would have been accepted there.
    Syntax { position: usize, expected: String },
    /// The subexpression starting at `position` must be integer-linear in
    /// x and y (an argument of a named factor or a symbolic exponent) but
    /// is not.
    NonIntegerLinear { position: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, expected } => {
                write!(f, "syntax error at byte {position}: expected {expected}")
            }
            ParseError::NonIntegerLinear { position } => write!(
                f,
                "argument at byte {position} is not integer-linear in x and y"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parse a term expression into its atom product form.
pub fn parse_term(input: &str) -> Result<TermExpr, ParseError> {
    let mut p = Parser::new(input);
    let folded = p.parse_sum()?;
    p.finish()?;
    Ok(folded.into_expr())
}

/// Parse an expression that must fold to a plain rational function.
pub fn parse_rational(input: &str) -> Result<RatXY, ParseError> {
    let mut p = Parser::new(input);
    let start = p.peek_pos();
    let folded = p.parse_sum()?;
    p.finish()?;
    if !folded.is_rational() {
        return Err(ParseError::Syntax {
            position: start,
            expected: "a rational expression in x and y".into(),
        });
    }
    Ok(folded.coeff)
}

/// Parse an expression that must fold to a polynomial in x alone.
pub fn parse_x_polynomial(input: &str) -> Result<PolyX, ParseError> {
    let q = parse_rational(input)?;
    let err = || ParseError::Syntax {
        position: 0,
        expected: "a polynomial in x".into(),
    };
    let num = q.as_polynomial().ok_or_else(err)?;
    if num.degree() > Some(0) {
        return Err(err());
    }
    let c = num.coeff(0);
    let poly = c.as_polynomial().ok_or_else(err)?;
    Ok(poly.clone())
}

/// A partially folded product: rational prefactor times special factors.
struct Folded {
    coeff: RatXY,
    atoms: Vec<(TermAtom, i64)>,
}

impl Folded {
    fn rational(coeff: RatXY) -> Folded {
        Folded { coeff, atoms: Vec::new() }
    }

    fn atom(atom: TermAtom) -> Folded {
        Folded { coeff: ratxy_rat(Rat::one()), atoms: vec![(atom, 1)] }
    }

    fn is_rational(&self) -> bool {
        self.atoms.is_empty()
    }

    fn mul(&mut self, rhs: Folded) {
        self.coeff = self.coeff.mul(&rhs.coeff);
        self.atoms.extend(rhs.atoms);
    }

    fn div(&mut self, rhs: Folded, op_pos: usize) -> Result<(), ParseError> {
        if rhs.coeff.is_zero() {
            return Err(ParseError::Syntax {
                position: op_pos,
                expected: "a nonzero divisor".into(),
            });
        }
        self.coeff = self.coeff.div(&rhs.coeff);
        for (atom, e) in rhs.atoms {
            self.atoms.push((atom, -e));
        }
        Ok(())
    }

    fn pow(&mut self, k: i64, op_pos: usize) -> Result<(), ParseError> {
        if k < 0 && self.coeff.is_zero() {
            return Err(ParseError::Syntax {
                position: op_pos,
                expected: "a nonzero base for a negative exponent".into(),
            });
        }
        self.coeff = ratxy_pow(&self.coeff, k);
        for (_, e) in &mut self.atoms {
            *e *= k;
        }
        self.atoms.retain(|(_, e)| *e != 0);
        Ok(())
    }

    fn into_expr(self) -> TermExpr {
        let Folded { coeff, atoms } = self;
        let mut factors = Vec::new();
        if atoms.is_empty() || !is_ratxy_one(&coeff) {
            factors.push((TermAtom::Rational(coeff), 1));
        }
        factors.extend(atoms);
        TermExpr::new(factors)
    }
}

enum Exponent {
    Int(i64),
    Linear(LinArg),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Parser<'a> {
        Parser { src: input.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, expected: expected.into() }
    }

    fn expect(&mut self, c: u8, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return Err(self.error("end of input or an operator"));
        }
        Ok(())
    }

    fn parse_sum(&mut self) -> Result<Folded, ParseError> {
        let mut acc = self.parse_product()?;
        loop {
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok(acc),
            };
            let op_pos = self.pos;
            self.pos += 1;
            let rhs = self.parse_product()?;
            if !acc.is_rational() || !rhs.is_rational() {
                return Err(ParseError::Syntax {
                    position: op_pos,
                    expected: "rational operands around '+' or '-'".into(),
                });
            }
            acc.coeff = if negate {
                acc.coeff.sub(&rhs.coeff)
            } else {
                acc.coeff.add(&rhs.coeff)
            };
        }
    }

    fn parse_product(&mut self) -> Result<Folded, ParseError> {
        let mut acc = self.parse_signed()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_signed()?;
                    acc.mul(rhs);
                }
                Some(b'/') => {
                    let op_pos = self.pos;
                    self.pos += 1;
                    let rhs = self.parse_signed()?;
                    acc.div(rhs, op_pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_signed(&mut self) -> Result<Folded, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let mut inner = self.parse_signed()?;
                inner.coeff = inner.coeff.neg();
                Ok(inner)
            }
            Some(b'+') => {
                self.pos += 1;
                self.parse_signed()
            }
            _ => self.parse_power(),
        }
    }

    fn parse_power(&mut self) -> Result<Folded, ParseError> {
        let base_pos = self.peek_pos();
        let mut base = self.parse_primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let op_pos = self.pos;
        self.pos += 1;
        match self.parse_exponent()? {
            Exponent::Int(k) => {
                base.pow(k, op_pos)?;
                Ok(base)
            }
            Exponent::Linear(arg) => {
                let c = rational_constant(&base).ok_or_else(|| ParseError::Syntax {
                    position: base_pos,
                    expected: "a constant rational base under a symbolic exponent".into(),
                })?;
                Ok(Folded::atom(TermAtom::Power(c, arg)))
            }
        }
    }

    fn parse_exponent(&mut self) -> Result<Exponent, ParseError> {
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => Ok(Exponent::Int(self.parse_int()?)),
            Some(b'x') if !self.ident_continues(1) => {
                self.pos += 1;
                Ok(Exponent::Linear(LinArg::of_ints(1, 0, 0)))
            }
            Some(b'y') if !self.ident_continues(1) => {
                self.pos += 1;
                Ok(Exponent::Linear(LinArg::of_ints(0, 1, 0)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner_pos = self.peek_pos();
                let inner = self.parse_sum()?;
                self.expect(b')', "')'")?;
                Ok(Exponent::Linear(to_lin_arg(inner, inner_pos)?))
            }
            _ => Err(self.error("an integer, a variable, or a parenthesized linear form")),
        }
    }

    fn ident_continues(&self, offset: usize) -> bool {
        matches!(
            self.src.get(self.pos + offset),
            Some(c) if c.is_ascii_alphanumeric() || *c == b'_'
        )
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i64>().map_err(|_| ParseError::Syntax {
            position: start,
            expected: "a smaller integer".into(),
        })
    }

    fn parse_primary(&mut self) -> Result<Folded, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                self.expect(b')', "')'")?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut n = Rat::zero();
                while let Some(c) = self.src.get(self.pos).copied() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    n = n * rat_int(10) + rat_int((c - b'0') as i64);
                    self.pos += 1;
                }
                Ok(Folded::rational(ratxy_rat(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_name(),
            _ => Err(self.error(
                "a factor (number, x, y, Factorial, Binomial, Pochhammer, or parentheses)",
            )),
        }
    }

    fn parse_name(&mut self) -> Result<Folded, ParseError> {
        let start = self.pos;
        while self.ident_continues(0) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match name {
            "x" => Ok(Folded::rational(RatFun::from_poly(bivar(&[(1, 1, 0)])))),
            "y" => Ok(Folded::rational(RatFun::from_poly(bivar(&[(1, 0, 1)])))),
            "Factorial" => {
                self.expect(b'(', "'('")?;
                let arg = self.parse_lin_argument()?;
                self.expect(b')', "')'")?;
                Ok(Folded::atom(TermAtom::Factorial(arg)))
            }
            "Binomial" => {
                self.expect(b'(', "'('")?;
                let top = self.parse_lin_argument()?;
                self.expect(b',', "','")?;
                let bottom = self.parse_lin_argument()?;
                self.expect(b')', "')'")?;
                Ok(Folded::atom(TermAtom::Binomial(top, bottom)))
            }
            "Pochhammer" => {
                self.expect(b'(', "'('")?;
                let base = self.parse_lin_argument()?;
                self.expect(b',', "','")?;
                let count = self.parse_lin_argument()?;
                self.expect(b')', "')'")?;
                Ok(Folded::atom(TermAtom::Pochhammer(base, count)))
            }
            _ => Err(ParseError::Syntax {
                position: start,
                expected: "x, y, Factorial, Binomial, or Pochhammer".into(),
            }),
        }
    }

    fn parse_lin_argument(&mut self) -> Result<LinArg, ParseError> {
        let start = self.peek_pos();
        let folded = self.parse_sum()?;
        to_lin_arg(folded, start)
    }
}

fn ratxy_rat(c: Rat) -> RatXY {
    RatFun::constant(RatFun::constant(c))
}

fn is_ratxy_one(q: &RatXY) -> bool {
    q.num().is_one() && q.den().is_one()
}

/// The value of a folded expression when it is a rational constant.
fn rational_constant(f: &Folded) -> Option<Rat> {
    if !f.is_rational() {
        return None;
    }
    let num = f.coeff.as_polynomial()?;
    if num.degree() > Some(0) {
        return None;
    }
    let c = num.coeff(0);
    let poly = c.as_polynomial()?;
    if poly.degree() > Some(0) {
        return None;
    }
    Some(poly.coeff(0))
}

/// Extract `lambda*x + mu*y + c` with integer slopes from a folded value.
fn to_lin_arg(f: Folded, pos: usize) -> Result<LinArg, ParseError> {
    let fail = ParseError::NonIntegerLinear { position: pos };
    if !f.is_rational() {
        return Err(fail);
    }
    let num = f.coeff.as_polynomial().ok_or_else(|| fail.clone())?;
    if num.degree() > Some(1) {
        return Err(fail);
    }
    let mu = rat_slope(&num.coeff(1)).ok_or_else(|| fail.clone())?;
    let base = num.coeff(0);
    let poly = base.as_polynomial().ok_or_else(|| fail.clone())?;
    if poly.degree() > Some(1) {
        return Err(fail);
    }
    let lambda = poly
        .coeff(1)
        .is_integer()
        .then(|| poly.coeff(1).numer().to_i64())
        .flatten()
        .ok_or(fail)?;
    Ok(LinArg::new(lambda, mu, poly.coeff(0)))
}

/// An x-free integer value of a coefficient, as needed for a y-slope.
fn rat_slope(c: &hyperct::algebra::xy::RatX) -> Option<i64> {
    let poly = c.as_polynomial()?;
    if poly.degree() > Some(0) {
        return None;
    }
    let v = poly.coeff(0);
    if !v.is_integer() {
        return None;
    }
    v.numer().to_i64()
}

/// Print a term in the canonical text form accepted by [`parse_term`].
///
/// Parsing the output reproduces the folded atom product, so
/// `canonical(parse_term(s))` is a fixed point of reparsing for every
/// accepted input `s`.
pub fn canonical(expr: &TermExpr) -> String {
    let mut parts = Vec::new();
    for (atom, e) in &expr.factors {
        if *e == 0 {
            continue;
        }
        match atom {
            TermAtom::Rational(q) => {
                let value = if *e == 1 { q.clone() } else { ratxy_pow(q, *e) };
                parts.push(rational_group(&value));
            }
            TermAtom::Factorial(arg) => {
                parts.push(powered(format!("Factorial({})", lin_text(arg)), *e));
            }
            TermAtom::Binomial(top, bottom) => {
                parts.push(powered(
                    format!("Binomial({}, {})", lin_text(top), lin_text(bottom)),
                    *e,
                ));
            }
            TermAtom::Pochhammer(base, count) => {
                parts.push(powered(
                    format!("Pochhammer({}, {})", lin_text(base), lin_text(count)),
                    *e,
                ));
            }
            TermAtom::Power(base, arg) => {
                let scaled = LinArg::new(
                    arg.lambda * *e,
                    arg.mu * *e,
                    arg.constant.clone() * rat_int(*e),
                );
                parts.push(format!("{}^{}", power_base(base), exponent_text(&scaled)));
            }
        }
    }
    if parts.is_empty() {
        return "1".into();
    }
    parts.join(" * ")
}

fn powered(atom: String, e: i64) -> String {
    if e == 1 {
        atom
    } else {
        format!("{atom}^{e}")
    }
}

fn rational_group(q: &RatXY) -> String {
    let text = format!("{q}");
    if text.contains(' ') || text.starts_with('-') {
        format!("({text})")
    } else {
        text
    }
}

fn lin_text(arg: &LinArg) -> String {
    format!("{}", arg.as_poly())
}

fn power_base(base: &Rat) -> String {
    if base.is_integer() && base >= &Rat::zero() {
        format!("{base}")
    } else {
        format!("({base})")
    }
}

fn exponent_text(arg: &LinArg) -> String {
    if arg.lambda == 1 && arg.mu == 0 && arg.constant.is_zero() {
        "x".into()
    } else if arg.lambda == 0 && arg.mu == 1 && arg.constant.is_zero() {
        "y".into()
    } else {
        format!("({})", arg.as_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reparses_to_itself(input: &str) {
        let first = parse_term(input).unwrap();
        let text = canonical(&first);
        let second = parse_term(&text).unwrap();
        assert_eq!(second, first, "round trip changed the term for {input:?}");
        assert_eq!(canonical(&second), text);
    }

    #[test]
    fn binomial_parses_to_a_single_atom() {
        let expr = parse_term("Binomial(x,y)").unwrap();
        let expected = TermAtom::Binomial(LinArg::of_ints(1, 0, 0), LinArg::of_ints(0, 1, 0));
        assert_eq!(expr.factors, vec![(expected, 1)]);
    }

    #[test]
    fn mixed_product_folds_to_three_factors() {
        let expr = parse_term("(x+1)/(y+2) * 3^y * Factorial(2*x - y)").unwrap();
        assert_eq!(expr.factors.len(), 3);
        match &expr.factors[0].0 {
            TermAtom::Rational(q) => {
                assert_eq!(format!("{}", q.num()), "x + 1");
                assert_eq!(format!("{}", q.den()), "y + 2");
            }
            other => panic!("expected a rational prefactor, got {other:?}"),
        }
        assert_eq!(
            expr.factors[1].0,
            TermAtom::Power(rat_int(3), LinArg::of_ints(0, 1, 0))
        );
        assert_eq!(
            expr.factors[2].0,
            TermAtom::Factorial(LinArg::of_ints(2, -1, 0))
        );
    }

    #[test]
    fn non_linear_arguments_are_rejected() {
        match parse_term("Factorial(x*y)") {
            Err(ParseError::NonIntegerLinear { position }) => assert_eq!(position, 10),
            other => panic!("expected a non-integer-linear rejection, got {other:?}"),
        }
        assert!(matches!(
            parse_term("Binomial(x/2, y)"),
            Err(ParseError::NonIntegerLinear { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_the_position() {
        match parse_term("x + * y") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(parse_term("").is_err());
        assert!(parse_term("x + ").is_err());
        assert!(parse_term("Gamma(x)").is_err());
    }

    #[test]
    fn sums_must_stay_rational() {
        assert!(matches!(
            parse_term("Factorial(x) + y"),
            Err(ParseError::Syntax { position: 13, .. })
        ));
    }

    #[test]
    fn integer_exponents_fold_into_the_value() {
        let squared = parse_term("Binomial(x,y)^2").unwrap();
        assert_eq!(squared.factors[0].1, 2);

        let cancelled = parse_term("(x+1)^3 / (x+1)^3").unwrap();
        assert_eq!(cancelled.factors.len(), 1);
        match &cancelled.factors[0].0 {
            TermAtom::Rational(q) => assert!(is_ratxy_one(q)),
            other => panic!("expected the constant 1, got {other:?}"),
        }

        let eight = parse_term("2^3").unwrap();
        match &eight.factors[0].0 {
            TermAtom::Rational(q) => assert_eq!(rational_constant(
                &Folded::rational(q.clone())
            ), Some(rat_int(8))),
            other => panic!("expected a constant, got {other:?}"),
        }
    }

    #[test]
    fn symbolic_exponents_need_constant_bases() {
        let geo = parse_term("2^(x + 2*y)").unwrap();
        assert_eq!(
            geo.factors,
            vec![(TermAtom::Power(rat_int(2), LinArg::of_ints(1, 2, 0)), 1)]
        );
        assert!(matches!(parse_term("x^y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_term("Factorial(y)^x"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn division_by_zero_is_a_syntax_error() {
        assert!(parse_term("x / 0").is_err());
        assert!(parse_term("x / (y - y)").is_err());
        assert!(parse_term("0^-1").is_err());
    }

    #[test]
    fn rational_parser_rejects_special_factors() {
        assert!(parse_rational("(y)/(y - x - 1)").is_ok());
        assert!(parse_rational("Factorial(y)").is_err());
    }

    #[test]
    fn x_polynomials_reject_y_and_denominators() {
        let p = parse_x_polynomial("x^2 - 1/2").unwrap();
        assert_eq!(format!("{p}"), "x^2 - 1/2");
        assert!(parse_x_polynomial("y").is_err());
        assert!(parse_x_polynomial("1/x").is_err());
    }

    #[test]
    fn canonical_output_reparses_to_the_same_term() {
        for input in [
            "Binomial(x,y)",
            "(x+1)/(y+2) * 3^y * Factorial(2*x - y)",
            "2^(x+2*y)",
            "(y)/(y - x - 1)",
            "Pochhammer(x+1, y)^2 / Factorial(y)^3",
            "2*x^2 - x + 3/4",
            "-x * Factorial(-x + y)",
            "Binomial(2*x, y)^-2 * (1/3)^y",
            "1",
        ] {
            reparses_to_itself(input);
        }
    }

    #[test]
    fn canonical_handles_negative_and_fractional_pieces() {
        let expr = parse_term("(-2)^y * Factorial(y)^-2").unwrap();
        let text = canonical(&expr);
        assert_eq!(text, "(-2)^y * Factorial(y)^-2");
        reparses_to_itself(&text);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let tight = parse_term("Binomial(x,y)/Factorial(y)").unwrap();
        let loose = parse_term("  Binomial( x , y )  /  Factorial( y ) ").unwrap();
        assert_eq!(tight, loose);
    }
}
