//! Elements of the discrete valuation ring `R = k[x]_(x)`.
//!
//! An element is a reduced fraction `num / den` with `den(0) = 1`. That
//! normalization makes the representation unique, so derived equality is
//! exact equality in `R`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalElem {
    field: FieldSpec,
    num: Poly,
    den: Poly,
}

impl LocalElem {
    pub fn zero(field: FieldSpec) -> Self {
        LocalElem {
            field,
            num: Poly::zero(),
            den: Poly::constant(field.one()),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        Self::from_poly(field, Poly::constant(field.from_i64(v)))
    }

    pub fn from_scalar(c: Scalar) -> Self {
        let field = c.field();
        Self::from_poly(field, Poly::constant(c))
    }

    pub fn from_poly(field: FieldSpec, num: Poly) -> Self {
        LocalElem {
            field,
            num,
            den: Poly::constant(field.one()),
        }
    }

    /// `x^n`.
    pub fn x_pow(field: FieldSpec, n: usize) -> Self {
        Self::from_poly(field, Poly::monomial(field.one(), n))
    }

    /// Builds `num / den`, failing when `den` vanishes at zero after reduction.
    pub fn from_fraction(field: FieldSpec, num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) || num.is_zero() {
            if num.is_zero() {
                return Ok(Self::zero(field));
            }
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let c0 = den.eval_at_zero(field);
        let c0_inv = c0
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes at x = 0")))?;
        Ok(LocalElem {
            field,
            num: num.scale(&c0_inv),
            den: den.scale(&c0_inv),
        })
    }

    /// Normalizes a fraction whose denominator is known to be a unit.
    fn reduce(field: FieldSpec, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(field);
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs()[0].inv().expect("unit denominator");
            return LocalElem {
                field,
                num: num.scale(&inv),
                den: Poly::constant(field.one()),
            };
        }
        Self::from_fraction(field, num, den).expect("denominator is a unit")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Order at the maximal ideal `(x)`; `None` stands for `+inf` (the zero
    /// element).
    pub fn valuation(&self) -> Option<usize> {
        self.num.valuation()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Image in the residue field `k = R / (x)`.
    pub fn residue(&self) -> Scalar {
        // den(0) = 1
        self.num.eval_at_zero(self.field)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_poly(self.field, num);
            }
            return Self::reduce(self.field, num, self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = self.den.gcd(&other.den);
        if g.degree() == Some(0) {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::coprime(self.field, num, self.den.mul(&other.den));
        }
        let d1 = self.den.div_exact(&g);
        let d2 = other.den.div_exact(&g);
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        let t = num.gcd(&g);
        if t.degree() == Some(0) {
            return Self::coprime(self.field, num, d1.mul(&other.den));
        }
        Self::coprime(
            self.field,
            num.div_exact(&t),
            d1.mul(&other.den.div_exact(&t)),
        )
    }

    /// `num / den` for coprime `num`, `den` with `den(0) != 0`.
    fn coprime(field: FieldSpec, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(field);
        }
        let c0 = den.eval_at_zero(field);
        if c0.is_one() {
            return LocalElem { field, num, den };
        }
        let inv = c0.inv().expect("unit denominator");
        LocalElem {
            field,
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn neg(&self) -> Self {
        LocalElem {
            field: self.field,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.field, self.num.mul(&other.num));
        }
        // Cross-cancel first so the products stay reduced.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        Self::coprime(self.field, num, den)
    }

    /// Inverse in `R`; only units are invertible.
    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        Ok(Self::reduce(self.field, self.den.clone(), self.num.clone()))
    }

    /// `self / other` when the quotient lies in `R`, i.e. when
    /// `valuation(self) >= valuation(other)` and `other != 0`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.check(other);
        let vo = other.valuation()?;
        match self.valuation() {
            None => return Some(Self::zero(self.field)),
            Some(vs) if vs < vo => return None,
            Some(_) => {}
        }
        if other.den.is_one() && other.num.degree() == Some(vo) {
            // other = c * x^v
            let c_inv = other.num.coeffs()[vo].inv().unwrap();
            return Some(Self::reduce(
                self.field,
                self.num.shift_down(vo).scale(&c_inv),
                self.den.clone(),
            ));
        }
        let num = self.num.shift_down(vo).mul(&other.den);
        let den = self.den.mul(&other.num.shift_down(vo));
        Some(Self::reduce(self.field, num, den))
    }

    /// Writes `self = unit * x^v`, returning `(v, unit)`; `None` for zero.
    pub fn split_unit(&self) -> Option<(usize, Self)> {
        let v = self.valuation()?;
        let unit = LocalElem {
            field: self.field,
            num: self.num.shift_down(v),
            den: self.den.clone(),
        };
        Some((v, unit))
    }

    pub fn parse(field: FieldSpec, s: &str) -> Result<Self, Error> {
        let (num, den) = Parser::new(field, s)?.parse_all()?;
        Self::from_fraction(field, num, den)
            .map_err(|e| Error::Parse(format!("{s:?}: {}", e.message())))
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Parses an element over `Q`; use [`LocalElem::parse`] for other fields.
impl FromStr for LocalElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        LocalElem::parse(FieldSpec::Rationals, s)
    }
}

// Recursive-descent parser for rational expressions in `x`. Values are kept as
// fractions over `k(x)` and only checked for membership in `R` at the end, so
// inputs like "x/x" are accepted.

type Frac = (Poly, Poly);

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    field: FieldSpec,
    toks: Vec<Tok>,
    pos: usize,
    src: String,
}

const MAX_EXPONENT: u64 = 4096;

impl Parser {
    fn new(field: FieldSpec, s: &str) -> Result<Self, Error> {
        let mut toks = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                c if c.is_whitespace() => {}
                '0'..='9' => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..=i].iter().collect();
                    toks.push(Tok::Int(digits.parse().unwrap()));
                }
                'x' => toks.push(Tok::X),
                '+' => toks.push(Tok::Plus),
                '-' => toks.push(Tok::Minus),
                '*' => toks.push(Tok::Star),
                '/' => toks.push(Tok::Slash),
                '^' => toks.push(Tok::Caret),
                '(' => toks.push(Tok::LParen),
                ')' => toks.push(Tok::RParen),
                other => {
                    return Err(Error::Parse(format!(
                        "{s:?}: unexpected character {other:?}"
                    )))
                }
            }
            i += 1;
        }
        if toks.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        Ok(Parser {
            field,
            toks,
            pos: 0,
            src: s.to_string(),
        })
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{:?}: {msg} at token {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse_all(mut self) -> Result<Frac, Error> {
        let v = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err("trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Frac, Error> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let neg = match t {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let mut rhs = self.term()?;
            if neg {
                rhs.0 = rhs.0.neg();
            }
            acc = frac_add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, Error> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            let div = match t {
                Tok::Star => false,
                Tok::Slash => true,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            acc = if div {
                if rhs.0.is_zero() {
                    return Err(self.err("division by zero"));
                }
                frac_mul(&acc, &(rhs.1, rhs.0))
            } else {
                frac_mul(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Frac, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return Err(self.err("expected integer exponent")),
            };
            let e: u64 = e
                .try_into()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| self.err("exponent too large"))?;
            let one = Poly::constant(self.field.one());
            let mut acc = (one.clone(), one);
            for _ in 0..e {
                acc = frac_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac, Error> {
        let one = Poly::constant(self.field.one());
        match self.bump() {
            Some(Tok::Int(n)) => Ok((Poly::constant(self.field.from_bigint(&n)), one)),
            Some(Tok::X) => Ok((Poly::monomial(self.field.one(), 1), one)),
            Some(Tok::Minus) => {
                let (n, d) = self.factor()?;
                Ok((n.neg(), d))
            }
            Some(Tok::Plus) => self.factor(),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, x, or '('")),
        }
    }
}

fn frac_add(a: &Frac, b: &Frac) -> Frac {
    let num = a.0.mul(&b.1).add(&b.0.mul(&a.1));
    simplify(num, a.1.mul(&b.1))
}

fn frac_mul(a: &Frac, b: &Frac) -> Frac {
    simplify(a.0.mul(&b.0), a.1.mul(&b.1))
}

fn simplify(num: Poly, den: Poly) -> Frac {
    if den.is_zero() {
        return (num, den);
    }
    let g = num.gcd(&den);
    if g.is_zero() || g.degree() == Some(0) {
        return (num, den);
    }
    (num.div_exact(&g), den.div_exact(&g))
}
