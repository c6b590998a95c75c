//! Dense univariate polynomials over `k`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::{FieldSpec, Scalar};
use crate::{modgcd, zpoly};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![c.field().zero(); n];
        coeffs.push(c);
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The coefficients as rationals when the field is `Q`.
    fn rationals(&self) -> Option<Vec<BigRational>> {
        self.coeffs
            .iter()
            .map(|c| match c {
                Scalar::Q(v) => Some(v.clone()),
                Scalar::Fp(..) => None,
            })
            .collect()
    }

    fn from_rationals(cs: Vec<BigRational>) -> Poly {
        Poly::from_coeffs(cs.into_iter().map(Scalar::Q).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Constant term, `None` if the polynomial is zero.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    /// Order of vanishing at `x = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `x^n`. The caller guarantees `valuation >= n`.
    pub fn shift_down(&self, n: usize) -> Poly {
        debug_assert!(self.is_zero() || self.valuation().unwrap() >= n);
        Poly {
            coeffs: self.coeffs.iter().skip(n).cloned().collect(),
        }
    }

    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let f = self.coeffs[0].field();
        let mut coeffs = vec![f.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add(s);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let (Some(a), Some(b)) = (self.rationals(), other.rationals()) {
            let ((ai, ad), (bi, bd)) = (zpoly::to_int(&a), zpoly::to_int(&b));
            return Poly::from_rationals(zpoly::from_int(zpoly::mul(&ai, &bi), &(ad * bd)));
        }
        let f = self.coeffs[0].field();
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let lead_inv = divisor
            .leading()
            .expect("division by the zero polynomial")
            .inv()
            .expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        if let (Some(a), Some(b)) = (self.rationals(), divisor.rationals()) {
            let ((ai, ad), (bi, bd)) = (zpoly::to_int(&a), zpoly::to_int(&b));
            let (q, r, k) = zpoly::pseudo_div(&ai, &bi);
            let scale = bi[dd].pow(k) * ad;
            let q: Vec<BigInt> = q.into_iter().map(|c| c * &bd).collect();
            return (
                Poly::from_rationals(zpoly::from_int(q, &scale)),
                Poly::from_rationals(zpoly::from_int(r, &scale)),
            );
        }
        let f = lead_inv.field();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return self.add(other).monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Poly::constant(self.coeffs[0].field().one());
        }
        if let (Some(a), Some(b)) = (self.rationals(), other.rationals()) {
            return Poly::from_rationals(modgcd::gcd_q(&a, &b));
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval_at_zero(&self, field: FieldSpec) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_else(|| field.zero())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if n == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
