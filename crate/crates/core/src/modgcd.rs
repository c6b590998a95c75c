//! Monic gcd in `Q[x]` by reduction modulo word-sized primes, Chinese
//! remaindering and rational reconstruction. The candidate is accepted only
//! after it divides both inputs exactly, so the result never depends on the
//! choice of primes.
//!
//! Euclid's algorithm over `Q` directly suffers coefficient explosion in the
//! remainder sequence; on the degree 20 to 40 entries that elimination over
//! `R` produces it dominated every other cost.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::is_prime;
use crate::zpoly;

/// Integer polynomial, ascending degree, no trailing zeros.
type ZPoly = Vec<BigInt>;
/// Polynomial mod `p`, ascending degree, no trailing zeros.
type PPoly = Vec<u64>;

/// Clears denominators and divides out the content.
fn primitive(a: &[BigRational]) -> ZPoly {
    let z = zpoly::to_int(a).0;
    let g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    z.into_iter().map(|c| c / &g).collect()
}

fn trim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn reduce_mod(a: &ZPoly, p: u64) -> PPoly {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue"))
            .collect(),
    )
}

fn monic_mod(a: PPoly, p: u64) -> PPoly {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv_mod(l, p);
            a.into_iter().map(|c| c * li % p).collect()
        }
    }
}

fn rem_mod(mut a: PPoly, b: &PPoly, p: u64) -> PPoly {
    let db = b.len() - 1;
    let li = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * li % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let k = top - db + j;
                a[k] = (a[k] + p - c * bj % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn gcd_mod(a: PPoly, b: PPoly, p: u64) -> PPoly {
    let (mut a, mut b) = (monic_mod(a, p), monic_mod(b, p));
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = monic_mod(r, p);
    }
    a
}

/// `r/s` with `r = s u mod m` and `|r|, |s| <= sqrt(m/2)`, if it exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Primes below `2^31`, descending, found once. Reconstruction needs only a
/// handful per call; the list is extended lazily in the rare case it runs out.
fn primes() -> impl Iterator<Item = u64> {
    static FIRST: OnceLock<Vec<u64>> = OnceLock::new();
    let first = FIRST.get_or_init(|| {
        (1u64 << 30..1u64 << 31)
            .rev()
            .filter(|&p| is_prime(p))
            .take(64)
            .collect()
    });
    let last = *first.last().unwrap();
    first
        .iter()
        .copied()
        .chain((1u64 << 20..last).rev().filter(|&p| is_prime(p)))
}

/// Monic gcd of two nonzero polynomials over `Q`, coefficients ascending.
pub(crate) fn gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (za, zb) = (primitive(a), primitive(b));
    let lc = za.last().unwrap() * zb.last().unwrap();
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut degree = usize::MAX;

    for p in primes() {
        if (&lc % p).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce_mod(&za, p), reduce_mod(&zb, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigRational::one()];
        }
        if d > degree {
            continue;
        }
        if d < degree {
            degree = d;
            modulus = BigInt::one();
            residues = vec![BigInt::zero(); d + 1];
        }
        // x = r + M ((g - r) M^-1 mod p)
        let m_inv = inv_mod((&modulus % p).to_u64().unwrap(), p);
        for (r, &gi) in residues.iter_mut().zip(&g) {
            let rp = (&*r % p).to_u64().unwrap();
            let t = (gi + p - rp) % p * m_inv % p;
            *r += &modulus * t;
        }
        modulus *= p;

        let candidate: Option<Vec<BigRational>> = residues
            .iter()
            .map(|r| rational_reconstruction(r, &modulus))
            .collect();
        if let Some(c) = candidate {
            let g = primitive(&c);
            if zpoly::divides(&g, &za) && zpoly::divides(&g, &zb) {
                return c;
            }
        }
    }
    unreachable!("prime supply exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[(i64, i64)]) -> Vec<BigRational> {
        cs.iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect()
    }

    #[test]
    fn common_factor_is_found() {
        // (1 + 2x)(3 - x/2) and (1 + 2x)(5 + x^2)
        let a = q(&[(3, 1), (11, 2), (-1, 1)]);
        let b = q(&[(5, 1), (10, 1), (1, 1), (2, 1)]);
        assert_eq!(gcd_q(&a, &b), q(&[(1, 2), (1, 1)]));
    }

    #[test]
    fn coprime_and_equal_inputs() {
        let a = q(&[(1, 1), (1, 1)]);
        let b = q(&[(2, 1), (1, 1)]);
        assert_eq!(gcd_q(&a, &b), q(&[(1, 1)]));
        let c = q(&[(2, 3), (0, 1), (7, 5)]);
        assert_eq!(gcd_q(&c, &c), q(&[(10, 21), (0, 1), (1, 1)]));
    }
}
