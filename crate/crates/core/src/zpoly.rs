//! Integer-coefficient kernels for `Q[x]`. A rational polynomial is handled
//! as an integer polynomial over one common denominator, so products and
//! divisions normalize each output coefficient once instead of after every
//! multiply-add.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `a = ints / den`.
pub(crate) fn to_int(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() {
            acc
        } else {
            acc.lcm(c.denom())
        }
    });
    let ints = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

pub(crate) fn from_int(ints: Vec<BigInt>, den: &BigInt) -> Vec<BigRational> {
    ints.into_iter()
        .map(|c| BigRational::new(c, den.clone()))
        .collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Pseudo-division: `lc(b)^k a = q b + r` with `k = deg a - deg b + 1` and
/// `deg r < deg b`. Requires `deg a >= deg b`.
pub(crate) fn pseudo_div(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, u32) {
    let db = b.len() - 1;
    let l = &b[db];
    let k = a.len() - db;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); k];
    for i in (0..k).rev() {
        let c = r[i + db].clone();
        for qj in q.iter_mut().skip(i + 1) {
            *qj *= l;
        }
        q[i] = c.clone();
        for rj in r.iter_mut() {
            *rj *= l;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        debug_assert!(r[i + db].is_zero());
        r.pop();
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    (q, r, k as u32)
}

/// Whether `b` divides `a` in `Q[x]`.
pub(crate) fn divides(b: &[BigInt], a: &[BigInt]) -> bool {
    if a.len() < b.len() {
        return a.iter().all(Zero::is_zero);
    }
    pseudo_div(a, b).1.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn pseudo_division_identity() {
        let a = z(&[1, -3, 0, 5, 2]);
        let b = z(&[4, 0, 3]);
        let (q, r, k) = pseudo_div(&a, &b);
        let lhs: Vec<BigInt> = a.iter().map(|c| c * BigInt::from(3).pow(k)).collect();
        let mut rhs = mul(&q, &b);
        for (x, y) in rhs.iter_mut().zip(&r) {
            *x += y;
        }
        assert_eq!(lhs, rhs);
        assert!(r.len() < b.len());
        assert!(divides(&z(&[1, 2]), &z(&[3, 7, 2])));
        assert!(!divides(&z(&[1, 2]), &z(&[3, 7, 3])));
    }
}
