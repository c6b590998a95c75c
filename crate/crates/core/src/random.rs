//! Seeded generators for property checks: units, basis changes, labelled
//! block sums and quasi-periodic data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{block_sum, IndecompLabel, IndecompMultiset};
use crate::complex::{ChainMap2, TwoPeriodicComplex};
use crate::elem::LocalElem;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::minimal::{trivial_complex, TrivialCounts, TrivialType};
use crate::poly::Poly;
use crate::strictify::QuasiPeriodicData;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(field: FieldSpec, rng: &mut TestRng) -> i64 {
    match field {
        FieldSpec::Rationals => rng.gen_range(-4..=4),
        FieldSpec::Prime(p) => rng.gen_range(0..p as i64),
    }
}

fn nonzero(field: FieldSpec, rng: &mut TestRng) -> i64 {
    loop {
        let c = small(field, rng);
        if !field.from_i64(c).is_zero() {
            return c;
        }
    }
}

/// `c0 + c1 x` with `c0 != 0`.
pub fn unit(field: FieldSpec, rng: &mut TestRng) -> LocalElem {
    let c0 = field.from_i64(nonzero(field, rng));
    let c1 = field.from_i64(small(field, rng));
    LocalElem::from_poly(field, Poly::from_coeffs(vec![c0, c1]))
}

/// Zero with probability about 1/3, otherwise `unit * x^v` with `v <= max_val`.
pub fn element(field: FieldSpec, rng: &mut TestRng, max_val: usize) -> LocalElem {
    if rng.gen_ratio(1, 3) {
        return LocalElem::zero(field);
    }
    let v = rng.gen_range(0..=max_val);
    unit(field, rng).mul(&LocalElem::x_pow(field, v))
}

/// A random invertible `n x n` matrix `L D U` and its inverse. `L`, `U` are
/// unitriangular with entries from [`element`]; `D` has constant diagonal,
/// which keeps `P^-1` polynomial and entry degrees moderate.
pub fn invertible(
    field: FieldSpec,
    n: usize,
    rng: &mut TestRng,
    max_val: usize,
) -> (RMatrix, RMatrix) {
    let tri = |lower: bool, rng: &mut TestRng| {
        let mut m = RMatrix::identity(field, n);
        for i in 0..n {
            for j in 0..n {
                if (lower && i > j) || (!lower && i < j) {
                    m[(i, j)] = element(field, rng, max_val);
                }
            }
        }
        m
    };
    let l = tri(true, rng);
    let u = tri(false, rng);
    let mut d = RMatrix::identity(field, n);
    for i in 0..n {
        d[(i, i)] = LocalElem::from_i64(field, nonzero(field, rng));
    }
    let p = l.mul(&d).mul(&u);
    let p_inv = p.inverse().expect("product of invertible factors");
    (p, p_inv)
}

/// `X` conjugated by random basis changes, with the isomorphism `X -> X'`.
pub fn conjugate(x: &TwoPeriodicComplex, rng: &mut TestRng, max_val: usize) -> ChainMap2 {
    let f = x.field();
    let (p0, p0_inv) = invertible(f, x.r0(), rng, max_val);
    let (p1, p1_inv) = invertible(f, x.r1(), rng, max_val);
    let y = x.conjugate(&p0, &p0_inv, &p1, &p1_inv);
    ChainMap2::new(x.clone(), y, p0, p1).expect("conjugation is a chain isomorphism")
}

/// Between one and `max_labels` labels with `1 <= j <= max_j`.
pub fn labels(rng: &mut TestRng, max_labels: usize, max_j: usize) -> IndecompMultiset {
    let n = rng.gen_range(1..=max_labels);
    IndecompMultiset::from_labels(
        (0..n).map(|_| IndecompLabel::new(rng.gen_range(1..=max_j), rng.gen_bool(0.5))),
    )
}

pub fn trivials(rng: &mut TestRng, max_total: usize) -> TrivialCounts {
    let total = rng.gen_range(0..=max_total);
    let type1 = rng.gen_range(0..=total);
    TrivialCounts {
        type1,
        type2: total - type1,
    }
}

/// `block_sum(m) ⊕ Type1^a ⊕ Type2^b`.
pub fn labelled_sum(
    field: FieldSpec,
    m: &IndecompMultiset,
    t: TrivialCounts,
) -> TwoPeriodicComplex {
    block_sum(field, m)
        .direct_sum(&trivial_complex(field, TrivialType::Type1, t.type1))
        .and_then(|x| x.direct_sum(&trivial_complex(field, TrivialType::Type2, t.type2)))
        .expect("same field")
}

/// A conjugated labelled sum with known multiset.
#[derive(Clone, Debug)]
pub struct Instance {
    pub multiset: IndecompMultiset,
    pub trivials: TrivialCounts,
    pub complex: TwoPeriodicComplex,
}

pub fn instance(
    field: FieldSpec,
    rng: &mut TestRng,
    max_labels: usize,
    max_j: usize,
    max_trivials: usize,
) -> Instance {
    let multiset = labels(rng, max_labels, max_j);
    let trivials = trivials(rng, max_trivials);
    let plain = labelled_sum(field, &multiset, trivials);
    let complex = conjugate(&plain, rng, 3).dst().clone();
    Instance {
        multiset,
        trivials,
        complex,
    }
}

/// Valid quasi-periodic data built from a random minimal complex `X`:
/// `α¹ = d1`, `α⁰ = d0 φ₀` for random invertible `φ₀`, `φ₁`.
pub fn quasi_periodic(
    field: FieldSpec,
    rng: &mut TestRng,
    max_labels: usize,
    max_j: usize,
) -> QuasiPeriodicData {
    let m = labels(rng, max_labels, max_j);
    let x = conjugate(&block_sum(field, &m), rng, 2).dst().clone();
    let (phi0, _) = invertible(field, x.r0(), rng, 2);
    let (phi1, _) = invertible(field, x.r1(), rng, 2);
    QuasiPeriodicData {
        alpha0: x.d0().mul(&phi0),
        alpha1: x.d1().clone(),
        phi0,
        phi1,
    }
}

/// A random `R`-linear combination of maps with common endpoints.
pub fn combination(maps: &[ChainMap2], rng: &mut TestRng, max_val: usize) -> Option<ChainMap2> {
    let first = maps.first()?;
    let f = first.src().field();
    let mut acc = ChainMap2::zero(first.src(), first.dst());
    for m in maps {
        acc = acc.add(&m.scale(&element(f, rng, max_val))).ok()?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_invertible() {
        let f = FieldSpec::Rationals;
        let (a, a_inv) = invertible(f, 3, &mut rng(7), 3);
        let (b, _) = invertible(f, 3, &mut rng(7), 3);
        assert_eq!(a, b);
        assert!(a.mul(&a_inv).is_identity());
        let p = FieldSpec::prime(101).unwrap();
        let (c, c_inv) = invertible(p, 4, &mut rng(1), 3);
        assert!(c_inv.mul(&c).is_identity());
    }

    #[test]
    fn instance_has_expected_ranks() {
        let mut r = rng(3);
        let inst = instance(FieldSpec::Rationals, &mut r, 4, 5, 2);
        let n = inst.multiset.len() + inst.trivials.total();
        assert_eq!(inst.complex.ranks(), (n, n));
    }
}
