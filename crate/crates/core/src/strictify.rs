//! Quasi-periodic data to honest 2-periodic complexes.
//!
//! The data `(α⁰, α¹, φ₀, φ₁)` generates a doubly infinite complex `F` with
//! `F^i = F^{i mod 2}`, `φ_i = φ_{i mod 2}` and `α^{i+2} = φ_{i+1} α^i φ_i⁻¹`.
//! The strict complex has `∂^odd = α¹`, `∂^even = α⁰ φ₀⁻¹`, and the chain
//! isomorphism to `F` is `f_{2n} = φ₀^{n-1}`, `f_{2n+1} = φ₁^n`.

use std::collections::BTreeMap;

use crate::complex::TwoPeriodicComplex;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::minimal::is_minimal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPeriodicData {
    /// `α⁰: F⁰ -> F¹`, `r1 x r0`.
    pub alpha0: RMatrix,
    /// `α¹: F¹ -> F²`, `r0 x r1`.
    pub alpha1: RMatrix,
    /// `φ₀: F⁰ -> F²`, `r0 x r0`.
    pub phi0: RMatrix,
    /// `φ₁: F¹ -> F³`, `r1 x r1`.
    pub phi1: RMatrix,
}

/// Checked data with the inverses of `φ₀`, `φ₁` computed once.
struct Prepared {
    phi_inv: [RMatrix; 2],
}

impl QuasiPeriodicData {
    pub fn field(&self) -> FieldSpec {
        self.alpha0.field()
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.alpha0.cols(), self.alpha0.rows())
    }

    fn prepare(&self) -> Result<Prepared, Error> {
        let f = self.field();
        for m in [&self.alpha1, &self.phi0, &self.phi1] {
            if m.field() != f {
                return Err(Error::FieldMismatch(f, m.field()));
            }
        }
        let (r0, r1) = self.ranks();
        let shapes = [
            ("alpha1", &self.alpha1, (r0, r1)),
            ("phi0", &self.phi0, (r0, r0)),
            ("phi1", &self.phi1, (r1, r1)),
        ];
        for (name, m, want) in shapes {
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        let phi0_inv = self
            .phi0
            .inverse()
            .map_err(|_| Error::NotInvertible("phi0"))?;
        let phi1_inv = self
            .phi1
            .inverse()
            .map_err(|_| Error::NotInvertible("phi1"))?;
        if let Some((i, j, e)) = self.alpha1.mul(&self.alpha0).first_nonzero() {
            return Err(Error::NotAComplex(format!(
                "alpha1*alpha0 has {e} at ({i}, {j})"
            )));
        }
        let twisted = self.alpha0.mul(&phi0_inv).mul(&self.alpha1);
        if let Some((i, j, e)) = twisted.first_nonzero() {
            return Err(Error::NotAComplex(format!(
                "alpha0*phi0^-1*alpha1 has {e} at ({i}, {j})"
            )));
        }
        let unit_in = |m: &RMatrix| m.entries().any(|e| e.is_unit());
        if unit_in(&self.alpha0) {
            return Err(Error::NotMinimal("alpha0"));
        }
        if unit_in(&self.alpha1) {
            return Err(Error::NotMinimal("alpha1"));
        }
        Ok(Prepared {
            phi_inv: [phi0_inv, phi1_inv],
        })
    }
}

/// `d1 = α¹`, `d0 = α⁰ φ₀⁻¹`.
pub fn strictify(q: &QuasiPeriodicData) -> Result<TwoPeriodicComplex, Error> {
    let p = q.prepare()?;
    let x = TwoPeriodicComplex::new(q.alpha0.mul(&p.phi_inv[0]), q.alpha1.clone())?;
    debug_assert!(is_minimal(&x));
    Ok(x)
}

/// The comparison maps `f_n: X^n -> F^n` for `-N-1 <= n <= N`, with the
/// ambient differentials `α^n` generated by the recursion.
#[derive(Clone, Debug)]
pub struct WindowMap {
    pub radius: usize,
    pub strict: TwoPeriodicComplex,
    pub f: BTreeMap<i64, RMatrix>,
    pub alpha: BTreeMap<i64, RMatrix>,
}

impl WindowMap {
    /// Positions `n` with `|n| <= N` where `α^{n-1} f_{n-1} = f_n ∂^{n-1}` fails.
    pub fn failures(&self) -> Vec<i64> {
        let r = self.radius as i64;
        (-r..=r)
            .filter(|&n| {
                let lhs = self.alpha[&(n - 1)].mul(&self.f[&(n - 1)]);
                let rhs = self.f[&n].mul(self.strict.differential(n - 1));
                lhs != rhs
            })
            .collect()
    }

    /// Number of positions at which the identity was checked.
    pub fn positions(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn verify(&self) -> bool {
        self.failures().is_empty() && self.f.values().all(RMatrix::is_invertible)
    }
}

fn power(m: &RMatrix, m_inv: &RMatrix, e: i64) -> RMatrix {
    let base = if e >= 0 { m } else { m_inv };
    (0..e.unsigned_abs()).fold(RMatrix::identity(m.field(), m.rows()), |acc, _| {
        acc.mul(base)
    })
}

pub fn window_chain_map(q: &QuasiPeriodicData, radius: usize) -> Result<WindowMap, Error> {
    let p = q.prepare()?;
    let strict = strictify(q)?;
    let r = radius as i64;
    let phi = [&q.phi0, &q.phi1];
    let phi_inv = &p.phi_inv;

    let mut alpha = BTreeMap::new();
    alpha.insert(0, q.alpha0.clone());
    alpha.insert(1, q.alpha1.clone());
    for i in 0..r {
        // α^{i+2} = φ_{i+1} α^i φ_i⁻¹
        let k = i.rem_euclid(2) as usize;
        let next = phi[1 - k].mul(&alpha[&i]).mul(&phi_inv[k]);
        alpha.insert(i + 2, next);
    }
    for i in (-r - 2..0).rev() {
        // α^i = φ_{i+1}⁻¹ α^{i+2} φ_i
        let k = i.rem_euclid(2) as usize;
        let prev = phi_inv[1 - k].mul(&alpha[&(i + 2)]).mul(phi[k]);
        alpha.insert(i, prev);
    }

    let mut f = BTreeMap::new();
    for n in (-r - 1)..=r {
        let m = if n.rem_euclid(2) == 0 {
            power(&q.phi0, &phi_inv[0], n.div_euclid(2) - 1)
        } else {
            power(&q.phi1, &phi_inv[1], n.div_euclid(2))
        };
        f.insert(n, m);
    }
    Ok(WindowMap {
        radius,
        strict,
        f,
        alpha,
    })
}
