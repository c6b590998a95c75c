//! The 2-periodic tensor product, the internal Hom complex `Hom^c`, the
//! comparison map between them, and Hom modules in the homotopy category.
//!
//! Basis conventions: `X^a ⊗ Y^b` uses `e_i ⊗ e_j` at index `i * rank(Y^b) + j`;
//! `Hom(X^a, Y^b)` uses the matrix units `E_{j,i}` (sending `e_i` to `e_j`) at
//! index `i * rank(Y^b) + j`, i.e. column-major flattening of the matrix.

use crate::elem::LocalElem;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::smith::{homology_invariants, smith_normal_form, solve_with};

use super::{ChainMap2, Homotopy2, TwoPeriodicComplex};

fn id(f: FieldSpec, n: usize) -> RMatrix {
    RMatrix::identity(f, n)
}

fn same_field(x: &TwoPeriodicComplex, y: &TwoPeriodicComplex) -> Result<FieldSpec, Error> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch(x.field(), y.field()));
    }
    Ok(x.field())
}

/// `X ⊗̂ Y` with `∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y`.
///
/// `Z^0 = X^0⊗Y^0 ⊕ X^1⊗Y^1` and `Z^1 = X^0⊗Y^1 ⊕ X^1⊗Y^0`, blocks in that order.
pub fn tensor2(
    x: &TwoPeriodicComplex,
    y: &TwoPeriodicComplex,
) -> Result<TwoPeriodicComplex, Error> {
    let f = same_field(x, y)?;
    let (x0, x1) = x.ranks();
    let (y0, y1) = y.ranks();
    let d0 = RMatrix::block2(
        &id(f, x0).kron(y.d0()),
        &x.d1().kron(&id(f, y1)),
        &x.d0().kron(&id(f, y0)),
        &id(f, x1).kron(y.d1()).neg(),
    );
    let d1 = RMatrix::block2(
        &id(f, x0).kron(y.d1()),
        &x.d1().kron(&id(f, y0)),
        &x.d0().kron(&id(f, y1)),
        &id(f, x1).kron(y.d0()).neg(),
    );
    Ok(TwoPeriodicComplex::from_parts(d0, d1))
}

/// `Hom^c(X, Y)` with `∂f = ∂_Y ∘ f - (-1)^{|f|} f ∘ ∂_X`.
///
/// Degree 0 is `Hom(X^0,Y^0) ⊕ Hom(X^1,Y^1)`, degree 1 is
/// `Hom(X^0,Y^1) ⊕ Hom(X^1,Y^0)`. Degree-0 cycles are exactly the chain maps
/// and degree-0 boundaries exactly the null-homotopic ones.
pub fn homc(x: &TwoPeriodicComplex, y: &TwoPeriodicComplex) -> Result<TwoPeriodicComplex, Error> {
    let f = same_field(x, y)?;
    let (x0, x1) = x.ranks();
    let (y0, y1) = y.ranks();
    let d0 = RMatrix::block2(
        &id(f, x0).kron(y.d0()),
        &x.d0().transpose().kron(&id(f, y1)).neg(),
        &x.d1().transpose().kron(&id(f, y0)).neg(),
        &id(f, x1).kron(y.d1()),
    );
    let d1 = RMatrix::block2(
        &id(f, x0).kron(y.d1()),
        &x.d0().transpose().kron(&id(f, y0)),
        &x.d1().transpose().kron(&id(f, y1)),
        &id(f, x1).kron(y.d0()),
    );
    Ok(TwoPeriodicComplex::from_parts(d0, d1))
}

/// Column-major flattening, matching the `Hom` basis order.
fn flatten(m: &RMatrix) -> Vec<LocalElem> {
    (0..m.cols()).flat_map(|j| m.column(j)).collect()
}

fn unflatten(f: FieldSpec, v: &[LocalElem], rows: usize, cols: usize) -> RMatrix {
    RMatrix::from_fn(f, rows, cols, |i, j| v[j * rows + i].clone())
}

fn map_from_cycle(x: &TwoPeriodicComplex, y: &TwoPeriodicComplex, v: &[LocalElem]) -> ChainMap2 {
    let f = x.field();
    let split = x.r0() * y.r0();
    let f0 = unflatten(f, &v[..split], y.r0(), x.r0());
    let f1 = unflatten(f, &v[split..], y.r1(), x.r1());
    ChainMap2::from_parts(x.clone(), y.clone(), f0, f1)
}

/// The comparison `δ: Y ⊗̂ X* -> Hom^c(X, Y)`, `y ⊗ φ ↦ (x ↦ φ(x) y)`.
///
/// With the dual convention `d0* = -d1^T`, `d1* = d0^T` the Koszul signs of
/// both sides agree, so `δ` is a plain permutation of basis vectors.
pub type DeltaMap = ChainMap2;

pub fn delta_iso(x: &TwoPeriodicComplex, y: &TwoPeriodicComplex) -> Result<DeltaMap, Error> {
    let f = same_field(x, y)?;
    let source = tensor2(y, &x.dual())?;
    let target = homc(x, y)?;
    let (x0, x1) = x.ranks();
    let (y0, y1) = y.ranks();

    // Y^b ⊗ (X^a)* at index j * rank(X^a) + i  ->  Hom(X^a, Y^b) at i * rank(Y^b) + j.
    let place = |m: &mut RMatrix, src_off: usize, dst_off: usize, ra: usize, rb: usize| {
        for j in 0..rb {
            for i in 0..ra {
                m[(dst_off + i * rb + j, src_off + j * ra + i)] = LocalElem::one(f);
            }
        }
    };

    let n0 = y0 * x0 + y1 * x1;
    let mut delta0 = RMatrix::zeros(f, n0, n0);
    place(&mut delta0, 0, 0, x0, y0);
    place(&mut delta0, y0 * x0, x0 * y0, x1, y1);

    // Source degree 1: Y^0 ⊗ (X^1)* then Y^1 ⊗ (X^0)*.
    // Target degree 1: Hom(X^0, Y^1) then Hom(X^1, Y^0).
    let n1 = y0 * x1 + y1 * x0;
    let mut delta1 = RMatrix::zeros(f, n1, n1);
    place(&mut delta1, 0, x0 * y1, x1, y0);
    place(&mut delta1, y0 * x1, 0, x0, y1);

    ChainMap2::new(source, target, delta0, delta1)
}

/// `Hom_{K²}(X, Y)` as a finitely generated `R`-module, with generators
/// lifted to chain maps.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub factors: Vec<usize>,
    pub free_rank: usize,
    /// Torsion generators first (aligned with `factors`), then free ones.
    pub generators: Vec<ChainMap2>,
}

impl HomModule {
    /// Length `sum a_i`; `None` if the module is not of finite length.
    pub fn length(&self) -> Option<usize> {
        (self.free_rank == 0).then(|| self.factors.iter().sum())
    }
}

pub fn hom_module(x: &TwoPeriodicComplex, y: &TwoPeriodicComplex) -> Result<HomModule, Error> {
    let h = homc(x, y)?;
    let sq = homology_invariants(h.d0(), h.d1())?;
    let generators = sq
        .generators
        .iter()
        .map(|v| {
            let m = map_from_cycle(x, y, v);
            m.validate().map(|_| m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomModule {
        factors: sq.factors,
        free_rank: sq.free_rank,
        generators,
    })
}

/// Decides whether `f` is 2-homotopic to zero, returning a witness `s` with
/// `f = ∂s + s∂` when it is.
pub fn is_null_homotopic(f: &ChainMap2) -> Option<Homotopy2> {
    let (x, y) = (f.src(), f.dst());
    let field = x.field();
    let h = homc(x, y).expect("endpoints share a field");
    let mut rhs = flatten(f.f0());
    rhs.extend(flatten(f.f1()));
    let s = solve_with(&smith_normal_form(h.d1()), &rhs)?;
    let split = x.r0() * y.r1();
    let witness = Homotopy2 {
        s0: unflatten(field, &s[..split], y.r1(), x.r0()),
        s1: unflatten(field, &s[split..], y.r0(), x.r1()),
    };
    debug_assert!(witness.witnesses(f));
    Some(witness)
}
