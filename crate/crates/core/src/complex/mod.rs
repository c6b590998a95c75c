//! 2-periodic complexes of free `R`-modules and their homotopy category.
//!
//! A complex is stored as the pair `(d0, d1)` with `d0: F^0 -> F^1` (the even
//! differential) and `d1: F^1 -> F^0` (the odd one). Both composites vanish.

mod cone;
mod hom;
mod map;

pub use cone::{cone, Cone, Triangle};
pub use hom::{delta_iso, hom_module, homc, is_null_homotopic, tensor2, DeltaMap, HomModule};
pub use map::{ChainMap2, Homotopy2};

use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::smith::{homology_invariants, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoPeriodicComplex {
    field: FieldSpec,
    d0: RMatrix,
    d1: RMatrix,
}

/// Checks the shapes and both composites of a candidate pair of differentials.
pub fn validate_differentials(d0: &RMatrix, d1: &RMatrix) -> Result<(), Error> {
    if d0.field() != d1.field() {
        return Err(Error::FieldMismatch(d0.field(), d1.field()));
    }
    if d0.rows() != d1.cols() || d0.cols() != d1.rows() {
        return Err(Error::DimensionMismatch(format!(
            "d0 is {}x{} but d1 is {}x{}",
            d0.rows(),
            d0.cols(),
            d1.rows(),
            d1.cols()
        )));
    }
    if let Some((i, j, e)) = d1.mul(d0).first_nonzero() {
        return Err(Error::CompositeNotZero("d1*d0", i, j, e.to_string()));
    }
    if let Some((i, j, e)) = d0.mul(d1).first_nonzero() {
        return Err(Error::CompositeNotZero("d0*d1", i, j, e.to_string()));
    }
    Ok(())
}

impl TwoPeriodicComplex {
    /// Builds a complex from `d0` (`r1 x r0`) and `d1` (`r0 x r1`).
    pub fn new(d0: RMatrix, d1: RMatrix) -> Result<Self, Error> {
        validate_differentials(&d0, &d1)?;
        Ok(TwoPeriodicComplex {
            field: d0.field(),
            d0,
            d1,
        })
    }

    /// For constructions whose output is a complex by construction; checked
    /// in debug builds.
    pub(crate) fn from_parts(d0: RMatrix, d1: RMatrix) -> Self {
        debug_assert_eq!(validate_differentials(&d0, &d1), Ok(()));
        TwoPeriodicComplex {
            field: d0.field(),
            d0,
            d1,
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::from_parts(RMatrix::zeros(field, 0, 0), RMatrix::zeros(field, 0, 0))
    }

    /// `R` concentrated in even degree with zero differentials; the unit for
    /// [`tensor2`].
    pub fn unit(field: FieldSpec) -> Self {
        Self::from_parts(RMatrix::zeros(field, 0, 1), RMatrix::zeros(field, 1, 0))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn r0(&self) -> usize {
        self.d0.cols()
    }

    pub fn r1(&self) -> usize {
        self.d0.rows()
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.r0(), self.r1())
    }

    pub fn rank(&self, degree: usize) -> usize {
        if degree % 2 == 0 {
            self.r0()
        } else {
            self.r1()
        }
    }

    pub fn d0(&self) -> &RMatrix {
        &self.d0
    }

    pub fn d1(&self) -> &RMatrix {
        &self.d1
    }

    /// The differential leaving degree `n`.
    pub fn differential(&self, n: i64) -> &RMatrix {
        if n.rem_euclid(2) == 0 {
            &self.d0
        } else {
            &self.d1
        }
    }

    pub fn is_zero_object(&self) -> bool {
        self.r0() == 0 && self.r1() == 0
    }

    /// Re-checks both zero-composite identities.
    pub fn validate(&self) -> Result<(), Error> {
        validate_differentials(&self.d0, &self.d1)
    }

    /// The shift `X[1]`: degrees swap and both differentials change sign.
    pub fn shift(&self) -> Self {
        Self::from_parts(self.d1.neg(), self.d0.neg())
    }

    /// `X* = Hom(X, R)` with `d0* = -d1^T` and `d1* = d0^T`.
    pub fn dual(&self) -> Self {
        Self::from_parts(self.d1.transpose().neg(), self.d0.transpose())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(Self::from_parts(
            self.d0.direct_sum(&other.d0),
            self.d1.direct_sum(&other.d1),
        ))
    }

    /// Block sum of a list of complexes over `field`.
    pub fn sum_all<'a>(
        field: FieldSpec,
        parts: impl IntoIterator<Item = &'a TwoPeriodicComplex>,
    ) -> Result<Self, Error> {
        parts
            .into_iter()
            .try_fold(Self::zero(field), |acc, x| acc.direct_sum(x))
    }

    /// Conjugates by basis changes `p0` of `F^0` and `p1` of `F^1`, giving
    /// `(p1 d0 p0^-1, p0 d1 p1^-1)`, which is isomorphic via `(p0, p1)`.
    pub fn conjugate(
        &self,
        p0: &RMatrix,
        p0_inv: &RMatrix,
        p1: &RMatrix,
        p1_inv: &RMatrix,
    ) -> Self {
        Self::from_parts(p1.mul(&self.d0).mul(p0_inv), p0.mul(&self.d1).mul(p1_inv))
    }

    /// `H^0 = ker d0 / im d1` and `H^1 = ker d1 / im d0`.
    pub fn cohomology(&self) -> Cohomology {
        Cohomology {
            h0: homology_invariants(&self.d0, &self.d1).expect("valid complex"),
            h1: homology_invariants(&self.d1, &self.d0).expect("valid complex"),
        }
    }

    /// Fraction-field rank count: cohomology is torsion iff
    /// `rank d0 + rank d1 = r0 = r1`.
    pub fn finite_length_cohomology(&self) -> bool {
        let c = self.cohomology();
        c.h0.free_rank == 0 && c.h1.free_rank == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub h0: Subquotient,
    pub h1: Subquotient,
}

impl Cohomology {
    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h1.is_zero()
    }
}
