use crate::elem::LocalElem;
use crate::error::Error;
use crate::matrix::RMatrix;

use super::TwoPeriodicComplex;

/// A degree-0 2-periodic map `src -> dst`, given by `f0: src^0 -> dst^0` and
/// `f1: src^1 -> dst^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap2 {
    src: TwoPeriodicComplex,
    dst: TwoPeriodicComplex,
    f0: RMatrix,
    f1: RMatrix,
}

impl ChainMap2 {
    pub fn new(
        src: TwoPeriodicComplex,
        dst: TwoPeriodicComplex,
        f0: RMatrix,
        f1: RMatrix,
    ) -> Result<Self, Error> {
        check_map(&src, &dst, &f0, &f1)?;
        Ok(ChainMap2 { src, dst, f0, f1 })
    }

    pub(crate) fn from_parts(
        src: TwoPeriodicComplex,
        dst: TwoPeriodicComplex,
        f0: RMatrix,
        f1: RMatrix,
    ) -> Self {
        debug_assert_eq!(check_map(&src, &dst, &f0, &f1), Ok(()));
        ChainMap2 { src, dst, f0, f1 }
    }

    pub fn identity(x: &TwoPeriodicComplex) -> Self {
        let f = x.field();
        Self::from_parts(
            x.clone(),
            x.clone(),
            RMatrix::identity(f, x.r0()),
            RMatrix::identity(f, x.r1()),
        )
    }

    pub fn zero(src: &TwoPeriodicComplex, dst: &TwoPeriodicComplex) -> Self {
        let f = src.field();
        Self::from_parts(
            src.clone(),
            dst.clone(),
            RMatrix::zeros(f, dst.r0(), src.r0()),
            RMatrix::zeros(f, dst.r1(), src.r1()),
        )
    }

    pub fn src(&self) -> &TwoPeriodicComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwoPeriodicComplex {
        &self.dst
    }

    pub fn f0(&self) -> &RMatrix {
        &self.f0
    }

    pub fn f1(&self) -> &RMatrix {
        &self.f1
    }

    pub fn validate(&self) -> Result<(), Error> {
        check_map(&self.src, &self.dst, &self.f0, &self.f1)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap2) -> Result<ChainMap2, Error> {
        if first.dst != self.src {
            return Err(Error::InvalidChainMap(
                "composition of maps with mismatched endpoints".into(),
            ));
        }
        Ok(Self::from_parts(
            first.src.clone(),
            self.dst.clone(),
            self.f0.mul(&first.f0),
            self.f1.mul(&first.f1),
        ))
    }

    pub fn add(&self, other: &ChainMap2) -> Result<ChainMap2, Error> {
        self.same_endpoints(other)?;
        Ok(Self::from_parts(
            self.src.clone(),
            self.dst.clone(),
            self.f0.add(&other.f0),
            self.f1.add(&other.f1),
        ))
    }

    pub fn sub(&self, other: &ChainMap2) -> Result<ChainMap2, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChainMap2 {
        self.scale(&LocalElem::from_i64(self.src.field(), -1))
    }

    pub fn scale(&self, c: &LocalElem) -> ChainMap2 {
        Self::from_parts(
            self.src.clone(),
            self.dst.clone(),
            self.f0.scale(c),
            self.f1.scale(c),
        )
    }

    /// `f[1]: src[1] -> dst[1]`, components swapped.
    pub fn shift(&self) -> ChainMap2 {
        Self::from_parts(
            self.src.shift(),
            self.dst.shift(),
            self.f1.clone(),
            self.f0.clone(),
        )
    }

    /// Both components square and invertible over `R`.
    pub fn is_isomorphism(&self) -> bool {
        self.f0.is_invertible() && self.f1.is_invertible()
    }

    fn same_endpoints(&self, other: &ChainMap2) -> Result<(), Error> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::InvalidChainMap(
                "maps have different endpoints".into(),
            ));
        }
        Ok(())
    }
}

fn check_map(
    src: &TwoPeriodicComplex,
    dst: &TwoPeriodicComplex,
    f0: &RMatrix,
    f1: &RMatrix,
) -> Result<(), Error> {
    if src.field() != dst.field() {
        return Err(Error::FieldMismatch(src.field(), dst.field()));
    }
    if f0.shape() != (dst.r0(), src.r0()) || f1.shape() != (dst.r1(), src.r1()) {
        return Err(Error::InvalidChainMap(format!(
            "components are {}x{} and {}x{}, expected {}x{} and {}x{}",
            f0.rows(),
            f0.cols(),
            f1.rows(),
            f1.cols(),
            dst.r0(),
            src.r0(),
            dst.r1(),
            src.r1()
        )));
    }
    if f0.field() != src.field() || f1.field() != src.field() {
        return Err(Error::FieldMismatch(src.field(), f0.field()));
    }
    if f1.mul(src.d0()) != dst.d0().mul(f0) {
        return Err(Error::InvalidChainMap("f1*d0 != d0*f0".into()));
    }
    if f0.mul(src.d1()) != dst.d1().mul(f1) {
        return Err(Error::InvalidChainMap("f0*d1 != d1*f1".into()));
    }
    Ok(())
}

/// A 2-periodic homotopy `s0: src^0 -> dst^1`, `s1: src^1 -> dst^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy2 {
    pub s0: RMatrix,
    pub s1: RMatrix,
}

impl Homotopy2 {
    /// The null-homotopic map `∂s + s∂` it induces between `src` and `dst`.
    pub fn boundary(
        &self,
        src: &TwoPeriodicComplex,
        dst: &TwoPeriodicComplex,
    ) -> (RMatrix, RMatrix) {
        let m0 = dst.d1().mul(&self.s0).add(&self.s1.mul(src.d0()));
        let m1 = dst.d0().mul(&self.s1).add(&self.s0.mul(src.d1()));
        (m0, m1)
    }

    /// Whether `f = ∂s + s∂` holds entrywise.
    pub fn witnesses(&self, f: &ChainMap2) -> bool {
        let shapes_ok = self.s0.shape() == (f.dst().r1(), f.src().r0())
            && self.s1.shape() == (f.dst().r0(), f.src().r1());
        if !shapes_ok {
            return false;
        }
        let (m0, m1) = self.boundary(f.src(), f.dst());
        &m0 == f.f0() && &m1 == f.f1()
    }

    /// Witness that `phi` and `psi` are 2-homotopic.
    pub fn witnesses_between(&self, phi: &ChainMap2, psi: &ChainMap2) -> bool {
        phi.sub(psi).is_ok_and(|d| self.witnesses(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn k(j: usize) -> TwoPeriodicComplex {
        TwoPeriodicComplex::new(
            RMatrix::zeros(Q, 1, 1),
            RMatrix::scalar(&LocalElem::x_pow(Q, j), 1),
        )
        .unwrap()
    }

    #[test]
    fn chain_map_checks() {
        let x = LocalElem::x_pow(Q, 1);
        // (a, b) with a * x^2 = x^3 * b: a = x, b = 1
        let f = ChainMap2::new(k(2), k(3), RMatrix::scalar(&x, 1), RMatrix::identity(Q, 1));
        assert!(f.is_ok());
        let bad = ChainMap2::new(k(2), k(3), RMatrix::identity(Q, 1), RMatrix::identity(Q, 1));
        assert!(matches!(bad, Err(Error::InvalidChainMap(_))));
        let shape = ChainMap2::new(k(2), k(3), RMatrix::identity(Q, 2), RMatrix::identity(Q, 1));
        assert!(matches!(shape, Err(Error::InvalidChainMap(_))));
    }

    #[test]
    fn homotopy_witness() {
        let x = LocalElem::x_pow(Q, 1);
        let f = ChainMap2::identity(&k(1)).scale(&x);
        let s = Homotopy2 {
            s0: RMatrix::identity(Q, 1),
            s1: RMatrix::zeros(Q, 1, 1),
        };
        assert!(s.witnesses(&f));
        assert!(!s.witnesses(&ChainMap2::identity(&k(1))));
        assert!(s.witnesses_between(&f, &ChainMap2::zero(&k(1), &k(1))));
    }

    #[test]
    fn compose_and_shift() {
        let id = ChainMap2::identity(&k(2));
        assert_eq!(id.compose(&id).unwrap(), id);
        assert!(id.compose(&ChainMap2::identity(&k(1))).is_err());
        let s = id.shift();
        assert_eq!(s.src(), &k(2).shift());
        assert!(s.validate().is_ok());
        assert!(id.is_isomorphism());
    }
}
