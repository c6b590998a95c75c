//! Smith normal form over `R` and the linear algebra built on it.
//!
//! Over a discrete valuation ring the Smith form is obtained by repeatedly
//! pivoting on an entry of minimal valuation: that entry divides every other
//! entry of the remaining block, so elimination never leaves `R`.

use crate::elem::LocalElem;
use crate::error::Error;
use crate::matrix::RMatrix;

/// `u * a * v = d` with `d` diagonal, diagonal entries `x^{exponents[i]}`
/// for `i < rank` and zero afterwards. The inverses of `u` and `v` are kept
/// alongside so certificates never need a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: RMatrix,
    pub u_inv: RMatrix,
    pub v: RMatrix,
    pub v_inv: RMatrix,
    pub d: RMatrix,
    /// Nondecreasing exponents of the nonzero diagonal entries.
    pub exponents: Vec<usize>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Re-checks `u * a * v = d`, the inverse pairs, and the diagonal shape.
    pub fn verify(&self, a: &RMatrix) -> bool {
        let f = a.field();
        let (m, n) = a.shape();
        let diagonal_ok = (0..m).all(|i| {
            (0..n).all(|j| {
                let e = &self.d[(i, j)];
                if i == j && i < self.rank() {
                    *e == LocalElem::x_pow(f, self.exponents[i])
                } else {
                    e.is_zero()
                }
            })
        });
        diagonal_ok
            && self.exponents.windows(2).all(|w| w[0] <= w[1])
            && self.u.mul(a).mul(&self.v) == self.d
            && self.u.mul(&self.u_inv).is_identity()
            && self.v.mul(&self.v_inv).is_identity()
    }
}

pub fn smith_normal_form(a: &RMatrix) -> SmithForm {
    let f = a.field();
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut u = RMatrix::identity(f, m);
    let mut u_inv = RMatrix::identity(f, m);
    let mut v = RMatrix::identity(f, n);
    let mut v_inv = RMatrix::identity(f, n);
    let mut exponents = Vec::new();

    for k in 0..m.min(n) {
        // Minimal valuation; ties broken by smallest row, then column.
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if let Some(val) = w[(i, j)].valuation() {
                    if best.is_none_or(|(b, _, _)| val < b) {
                        best = Some((val, i, j));
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };

        w.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        w.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        let (_, unit) = w[(k, k)].split_unit().expect("nonzero pivot");
        if !unit.is_one() {
            let unit_inv = unit.inverse().expect("unit part");
            w.scale_row(k, &unit_inv);
            u.scale_row(k, &unit_inv);
            u_inv.scale_col(k, &unit);
        }
        let pivot = LocalElem::x_pow(f, val);

        for i in k + 1..m {
            if w[(i, k)].is_zero() {
                continue;
            }
            let c = w[(i, k)].checked_div(&pivot).expect("pivot divides column");
            let neg = c.neg();
            w.add_row_multiple(i, k, &neg);
            u.add_row_multiple(i, k, &neg);
            u_inv.add_col_multiple(k, i, &c);
        }
        for j in k + 1..n {
            if w[(k, j)].is_zero() {
                continue;
            }
            let c = w[(k, j)].checked_div(&pivot).expect("pivot divides row");
            let neg = c.neg();
            w.add_col_multiple(j, k, &neg);
            v.add_col_multiple(j, k, &neg);
            v_inv.add_row_multiple(k, j, &c);
        }
        exponents.push(val);
    }

    SmithForm {
        u,
        u_inv,
        v,
        v_inv,
        d: w,
        exponents,
    }
}

/// Solves `a * sigma = b` over `R` (not merely over the fraction field).
pub fn solve_over_ring(a: &RMatrix, b: &[LocalElem]) -> Result<Option<Vec<LocalElem>>, Error> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    if let Some(e) = b.iter().find(|e| e.field() != a.field()) {
        return Err(Error::FieldMismatch(a.field(), e.field()));
    }
    Ok(solve_with(&smith_normal_form(a), b))
}

/// Solves against a precomputed Smith form of the coefficient matrix.
pub fn solve_with(snf: &SmithForm, b: &[LocalElem]) -> Option<Vec<LocalElem>> {
    let f = snf.u.field();
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|e| !e.is_zero()) {
        return None;
    }
    let mut y = vec![LocalElem::zero(f); snf.v.rows()];
    for (i, &a) in snf.exponents.iter().enumerate() {
        y[i] = c[i].checked_div(&LocalElem::x_pow(f, a))?;
    }
    Some(snf.v.mul_vec(&y))
}

/// Presentation of a subquotient `ker a / im b` of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    /// Exponents `a_i >= 1`, one cyclic summand `R / x^{a_i}` each, ascending.
    pub factors: Vec<usize>,
    pub free_rank: usize,
    /// Lifted generators in the ambient free module: the first
    /// `factors.len()` generate the torsion summands in order, the remaining
    /// `free_rank` the free part.
    pub generators: Vec<Vec<LocalElem>>,
}

impl Subquotient {
    /// Length `sum a_i`; `None` when the module has a free summand.
    pub fn length(&self) -> Option<usize> {
        (self.free_rank == 0).then(|| self.factors.iter().sum())
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }
}

/// Computes `ker a / im b` for `a: R^n -> R^m`, `b: R^p -> R^n` with `a b = 0`.
pub fn homology_invariants(a: &RMatrix, b: &RMatrix) -> Result<Subquotient, Error> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "ker of {}x{} over im of {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let ab = a.mul(b);
    if let Some((i, j, e)) = ab.first_nonzero() {
        return Err(Error::CompositeNotZero("a*b", i, j, e.to_string()));
    }
    Ok(subquotient(a, b))
}

fn subquotient(a: &RMatrix, b: &RMatrix) -> Subquotient {
    let n = a.cols();
    let snf_a = smith_normal_form(a);
    let r = snf_a.rank();
    // The last n - r columns of v span ker a (a saturated submodule).
    let kernel = snf_a.v.submatrix(0..n, r..n);
    // Coordinates of im b in that kernel basis.
    let coords = snf_a.v_inv.mul(b).submatrix(r..n, 0..b.cols());
    let snf_c = smith_normal_form(&coords);
    let k = n - r;
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, &e) in snf_c.exponents.iter().enumerate() {
        if e > 0 {
            factors.push(e);
            generators.push(kernel.mul_vec(&snf_c.u_inv.column(i)));
        }
    }
    for i in snf_c.rank()..k {
        generators.push(kernel.mul_vec(&snf_c.u_inv.column(i)));
    }
    Subquotient {
        factors,
        free_rank: k - snf_c.rank(),
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn e(s: &str) -> LocalElem {
        LocalElem::parse(Q, s).unwrap()
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = RMatrix::identity(Q, 2);
        let s = smith_normal_form(&id);
        assert_eq!(s.exponents, vec![0, 0]);
        assert!(s.verify(&id));

        let z = RMatrix::zeros(Q, 2, 3);
        let s = smith_normal_form(&z);
        assert!(s.exponents.is_empty());
        assert!(s.d.is_zero());
        assert!(s.verify(&z));
    }

    #[test]
    fn snf_two_by_two() {
        // gcd of entries is x and the determinant is x^3, so (x, x^2).
        let a = RMatrix::from_strs(Q, &[&["x", "x^2"], &["x^2", "x^3 + x^2"]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.exponents, vec![1, 2]);
        assert!(s.verify(&a));
    }

    #[test]
    fn snf_units_in_transforms() {
        let a = RMatrix::from_strs(Q, &[&["(x + x^2)/(1 - x)", "2*x"], &["3", "x^4"]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert!(s.u.is_invertible() && s.v.is_invertible());
    }

    #[test]
    fn solve_examples() {
        let a = RMatrix::from_strs(Q, &[&["x"]]);
        assert_eq!(
            solve_over_ring(&a, &[e("x^3")]).unwrap(),
            Some(vec![e("x^2")])
        );

        let a = RMatrix::from_strs(Q, &[&["x^2"]]);
        assert_eq!(solve_over_ring(&a, &[e("x")]).unwrap(), None);

        let a = RMatrix::from_strs(Q, &[&["1", "x"], &["0", "0"]]);
        let b = [e("x^2"), e("0")];
        let sigma = solve_over_ring(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&sigma), b.to_vec());

        let b = [e("1"), e("x")];
        assert_eq!(solve_over_ring(&a, &b).unwrap(), None);
        assert!(matches!(
            solve_over_ring(&a, &[e("1")]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn homology_examples() {
        let z = RMatrix::zeros(Q, 1, 1);
        let x3 = RMatrix::from_strs(Q, &[&["x^3"]]);

        let h = homology_invariants(&x3, &z).unwrap();
        assert_eq!((h.factors.clone(), h.free_rank), (vec![], 0));

        let h = homology_invariants(&z, &x3).unwrap();
        assert_eq!((h.factors.clone(), h.free_rank), (vec![3], 0));
        assert_eq!(h.generators.len(), 1);

        let h = homology_invariants(&z, &z).unwrap();
        assert_eq!((h.factors.clone(), h.free_rank), (vec![], 1));

        assert!(matches!(
            homology_invariants(&x3, &x3),
            Err(Error::CompositeNotZero(..))
        ));
    }

    #[test]
    fn homology_generators_are_cycles() {
        // ker [x, -x] / im [x^2; x^2]  =  R(1,1) / x^2 R(1,1)
        let a = RMatrix::from_strs(Q, &[&["x", "-x"]]);
        let b = RMatrix::from_strs(Q, &[&["x^2"], &["x^2"]]);
        let h = homology_invariants(&a, &b).unwrap();
        assert_eq!(h.factors, vec![2]);
        assert_eq!(h.free_rank, 0);
        for g in &h.generators {
            assert!(a.mul_vec(g).iter().all(LocalElem::is_zero));
        }
    }
}
