//! Dense matrices over `R`.
//!
//! Arithmetic operators panic on incompatible shapes; callers that accept
//! user-provided shapes check them first and report
//! [`Error::DimensionMismatch`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::elem::LocalElem;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<LocalElem>,
}

impl RMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        RMatrix {
            field,
            rows,
            cols,
            data: vec![LocalElem::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(&LocalElem::one(field), n)
    }

    /// `c * I_n`.
    pub fn scalar(c: &LocalElem, n: usize) -> Self {
        let mut m = Self::zeros(c.field(), n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LocalElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors of declared shape `rows x cols`.
    pub fn from_rows(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<LocalElem>>,
    ) -> Result<Self, Error> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        let data: Vec<LocalElem> = entries.into_iter().flatten().collect();
        if let Some(e) = data.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field, e.field()));
        }
        Ok(RMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literals; panics on bad input.
    pub fn from_strs(field: FieldSpec, rows: &[&[&str]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| LocalElem::parse(field, s).expect("valid element"))
                    .collect()
            })
            .collect();
        Self::from_rows(field, rows.len(), cols, entries).expect("rectangular literal")
    }

    pub fn column_vector(field: FieldSpec, v: Vec<LocalElem>) -> Self {
        let rows = v.len();
        RMatrix {
            field,
            rows,
            cols: 1,
            data: v,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = &LocalElem> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[LocalElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LocalElem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<LocalElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LocalElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &LocalElem)> {
        self.data
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    /// Smallest valuation among the entries; `None` for the zero matrix.
    pub fn min_valuation(&self) -> Option<usize> {
        self.data.iter().filter_map(LocalElem::valuation).min()
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = RMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        out[(i, j)] = out[(i, j)].add(&prod);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[LocalElem]) -> Vec<LocalElem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(LocalElem::zero(self.field), |acc, (a, b)| {
                        acc.add(&a.mul(b))
                    })
            })
            .collect()
    }

    fn zip_with(&self, other: &RMatrix, f: impl Fn(&LocalElem, &LocalElem) -> LocalElem) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        RMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        self.zip_with(other, LocalElem::add)
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        self.zip_with(other, LocalElem::sub)
    }

    pub fn neg(&self) -> RMatrix {
        self.map(LocalElem::neg)
    }

    pub fn scale(&self, c: &LocalElem) -> RMatrix {
        self.map(|e| e.mul(c))
    }

    pub fn map(&self, f: impl Fn(&LocalElem) -> LocalElem) -> RMatrix {
        RMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    /// Kronecker product with the row/column index of `self` outer.
    pub fn kron(&self, other: &RMatrix) -> RMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        RMatrix::from_fn(self.field, r, c, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                return LocalElem::zero(self.field);
            }
            a.mul(&other[(i % other.rows, j % other.cols)])
        })
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn block2(a: &RMatrix, b: &RMatrix, c: &RMatrix, d: &RMatrix) -> RMatrix {
        assert_eq!(a.rows, b.rows, "block rows");
        assert_eq!(c.rows, d.rows, "block rows");
        assert_eq!(a.cols, c.cols, "block cols");
        assert_eq!(b.cols, d.cols, "block cols");
        let (top, left) = (a.rows, a.cols);
        RMatrix::from_fn(a.field, a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < top, j < left) {
                (true, true) => a[(i, j)].clone(),
                (true, false) => b[(i, j - left)].clone(),
                (false, true) => c[(i - top, j)].clone(),
                (false, false) => d[(i - top, j - left)].clone(),
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self, other]`.
    pub fn hstack(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let left = self.cols;
        RMatrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < left {
                self[(i, j)].clone()
            } else {
                other[(i, j - left)].clone()
            }
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RMatrix) -> RMatrix {
        let b = RMatrix::zeros(self.field, self.rows, other.cols);
        let c = RMatrix::zeros(self.field, other.rows, self.cols);
        RMatrix::block2(self, &b, &c, other)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> RMatrix {
        let (r0, c0) = (rows.start, cols.start);
        RMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RMatrix {
        RMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &LocalElem) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            if !e.is_zero() {
                *e = e.mul(c);
            }
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &LocalElem) {
        for i in 0..self.rows {
            let e = &mut self.data[i * self.cols + j];
            if !e.is_zero() {
                *e = e.mul(c);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &LocalElem) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s.mul(c);
                let d = &mut self.data[dst * self.cols + j];
                *d = d.add(&v);
            }
        }
    }

    /// `col[dst] += c * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &LocalElem) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s.mul(c);
                let d = &mut self.data[i * self.cols + dst];
                *d = d.add(&v);
            }
        }
    }

    /// Reduction modulo `(x)`, as a matrix over `k`.
    pub fn residue(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(LocalElem::residue).collect())
            .collect()
    }

    /// A square matrix is invertible over the local ring iff its reduction
    /// modulo `(x)` is invertible over `k`.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && residue_rank(self.residue()) == self.rows
    }

    /// Inverse over `R` by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<RMatrix, Error> {
        if !self.is_square() {
            return Err(Error::NotInvertible("non-square"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMatrix::identity(self.field, n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| a[(i, k)].is_unit())
                .ok_or(Error::NotInvertible("matrix"))?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let s = a[(k, k)].inverse()?;
            a.scale_row(k, &s);
            inv.scale_row(k, &s);
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let c = a[(i, k)].neg();
                    a.add_row_multiple(i, k, &c);
                    inv.add_row_multiple(i, k, &c);
                }
            }
        }
        Ok(inv)
    }
}

/// Rank over `k` of a scalar matrix.
pub(crate) fn residue_rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].mul(&inv);
                for cc in c..cols {
                    let v = m[rank][cc].mul(&f);
                    m[r][cc] = m[r][cc].sub(&v);
                }
            }
        }
        rank += 1;
    }
    rank
}

impl Index<(usize, usize)> for RMatrix {
    type Output = LocalElem;

    fn index(&self, (i, j): (usize, usize)) -> &LocalElem {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LocalElem {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}
