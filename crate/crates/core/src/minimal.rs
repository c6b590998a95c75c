//! Minimal models: peel off contractible rank-(1,1) summands until every
//! differential entry lies in the maximal ideal.

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap2, Homotopy2, TwoPeriodicComplex};
use crate::elem::LocalElem;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;

/// The two contractible rank-(1,1) complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrivialType {
    /// `d1 = 1`, `d0 = 0`.
    Type1,
    /// `d0 = 1`, `d1 = 0`.
    Type2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialCounts {
    pub type1: usize,
    pub type2: usize,
}

impl TrivialCounts {
    pub fn total(&self) -> usize {
        self.type1 + self.type2
    }
}

/// `X ≅ minimal ⊕ Type1^a ⊕ Type2^b`, with the isomorphism in both
/// directions. `into` goes from the split form to `X`, `back` the other way.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub minimal: TwoPeriodicComplex,
    pub trivials: TrivialCounts,
    pub into: ChainMap2,
    pub back: ChainMap2,
}

impl SplitResult {
    /// The split form `minimal ⊕ trivials`, the source of `into`.
    pub fn split(&self) -> &TwoPeriodicComplex {
        self.into.src()
    }

    /// Exact re-check of every claim the result makes.
    pub fn verify(&self, x: &TwoPeriodicComplex) -> bool {
        let f = x.field();
        let expected = self
            .minimal
            .direct_sum(&trivial_complex(f, TrivialType::Type1, self.trivials.type1))
            .and_then(|s| {
                s.direct_sum(&trivial_complex(f, TrivialType::Type2, self.trivials.type2))
            });
        let Ok(expected) = expected else { return false };
        let round_trip = |a: &ChainMap2, b: &ChainMap2| {
            a.compose(b)
                .is_ok_and(|c| c.f0().is_identity() && c.f1().is_identity())
        };
        is_minimal(&self.minimal)
            && self.split() == &expected
            && self.into.dst() == x
            && self.into.validate().is_ok()
            && self.back.validate().is_ok()
            && round_trip(&self.into, &self.back)
            && round_trip(&self.back, &self.into)
    }
}

/// Every entry of both differentials has positive valuation.
pub fn is_minimal(x: &TwoPeriodicComplex) -> bool {
    !x.d0()
        .entries()
        .chain(x.d1().entries())
        .any(LocalElem::is_unit)
}

/// Block sum of `n` copies of the trivial complex of type `t`.
pub fn trivial_complex(field: FieldSpec, t: TrivialType, n: usize) -> TwoPeriodicComplex {
    let (one, zero) = (RMatrix::identity(field, n), RMatrix::zeros(field, n, n));
    let (d0, d1) = match t {
        TrivialType::Type1 => (zero, one),
        TrivialType::Type2 => (one, zero),
    };
    TwoPeriodicComplex::new(d0, d1).expect("trivial complex")
}

/// Working state: `d0 = p1 d0_X p0^-1`, `d1 = p0 d1_X p1^-1` throughout.
struct Reducer {
    d0: RMatrix,
    d1: RMatrix,
    p: [RMatrix; 2],
    p_inv: [RMatrix; 2],
}

impl Reducer {
    /// Basis change on `F^k` by `E = 1 + c e_{dst,src}`.
    fn add(&mut self, k: usize, dst: usize, src: usize, c: &LocalElem) {
        if c.is_zero() {
            return;
        }
        let neg = c.neg();
        let (out, inc) = if k == 0 {
            (&mut self.d1, &mut self.d0)
        } else {
            (&mut self.d0, &mut self.d1)
        };
        out.add_row_multiple(dst, src, c);
        inc.add_col_multiple(src, dst, &neg);
        self.p[k].add_row_multiple(dst, src, c);
        self.p_inv[k].add_col_multiple(src, dst, &neg);
    }

    /// Basis change on `F^k` scaling coordinate `i` by the unit `u`.
    fn scale(&mut self, k: usize, i: usize, u: &LocalElem) {
        let u_inv = u.inverse().expect("unit");
        let (out, inc) = if k == 0 {
            (&mut self.d1, &mut self.d0)
        } else {
            (&mut self.d0, &mut self.d1)
        };
        out.scale_row(i, u);
        inc.scale_col(i, &u_inv);
        self.p[k].scale_row(i, u);
        self.p_inv[k].scale_col(i, &u_inv);
    }

    /// Turns the unit entry at `(row, col)` of the differential leaving
    /// `F^src` into an isolated 1. Rows of that differential live in
    /// `F^{1-src}`, columns in `F^src`.
    fn peel(&mut self, src: usize, row: usize, col: usize) {
        let tgt = 1 - src;
        let d = |s: &Self| if src == 0 { s.d0.clone() } else { s.d1.clone() };
        let pivot = d(self)[(row, col)].clone();
        self.scale(tgt, row, &pivot.inverse().expect("unit pivot"));

        let m = d(self);
        for i in 0..m.rows() {
            if i != row {
                self.add(tgt, i, row, &m[(i, col)].neg());
            }
        }
        let m = d(self);
        for j in 0..m.cols() {
            if j != col {
                // column j -= c * column col, i.e. E = 1 + c e_{col,j} on F^src.
                self.add(src, col, j, &m[(row, j)]);
            }
        }
    }
}

fn find_unit(m: &RMatrix, rows: &[bool], cols: &[bool]) -> Option<(usize, usize)> {
    (0..m.rows())
        .filter(|&i| rows[i])
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| cols[j] && m[(i, j)].is_unit())
}

/// Splits `X` as minimal part plus trivial summands with exact inverse
/// isomorphisms. Unit pivots are taken at the smallest `(row, col)` of `d1`
/// first, then of `d0`.
pub fn reduce(x: &TwoPeriodicComplex) -> SplitResult {
    let f = x.field();
    let (r0, r1) = x.ranks();
    let mut st = Reducer {
        d0: x.d0().clone(),
        d1: x.d1().clone(),
        p: [RMatrix::identity(f, r0), RMatrix::identity(f, r1)],
        p_inv: [RMatrix::identity(f, r0), RMatrix::identity(f, r1)],
    };
    let mut active0 = vec![true; r0];
    let mut active1 = vec![true; r1];
    let mut type1 = Vec::new();
    let mut type2 = Vec::new();

    loop {
        if let Some((a, b)) = find_unit(&st.d1, &active0, &active1) {
            st.peel(1, a, b);
            active0[a] = false;
            active1[b] = false;
            type1.push((a, b));
        } else if let Some((b, a)) = find_unit(&st.d0, &active1, &active0) {
            st.peel(0, b, a);
            active0[a] = false;
            active1[b] = false;
            type2.push((a, b));
        } else {
            break;
        }
    }

    let order = |active: &[bool], pick: fn(&(usize, usize)) -> usize| {
        let mut v: Vec<usize> = (0..active.len()).filter(|&i| active[i]).collect();
        v.extend(type1.iter().map(pick));
        v.extend(type2.iter().map(pick));
        v
    };
    let perm0 = order(&active0, |p| p.0);
    let perm1 = order(&active1, |p| p.1);
    let all0: Vec<usize> = (0..r0).collect();
    let all1: Vec<usize> = (0..r1).collect();

    let d0 = st.d0.select(&perm1, &perm0);
    let d1 = st.d1.select(&perm0, &perm1);
    let p0 = st.p[0].select(&perm0, &all0);
    let p1 = st.p[1].select(&perm1, &all1);
    let p0_inv = st.p_inv[0].select(&all0, &perm0);
    let p1_inv = st.p_inv[1].select(&all1, &perm1);

    let split = TwoPeriodicComplex::new(d0, d1).expect("conjugate of a complex");
    let m0 = active0.iter().filter(|&&a| a).count();
    let m1 = active1.iter().filter(|&&a| a).count();
    let minimal = TwoPeriodicComplex::new(
        split.d0().submatrix(0..m1, 0..m0),
        split.d1().submatrix(0..m0, 0..m1),
    )
    .expect("diagonal block of a split complex");

    SplitResult {
        minimal,
        trivials: TrivialCounts {
            type1: type1.len(),
            type2: type2.len(),
        },
        into: ChainMap2::from_parts(split.clone(), x.clone(), p0_inv, p1_inv),
        back: ChainMap2::from_parts(x.clone(), split, p0, p1),
    }
}

/// A contracting homotopy of a complex with no minimal part. On the split
/// form both components are the identity; the witness is transported back
/// along the split isomorphisms.
pub fn trivial_contraction(w: &TwoPeriodicComplex) -> Result<Homotopy2, Error> {
    let sr = reduce(w);
    if !sr.minimal.is_zero_object() {
        return Err(Error::NotTrivial);
    }
    let (into, back) = (&sr.into, &sr.back);
    let s = Homotopy2 {
        s0: into.f1().mul(back.f0()),
        s1: into.f0().mul(back.f1()),
    };
    debug_assert!(s.witnesses(&ChainMap2::identity(w)));
    Ok(s)
}
