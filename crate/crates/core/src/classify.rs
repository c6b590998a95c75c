//! Indecomposables `K(j)`, `K(j)[1]` and the decomposition of finite-length
//! complexes into them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap2, TwoPeriodicComplex};
use crate::elem::LocalElem;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::minimal::{reduce, SplitResult};
use crate::smith::smith_normal_form;

/// `K(j)` or, with `shifted`, `K(j)[1]`. Ordered unshifted first, then by `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndecompLabel {
    pub j: usize,
    pub shifted: bool,
}

impl Ord for IndecompLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.shifted, self.j).cmp(&(other.shifted, other.j))
    }
}

impl PartialOrd for IndecompLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl IndecompLabel {
    pub fn new(j: usize, shifted: bool) -> Self {
        IndecompLabel { j, shifted }
    }

    pub fn unshifted(j: usize) -> Self {
        Self::new(j, false)
    }

    pub fn shifted(j: usize) -> Self {
        Self::new(j, true)
    }

    pub fn shift(self) -> Self {
        Self::new(self.j, !self.shifted)
    }

    pub fn complex(self, field: FieldSpec) -> TwoPeriodicComplex {
        let k = k_complex(field, self.j.max(1)).expect("j >= 1");
        if self.shifted {
            k.shift()
        } else {
            k
        }
    }
}

impl fmt::Display for IndecompLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({})", self.j)?;
        if self.shifted {
            write!(f, "[1]")?;
        }
        Ok(())
    }
}

/// Wire form of one multiset entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultisetEntry {
    pub j: usize,
    pub shifted: bool,
    pub mult: usize,
}

/// A finite multiset of labels in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<MultisetEntry>", try_from = "Vec<MultisetEntry>")]
pub struct IndecompMultiset(BTreeMap<IndecompLabel, usize>);

impl From<IndecompMultiset> for Vec<MultisetEntry> {
    fn from(m: IndecompMultiset) -> Self {
        m.0.into_iter()
            .map(|(l, mult)| MultisetEntry {
                j: l.j,
                shifted: l.shifted,
                mult,
            })
            .collect()
    }
}

impl TryFrom<Vec<MultisetEntry>> for IndecompMultiset {
    type Error = String;

    fn try_from(v: Vec<MultisetEntry>) -> Result<Self, String> {
        let mut m = IndecompMultiset::new();
        for e in v {
            if e.j == 0 {
                return Err("label with j = 0".into());
            }
            m.insert_n(IndecompLabel::new(e.j, e.shifted), e.mult);
        }
        Ok(m)
    }
}

impl IndecompMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: impl IntoIterator<Item = IndecompLabel>) -> Self {
        let mut m = Self::new();
        for l in labels {
            m.insert(l);
        }
        m
    }

    pub fn insert(&mut self, l: IndecompLabel) {
        self.insert_n(l, 1);
    }

    pub fn insert_n(&mut self, l: IndecompLabel, n: usize) {
        if n > 0 {
            *self.0.entry(l).or_insert(0) += n;
        }
    }

    pub fn multiplicity(&self, l: IndecompLabel) -> usize {
        self.0.get(&l).copied().unwrap_or(0)
    }

    pub fn contains(&self, l: IndecompLabel) -> bool {
        self.multiplicity(l) > 0
    }

    /// `(label, multiplicity)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (IndecompLabel, usize)> + '_ {
        self.0.iter().map(|(l, m)| (*l, *m))
    }

    /// Labels repeated by multiplicity, canonical order.
    pub fn labels(&self) -> Vec<IndecompLabel> {
        self.iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l, m))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    /// `sum j` over unshifted summands, which is `ℓ H^0` of the block sum.
    pub fn unshifted_length(&self) -> usize {
        self.iter()
            .filter(|(l, _)| !l.shifted)
            .map(|(l, m)| l.j * m)
            .sum()
    }

    pub fn shifted_length(&self) -> usize {
        self.iter()
            .filter(|(l, _)| l.shifted)
            .map(|(l, m)| l.j * m)
            .sum()
    }

    /// Labelwise shift.
    pub fn shift(&self) -> Self {
        Self(self.0.iter().map(|(l, m)| (l.shift(), *m)).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (l, n) in other.iter() {
            m.insert_n(l, n);
        }
        m
    }
}

impl fmt::Display for IndecompMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// `K(j)`: ranks `(1,1)`, `d0 = 0`, `d1 = x^j`.
pub fn k_complex(field: FieldSpec, j: usize) -> Result<TwoPeriodicComplex, Error> {
    if j < 1 {
        return Err(Error::InvalidArgument("K(j) needs j >= 1".into()));
    }
    Ok(TwoPeriodicComplex::from_parts(
        RMatrix::zeros(field, 1, 1),
        RMatrix::scalar(&LocalElem::x_pow(field, j), 1),
    ))
}

/// Block sum of the labels in canonical order.
pub fn block_sum(field: FieldSpec, m: &IndecompMultiset) -> TwoPeriodicComplex {
    let parts: Vec<_> = m.labels().into_iter().map(|l| l.complex(field)).collect();
    TwoPeriodicComplex::sum_all(field, &parts).expect("same field")
}

pub fn finite_length_cohomology(x: &TwoPeriodicComplex) -> bool {
    x.finite_length_cohomology()
}

/// Output of [`decompose`]: the multiset together with the split of `X`
/// and mutually inverse isomorphisms between its minimal part and
/// `block_sum(multiset)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub multiset: IndecompMultiset,
    pub split: SplitResult,
    /// `minimal -> block_sum`.
    pub to_blocks: ChainMap2,
    /// `block_sum -> minimal`.
    pub from_blocks: ChainMap2,
}

impl Decomposition {
    pub fn verify(&self, x: &TwoPeriodicComplex) -> bool {
        let blocks = block_sum(x.field(), &self.multiset);
        let identity = |m: Result<ChainMap2, Error>| {
            m.is_ok_and(|m| m.f0().is_identity() && m.f1().is_identity())
        };
        self.split.verify(x)
            && self.to_blocks.src() == &self.split.minimal
            && self.to_blocks.dst() == &blocks
            && self.to_blocks.validate().is_ok()
            && self.from_blocks.validate().is_ok()
            && identity(self.to_blocks.compose(&self.from_blocks))
            && identity(self.from_blocks.compose(&self.to_blocks))
    }
}

/// Decomposes a complex with finite-length cohomology.
///
/// After reduction, the Smith form of `d1` splits off the `K(a)`; since
/// `d0 d1 = d1 d0 = 0` the remaining part of `d0` lives on the complementary
/// block, whose Smith form (negated) gives the `K(b)[1]`. Whatever neither
/// Smith form reaches is a free summand with zero differential, so the
/// cohomology has infinite length exactly when that leftover is nonzero.
pub fn decompose(x: &TwoPeriodicComplex) -> Result<Decomposition, Error> {
    let f = x.field();
    let split = reduce(x);
    let m = &split.minimal;
    if m.r0() != m.r1() {
        return Err(Error::NotFiniteLength);
    }
    let n = m.r0();

    // F^0 changes by q0, F^1 by q1: d0 -> q1 d0 q0^-1, d1 -> q0 d1 q1^-1.
    let s1 = smith_normal_form(m.d1());
    let r = s1.rank();
    let (mut q0, mut q0_inv) = (s1.u.clone(), s1.u_inv.clone());
    let (mut q1, mut q1_inv) = (s1.v_inv.clone(), s1.v.clone());
    let d0 = q1.mul(m.d0()).mul(&q0_inv);
    debug_assert!(d0.submatrix(0..n, 0..r).is_zero() && d0.submatrix(0..r, 0..n).is_zero());

    let tail = d0.submatrix(r..n, r..n);
    let s0 = smith_normal_form(&tail);
    if s0.rank() != n - r {
        return Err(Error::NotFiniteLength);
    }
    let id_r = RMatrix::identity(f, r);
    let minus = RMatrix::identity(f, n - r).neg();
    // Rows of d0 (F^1) by -u, columns (F^0) by v^-1.
    let e1 = id_r.direct_sum(&minus.mul(&s0.u));
    let e1_inv = id_r.direct_sum(&s0.u_inv.mul(&minus));
    let e0 = id_r.direct_sum(&s0.v_inv);
    let e0_inv = id_r.direct_sum(&s0.v);
    q0 = e0.mul(&q0);
    q0_inv = q0_inv.mul(&e0_inv);
    q1 = e1.mul(&q1);
    q1_inv = q1_inv.mul(&e1_inv);

    let mut multiset = IndecompMultiset::new();
    for &a in &s1.exponents {
        multiset.insert(IndecompLabel::unshifted(a));
    }
    for &b in &s0.exponents {
        multiset.insert(IndecompLabel::shifted(b));
    }
    let blocks = block_sum(f, &multiset);
    let to_blocks = ChainMap2::new(m.clone(), blocks.clone(), q0, q1)?;
    let from_blocks = ChainMap2::new(blocks, m.clone(), q0_inv, q1_inv)?;
    Ok(Decomposition {
        multiset,
        split,
        to_blocks,
        from_blocks,
    })
}

/// Whether `f` is invertible in the homotopy category: transported to the
/// minimal models of its endpoints, both components must be invertible.
pub fn is_homotopy_iso(f: &ChainMap2) -> bool {
    let sx = reduce(f.src());
    let sy = reduce(f.dst());
    let (mx, my) = (&sx.minimal, &sy.minimal);
    if mx.ranks() != my.ranks() {
        return false;
    }
    let g = sy.back.compose(f).and_then(|g| g.compose(&sx.into));
    let Ok(g) = g else { return false };
    let g0 = g.f0().submatrix(0..my.r0(), 0..mx.r0());
    let g1 = g.f1().submatrix(0..my.r1(), 0..mx.r1());
    g0.is_invertible() && g1.is_invertible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::{trivial_complex, TrivialType};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn k(j: usize) -> TwoPeriodicComplex {
        k_complex(Q, j).unwrap()
    }

    #[test]
    fn label_order_and_json() {
        let mut m = IndecompMultiset::new();
        m.insert(IndecompLabel::shifted(1));
        m.insert(IndecompLabel::unshifted(3));
        m.insert(IndecompLabel::unshifted(2));
        m.insert(IndecompLabel::unshifted(2));
        assert_eq!(m.to_string(), "{K(2)^2, K(3), K(1)[1]}");
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(
            js,
            r#"[{"j":2,"shifted":false,"mult":2},{"j":3,"shifted":false,"mult":1},{"j":1,"shifted":true,"mult":1}]"#
        );
        let back: IndecompMultiset = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn k_complex_examples() {
        assert_eq!(k(1).d1(), &RMatrix::from_strs(Q, &[&["x"]]));
        let c = k(3).cohomology();
        assert_eq!(c.h0.factors, vec![3]);
        assert!(c.h1.is_zero());
        let c = k(3).shift().cohomology();
        assert!(c.h0.is_zero());
        assert_eq!(c.h1.factors, vec![3]);
        assert!(k_complex(Q, 0).is_err());
    }

    #[test]
    fn finite_length_examples() {
        assert!(finite_length_cohomology(&k(2)));
        assert!(!finite_length_cohomology(&TwoPeriodicComplex::unit(Q)));
        let uneven =
            TwoPeriodicComplex::new(RMatrix::zeros(Q, 1, 2), RMatrix::zeros(Q, 2, 1)).unwrap();
        assert!(!finite_length_cohomology(&uneven));
        assert_eq!(decompose(&uneven).unwrap_err(), Error::NotFiniteLength);
    }

    #[test]
    fn decompose_conjugated_sum() {
        let base = k(1)
            .direct_sum(&k(2).shift())
            .unwrap()
            .direct_sum(&trivial_complex(Q, TrivialType::Type1, 1))
            .unwrap();
        let p0 = RMatrix::from_strs(
            Q,
            &[&["1", "x", "2"], &["0", "1 + x", "x^3"], &["x", "0", "1"]],
        );
        let p1 = RMatrix::from_strs(Q, &[&["2", "0", "x^2"], &["1", "1", "0"], &["0", "x", "1"]]);
        let x = base.conjugate(&p0, &p0.inverse().unwrap(), &p1, &p1.inverse().unwrap());
        let d = decompose(&x).unwrap();
        assert_eq!(
            d.multiset,
            IndecompMultiset::from_labels([IndecompLabel::unshifted(1), IndecompLabel::shifted(2)])
        );
        assert!(d.verify(&x));
        assert!(decompose(&TwoPeriodicComplex::zero(Q))
            .unwrap()
            .multiset
            .is_empty());
    }

    #[test]
    fn homotopy_iso_examples() {
        assert!(is_homotopy_iso(&ChainMap2::identity(&k(2))));
        let xf = ChainMap2::identity(&k(1)).scale(&LocalElem::x_pow(Q, 1));
        assert!(!is_homotopy_iso(&xf));
        let t = trivial_complex(Q, TrivialType::Type2, 1);
        assert!(is_homotopy_iso(&ChainMap2::zero(
            &t,
            &TwoPeriodicComplex::zero(Q)
        )));
    }
}
