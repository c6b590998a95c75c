//! A seeded property suite over every module, for the command line
//! `selftest`. Each check runs `cases` random instances and stops at the first
//! failure.

use serde::Serialize;

use crate::ar::{ar_triangle, serre_lengths, socle_map, verify_left_ar, verify_right_ar};
use crate::classify::{block_sum, decompose, is_homotopy_iso, IndecompLabel, IndecompMultiset};
use crate::complex::{
    cone, delta_iso, hom_module, homc, is_null_homotopic, tensor2, ChainMap2, Homotopy2,
};
use crate::elem::LocalElem;
use crate::field::FieldSpec;
use crate::io::{complex_to_json, parse_complex};
use crate::matrix::RMatrix;
use crate::minimal::{is_minimal, reduce, trivial_contraction};
use crate::random::{self, TestRng};
use crate::smith::{homology_invariants, smith_normal_form, solve_over_ring};
use crate::strictify::{strictify, window_chain_map};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    /// The failing case, when there is one.
    pub failure: Option<String>,
}

type Check = fn(FieldSpec, &mut TestRng) -> Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn matrix(f: FieldSpec, rng: &mut TestRng, rows: usize, cols: usize) -> RMatrix {
    let mut m = RMatrix::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = random::element(f, rng, 3);
        }
    }
    m
}

fn smith(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    use rand::Rng;
    let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let a = matrix(f, rng, r, c);
    ensure(smith_normal_form(&a).verify(&a), "U A V != D")?;
    let sigma: Vec<LocalElem> = (0..c).map(|_| random::element(f, rng, 2)).collect();
    let b = a.mul_vec(&sigma);
    let s = solve_over_ring(&a, &b).map_err(|e| e.to_string())?;
    ensure(
        s.is_some_and(|s| a.mul_vec(&s) == b),
        "no exact ring solution",
    )
}

fn homology(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let inst = random::instance(f, rng, 3, 4, 2);
    let x = &inst.complex;
    let h0 = homology_invariants(x.d0(), x.d1()).map_err(|e| e.to_string())?;
    let h1 = homology_invariants(x.d1(), x.d0()).map_err(|e| e.to_string())?;
    ensure(
        h0.length() == Some(inst.multiset.unshifted_length()),
        "length of H^0",
    )?;
    ensure(
        h1.length() == Some(inst.multiset.shifted_length()),
        "length of H^1",
    )
}

fn constructors(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 2, 3, 1).complex;
    let y = random::instance(f, rng, 2, 3, 1).complex;
    let t = tensor2(&x, &y).map_err(|e| e.to_string())?;
    let h = homc(&x, &y).map_err(|e| e.to_string())?;
    for z in [x.shift(), x.dual(), t, h] {
        ensure(z.validate().is_ok(), "constructed complex fails d^2 = 0")?;
    }
    ensure(x.shift().shift() == x, "shift twice is not the identity")?;
    let d = delta_iso(&x, &y).map_err(|e| e.to_string())?;
    ensure(
        d.validate().is_ok() && d.is_isomorphism(),
        "delta is not a chain isomorphism",
    )
}

fn homotopies(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 2, 3, 1).complex;
    let y = random::instance(f, rng, 2, 3, 1).complex;
    let s = Homotopy2 {
        s0: matrix(f, rng, y.r1(), x.r0()),
        s1: matrix(f, rng, y.r0(), x.r1()),
    };
    let (m0, m1) = s.boundary(&x, &y);
    let g = ChainMap2::new(x, y, m0, m1).map_err(|e| e.to_string())?;
    let w = is_null_homotopic(&g).ok_or("boundary not recognised as null-homotopic")?;
    ensure(w.witnesses(&g), "witness does not re-verify")
}

fn cones(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 2, 3, 1).complex;
    let c = cone(&ChainMap2::identity(&x)).map_err(|e| e.to_string())?;
    let vu = c.v.compose(&c.u).map_err(|e| e.to_string())?;
    ensure(vu.f0().is_zero() && vu.f1().is_zero(), "v u != 0")?;
    ensure(
        reduce(&c.complex).minimal.is_zero_object(),
        "cone of the identity is not contractible",
    )
}

fn reduction(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 3, 4, 3).complex;
    let sr = reduce(&x);
    ensure(
        is_minimal(&sr.minimal) && sr.verify(&x),
        "split certificate",
    )?;
    let w = random::labelled_sum(f, &IndecompMultiset::new(), random::trivials(rng, 3));
    let w = random::conjugate(&w, rng, 3).dst().clone();
    for v in [w.shift(), w.dual()] {
        ensure(
            reduce(&v).minimal.is_zero_object(),
            "shift or dual of a trivial complex",
        )?;
    }
    let s = trivial_contraction(&w).map_err(|e| e.to_string())?;
    ensure(s.witnesses(&ChainMap2::identity(&w)), "contraction")
}

fn classification(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let inst = random::instance(f, rng, 3, 4, 2);
    let d = decompose(&inst.complex).map_err(|e| e.to_string())?;
    ensure(d.multiset == inst.multiset, "wrong multiset")?;
    ensure(d.verify(&inst.complex), "decomposition certificate")?;
    let m = decompose(&inst.complex.dual())
        .map_err(|e| e.to_string())?
        .multiset;
    ensure(m == inst.multiset.shift(), "dual does not shift labels")?;
    let x = random::conjugate(&block_sum(f, &inst.multiset), rng, 2)
        .dst()
        .clone();
    ensure(
        is_null_homotopic(&ChainMap2::identity(&x)).is_none(),
        "identity of a minimal complex is null-homotopic",
    )
}

fn endomorphisms(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let k1 = block_sum(
        f,
        &IndecompMultiset::from_labels([IndecompLabel::unshifted(1)]),
    );
    let hm = hom_module(&k1, &k1).map_err(|e| e.to_string())?;
    let g = random::combination(&hm.generators, rng, 2).ok_or("End(K(1)) has no generators")?;
    ensure(
        is_homotopy_iso(&g) || is_null_homotopic(&g).is_some(),
        "endomorphism of K(1) neither invertible nor null",
    )
}

fn strictification(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let q = random::quasi_periodic(f, rng, 3, 4);
    let x = strictify(&q).map_err(|e| e.to_string())?;
    ensure(x.validate().is_ok() && is_minimal(&x), "strict complex")?;
    let w = window_chain_map(&q, 10).map_err(|e| e.to_string())?;
    ensure(w.verify(), "window identity fails")
}

fn serre(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 2, 3, 1).complex;
    let y = random::instance(f, rng, 2, 3, 1).complex;
    let (a, b) = serre_lengths(&x, &y).map_err(|e| e.to_string())?;
    ensure(a == b, "Serre lengths differ")
}

fn ar_triangles(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    use rand::Rng;
    let i = rng.gen_range(1..=5);
    let t = ar_triangle(f, i).map_err(|e| e.to_string())?;
    ensure(verify_right_ar(&t, i + 3).ok(), "right AR axioms")?;
    ensure(verify_left_ar(&t, i + 3).ok(), "left AR axioms")?;
    let h = socle_map(f, i).map_err(|e| e.to_string())?;
    ensure(
        is_null_homotopic(&h.scale(&LocalElem::x_pow(f, 1))).is_some(),
        "x times the socle map is not null",
    )
}

fn documents(f: FieldSpec, rng: &mut TestRng) -> Result<(), String> {
    let x = random::instance(f, rng, 3, 4, 2).complex;
    let back =
        parse_complex(&complex_to_json(&x).to_string(), Some(f)).map_err(|e| e.to_string())?;
    ensure(back == x, "JSON round trip")
}

const CHECKS: [(&str, Check); 12] = [
    ("smith-normal-form", smith),
    ("homology-invariants", homology),
    ("constructors", constructors),
    ("null-homotopies", homotopies),
    ("cones", cones),
    ("minimal-models", reduction),
    ("classification", classification),
    ("endomorphism-dichotomy", endomorphisms),
    ("strictification", strictification),
    ("serre-lengths", serre),
    ("ar-triangles", ar_triangles),
    ("json-round-trip", documents),
];

/// Runs every check for `cases` seeded instances over `field`.
pub fn run(field: FieldSpec, seed: u64, cases: usize) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = random::rng(seed.wrapping_add(k as u64));
            let failure = (0..cases).find_map(|n| {
                check(field, &mut rng)
                    .err()
                    .map(|e| format!("case {n}: {e}"))
            });
            CheckResult {
                name,
                cases,
                passed: failure.is_none(),
                failure,
            }
        })
        .collect()
}
