//! Acceptance gate: ten criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p periodic-dvr --test acceptance -- --nocapture`
//! to see the report.

use std::time::Instant;

use rand::Rng;

use periodic_dvr::ar::{ar_triangle, quiver, serre_lengths, verify_left_ar, verify_right_ar};
use periodic_dvr::classify::{
    decompose, is_homotopy_iso, k_complex, IndecompLabel, IndecompMultiset,
};
use periodic_dvr::complex::{
    cone, delta_iso, hom_module, is_null_homotopic, ChainMap2, Homotopy2, TwoPeriodicComplex,
};
use periodic_dvr::minimal::{is_minimal, reduce, TrivialCounts};
use periodic_dvr::random::{self, TestRng};
use periodic_dvr::strictify::{strictify, window_chain_map};
use periodic_dvr::{smith_normal_form, Error, FieldSpec, LocalElem, RMatrix};

const Q: FieldSpec = FieldSpec::Rationals;
const F101: FieldSpec = FieldSpec::Prime(101);

// Criterion 1
const ROUND_TRIP_INSTANCES: usize = 200;
const ROUND_TRIP_MAX_LABELS: usize = 4;
const ROUND_TRIP_MAX_J: usize = 5;
const ROUND_TRIP_MAX_TRIVIALS: usize = 2;
// Criterion 2
const HOM_TABLE_MAX: usize = 6;
// Criterion 3
const AR_MAX_I: usize = 8;
const AR_EXTRA_BOUND: usize = 3;
const QUIVER_BOUND: usize = 8;
const QUIVER_COMPONENTS: usize = 2;
// Criterion 4
const TRIVIAL_INSTANCES: usize = 100;
const ACYCLIC_INSTANCES: usize = 50;
// Criterion 5
const SERRE_MAX_I: usize = 6;
const SERRE_RANDOM_PAIRS: usize = 10;
// Criterion 6
const DUAL_MAX_J: usize = 8;
const DUAL_FG_INSTANCES: usize = 50;
const DELTA_PAIRS: usize = 25;
// Criterion 7
const WITNESS_CHECKS: usize = 1000;
// Criterion 8
const STRICTIFY_INSTANCES: usize = 25;
const STRICTIFY_WINDOW: usize = 10;
// Criterion 9
const END_K1_COMBINATIONS: usize = 50;
// Criterion 10
const STABLE_INSTANCES: usize = 100;
const UNEVEN_INSTANCES: usize = 50;

type Outcome = Result<String, String>;

fn k(f: FieldSpec, j: usize) -> TwoPeriodicComplex {
    k_complex(f, j).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    for (seed, field) in [(11, Q), (12, F101)] {
        let mut rng = random::rng(seed);
        for n in 0..ROUND_TRIP_INSTANCES {
            let inst = random::instance(
                field,
                &mut rng,
                ROUND_TRIP_MAX_LABELS,
                ROUND_TRIP_MAX_J,
                ROUND_TRIP_MAX_TRIVIALS,
            );
            let d = decompose(&inst.complex).map_err(|e| format!("{field} #{n}: {e}"))?;
            ensure(d.multiset == inst.multiset, || {
                format!(
                    "{field} #{n}: expected {}, got {}",
                    inst.multiset, d.multiset
                )
            })?;
            ensure(d.split.trivials.total() == inst.trivials.total(), || {
                format!("{field} #{n}: trivial count")
            })?;
        }
    }
    Ok(format!(
        "{ROUND_TRIP_INSTANCES} instances over each of Q and F_101"
    ))
}

/// Closed forms for 1x1 complexes, from exponent arithmetic only.
///
/// `K(i) -> K(j)`: cycles are `(f0, f1)` with `f0 x^i = f1 x^j`, generated by
/// `z = (x^{max(j-i,0)}, x^{max(i-j,0)})`; boundaries are `R (x^j, x^i) = x^{min} z`.
/// `K(i) -> K(j)[1]`: `f0 = 0`, cycles `R (0, 1)`, boundaries `(0, x^i s0 - x^j s1)`.
fn hom_oracle(i: usize, j: usize, shifted: bool) -> (usize, bool) {
    let f = Q;
    let x = |e: usize| LocalElem::x_pow(f, e);
    if !shifted {
        let z = (x(j.saturating_sub(i)), x(i.saturating_sub(j)));
        let c = x(i.min(j));
        let b = (x(j), x(i));
        // z really is a cycle and b = c z.
        let consistent =
            z.0.mul(&x(i)) == z.1.mul(&x(j)) && b.0 == c.mul(&z.0) && b.1 == c.mul(&z.1);
        (i.min(j), consistent)
    } else {
        let gens = [x(i), x(j).neg()];
        let v = gens.iter().filter_map(LocalElem::valuation).min().unwrap();
        (v, v == i.min(j))
    }
}

fn criterion_2() -> Outcome {
    for i in 1..=HOM_TABLE_MAX {
        for j in 1..=HOM_TABLE_MAX {
            for shifted in [false, true] {
                let target = if shifted { k(Q, j).shift() } else { k(Q, j) };
                let hm = hom_module(&k(Q, i), &target).map_err(|e| e.to_string())?;
                let (oracle, consistent) = hom_oracle(i, j, shifted);
                ensure(consistent, || {
                    format!("oracle inconsistent at ({i},{j},{shifted})")
                })?;
                ensure(hm.length() == Some(i.min(j)) && oracle == i.min(j), || {
                    format!(
                        "Hom(K({i}), K({j}){}) length {:?}, oracle {oracle}",
                        if shifted { "[1]" } else { "" },
                        hm.length()
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "all {} pairs, unshifted and shifted",
        HOM_TABLE_MAX * HOM_TABLE_MAX
    ))
}

fn criterion_3() -> Outcome {
    for i in 1..=AR_MAX_I {
        let t = ar_triangle(Q, i).map_err(|e| e.to_string())?;
        let expected = if i == 1 {
            IndecompMultiset::from_labels([IndecompLabel::unshifted(2)])
        } else {
            IndecompMultiset::from_labels([
                IndecompLabel::unshifted(i - 1),
                IndecompLabel::unshifted(i + 1),
            ])
        };
        let r = verify_right_ar(&t, i + AR_EXTRA_BOUND);
        ensure(r.middle.as_ref() == Some(&expected), || {
            format!("i={i}: middle {:?}, expected {expected}", r.middle)
        })?;
        ensure(r.ok(), || format!("i={i}: right AR check {r:?}"))?;
        let l = verify_left_ar(&t, i + AR_EXTRA_BOUND);
        ensure(l.ok(), || format!("i={i}: left AR check failed"))?;
    }
    let g = quiver(Q, QUIVER_BOUND).map_err(|e| e.to_string())?;
    let comps = g.components();
    ensure(comps.len() == QUIVER_COMPONENTS, || {
        format!("{} components", comps.len())
    })?;
    for c in &comps {
        ensure(
            c.len() == QUIVER_BOUND && c.iter().all(|l| l.shifted == c[0].shifted),
            || format!("component {c:?}"),
        )?;
    }
    ensure(g.edges.iter().all(|e| e.mult == 1), || {
        "multiplicity != 1".into()
    })?;
    ensure(
        g.edges
            .iter()
            .all(|e| e.from.shifted == e.to.shifted && e.from.j.abs_diff(e.to.j) == 1),
        || "cross or long edge".into(),
    )?;
    let expected_edges = 2 * QUIVER_COMPONENTS * (QUIVER_BOUND - 1);
    ensure(g.edges.len() == expected_edges, || {
        format!("{} edges", g.edges.len())
    })?;
    Ok(format!(
        "i = 1..{AR_MAX_I}; quiver({QUIVER_BOUND}) has {} edges in 2 chains",
        g.edges.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = random::rng(41);
    for n in 0..TRIVIAL_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let t = random::trivials(&mut rng, 4);
        let t = if t.total() == 0 {
            TrivialCounts { type1: 1, type2: 0 }
        } else {
            t
        };
        let w = random::labelled_sum(field, &IndecompMultiset::new(), t);
        let w = random::conjugate(&w, &mut rng, 3).dst().clone();
        let sr = reduce(&w);
        ensure(sr.minimal.is_zero_object() && sr.verify(&w), || {
            format!("trivial #{n}")
        })?;
    }
    for n in 0..ACYCLIC_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let inst = random::instance(field, &mut rng, 2, 4, 1);
        let c = cone(&ChainMap2::identity(&inst.complex)).unwrap().complex;
        let c = random::conjugate(&c, &mut rng, 2).dst().clone();
        ensure(c.cohomology().is_zero(), || {
            format!("acyclic #{n} has cohomology")
        })?;
        let sr = reduce(&c);
        ensure(sr.minimal.is_zero_object() && sr.verify(&c), || {
            format!("acyclic #{n}")
        })?;
    }
    Ok(format!(
        "{TRIVIAL_INSTANCES} trivial sums, {ACYCLIC_INSTANCES} acyclic cones"
    ))
}

fn criterion_5() -> Outcome {
    let objects: Vec<TwoPeriodicComplex> = (1..=SERRE_MAX_I)
        .flat_map(|i| [k(Q, i), k(Q, i).shift()])
        .collect();
    for x in &objects {
        for y in &objects {
            let (a, b) = serre_lengths(x, y).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{a} != {b}"))?;
        }
    }
    let mut rng = random::rng(51);
    for n in 0..SERRE_RANDOM_PAIRS {
        let x = random::instance(Q, &mut rng, 3, 4, 1).complex;
        let y = random::instance(Q, &mut rng, 3, 4, 1).complex;
        let (a, b) = serre_lengths(&x, &y).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("random pair #{n}: {a} != {b}"))?;
    }
    Ok(format!(
        "{} indecomposable pairs, {SERRE_RANDOM_PAIRS} random sums",
        objects.len().pow(2)
    ))
}

fn criterion_6() -> Outcome {
    for j in 1..=DUAL_MAX_J {
        let d = decompose(&k(Q, j).dual()).map_err(|e| e.to_string())?;
        ensure(
            d.multiset == IndecompMultiset::from_labels([IndecompLabel::shifted(j)]),
            || format!("dual K({j}) = {}", d.multiset),
        )?;
    }
    let mut rng = random::rng(61);
    for n in 0..DUAL_FG_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let inst = random::instance(field, &mut rng, 3, 5, 2);
        let x = &inst.complex;
        let dx = x.dual();
        ensure(dx.finite_length_cohomology(), || {
            format!("dual #{n} not finite length")
        })?;
        let m_dual = decompose(&dx).map_err(|e| e.to_string())?.multiset;
        let m_dd = decompose(&dx.dual()).map_err(|e| e.to_string())?.multiset;
        ensure(m_dual == inst.multiset.shift(), || {
            format!("dual #{n}: {m_dual}")
        })?;
        ensure(m_dd == inst.multiset, || {
            format!("double dual #{n}: {m_dd}")
        })?;
    }
    for n in 0..DELTA_PAIRS {
        let field = if n % 2 == 0 { Q } else { F101 };
        let x = random::instance(field, &mut rng, 2, 3, 1).complex;
        let y = random::instance(field, &mut rng, 2, 3, 1).complex;
        let d = delta_iso(&x, &y).map_err(|e| format!("delta #{n}: {e}"))?;
        ensure(d.validate().is_ok() && d.is_isomorphism(), || {
            format!("delta #{n}")
        })?;
    }
    Ok(format!(
        "j <= {DUAL_MAX_J}, {DUAL_FG_INSTANCES} dual instances, {DELTA_PAIRS} delta pairs"
    ))
}

fn random_matrix(field: FieldSpec, rng: &mut TestRng, rows: usize, cols: usize) -> RMatrix {
    let mut m = RMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = random::element(field, rng, 3);
        }
    }
    m
}

fn criterion_7() -> Outcome {
    let mut rng = random::rng(71);
    let mut checks = 0;
    let mut n = 0;
    while checks < WITNESS_CHECKS {
        let field = if n % 2 == 0 { Q } else { F101 };
        match n % 4 {
            0 => {
                let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let a = random_matrix(field, &mut rng, r, c);
                ensure(smith_normal_form(&a).verify(&a), || format!("SNF #{n}"))?;
            }
            1 => {
                // A null-homotopic map by construction; the solver must find a witness.
                let x = random::instance(field, &mut rng, 2, 3, 1).complex;
                let y = random::instance(field, &mut rng, 2, 3, 1).complex;
                let s = Homotopy2 {
                    s0: random_matrix(field, &mut rng, y.r1(), x.r0()),
                    s1: random_matrix(field, &mut rng, y.r0(), x.r1()),
                };
                let (m0, m1) = s.boundary(&x, &y);
                let f = ChainMap2::new(x, y, m0, m1).map_err(|e| e.to_string())?;
                let w = is_null_homotopic(&f).ok_or_else(|| format!("no witness #{n}"))?;
                ensure(w.witnesses(&f), || format!("witness #{n}"))?;
            }
            2 => {
                let x = random::instance(field, &mut rng, 3, 4, 2).complex;
                ensure(reduce(&x).verify(&x), || format!("split #{n}"))?;
            }
            _ => {
                let x = random::instance(field, &mut rng, 3, 4, 2).complex;
                let d = decompose(&x).map_err(|e| e.to_string())?;
                ensure(d.verify(&x), || format!("decompose certificate #{n}"))?;
            }
        }
        checks += 1;
        n += 1;
    }
    Ok(format!("{checks} re-verifications"))
}

fn criterion_8() -> Outcome {
    let mut rng = random::rng(81);
    for n in 0..STRICTIFY_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let q = random::quasi_periodic(field, &mut rng, 3, 4);
        let x = strictify(&q).map_err(|e| format!("#{n}: {e}"))?;
        ensure(x.validate().is_ok() && is_minimal(&x), || {
            format!("#{n}: not a minimal complex")
        })?;
        let w = window_chain_map(&q, STRICTIFY_WINDOW).map_err(|e| e.to_string())?;
        ensure(w.verify(), || {
            format!("#{n}: window failures {:?}", w.failures())
        })?;
    }
    Ok(format!(
        "{STRICTIFY_INSTANCES} instances, window |n| <= {STRICTIFY_WINDOW}"
    ))
}

fn criterion_9() -> Outcome {
    let k1 = k(Q, 1);
    let hm = hom_module(&k1, &k1).map_err(|e| e.to_string())?;
    let dichotomy = |f: &ChainMap2| is_homotopy_iso(f) || is_null_homotopic(f).is_some();
    for (n, g) in hm.generators.iter().enumerate() {
        ensure(dichotomy(g), || format!("generator {n}"))?;
    }
    let mut rng = random::rng(91);
    for n in 0..END_K1_COMBINATIONS {
        let c = random::combination(&hm.generators, &mut rng, 3).unwrap();
        ensure(dichotomy(&c), || format!("combination {n}"))?;
    }
    let t = ar_triangle(Q, 1).map_err(|e| e.to_string())?;
    let mid = decompose(t.e()).map_err(|e| e.to_string())?.multiset;
    ensure(!mid.contains(IndecompLabel::unshifted(1)), || {
        format!("middle {mid}")
    })?;
    Ok(format!(
        "{} generators, {END_K1_COMBINATIONS} combinations",
        hm.generators.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = random::rng(101);
    for n in 0..STABLE_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let inst = random::instance(field, &mut rng, 4, 5, 2);
        let m = reduce(&inst.complex).minimal;
        ensure(m.r0() == m.r1(), || {
            format!("#{n}: minimal ranks {:?}", m.ranks())
        })?;
    }
    for n in 0..UNEVEN_INSTANCES {
        let field = if n % 2 == 0 { Q } else { F101 };
        let base = random::instance(field, &mut rng, 3, 4, 1).complex;
        let extra = if n % 3 == 0 {
            TwoPeriodicComplex::unit(field).shift()
        } else {
            TwoPeriodicComplex::unit(field)
        };
        let x = base.direct_sum(&extra).unwrap();
        let x = random::conjugate(&x, &mut rng, 3).dst().clone();
        ensure(x.r0() != x.r1(), || format!("#{n}: ranks equal"))?;
        ensure(decompose(&x).err() == Some(Error::NotFiniteLength), || {
            format!("#{n}: uneven complex accepted")
        })?;
    }
    Ok(format!(
        "{STABLE_INSTANCES} balanced, {UNEVEN_INSTANCES} uneven rejected"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("classification round-trip", criterion_1),
        ("hom-length table", criterion_2),
        ("AR-quiver reproduction", criterion_3),
        ("acyclic implies contractible", criterion_4),
        ("Serre-duality lengths", criterion_5),
        ("duality suite", criterion_6),
        ("witness integrity", criterion_7),
        ("strictification", criterion_8),
        ("endomorphism dichotomy", criterion_9),
        ("balanced minimal ranks", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS  {:>2}  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL  {:>2}  {name}: {why} ({secs:.2}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
