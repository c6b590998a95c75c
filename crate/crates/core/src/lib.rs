//! Exact computations with 2-periodic complexes of finitely generated free
//! modules over the discrete valuation ring `R = k[x]_(x)`, `k` one of `Q`
//! or `F_p`.
//!
//! The crate covers the arithmetic of `R` (Smith forms, solving over the
//! ring, subquotients), the homotopy category of 2-periodic complexes
//! (shift, dual, tensor, internal Hom, cones, null-homotopies), minimal
//! models, strictification of quasi-periodic data, the classification of
//! indecomposables `K(j)`, `K(j)[1]`, and the Auslander-Reiten theory of the
//! finite-length part.

pub mod ar;
pub mod classify;
pub mod complex;
pub mod elem;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod minimal;
mod modgcd;
pub mod poly;
pub mod random;
pub mod selftest;
pub mod smith;
pub mod strictify;
mod zpoly;

pub use ar::{
    ar_triangle, ar_triangle_at, quiver, serre_functor, serre_length_check, socle_map,
    verify_left_ar, verify_right_ar, ARReport, QuiverGraph,
};
pub use classify::{
    decompose, is_homotopy_iso, k_complex, Decomposition, IndecompLabel, IndecompMultiset,
};
pub use complex::{
    cone, delta_iso, hom_module, homc, is_null_homotopic, tensor2, ChainMap2, HomModule, Homotopy2,
    Triangle, TwoPeriodicComplex,
};
pub use elem::LocalElem;
pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use matrix::RMatrix;
pub use minimal::{
    is_minimal, reduce, trivial_complex, trivial_contraction, SplitResult, TrivialType,
};
pub use smith::{homology_invariants, smith_normal_form, solve_over_ring, SmithForm, Subquotient};
pub use strictify::{strictify, window_chain_map, QuasiPeriodicData};
