//! Exact classification of unimodular orbits in `R^n`.
//!
//! The group of integer matrices with determinant `±1` acts on `R^n`, and this
//! crate decides, with exact arithmetic throughout, when two points (or two
//! rational affine subspaces) lie on the same orbit. Every answer comes with a
//! checkable artifact: equivalences produce an explicit integer matrix mapping
//! one input to the other, inequivalences produce an invariant that separates
//! them, and density claims produce either generators witnessing approximation
//! or an exclusion radius the whole orbit respects.
//!
//! # What lives where
//!
//! * [`zlinalg`] — integer/rational matrices, Hermite and Smith normal forms,
//!   basis completion, lattice saturation. Everything else is built on these.
//! * [`ratgeom`] — rational points and their homogeneous integer lifts,
//!   simplexes, simplicial complexes, and rational affine subspaces.
//! * [`measure`] — the lattice-normalized volume `λ_i` on complexes of regular
//!   simplexes, together with its parallelotope and segment forms.
//! * [`point_orbits`] — the subgroup invariant `H_x`, orbit equivalence and
//!   witnesses for points (rational coordinates or symbolic reals), density of
//!   the orbit, and constructive approximation of a target by orbit elements.
//! * [`affine_orbits`] — the `(dim, V)` invariant of a rational affine
//!   subspace, minimal denominators, filetto points, and witness construction
//!   for subspace equivalence.
//! * [`testkit`] — small independent oracles (brute-force unimodular
//!   enumeration, mediant subdivision, Gram determinants) used to cross-check
//!   the main algorithms.
//!
//! # A taste
//!
//! ```
//! use zorbit::ratgeom::RationalPoint;
//! use zorbit::point_orbits::{equivalent_points, h_invariant, witness_point};
//!
//! let x = RationalPoint::from_strs(&["1/2", "1/3"]).unwrap();
//! let y = RationalPoint::from_strs(&["1/6", "0"]).unwrap();
//!
//! // Both points generate the same subgroup Z/6 of R, so they are equivalent.
//! assert_eq!(h_invariant(&x.clone().into()), h_invariant(&y.clone().into()));
//! assert!(equivalent_points(&x.clone().into(), &y.clone().into()).unwrap());
//!
//! // And the equivalence is witnessed by an explicit matrix with det ±1.
//! let gamma = witness_point(&x.clone().into(), &y.clone().into(), false).unwrap();
//! assert_eq!(gamma.apply_rat_vector(x.as_vector()), *y.as_vector());
//! ```

pub mod affine_orbits;
pub mod measure;
pub mod point_orbits;
pub mod ratgeom;
pub mod scalar;
pub mod testkit;
pub mod zlinalg;
