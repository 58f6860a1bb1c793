//! The rational invariant measure `λ_i` on regular simplicial complexes,
//! segments, and parallelotopes.
//!
//! For a complex whose simplexes are all regular, the `i`-dimensional value
//! is a finite sum over the maximal `i`-simplexes:
//!
//! ```text
//! λ_i(Δ) = Σ_{T maximal, dim T = i} 1 / (i! · den(T))
//! ```
//!
//! where `den(T)` is the product of vertex denominators. The number is
//! invariant under integer-affine unimodular maps, additive under gluing
//! along lower-dimensional pieces, and unchanged by embedding `R^n` as a
//! coordinate subspace of `R^{n+1}` — the test suite exercises each of these
//! as a property. Segments and parallelotopes additionally get closed forms
//! that bypass triangulation.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratgeom::{
    den_simplex, homog, is_regular, Parallelotope, RationalPoint, RationalSimplex,
    SimplicialComplex,
};
use crate::scalar::{int, Int, Rat};
use crate::zlinalg::{saturation_basis, IntMatrix, RatMatrix, RatVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    /// λ is only defined through regular triangulations; the complex
    /// contains a simplex whose vertex lifts do not extend to a basis.
    #[error("complex contains a non-regular simplex (vertices {verts:?})")]
    NotRegular { verts: Vec<String> },
    /// A `k`-generator parallelotope only carries a `k`-dimensional part.
    #[error("a {have}-generator parallelotope has no {asked}-dimensional measure")]
    UnsupportedDimension { asked: usize, have: usize },
}

fn simplex_label(s: &RationalSimplex) -> Vec<String> {
    s.vertices()
        .iter()
        .map(|v| {
            let parts: Vec<String> =
                v.as_vector().iter().map(crate::scalar::render_rat).collect();
            format!("({})", parts.join(", "))
        })
        .collect()
}

/// The subcomplex generated by the maximal `i`-simplexes of `Δ`.
pub fn dimensional_part(delta: &SimplicialComplex, i: usize) -> SimplicialComplex {
    let tops = delta.maximal_of_dim(i);
    let mut parts: Vec<RationalSimplex> = Vec::new();
    for t in tops {
        for f in t.faces() {
            if !parts.contains(&f) {
                parts.push(f);
            }
        }
    }
    SimplicialComplex::from_valid_parts(delta.ambient_dim(), parts)
}

/// The `i`-dimensional measure of a regular complex.
///
/// Every simplex of `Δ` must be regular, not only the `i`-dimensional ones:
/// the value is a property of the underlying polyhedron, and that reading is
/// only justified when the whole triangulation is regular.
pub fn lambda_complex(delta: &SimplicialComplex, i: usize) -> Result<Rat, MeasureError> {
    for s in delta.simplexes() {
        if !is_regular(s) {
            return Err(MeasureError::NotRegular { verts: simplex_label(s) });
        }
    }
    let mut fact = Int::one();
    for m in 1..=i {
        fact *= int(m as i64);
    }
    let mut total = Rat::zero();
    for t in delta.maximal_of_dim(i) {
        total += Rat::new(Int::one(), &fact * den_simplex(t));
    }
    Ok(total)
}

/// One-dimensional measure of the segment from `a` to `b`, in closed form.
///
/// Write `b − a = c·p` with `p` a primitive integer vector and `c > 0`
/// rational, and let `δ` be the smallest denominator of a rational point on
/// the affine line through `a` and `b`; the value is `c/δ`. To see this,
/// take any regular triangulation of the segment: a regular piece
/// `conv(q, r)` contributes `1/(den(q)·den(r))` to the defining sum, while
/// its difference vector contributes exactly `δ` times that to `c` — the
/// piece's lifts form a basis of the rank-2 lattice of integer vectors in
/// the homogeneous span, whose last coordinates form the subgroup `δZ`.
/// Summing over pieces gives `c = δ·λ_1`. On a line through an integer
/// point — in particular through `0`, the [`qnorm`] case — `δ = 1` and the
/// measure is just `c`. A degenerate segment gives `0`.
///
/// ```
/// use zorbit::measure::lambda_segment;
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::scalar::rat;
///
/// let a = RationalPoint::origin(2);
/// let b = RationalPoint::from_i64(&[2, 2]);
/// assert_eq!(lambda_segment(&a, &b), rat(2, 1));
///
/// // the line x + y = 1/2 misses Z^2, so δ = 2 halves the naive value
/// let a = RationalPoint::from_strs(&["1/2", "0"]).unwrap();
/// let b = RationalPoint::from_strs(&["0", "1/2"]).unwrap();
/// assert_eq!(lambda_segment(&a, &b), rat(1, 4));
/// ```
pub fn lambda_segment(a: &RationalPoint, b: &RationalPoint) -> Rat {
    assert_eq!(a.dim(), b.dim(), "segment endpoints in the same space");
    if a == b {
        return Rat::zero();
    }
    let diff = b.as_vector().sub(a.as_vector());
    let (ints, den) = diff.clear_denominators();
    let content = ints.content();
    debug_assert!(content.is_positive());
    let c = Rat::new(content, den);
    // δ: the last-coordinate content of the saturated lift lattice of the
    // segment, i.e. the minimal denominator on the line
    let lifts = IntMatrix::from_row_vectors(
        &[homog(a).into_vector(), homog(b).into_vector()],
        a.dim() + 1,
    );
    let sat = saturation_basis(&lifts.to_rat());
    let delta = sat.col_vector(sat.cols() - 1).content();
    debug_assert!(delta.is_positive());
    c / Rat::from(delta)
}

/// `λ_1(conv(0, w))` — the rational norm of `w`.
pub fn qnorm(w: &RatVector) -> Rat {
    lambda_segment(
        &RationalPoint::origin(w.len()),
        &RationalPoint::new(w.clone()),
    )
}

/// The `k`-dimensional measure of a `k`-generator parallelotope.
///
/// Dependent generators span a degenerate parallelotope whose `k`-part is
/// empty, so the value is `0`. Otherwise each generator is written in an
/// integer basis of `span ∩ Z^n` and the answer is the absolute determinant
/// of the resulting square coordinate matrix — any two such bases differ by
/// a unimodular factor, so the choice cannot matter.
///
/// ```
/// use zorbit::measure::lambda_parallelotope;
/// use zorbit::ratgeom::{Parallelotope, RationalPoint};
/// use zorbit::scalar::rat;
///
/// let p = Parallelotope::new(vec![
///     RationalPoint::from_strs(&["1/2", "0"]).unwrap(),
///     RationalPoint::from_strs(&["0", "1/2"]).unwrap(),
/// ]);
/// assert_eq!(lambda_parallelotope(&p, 2), Ok(rat(1, 4)));
/// ```
pub fn lambda_parallelotope(p: &Parallelotope, i: usize) -> Result<Rat, MeasureError> {
    let k = p.generators().len();
    if i != k {
        return Err(MeasureError::UnsupportedDimension { asked: i, have: k });
    }
    let n = p.ambient_dim();
    let gens = RatMatrix::from_row_vectors(
        &p.generators().iter().map(|g| g.as_vector().clone()).collect::<Vec<_>>(),
        n,
    );
    if gens.rank() < k {
        return Ok(Rat::zero());
    }
    let basis = saturation_basis(&gens);
    debug_assert_eq!(basis.rows(), k);
    // coordinates: solve basisᵀ · C = gensᵀ, then C is k×k
    let coords = basis
        .to_rat()
        .transpose()
        .solve_right(&gens.transpose())
        .expect("generators lie in the span of their saturation");
    let d = coords.det();
    Ok(d.abs())
}
