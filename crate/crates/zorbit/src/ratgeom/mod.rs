//! Rational geometry: points, homogeneous lifts, simplexes, complexes, and
//! rational affine subspaces.
//!
//! Everything here is exact. A rational point `x` carries a canonical
//! homogeneous lift `x̃ = (den(x)·x, den(x)) ∈ Z^{n+1}`, which is primitive by
//! construction; simplexes are regular when their vertex lifts extend to a
//! basis of `Z^{n+1}`; subspaces are stored as the saturated lattices their
//! rational points span. These lifts are the bridge between affine geometry
//! over `Q` and integer linear algebra, and the rest of the crate leans on
//! them constantly.

mod complex;
mod point;
mod simplex;
mod subspace;

pub use complex::SimplicialComplex;
pub use point::{dehomog, den, homog, HomogeneousVector, RationalPoint};
pub use simplex::{den_simplex, is_regular, Parallelotope, RationalSimplex};
pub use subspace::{
    d_min, make_subspace, regular_simplex_in, regular_simplex_in_as_simplex,
    regular_simplex_through, RationalAffineSubspace, SubspaceDesc,
};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    /// An equation system with no solutions describes no affine subspace.
    #[error("the equation system has no solutions")]
    EmptySubspace,
    /// Simplex constructors require affinely independent vertices.
    #[error("vertices are affinely dependent")]
    DegenerateSimplex,
    /// A vertex set fails the closure or intersection conditions.
    #[error("not a simplicial complex: {reason}")]
    InvalidComplex { reason: String },
    /// A vector that should encode a rational point fails primitivity or the
    /// positive-last-coordinate convention.
    #[error("not a homogeneous point lift: {reason}")]
    InvalidHomogeneous { reason: String },
    /// An explicit lattice basis that does not describe a subspace.
    #[error("not a subspace lattice: {reason}")]
    InvalidLattice { reason: String },
}
