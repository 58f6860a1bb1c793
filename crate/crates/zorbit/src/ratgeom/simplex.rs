//! Rational simplexes, Farey regularity, and parallelotopes.

use num_traits::One;

use crate::ratgeom::point::{den, homog, RationalPoint};
use crate::ratgeom::GeomError;
use crate::scalar::{Int, Rat};
use crate::zlinalg::{complete_to_basis, IntMatrix, RatMatrix, RatVector};

/// The convex hull of affinely independent rational points.
///
/// Vertices are stored sorted lexicographically, so two simplexes are equal
/// exactly when their vertex sets are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSimplex {
    ambient: usize,
    verts: Vec<RationalPoint>,
}

impl RationalSimplex {
    /// Builds the simplex `conv(verts)`, rejecting empty, mixed-dimension,
    /// duplicate, or affinely dependent vertex lists.
    pub fn new(mut verts: Vec<RationalPoint>) -> Result<Self, GeomError> {
        assert!(!verts.is_empty(), "a simplex needs at least one vertex");
        let ambient = verts[0].dim();
        assert!(
            verts.iter().all(|v| v.dim() == ambient),
            "simplex vertices must share one ambient dimension"
        );
        verts.sort();
        // affine independence == linear independence of the homogeneous lifts
        // (this also catches duplicates)
        let lifts = lift_matrix(&verts);
        if lifts.to_rat().rank() != verts.len() {
            return Err(GeomError::DegenerateSimplex);
        }
        Ok(RationalSimplex { ambient, verts })
    }

    pub fn from_strs(verts: &[&[&str]]) -> Result<Self, GeomError> {
        let pts = verts
            .iter()
            .map(|v| RationalPoint::from_strs(v).map_err(|e| GeomError::InvalidComplex {
                reason: e.to_string(),
            }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    /// Dimension of the simplex (vertex count minus one).
    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.verts
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &RationalSimplex) -> bool {
        self.verts.iter().all(|v| other.verts.binary_search(v).is_ok())
    }

    /// All nonempty sub-simplexes, `self` included.
    pub fn faces(&self) -> Vec<RationalSimplex> {
        let k = self.verts.len();
        let mut out = Vec::with_capacity((1 << k) - 1);
        for mask in 1u32..(1 << k) {
            let sub: Vec<RationalPoint> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.verts[i].clone())
                .collect();
            // sub-lists of an independent list stay independent
            out.push(RationalSimplex { ambient: self.ambient, verts: sub });
        }
        out
    }

    /// Exact membership test: `x` has a (unique) barycentric representation
    /// with nonnegative coordinates.
    pub fn contains(&self, x: &RationalPoint) -> bool {
        assert_eq!(x.dim(), self.ambient);
        let lifted = lift_matrix(&self.verts).to_rat().transpose();
        let target = RatMatrix::from_row_vectors(&[homog_rat(x)], self.ambient + 1).transpose();
        match lifted.solve_right(&target) {
            None => false,
            Some(sol) => (0..sol.rows()).all(|i| sol.at(i, 0) >= &Rat::from(Int::from(0))),
        }
    }
}

impl std::fmt::Debug for RationalSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "conv{:?}", self.verts)
    }
}

/// Rows are the homogeneous lifts of the points.
pub(crate) fn lift_matrix(pts: &[RationalPoint]) -> IntMatrix {
    let n = pts.first().map_or(0, |p| p.dim());
    let rows: Vec<_> = pts.iter().map(|p| homog(p).into_vector()).collect();
    IntMatrix::from_row_vectors(&rows, n + 1)
}

/// Rational homogeneous lift `(x, 1)` — convenient for solving, where
/// primitivity does not matter.
pub(crate) fn homog_rat(x: &RationalPoint) -> RatVector {
    let mut v = x.as_vector().clone().into_vec();
    v.push(Rat::one());
    RatVector::new(v)
}

/// Farey regularity: the vertex lifts extend to a basis of `Z^{n+1}`.
///
/// ```
/// use zorbit::ratgeom::{is_regular, RationalSimplex};
///
/// // conv((1/2,0), (0,1/3)): lifts (1,0,2) and (0,1,3) are saturated
/// let s = RationalSimplex::from_strs(&[&["1/2", "0"], &["0", "1/3"]]).unwrap();
/// assert!(is_regular(&s));
///
/// // conv(0, 2) on the line: lifts (0,1),(2,1) have index 2 in their span
/// let t = RationalSimplex::from_strs(&[&["0"], &["2"]]).unwrap();
/// assert!(!is_regular(&t));
/// ```
pub fn is_regular(s: &RationalSimplex) -> bool {
    complete_to_basis(&lift_matrix(s.vertices())).is_ok()
}

/// Product of the vertex denominators.
pub fn den_simplex(s: &RationalSimplex) -> Int {
    s.vertices().iter().map(den).product()
}

/// The half-open parallelotope `{t_1 v_1 + ⋯ + t_k v_k : 0 ≤ t_i < 1}`
/// spanned by `k ≤ n` generators, anchored at the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct Parallelotope {
    ambient: usize,
    generators: Vec<RationalPoint>,
}

impl Parallelotope {
    pub fn new(generators: Vec<RationalPoint>) -> Self {
        assert!(!generators.is_empty(), "parallelotope needs at least one generator");
        let ambient = generators[0].dim();
        assert!(
            generators.iter().all(|g| g.dim() == ambient),
            "generators must share one ambient dimension"
        );
        assert!(generators.len() <= ambient, "more generators than ambient dimensions");
        Parallelotope { ambient, generators }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[RationalPoint] {
        &self.generators
    }
}

impl std::fmt::Debug for Parallelotope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P{:?}", self.generators)
    }
}
