//! Rational affine subspaces as saturated lattices of homogeneous lifts.
//!
//! A nonempty rational affine subspace `F ⊆ R^n` is stored through
//! `L_F = span{ṽ : v ∈ F ∩ Q^n} ∩ Z^{n+1}`, the saturated lattice of integer
//! vectors in the homogeneous span. Keeping the basis in Hermite form makes
//! the representation canonical: two subspaces are equal exactly when their
//! stored bases are equal entrywise. The minimal denominator `d_F` and the
//! minimal-denominator regular simplexes of `F` fall out of this lattice by
//! pure column bookkeeping.

use num_traits::{Signed, Zero};

use crate::ratgeom::point::{den, homog, RationalPoint};
use crate::ratgeom::simplex::{homog_rat, lift_matrix, RationalSimplex};
use crate::ratgeom::GeomError;
use crate::scalar::{Int, Rat};
use crate::zlinalg::{
    complete_to_basis, hnf, saturation_basis, IntMatrix, IntVector, RatMatrix, UnimodularMap,
};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalAffineSubspace {
    n: usize,
    /// Hermite-form basis of `L_F`, one row per lattice dimension.
    lattice: IntMatrix,
}

/// The two ways of describing a subspace: a spanning set of points, or an
/// integer equation system `A x = b`.
#[derive(Clone, Debug)]
pub enum SubspaceDesc {
    Generators(Vec<RationalPoint>),
    Equations { a: IntMatrix, b: IntVector },
}

/// Builds the canonical lattice representation from either description.
///
/// ```
/// use zorbit::ratgeom::{make_subspace, RationalPoint, SubspaceDesc};
/// use zorbit::zlinalg::{IntMatrix, IntVector};
///
/// // the line {x_1 = 2/3} in R^2, described by the equation 3·x_1 = 2
/// let f = make_subspace(&SubspaceDesc::Equations {
///     a: IntMatrix::from_i64(&[&[3, 0]]),
///     b: IntVector::from_i64(&[2]),
/// })
/// .unwrap();
/// assert_eq!(f.dim(), 1);
/// assert_eq!(f.lattice_basis(), &IntMatrix::from_i64(&[&[2, 0, 3], &[0, 1, 0]]));
/// ```
pub fn make_subspace(desc: &SubspaceDesc) -> Result<RationalAffineSubspace, GeomError> {
    match desc {
        SubspaceDesc::Generators(pts) => {
            assert!(!pts.is_empty(), "need at least one generating point");
            let n = pts[0].dim();
            assert!(pts.iter().all(|p| p.dim() == n), "mixed ambient dimensions");
            let lifts = lift_matrix(pts);
            let lattice = saturation_basis(&lifts.to_rat());
            Ok(RationalAffineSubspace { n, lattice })
        }
        SubspaceDesc::Equations { a, b } => {
            assert_eq!(a.rows(), b.len(), "one right-hand side per equation");
            let n = a.cols();
            // solutions x of Ax = b correspond to kernel vectors (y, t) of
            // [A | -b] with t ≠ 0; inconsistency means the kernel is stuck
            // in the hyperplane t = 0
            let mut sys = RatMatrix::zeros(a.rows(), n + 1);
            for i in 0..a.rows() {
                for j in 0..n {
                    sys.set(i, j, Rat::from(a.at(i, j).clone()));
                }
                sys.set(i, n, Rat::from(-b.at(i)));
            }
            let kernel = sys.nullspace();
            let nonempty = (0..kernel.rows()).any(|i| !kernel.at(i, n).is_zero());
            if !nonempty {
                return Err(GeomError::EmptySubspace);
            }
            let lattice = saturation_basis(&kernel);
            Ok(RationalAffineSubspace { n, lattice })
        }
    }
}

impl RationalAffineSubspace {
    pub fn from_points(pts: Vec<RationalPoint>) -> Result<Self, GeomError> {
        make_subspace(&SubspaceDesc::Generators(pts))
    }

    pub fn from_equations(a: IntMatrix, b: IntVector) -> Result<Self, GeomError> {
        make_subspace(&SubspaceDesc::Equations { a, b })
    }

    /// The whole of `R^n`.
    pub fn full_space(n: usize) -> Self {
        RationalAffineSubspace { n, lattice: IntMatrix::identity(n + 1) }
    }

    pub fn single_point(p: &RationalPoint) -> Self {
        Self::from_points(vec![p.clone()]).expect("a point always spans")
    }

    /// Adopts an explicit lattice basis. The rows must span a saturated
    /// sublattice of `Z^{n+1}` whose last-coordinate projection is nonzero;
    /// the basis is Hermite-normalized for canonicity.
    pub fn from_lattice_basis(basis: IntMatrix) -> Result<Self, GeomError> {
        assert!(basis.cols() >= 1, "lattice basis needs at least one column");
        let n = basis.cols() - 1;
        let (h, _) = hnf(&basis);
        if (0..h.rows()).any(|i| h.is_zero_row(i)) {
            return Err(GeomError::InvalidLattice {
                reason: "basis rows are linearly dependent".into(),
            });
        }
        if complete_to_basis(&h).is_err() {
            return Err(GeomError::InvalidLattice {
                reason: "lattice is not saturated in Z^{n+1}".into(),
            });
        }
        if (0..h.rows()).all(|i| h.at(i, n).is_zero()) {
            return Err(GeomError::InvalidLattice {
                reason: "last-coordinate projection is zero (no affine points)".into(),
            });
        }
        Ok(RationalAffineSubspace { n, lattice: h })
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Dimension of the affine subspace (`rank(L_F) − 1`).
    pub fn dim(&self) -> usize {
        self.lattice.rows() - 1
    }

    /// Canonical Hermite-form basis of `L_F`.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.lattice
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, x: &RationalPoint) -> bool {
        assert_eq!(x.dim(), self.n);
        let basis_t = self.lattice.to_rat().transpose();
        let target =
            RatMatrix::from_row_vectors(&[homog_rat(x)], self.n + 1).transpose();
        basis_t.solve_right(&target).is_some()
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&RationalPoint::origin(self.n))
    }

    /// Integer coordinates of a lift `w ∈ L_F` in the stored basis; `None`
    /// when `w` is outside the lattice.
    pub fn lift_coordinates(&self, w: &IntVector) -> Option<IntVector> {
        assert_eq!(w.len(), self.n + 1);
        let basis_t = self.lattice.to_rat().transpose();
        let target = RatMatrix::from_row_vectors(&[w.to_rat()], self.n + 1).transpose();
        let sol = basis_t.solve_right(&target)?;
        sol.col_vector(0).to_int()
    }

    /// Image subspace under a unimodular map of `R^n`: lifts transform by the
    /// block extension fixing the denominator coordinate.
    pub fn apply(&self, u: &UnimodularMap) -> RationalAffineSubspace {
        assert_eq!(u.dim(), self.n);
        let mut ext = IntMatrix::identity(self.n + 1);
        for i in 0..self.n {
            for j in 0..self.n {
                ext.set(i, j, u.mat().at(i, j).clone());
            }
        }
        let image = &self.lattice * &ext.transpose(); // rows v ↦ v·extᵀ = (ext·vᵀ)ᵀ
        let (h, _) = hnf(&image);
        RationalAffineSubspace { n: self.n, lattice: h }
    }
}

impl std::fmt::Debug for RationalAffineSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in R^{}) {:?}", self.dim(), self.n, self.lattice)
    }
}

/// Minimal denominator over the rational points of `F`: the positive
/// generator of the last-coordinate projection of `L_F`.
///
/// A lattice vector realizing the generator as its last coordinate is
/// automatically primitive, hence the lift of an actual point of `F`, so the
/// subgroup generator really is the attained minimum.
pub fn d_min(f: &RationalAffineSubspace) -> Int {
    let n = f.ambient_dim();
    let g = f
        .lattice_basis()
        .col_vector(n)
        .content();
    assert!(g.is_positive(), "subspace invariant guarantees a nonzero projection");
    g
}

/// A regular simplex of minimal-denominator points spanning `F`.
///
/// Output: `dim(F) + 1` points of `F`, each of denominator exactly
/// `d_min(F)`, whose simplex is regular and whose affine hull is `F`.
///
/// ```
/// use zorbit::ratgeom::{is_regular, regular_simplex_in, RationalPoint, RationalSimplex};
/// use zorbit::ratgeom::RationalAffineSubspace;
/// use zorbit::zlinalg::{IntMatrix, IntVector};
///
/// let f = RationalAffineSubspace::from_equations(
///     IntMatrix::from_i64(&[&[3, 0]]),
///     IntVector::from_i64(&[2]),
/// )
/// .unwrap();
/// let verts = regular_simplex_in(&f);
/// assert_eq!(verts, vec![
///     RationalPoint::from_strs(&["2/3", "0"]).unwrap(),
///     RationalPoint::from_strs(&["2/3", "1/3"]).unwrap(),
/// ]);
/// assert!(is_regular(&RationalSimplex::new(verts).unwrap()));
/// ```
pub fn regular_simplex_in(f: &RationalAffineSubspace) -> Vec<RationalPoint> {
    let n = f.ambient_dim();
    let b = f.lattice_basis();
    // move the whole last-coordinate content into row 0: W·(last column)
    // = (d, 0, …, 0)
    let last = IntMatrix::from_row_vectors(
        &(0..b.rows()).map(|i| IntVector::new(vec![b.at(i, n).clone()])).collect::<Vec<_>>(),
        1,
    );
    let (_, w) = hnf(&last);
    let b2 = &w * b;
    lifts_to_simplex(&b2, n)
}

/// Shared tail of the simplex constructions: given a lattice basis whose
/// first row has last coordinate `d > 0` and all other rows last coordinate
/// zero, produce the vertex points `b_0, b_1 + b_0, …`.
fn lifts_to_simplex(b2: &IntMatrix, n: usize) -> Vec<RationalPoint> {
    let mut verts = Vec::with_capacity(b2.rows());
    let first = b2.row_vector(0);
    debug_assert!(first.at(n).is_positive());
    for i in 0..b2.rows() {
        let lift = if i == 0 { first.clone() } else { b2.row_vector(i).add(&first) };
        // basis vectors of a saturated lattice are primitive in Z^{n+1}
        let p = crate::ratgeom::point::dehomog(&lift)
            .expect("saturated basis rows with positive last coordinate are point lifts");
        verts.push(p);
    }
    verts
}

/// Like [`regular_simplex_in`] but anchored: the first returned vertex is the
/// given point `v`, which must lie in `F` and attain the minimal denominator.
pub fn regular_simplex_through(
    f: &RationalAffineSubspace,
    v: &RationalPoint,
) -> Vec<RationalPoint> {
    let n = f.ambient_dim();
    let d = d_min(f);
    assert_eq!(den(v), d, "anchor must attain the minimal denominator");
    let coords = f
        .lift_coordinates(homog(v).as_vector())
        .expect("anchor must lie in the subspace");
    // v's lift is primitive in Z^{n+1}, so its coordinate row is primitive
    // and extends to a basis of the coordinate lattice
    let r = complete_to_basis(&IntMatrix::from_row_vectors(&[coords], f.lattice.rows()))
        .expect("primitive row extends");
    let mut b2 = &r * &f.lattice; // first row is exactly ṽ
    // shear the remaining rows' last coordinates (all multiples of d) to zero
    for i in 1..b2.rows() {
        let m = b2.at(i, n) / &d;
        if !m.is_zero() {
            b2.add_mul_row(i, 0, &-&m);
        }
    }
    let verts = lifts_to_simplex(&b2, n);
    debug_assert_eq!(&verts[0], v);
    verts
}

/// Convenience: the regular simplex as a [`RationalSimplex`] value.
pub fn regular_simplex_in_as_simplex(f: &RationalAffineSubspace) -> RationalSimplex {
    RationalSimplex::new(regular_simplex_in(f)).expect("spanning vertices are independent")
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::ratgeom::simplex::is_regular;
    use crate::scalar::int;
    use crate::zlinalg::random_unimodular;

    fn pt(coords: &[&str]) -> RationalPoint {
        RationalPoint::from_strs(coords).unwrap()
    }

    fn line_x1_eq_two_thirds() -> RationalAffineSubspace {
        RationalAffineSubspace::from_equations(
            IntMatrix::from_i64(&[&[3, 0]]),
            IntVector::from_i64(&[2]),
        )
        .unwrap()
    }

    #[test]
    fn test_make_subspace_from_generators() {
        let f = RationalAffineSubspace::from_points(vec![pt(&["1", "0"]), pt(&["0", "1"])])
            .unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.lattice_basis(), &IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn test_make_subspace_from_equations() {
        let f = RationalAffineSubspace::from_equations(
            IntMatrix::from_i64(&[&[2, 2]]),
            IntVector::from_i64(&[1]),
        )
        .unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(d_min(&f), int(2));
        // both descriptions give the same canonical lattice
        let g = RationalAffineSubspace::from_points(vec![pt(&["1/2", "0"]), pt(&["0", "1/2"])])
            .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn test_inconsistent_equations() {
        // x_1 = 0 and x_1 = 1
        let r = RationalAffineSubspace::from_equations(
            IntMatrix::from_i64(&[&[1, 0], &[1, 0]]),
            IntVector::from_i64(&[0, 1]),
        );
        assert!(matches!(r, Err(GeomError::EmptySubspace)));
    }

    #[test]
    fn test_trivial_equation_system_gives_full_space() {
        let f = RationalAffineSubspace::from_equations(
            IntMatrix::zeros(0, 2),
            IntVector::zeros(0),
        )
        .unwrap();
        assert_eq!(f, RationalAffineSubspace::full_space(2));
        assert_eq!(f.dim(), 2);
        assert_eq!(d_min(&f), int(1));
    }

    #[test]
    fn test_d_min_examples() {
        let f = RationalAffineSubspace::from_equations(
            IntMatrix::from_i64(&[&[1, 1]]),
            IntVector::from_i64(&[1]),
        )
        .unwrap();
        assert_eq!(d_min(&f), int(1));

        let f = RationalAffineSubspace::from_equations(
            IntMatrix::from_i64(&[&[2, 2]]),
            IntVector::from_i64(&[1]),
        )
        .unwrap();
        assert_eq!(d_min(&f), int(2));

        assert_eq!(d_min(&line_x1_eq_two_thirds()), int(3));
    }

    #[test]
    fn test_contains() {
        let f = line_x1_eq_two_thirds();
        assert!(f.contains(&pt(&["2/3", "0"])));
        assert!(f.contains(&pt(&["2/3", "-17/5"])));
        assert!(!f.contains(&pt(&["1/3", "0"])));
        assert!(!f.contains_origin());
        assert!(RationalAffineSubspace::full_space(2).contains_origin());
    }

    #[test]
    fn test_regular_simplex_in_worked_example() {
        let verts = regular_simplex_in(&line_x1_eq_two_thirds());
        assert_eq!(verts, vec![pt(&["2/3", "0"]), pt(&["2/3", "1/3"])]);
    }

    #[test]
    fn test_regular_simplex_in_point_and_full_space() {
        let p = RationalAffineSubspace::single_point(&pt(&["1/2"]));
        assert_eq!(regular_simplex_in(&p), vec![pt(&["1/2"])]);

        let full = RationalAffineSubspace::full_space(2);
        let verts = regular_simplex_in(&full);
        assert_eq!(verts.len(), 3);
        let s = RationalSimplex::new(verts.clone()).unwrap();
        assert!(is_regular(&s));
        assert!(verts.iter().all(|v| den(v).is_one()));
    }

    #[test]
    fn test_regular_simplex_postconditions_randomized() {
        // push a few seed subspaces around by random unimodular maps and
        // check membership, denominator, and regularity every time
        let seeds: Vec<RationalAffineSubspace> = vec![
            line_x1_eq_two_thirds(),
            RationalAffineSubspace::from_points(vec![pt(&["1/2", "0"]), pt(&["0", "1/2"])])
                .unwrap(),
            RationalAffineSubspace::single_point(&pt(&["3/4", "5/6"])),
            RationalAffineSubspace::from_points(vec![
                pt(&["1/3", "0", "0"]),
                pt(&["0", "1/3", "0"]),
                pt(&["0", "0", "1/3"]),
            ])
            .unwrap(),
            RationalAffineSubspace::full_space(3),
        ];
        for (si, f0) in seeds.iter().enumerate() {
            for round in 0..40u64 {
                let g = random_unimodular(f0.ambient_dim(), 14, si as u64 * 1000 + round);
                let f = f0.apply(&g);
                let d = d_min(&f);
                let verts = regular_simplex_in(&f);
                assert_eq!(verts.len(), f.dim() + 1);
                for v in &verts {
                    assert!(f.contains(v));
                    assert_eq!(den(v), d);
                }
                let s = RationalSimplex::new(verts.clone()).unwrap();
                assert!(is_regular(&s));
                // affine hull equals F
                assert_eq!(RationalAffineSubspace::from_points(verts).unwrap(), f);
            }
        }
    }

    #[test]
    fn test_regular_simplex_through_anchor() {
        let f = line_x1_eq_two_thirds();
        let anchor = pt(&["2/3", "-1/3"]);
        let verts = regular_simplex_through(&f, &anchor);
        assert_eq!(verts[0], anchor);
        assert_eq!(verts.len(), 2);
        for v in &verts {
            assert!(f.contains(v));
            assert_eq!(den(v), int(3));
        }
        assert!(is_regular(&RationalSimplex::new(verts).unwrap()));
    }

    #[test]
    fn test_apply_preserves_structure() {
        let f = line_x1_eq_two_thirds();
        for seed in 0..30 {
            let g = random_unimodular(2, 16, seed);
            let fg = f.apply(&g);
            assert_eq!(fg.dim(), f.dim());
            assert_eq!(d_min(&fg), d_min(&f));
            // image contains image points
            let v = pt(&["2/3", "4/5"]);
            assert!(fg.contains(&v.apply(&g)));
            // round trip
            assert_eq!(fg.apply(&g.inverse()), f);
        }
    }

    #[test]
    fn test_from_lattice_basis_validation() {
        // not saturated: index-2 sublattice
        let r = RationalAffineSubspace::from_lattice_basis(IntMatrix::from_i64(&[&[0, 2]]));
        assert!(matches!(r, Err(GeomError::InvalidLattice { .. })));
        // zero last column: directions only
        let r = RationalAffineSubspace::from_lattice_basis(IntMatrix::from_i64(&[&[1, 0]]));
        assert!(matches!(r, Err(GeomError::InvalidLattice { .. })));
        // fine, and canonicalized
        let f =
            RationalAffineSubspace::from_lattice_basis(IntMatrix::from_i64(&[&[2, 0, 3], &[2, 1, 3]]))
                .unwrap();
        assert_eq!(f.lattice_basis(), &IntMatrix::from_i64(&[&[2, 0, 3], &[0, 1, 0]]));
    }
}
