//! Orbits of rational affine subspaces under integer matrices of
//! determinant `±1`.
//!
//! A nonempty rational affine subspace `F ⊆ R^n` is classified up to a
//! unimodular change of coordinates by the pair `(dim F, V_F)`, where `V_F`
//! is the rational measure of the parallelotope spanned by the vertices of
//! any minimal-denominator regular simplex of `F`. The pair is a complete
//! invariant, and completeness is established constructively: whenever two
//! subspaces share it, an explicit matrix carrying one onto the other is
//! assembled from a correspondence of regular simplexes, anchored — when
//! `V ≠ 0` — at a distinguished rational point of each subspace whose
//! denominator and norm are dictated by the invariant alone.

use num_traits::{pow, One, Signed, Zero};
use thiserror::Error;

use crate::measure::{lambda_parallelotope, qnorm};
use crate::ratgeom::{
    d_min, den, is_regular, regular_simplex_in, regular_simplex_through, Parallelotope,
    RationalAffineSubspace, RationalPoint, RationalSimplex,
};
use crate::scalar::{Int, Rat};
use crate::zlinalg::{
    complete_to_basis, inverse_int, saturation_basis, IntMatrix, IntVector, RatVector,
    UnimodularMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    /// A simplex correspondence can only exist between vertices of equal
    /// denominators.
    #[error("denominator mismatch at vertex {index}")]
    DenominatorMismatch { index: usize },
    /// The given points do not form a regular simplex together with the
    /// origin.
    #[error("the {which} vertex family is not regular over the origin")]
    NotRegular { which: &'static str },
    /// The subspace invariants differ; no unimodular map can link them.
    #[error("the subspaces have different (dim, V) invariants")]
    NotEquivalent,
}

/// The complete orbit invariant of a rational affine subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceInvariant {
    dim: usize,
    volume: Rat,
}

impl SubspaceInvariant {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The value `V_F`; zero exactly when the subspace contains the origin.
    pub fn volume(&self) -> &Rat {
        &self.volume
    }
}

/// The volume invariant `V_F`.
///
/// For `0 ∈ F` the value is `0`. Otherwise it is the `(e+1)`-dimensional
/// rational measure of the parallelotope spanned by the vertices of a
/// minimal-denominator regular simplex of `F` — any such simplex gives the
/// same number.
///
/// ```
/// use zorbit::affine_orbits::v_f;
/// use zorbit::ratgeom::RationalAffineSubspace;
/// use zorbit::scalar::rat;
/// use zorbit::zlinalg::{IntMatrix, IntVector};
///
/// // the line {x_1 + x_2 = 1} in R^2
/// let f = RationalAffineSubspace::from_equations(
///     IntMatrix::from_i64(&[&[1, 1]]),
///     IntVector::from_i64(&[1]),
/// )
/// .unwrap();
/// assert_eq!(v_f(&f), rat(1, 1));
/// ```
pub fn v_f(f: &RationalAffineSubspace) -> Rat {
    if f.contains_origin() {
        return Rat::zero();
    }
    let verts = regular_simplex_in(f);
    let k = verts.len();
    lambda_parallelotope(&Parallelotope::new(verts), k)
        .expect("generator count matches the requested order")
}

/// The pair `(dim F, V_F)`.
pub fn subspace_invariant(f: &RationalAffineSubspace) -> SubspaceInvariant {
    SubspaceInvariant { dim: f.dim(), volume: v_f(f) }
}

/// Recovers the minimal denominator from the invariant alone:
/// `min{k ≥ 1 : k^{e+1}·V ∈ Z}`.
///
/// Writing the reduced denominator of `V` as `∏ p^{a_p}`, the minimum is
/// `∏ p^{⌈a_p/(e+1)⌉}`.
pub fn d_from_v(e: usize, v: &Rat) -> Int {
    assert!(!v.is_negative(), "V is a measure, hence nonnegative");
    if v.is_zero() {
        return Int::one();
    }
    let mut rest = v.denom().clone();
    let mut d = Int::one();
    let mut p = Int::from(2);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            let mut a = 0usize;
            while (&rest % &p).is_zero() {
                rest /= &p;
                a += 1;
            }
            d *= pow(p.clone(), a.div_ceil(e + 1));
        }
        p += 1;
    }
    if rest > Int::one() {
        // a leftover prime divides the denominator exactly once
        d *= rest;
    }
    d
}

/// The subspace `dF = {d·x : x ∈ F}`.
pub fn scale_subspace(f: &RationalAffineSubspace, d: &Int) -> RationalAffineSubspace {
    assert!(d.is_positive(), "scale factor must be positive");
    let factor = Rat::from(d.clone());
    let pts = regular_simplex_in(f)
        .into_iter()
        .map(|v| RationalPoint::new(v.into_vector().scale(&factor)))
        .collect();
    RationalAffineSubspace::from_points(pts).expect("scaled spanning points still span")
}

/// A distinguished rational point of `F` tying the subspace to its
/// invariant: the result `v` satisfies `den(v) = d_F` and
/// `‖v‖_Q = d_F^e · V_F` exactly.
///
/// For `V_F = 0` the origin does: it lies in `F` with denominator `1 = d_F`.
/// Otherwise the construction scales `F` by `d_F` to reach minimal
/// denominator one, moves the scaled subspace into a coordinate subspace
/// where it has codimension one, and there completes the lift lattice of a
/// regular simplex by one integer row `z`; the point `±V·(z_1,…,z_m)` lies
/// on the subspace by an exact determinant identity and pulls back to `v`.
/// Membership, denominator, and norm are re-verified exactly.
pub fn filetto_point(f: &RationalAffineSubspace) -> RationalPoint {
    let n = f.ambient_dim();
    if f.contains_origin() {
        return RationalPoint::origin(n);
    }
    let d = d_min(f);
    let e = f.dim();
    let scaled = scale_subspace(f, &d);
    debug_assert!(d_min(&scaled).is_one());
    let (rho, m) = span_frame(&scaled);
    debug_assert_eq!(m, e + 1, "a subspace missing the origin spans one dimension more");
    let reduced = restrict_subspace(&scaled.apply(&rho), m);
    let w_red = filetto_codim1(&reduced);
    let w = pad_point(&w_red, n).apply(&rho.inverse());
    let v = RationalPoint::new(w.into_vector().scale(&Rat::new(Int::one(), d.clone())));
    assert!(f.contains(&v), "Filetto point must lie in the subspace");
    assert_eq!(den(&v), d, "Filetto point must attain the minimal denominator");
    debug_assert_eq!(qnorm(v.as_vector()), Rat::from(pow(d, e)) * v_f(f));
    v
}

/// The codimension-one core of [`filetto_point`]: ambient `R^m`, dimension
/// `m − 1`, minimal denominator `1`, origin outside.
fn filetto_codim1(g: &RationalAffineSubspace) -> RationalPoint {
    let m = g.ambient_dim();
    debug_assert_eq!(g.dim() + 1, m);
    debug_assert!(d_min(g).is_one());
    let verts = regular_simplex_in(g);
    let vmat = IntMatrix::from_row_vectors(
        &verts
            .iter()
            .map(|p| p.as_vector().to_int().expect("minimal denominator one means integer vertices"))
            .collect::<Vec<_>>(),
        m,
    );
    let udet = vmat.det();
    debug_assert!(!udet.is_zero(), "vertices are independent when 0 is outside");

    // lift lattice of the regular difference flag: 0̃ and (v_i − v_0, 1)
    let zero_lift = IntVector::unit(m + 1, m);
    let mut flag_rows = vec![zero_lift.clone()];
    for i in 1..m {
        let mut coords: Vec<Int> =
            vmat.row_vector(i).sub(&vmat.row_vector(0)).into_vec();
        coords.push(Int::one());
        flag_rows.push(IntVector::new(coords));
    }
    let flag = IntMatrix::from_row_vectors(&flag_rows, m + 1);
    let basis = complete_to_basis(&flag).expect("a regular flag's lifts are saturated");

    // normalize the appended row to last coordinate 1 by sliding along 0̃
    let appended = basis.row_vector(m);
    let slide = Int::one() - appended.at(m);
    let z = appended.add(&zero_lift.scale(&slide));
    debug_assert!(z.at(m).is_one());
    let mut w = IntVector::new(z.as_slice()[..m].to_vec());

    // orient w so that det[w; v_1−v_0; …] matches the sign of det[v_0; …],
    // which is exactly what the membership identity needs
    let mut dirs = vec![w.clone()];
    for row in &flag_rows[1..] {
        dirs.push(IntVector::new(row.as_slice()[..m].to_vec()));
    }
    let s = IntMatrix::from_row_vectors(&dirs, m).det();
    debug_assert!(!(&s * &s - Int::one()).is_positive(), "completion row has unit cofactor");
    if (s.is_positive()) != (udet.is_positive()) {
        w = w.neg();
    }

    let point = RationalPoint::new(w.scale(&udet.abs()).to_rat());
    debug_assert!(g.contains(&point));
    point
}

/// The unimodular correspondence of two regular simplexes over the origin.
///
/// Both families must consist of `n` points of `R^n` forming, together with
/// the origin, regular `n`-simplexes, with `den(v_i) = den(w_i)` throughout.
/// Under those conditions the homogeneous intertwiner `W̃·Ṽ⁻¹` is integral
/// and block triangular with unit corner, and its `n × n` block is the
/// unique `γ ∈ GL(n,Z)` with `γ(v_i) = w_i` for every `i`.
///
/// ```
/// use zorbit::affine_orbits::gamma_from_regular_simplexes;
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::zlinalg::IntMatrix;
///
/// let v = vec![RationalPoint::from_i64(&[1, 0]), RationalPoint::from_i64(&[0, 1])];
/// let w = vec![RationalPoint::from_i64(&[1, 0]), RationalPoint::from_i64(&[1, 1])];
/// let gamma = gamma_from_regular_simplexes(&v, &w).unwrap();
/// assert_eq!(gamma.mat(), &IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
/// ```
pub fn gamma_from_regular_simplexes(
    vs: &[RationalPoint],
    ws: &[RationalPoint],
) -> Result<UnimodularMap, AffineError> {
    assert_eq!(vs.len(), ws.len(), "simplex correspondence needs equally many vertices");
    assert!(!vs.is_empty(), "simplex correspondence needs at least one vertex");
    let n = vs[0].dim();
    assert!(
        vs.iter().chain(ws.iter()).all(|p| p.dim() == n),
        "all vertices in the same ambient space"
    );
    assert_eq!(vs.len(), n, "need n vertices besides the origin in R^n");

    for i in 0..n {
        if den(&vs[i]) != den(&ws[i]) {
            return Err(AffineError::DenominatorMismatch { index: i });
        }
    }
    let check_regular = |pts: &[RationalPoint], which: &'static str| {
        let mut verts = vec![RationalPoint::origin(n)];
        verts.extend(pts.iter().cloned());
        match RationalSimplex::new(verts) {
            Ok(s) if is_regular(&s) => Ok(()),
            _ => Err(AffineError::NotRegular { which }),
        }
    };
    check_regular(vs, "first")?;
    check_regular(ws, "second")?;

    let stack = |pts: &[RationalPoint]| {
        let mut rows = vec![IntVector::unit(n + 1, n)];
        rows.extend(pts.iter().map(|p| p.homog().into_vector()));
        IntMatrix::from_row_vectors(&rows, n + 1)
    };
    let vt = stack(vs).transpose();
    let wt = stack(ws).transpose();
    let c = &wt * &inverse_int(&vt).expect("lifts of a regular n-simplex are a basis");
    // equal denominators force the intertwiner to fix the lift coordinate
    debug_assert!((0..n).all(|j| c.at(n, j).is_zero() && c.at(j, n).is_zero()));
    debug_assert!(c.at(n, n).is_one());
    let mut block = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            block.set(i, j, c.at(i, j).clone());
        }
    }
    let gamma = UnimodularMap::new(block).expect("corner block of a lift intertwiner");
    for i in 0..n {
        assert_eq!(vs[i].apply(&gamma), ws[i], "correspondence must hold exactly");
    }
    Ok(gamma)
}

/// Whether some unimodular map carries `F` onto `G`: equality of the
/// `(dim, V)` invariants.
pub fn equivalent_subspaces(f: &RationalAffineSubspace, g: &RationalAffineSubspace) -> bool {
    assert_eq!(f.ambient_dim(), g.ambient_dim(), "subspaces in the same ambient space");
    subspace_invariant(f) == subspace_invariant(g)
}

/// An explicit unimodular `γ` with `γ(F) = G`, verified exactly.
///
/// Both subspaces are first moved into the coordinate subspace spanned by
/// the leading axes, where they have codimension one; the core construction
/// runs there and the result is extended by an identity block and composed
/// with the two moves. In the core, a subspace through the origin is matched
/// to the other by mapping a lattice basis of its integer directions (plus a
/// basis completion) onto the other's; a subspace missing the origin is
/// matched through the distinguished points of [`filetto_point`], whose
/// normalizations `v/‖v‖_Q` are integer vectors completing anchored regular
/// simplexes of each side into a correspondence.
pub fn witness_subspace(
    f: &RationalAffineSubspace,
    g: &RationalAffineSubspace,
) -> Result<UnimodularMap, AffineError> {
    if !equivalent_subspaces(f, g) {
        return Err(AffineError::NotEquivalent);
    }
    let n = f.ambient_dim();
    let gamma = if v_f(f).is_zero() {
        witness_linear(f, g)
    } else {
        let (rho_f, m) = span_frame(f);
        let (rho_g, mg) = span_frame(g);
        debug_assert_eq!(m, mg);
        let fr = restrict_subspace(&f.apply(&rho_f), m);
        let gr = restrict_subspace(&g.apply(&rho_g), m);
        let core = witness_anchored(&fr, &gr)?;
        rho_g.inverse().compose(&embed_map(&core, n)).compose(&rho_f)
    };
    // the correctness gate: canonical lattice equality of the image
    let mapped: Vec<RationalPoint> =
        regular_simplex_in(f).iter().map(|p| p.apply(&gamma)).collect();
    let image = RationalAffineSubspace::from_points(mapped).expect("images of a simplex span");
    assert_eq!(image, *g, "witness must map F onto G");
    Ok(gamma)
}

/// Witness for the `V = 0` case: both subspaces pass through the origin, so
/// each is spanned by a lattice basis of its integer points; mapping basis
/// onto basis (completions included) is the whole construction.
fn witness_linear(
    f: &RationalAffineSubspace,
    g: &RationalAffineSubspace,
) -> UnimodularMap {
    let n = f.ambient_dim();
    let full_basis = |s: &RationalAffineSubspace| {
        let dirs = s.lattice_basis().to_rat().take_cols(0..n);
        let b = saturation_basis(&dirs);
        debug_assert_eq!(b.rows(), s.dim());
        complete_to_basis(&b).expect("a saturated direction lattice extends")
    };
    let bf = full_basis(f);
    let bg = full_basis(g);
    let as_points = |b: &IntMatrix| {
        (0..n).map(|i| RationalPoint::new(b.row_vector(i).to_rat())).collect::<Vec<_>>()
    };
    gamma_from_regular_simplexes(&as_points(&bf), &as_points(&bg))
        .expect("full lattice bases always correspond")
}

/// Witness for the `V ≠ 0`, codimension-one case.
fn witness_anchored(
    f: &RationalAffineSubspace,
    g: &RationalAffineSubspace,
) -> Result<UnimodularMap, AffineError> {
    debug_assert_eq!(f.dim() + 1, f.ambient_dim());
    debug_assert_eq!(d_min(f), d_min(g));
    let v = filetto_point(f);
    let w = filetto_point(g);
    let q = qnorm(v.as_vector());
    debug_assert_eq!(q, qnorm(w.as_vector()));
    // the normalized points have rational norm 1, hence integer coordinates
    let normalize = |p: &RationalPoint| {
        let scaled = p.as_vector().scale(&(Rat::one() / &q));
        debug_assert!(scaled.to_int().is_some());
        RationalPoint::new(scaled)
    };
    let vs: Vec<RationalPoint> = std::iter::once(normalize(&v))
        .chain(regular_simplex_through(f, &v).into_iter().skip(1))
        .collect();
    let ws: Vec<RationalPoint> = std::iter::once(normalize(&w))
        .chain(regular_simplex_through(g, &w).into_iter().skip(1))
        .collect();
    gamma_from_regular_simplexes(&vs, &ws)
}

/// A unimodular `ρ` whose inverse sends the leading `m` axes onto a lattice
/// basis of `span(F ∪ {0}) ∩ Z^n`; thus `ρ` maps the span onto `R^m × 0`.
fn span_frame(f: &RationalAffineSubspace) -> (UnimodularMap, usize) {
    let n = f.ambient_dim();
    let dirs = f.lattice_basis().to_rat().take_cols(0..n);
    let b = saturation_basis(&dirs);
    let m = b.rows();
    if m == n {
        return (UnimodularMap::identity(n), n);
    }
    let c = complete_to_basis(&b).expect("a saturated span lattice extends");
    let rho = UnimodularMap::new(inverse_int(&c.transpose()).expect("basis is unimodular"))
        .expect("inverse of a unimodular matrix");
    (rho, m)
}

/// Reinterprets a subspace supported on the leading `m` coordinates as a
/// subspace of `R^m`.
fn restrict_subspace(f: &RationalAffineSubspace, m: usize) -> RationalAffineSubspace {
    let n = f.ambient_dim();
    let lat = f.lattice_basis();
    let mut rows = Vec::with_capacity(lat.rows());
    for i in 0..lat.rows() {
        for j in m..n {
            assert!(lat.at(i, j).is_zero(), "subspace must be supported on the leading axes");
        }
        let mut coords: Vec<Int> = (0..m).map(|j| lat.at(i, j).clone()).collect();
        coords.push(lat.at(i, n).clone());
        rows.push(IntVector::new(coords));
    }
    RationalAffineSubspace::from_lattice_basis(IntMatrix::from_row_vectors(&rows, m + 1))
        .expect("restriction of a subspace lattice is a subspace lattice")
}

/// Pads a point of `R^m` with zeros up to `R^n`.
fn pad_point(p: &RationalPoint, n: usize) -> RationalPoint {
    let mut coords: Vec<Rat> = p.as_vector().iter().cloned().collect();
    coords.resize(n, Rat::zero());
    RationalPoint::new(RatVector::new(coords))
}

/// Extends a unimodular map of `R^m` by the identity on the remaining axes.
fn embed_map(u: &UnimodularMap, n: usize) -> UnimodularMap {
    let m = u.dim();
    let mut mat = IntMatrix::identity(n);
    for i in 0..m {
        for j in 0..m {
            mat.set(i, j, u.mat().at(i, j).clone());
        }
    }
    UnimodularMap::new(mat).expect("identity extension stays unimodular")
}
