//! Orbits of points under integer matrices of determinant `±1`.
//!
//! The subgroup `H_x = Z·x_1 + ⋯ + Z·x_n` of the reals classifies the orbit
//! of `x = (x_1, …, x_n)` completely: two points lie on the same orbit
//! exactly when they generate the same subgroup, and the proof of that fact
//! is constructive enough to produce the mapping matrix. On top of the
//! classification sits a clean dichotomy — the orbit of `x` is dense in
//! `R^n` precisely when `H_x` needs at least two generators, i.e. when `x`
//! lies on no rational half-line — and, in the dense case, an algorithm
//! that lands the orbit inside any prescribed ball.
//!
//! Points may have irrational coordinates. They are written over a
//! [`SymbolicBasis`]: finitely many real constants, starting with 1,
//! asserted to be linearly independent over `Q`, each coordinate a rational
//! combination of them. Subgroup computations then happen exactly, as
//! lattice arithmetic on coefficient vectors; only order comparisons (for
//! exclusion radii and approximation) consult the constants' numeric
//! enclosures, which are refined by bisection on demand and never trusted
//! beyond what they can certify.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratgeom::RationalPoint;
use crate::scalar::{int, rat, render_rat, round_rat, Int, Rat};
use crate::zlinalg::{
    complete_to_basis, hnf, hnf_rank, inverse_int, saturation_basis, IntMatrix, IntVector,
    RatMatrix, RatVector, UnimodularMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    /// The two points are written over different symbolic bases, so their
    /// subgroups live in incomparable coefficient spaces.
    #[error("points are written over different symbolic bases")]
    BasisMismatch,
    /// The subgroup invariants differ; no unimodular map can link the points.
    #[error("the points generate different subgroups of R")]
    NotEquivalent,
    /// Every matrix sending `x` to `y` has determinant `-1`; this happens
    /// only when the coordinates of `x` are linearly independent over `Q`,
    /// which pins the matrix down uniquely.
    #[error("the unique matrix mapping x to y has determinant -1")]
    CannotFixSign,
    /// Approximation requires a dense orbit.
    #[error("the orbit is not dense")]
    NotDense,
    /// An order comparison stayed undecided after exhausting the basis's
    /// refinement budget — the enclosures are too coarse (or a constant
    /// marked opaque straddles the critical value).
    #[error("interval refinement exhausted without deciding a comparison")]
    PrecisionExhausted,
}

/// How a basis constant beyond the leading 1 is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelKind {
    /// The rational constant 1; always label 0 and never anything else.
    Unit,
    /// The unique root of the polynomial (coefficients constant-first)
    /// inside the enclosure. The enclosure endpoints must take opposite
    /// polynomial signs, so bisection can sharpen it indefinitely.
    Root { poly: Vec<Rat> },
    /// A constant known only through its stated enclosure; it can never be
    /// refined, so comparisons that need more precision than the enclosure
    /// offers fail with [`PointError::PrecisionExhausted`].
    Opaque,
}

/// One named constant for [`SymbolicBasis::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicConstant {
    pub label: String,
    pub kind: LabelKind,
    pub lo: Rat,
    pub hi: Rat,
}

impl SymbolicConstant {
    pub fn opaque(label: &str, lo: Rat, hi: Rat) -> Self {
        SymbolicConstant { label: label.to_string(), kind: LabelKind::Opaque, lo, hi }
    }

    pub fn root(label: &str, poly: Vec<Rat>, lo: Rat, hi: Rat) -> Self {
        SymbolicConstant { label: label.to_string(), kind: LabelKind::Root { poly }, lo, hi }
    }

    /// `√m` as the root of `t² − m` in `[0, m]`, labeled `sqrt<m>`.
    pub fn sqrt_of(m: i64) -> Self {
        assert!(m >= 1, "sqrt_of needs a positive radicand");
        Self::root(
            &format!("sqrt{m}"),
            vec![rat(-m, 1), rat(0, 1), rat(1, 1)],
            rat(0, 1),
            rat(m, 1),
        )
    }
}

/// Default per-label bisection budget; each step halves an enclosure, so
/// this is far more precision than any test-scale computation consumes.
pub const DEFAULT_MAX_DEPTH: u32 = 512;

/// The finitely many real constants a symbolic point is written over.
///
/// Label 0 is always the rational unit 1. The remaining labels carry the
/// user's assertion that the constants are linearly independent over `Q`
/// together with a numeric enclosure each; nothing in this module can check
/// the assertion, and all subgroup answers are relative to it.
///
/// Equality is structural, so two bases built from the same data compare
/// equal regardless of sharing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicBasis {
    labels: Vec<String>,
    kinds: Vec<LabelKind>,
    enclosures: Vec<(Rat, Rat)>,
    max_depth: u32,
}

impl SymbolicBasis {
    /// The basis containing only the unit — enough for rational points.
    pub fn rational() -> Arc<Self> {
        Self::new(Vec::new())
    }

    pub fn new(constants: Vec<SymbolicConstant>) -> Arc<Self> {
        Self::with_depth(constants, DEFAULT_MAX_DEPTH)
    }

    pub fn with_depth(constants: Vec<SymbolicConstant>, max_depth: u32) -> Arc<Self> {
        let mut labels = vec!["1".to_string()];
        let mut kinds = vec![LabelKind::Unit];
        let mut enclosures = vec![(Rat::one(), Rat::one())];
        for c in constants {
            assert!(
                c.label != "1" && !labels.contains(&c.label),
                "label {:?} is reserved or duplicated",
                c.label
            );
            assert!(c.lo <= c.hi, "enclosure for {:?} is empty", c.label);
            let (mut lo, mut hi) = (c.lo, c.hi);
            if let LabelKind::Root { poly } = &c.kind {
                assert!(
                    poly.len() >= 2 && !poly.last().unwrap().is_zero(),
                    "root constant {:?} needs a nonconstant polynomial",
                    c.label
                );
                let slo = poly_sign(poly, &lo);
                let shi = poly_sign(poly, &hi);
                if slo == 0 {
                    hi = lo.clone();
                } else if shi == 0 {
                    lo = hi.clone();
                } else {
                    assert!(
                        slo != shi,
                        "enclosure for {:?} does not bracket a sign change of its polynomial",
                        c.label
                    );
                }
            }
            labels.push(c.label);
            kinds.push(c.kind);
            enclosures.push((lo, hi));
        }
        Arc::new(SymbolicBasis { labels, kinds, enclosures, max_depth })
    }

    /// Number of labels, the unit included.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self, i: usize) -> &LabelKind {
        &self.kinds[i]
    }

    pub fn enclosure(&self, i: usize) -> (Rat, Rat) {
        self.enclosures[i].clone()
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }
}

fn poly_sign(poly: &[Rat], at: &Rat) -> i8 {
    let mut v = Rat::zero();
    for c in poly.iter().rev() {
        v = v * at + c;
    }
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// A real number as a rational combination of basis constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicReal {
    basis: Arc<SymbolicBasis>,
    coeffs: RatVector,
}

impl SymbolicReal {
    pub fn new(basis: Arc<SymbolicBasis>, coeffs: RatVector) -> Self {
        assert_eq!(coeffs.len(), basis.len(), "one coefficient per basis label");
        SymbolicReal { basis, coeffs }
    }

    pub fn basis(&self) -> &Arc<SymbolicBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &RatVector {
        &self.coeffs
    }

    /// The exact rational value, when no irrational label contributes.
    pub fn as_rational(&self) -> Option<Rat> {
        for i in 1..self.coeffs.len() {
            if !self.coeffs.at(i).is_zero() {
                return None;
            }
        }
        Some(self.coeffs.at(0).clone())
    }
}

impl fmt::Display for SymbolicReal {
    /// Renders like `1/6`, `sqrt2`, or `1/2 - 3*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if i == 0 {
                render_rat(c)
            } else if c.is_one() {
                self.basis.labels[i].clone()
            } else if (-c).is_one() {
                format!("-{}", self.basis.labels[i])
            } else {
                format!("{}*{}", render_rat(c), self.basis.labels[i])
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A point of `R^n` whose coordinates share one symbolic basis.
///
/// The coefficient matrix has one row per coordinate and one column per
/// basis label; a rational point converts via [`From`] with the unit-only
/// basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPoint {
    basis: Arc<SymbolicBasis>,
    coeffs: RatMatrix,
}

impl SymbolicPoint {
    pub fn new(basis: Arc<SymbolicBasis>, coeffs: RatMatrix) -> Self {
        assert_eq!(coeffs.cols(), basis.len(), "one coefficient column per basis label");
        SymbolicPoint { basis, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn basis(&self) -> &Arc<SymbolicBasis> {
        &self.basis
    }

    pub fn coeff_matrix(&self) -> &RatMatrix {
        &self.coeffs
    }

    pub fn coordinate(&self, i: usize) -> SymbolicReal {
        SymbolicReal::new(self.basis.clone(), self.coeffs.row_vector(i))
    }

    /// The image under a unimodular map, still over the same basis.
    pub fn apply(&self, gamma: &UnimodularMap) -> SymbolicPoint {
        SymbolicPoint {
            basis: self.basis.clone(),
            coeffs: gamma.apply_rat_matrix(&self.coeffs),
        }
    }

    /// The exact rational point, when no irrational label contributes.
    pub fn as_rational(&self) -> Option<RationalPoint> {
        let mut coords = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            coords.push(self.coordinate(i).as_rational()?);
        }
        Some(RationalPoint::new(RatVector::new(coords)))
    }
}

impl From<RationalPoint> for SymbolicPoint {
    fn from(p: RationalPoint) -> Self {
        let n = p.dim();
        let mut coeffs = RatMatrix::zeros(n, 1);
        for i in 0..n {
            coeffs.set(i, 0, p.as_vector().at(i).clone());
        }
        SymbolicPoint { basis: SymbolicBasis::rational(), coeffs }
    }
}

/// Canonical description of the subgroup `H_x` — the complete orbit
/// invariant for points.
///
/// The generators are the rows of the unique Hermite-normalized rational
/// basis of the coefficient module, so two points have equal invariants
/// exactly when they generate the same subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointInvariant {
    rank: usize,
    generators: RatMatrix,
}

impl PointInvariant {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// One row of basis-label coefficients per generator.
    pub fn generators(&self) -> &RatMatrix {
        &self.generators
    }
}

/// The subgroup `H_x = Z·x_1 + ⋯ + Z·x_n` in canonical form.
///
/// ```
/// use zorbit::point_orbits::h_invariant;
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::scalar::rat;
///
/// // Z/2 + Z/3 = Z/6
/// let x = RationalPoint::from_strs(&["1/2", "1/3"]).unwrap();
/// let inv = h_invariant(&x.into());
/// assert_eq!(inv.rank(), 1);
/// assert_eq!(*inv.generators().at(0, 0), rat(1, 6));
/// ```
pub fn h_invariant(x: &SymbolicPoint) -> PointInvariant {
    let (cleared, d) = x.coeff_matrix().clear_denominators();
    let (h, _) = hnf(&cleared);
    let r = hnf_rank(&h);
    let generators = h.take_rows(0..r).to_rat().scale(&Rat::new(Int::one(), d));
    PointInvariant { rank: r, generators }
}

/// Whether `x` and `y` lie on the same orbit: `H_x = H_y`.
pub fn equivalent_points(x: &SymbolicPoint, y: &SymbolicPoint) -> Result<bool, PointError> {
    assert_eq!(x.dim(), y.dim(), "points must share the ambient dimension");
    if x.basis() != y.basis() {
        return Err(PointError::BasisMismatch);
    }
    Ok(h_invariant(x) == h_invariant(y))
}

/// A unimodular `α` with `α(x)` supported on its first `e` coordinates,
/// which then form a basis of `H_x`; returns `(α, e)`.
///
/// `e` is the dimension of the smallest rational subspace containing `x`,
/// i.e. the rational column rank of the coefficient matrix, and equals the
/// rank of `H_x`.
fn reduce_to_h_basis(x: &SymbolicPoint) -> (UnimodularMap, usize) {
    let n = x.dim();
    let b = saturation_basis(&x.coeff_matrix().transpose());
    let e = b.rows();
    if e == 0 {
        return (UnimodularMap::identity(n), 0);
    }
    let v = complete_to_basis(&b).expect("a saturation basis extends to a basis");
    // α sends the i-th row of v to the i-th standard vector
    let alpha = inverse_int(&v.transpose()).expect("basis completion is unimodular");
    let alpha = UnimodularMap::new(alpha).expect("inverse of a unimodular matrix");
    (alpha, e)
}

/// An explicit unimodular `γ` with `γ(x) = y`, verified exactly.
///
/// With `want_det_plus`, a determinant of `+1` is arranged by negating one
/// coordinate outside the support of `α(x)` — possible whenever the rank of
/// `H_x` is less than `n`. At full rank the matrix is uniquely determined
/// by `γ(x) = y`, so a forced determinant of `-1` is reported as
/// [`PointError::CannotFixSign`].
pub fn witness_point(
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    want_det_plus: bool,
) -> Result<UnimodularMap, PointError> {
    if !equivalent_points(x, y)? {
        return Err(PointError::NotEquivalent);
    }
    let n = x.dim();
    let (alpha, e) = reduce_to_h_basis(x);
    let (beta, ey) = reduce_to_h_basis(y);
    debug_assert_eq!(e, ey, "equal invariants have equal rank");

    // the reduced first-e coordinates of x and y are two bases of the same
    // module; δ is the integer change of basis between them
    let rx = alpha.apply_rat_matrix(x.coeff_matrix()).take_rows(0..e);
    let ry = beta.apply_rat_matrix(y.coeff_matrix()).take_rows(0..e);
    let delta = rx
        .transpose()
        .solve_right(&ry.transpose())
        .expect("bases of one module are rationally dependent")
        .transpose()
        .to_int()
        .expect("a change of basis between lattice bases is integral");

    let build = |flip: bool| -> UnimodularMap {
        let mut mid = IntMatrix::identity(n);
        for i in 0..e {
            for j in 0..e {
                mid.set(i, j, delta.at(i, j).clone());
            }
        }
        if flip {
            mid.set(e, e, int(-1));
        }
        let mid = UnimodularMap::new(mid).expect("block of a basis change is unimodular");
        beta.inverse().compose(&mid).compose(&alpha)
    };

    let mut gamma = build(false);
    if want_det_plus && gamma.det() == -1 {
        if e < n {
            gamma = build(true);
        } else {
            return Err(PointError::CannotFixSign);
        }
    }
    assert_eq!(
        gamma.apply_rat_matrix(x.coeff_matrix()),
        *y.coeff_matrix(),
        "witness must map x to y exactly"
    );
    Ok(gamma)
}

/// Outcome of the density dichotomy, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Density {
    /// `rank H_x ≥ 2`: the orbit is dense; the pair generates a rank-2
    /// subgroup of the invariant.
    Dense { generators: (SymbolicReal, SymbolicReal) },
    /// `x = 0`, a fixed point of the whole group.
    Origin,
    /// `x = ξ·p` sits on a rational half-line: every orbit element is `ξ`
    /// times a primitive integer vector, so the orbit avoids the open ball
    /// of radius `|ξ|` around the origin.
    Halfline { p: IntVector, xi: SymbolicReal },
}

impl Density {
    pub fn is_dense(&self) -> bool {
        matches!(self, Density::Dense { .. })
    }
}

/// Dense orbit or not, by the rank criterion, with a certificate.
///
/// For a non-dense nonzero point the certificate factors `x = ξ·p` with `p`
/// a primitive integer vector. The orientation is normalized so that `ξ > 0`
/// whenever the enclosures can certify the sign of `ξ`; the factorization
/// itself is exact either way.
///
/// ```
/// use zorbit::point_orbits::{is_dense, Density, SymbolicBasis, SymbolicConstant, SymbolicPoint};
/// use zorbit::zlinalg::{IntVector, RatMatrix};
///
/// let basis = SymbolicBasis::new(vec![SymbolicConstant::sqrt_of(2)]);
/// // (√2, 2√2) lies on the half-line through (1, 2)
/// let x = SymbolicPoint::new(
///     basis,
///     RatMatrix::from_strs(&[&["0", "1"], &["0", "2"]]).unwrap(),
/// );
/// let Density::Halfline { p, xi } = is_dense(&x) else { panic!() };
/// assert_eq!(p, IntVector::from_i64(&[1, 2]));
/// assert_eq!(xi.to_string(), "sqrt2");
/// ```
pub fn is_dense(x: &SymbolicPoint) -> Density {
    let inv = h_invariant(x);
    match inv.rank() {
        0 => Density::Origin,
        1 => {
            let g = inv.generators().row_vector(0);
            let j = (0..g.len()).find(|&j| !g.at(j).is_zero()).expect("nonzero generator");
            // each coordinate is an integer multiple of the generator
            let mut mult = Vec::with_capacity(x.dim());
            for i in 0..x.dim() {
                let q = x.coeff_matrix().at(i, j) / g.at(j);
                debug_assert!(q.is_integer(), "generator divides every coordinate");
                mult.push(q.to_integer());
            }
            let m = IntVector::new(mult);
            let c = m.content();
            let p = IntVector::new(m.iter().map(|v| v / &c).collect());
            let xi_coeffs = g.scale(&Rat::from(c));
            // orient ξ positive when the sign can be certified
            let mut ctx = IntervalCtx::new(x.basis().clone());
            if ctx.certify_sign_linear(&xi_coeffs) == Ok(-1) {
                return Density::Halfline {
                    p: p.neg(),
                    xi: SymbolicReal::new(x.basis().clone(), xi_coeffs.neg()),
                };
            }
            Density::Halfline { p, xi: SymbolicReal::new(x.basis().clone(), xi_coeffs) }
        }
        _ => {
            let g0 = SymbolicReal::new(x.basis().clone(), inv.generators().row_vector(0));
            let g1 = SymbolicReal::new(x.basis().clone(), inv.generators().row_vector(1));
            Density::Dense { generators: (g0, g1) }
        }
    }
}

/// Certified strict bound `‖x − z‖ < eps`, by interval arithmetic on the
/// exact squared distance.
///
/// `Ok(true)` and `Ok(false)` are both proofs; an enclosure that cannot be
/// refined far enough to decide gives [`PointError::PrecisionExhausted`].
pub fn certified_within(
    x: &SymbolicPoint,
    z: &RationalPoint,
    eps: &Rat,
) -> Result<bool, PointError> {
    assert_eq!(x.dim(), z.dim(), "point and target in the same space");
    let mut d = x.coeff_matrix().clone();
    for i in 0..x.dim() {
        d.set(i, 0, d.at(i, 0) - z.as_vector().at(i));
    }
    let gram = &d.transpose() * &d;
    let mut ctx = IntervalCtx::new(x.basis().clone());
    ctx.certify_quad_lt(&gram, &(eps * eps))
}

/// Certified bound `‖x‖ ≥ |ξ|`, the exclusion-ball inequality of the
/// non-dense certificate.
pub fn certified_norm_at_least(x: &SymbolicPoint, xi: &SymbolicReal) -> Result<bool, PointError> {
    if x.basis() != xi.basis() {
        return Err(PointError::BasisMismatch);
    }
    // ‖x‖² − ξ² as one quadratic form in the constants
    let gram_x = &x.coeff_matrix().transpose() * x.coeff_matrix();
    let xirow = RatMatrix::from_row_vectors(&[xi.coeffs().clone()], xi.coeffs().len());
    let gram_xi = &xirow.transpose() * &xirow;
    let k = x.basis().len();
    let mut q = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            q.set(i, j, gram_x.at(i, j) - gram_xi.at(i, j));
        }
    }
    let mut ctx = IntervalCtx::new(x.basis().clone());
    ctx.certify_quad_nonneg(&q)
}

const MAX_SHRINK_STEPS: usize = 4_000;
const MAX_ATTEMPTS: usize = 24;

/// A unimodular `γ` with certified `‖γ(x) − z‖ < eps`, for dense orbits.
///
/// The construction follows the density proof: reduce `x` so its first `e`
/// coordinates are a basis of `H_x`, shrink that basis by a subtractive
/// Euclidean loop (any two of its elements have an irrational ratio, so the
/// remainders tend to zero), send the target's primitive direction to the
/// first axis, and translate along that axis by an integer multiple of the
/// second basis element. Interval midpoints steer the loop, but the only
/// correctness gate is the final certified distance check; if a candidate
/// fails it, the shrink threshold is halved and the attempt repeated.
///
/// ```
/// use zorbit::point_orbits::{approx_orbit, certified_within, SymbolicBasis, SymbolicConstant, SymbolicPoint};
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::scalar::rat;
/// use zorbit::zlinalg::RatMatrix;
///
/// let basis = SymbolicBasis::new(vec![SymbolicConstant::sqrt_of(2)]);
/// let x = SymbolicPoint::new(
///     basis,
///     RatMatrix::from_strs(&[&["1", "0"], &["0", "1"]]).unwrap(),
/// );
/// let z = RationalPoint::origin(2);
/// let gamma = approx_orbit(&x, &z, &rat(1, 10)).unwrap();
/// assert_eq!(certified_within(&x.apply(&gamma), &z, &rat(1, 10)), Ok(true));
/// ```
pub fn approx_orbit(
    x: &SymbolicPoint,
    z: &RationalPoint,
    eps: &Rat,
) -> Result<UnimodularMap, PointError> {
    assert_eq!(x.dim(), z.dim(), "target must live in the point's space");
    assert!(eps.is_positive(), "eps must be positive");
    if !is_dense(x).is_dense() {
        return Err(PointError::NotDense);
    }
    let n = x.dim();
    // nothing to do when x already lands in the ball
    if certified_within(x, z, eps) == Ok(true) {
        return Ok(UnimodularMap::identity(n));
    }
    let (alpha, e) = reduce_to_h_basis(x);
    let (eta, omega) = target_frame(z);
    // crude operator bound for η, to pick a first shrink threshold
    let mut eta_bound = Rat::one();
    for i in 0..n {
        let mut row_sum = Rat::zero();
        for j in 0..n {
            row_sum += Rat::from(eta.mat().at(i, j).abs());
        }
        if row_sum > eta_bound {
            eta_bound = row_sum;
        }
    }
    let mut theta = eps / (rat(2 * (e as i64 + 1), 1) * eta_bound);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(gamma) = attempt_approx(x, z, eps, &alpha, e, &eta, &omega, &theta)? {
            return Ok(gamma);
        }
        theta /= rat(2, 1);
    }
    Err(PointError::PrecisionExhausted)
}

/// A unimodular frame whose first axis carries the target: `η(ω·ε_1) = z`.
fn target_frame(z: &RationalPoint) -> (UnimodularMap, Rat) {
    let n = z.dim();
    if z.as_vector().is_zero() {
        return (UnimodularMap::identity(n), Rat::zero());
    }
    let zrow = RatMatrix::from_row_vectors(&[z.as_vector().clone()], n);
    let s = saturation_basis(&zrow);
    let c = complete_to_basis(&s).expect("a primitive row extends to a basis");
    let eta = UnimodularMap::new(c.transpose()).expect("basis completion is unimodular");
    let u = eta.inverse().apply_rat_vector(z.as_vector());
    for i in 1..n {
        debug_assert!(u.at(i).is_zero(), "target lies on the image of the first axis");
    }
    (eta, u.at(0).clone())
}

#[allow(clippy::too_many_arguments)]
fn attempt_approx(
    x: &SymbolicPoint,
    z: &RationalPoint,
    eps: &Rat,
    alpha: &UnimodularMap,
    e: usize,
    eta: &UnimodularMap,
    omega: &Rat,
    theta: &Rat,
) -> Result<Option<UnimodularMap>, PointError> {
    let mut ctx = IntervalCtx::new(x.basis().clone());
    let reduced = alpha.apply_rat_matrix(x.coeff_matrix());
    let mut rows: Vec<RatVector> = (0..e).map(|i| reduced.row_vector(i)).collect();
    let mut acc = alpha.mat().clone();
    let tighten_to = theta / rat(8, 1);

    // subtractive Euclid on the basis of H_x until everything sits below θ
    let mut shrunk = false;
    for _ in 0..MAX_SHRINK_STEPS {
        for row in &rows {
            ctx.tighten_linear(row, &tighten_to)?;
        }
        let mids: Vec<Rat> =
            rows.iter().map(|r| iv_mid(&ctx.eval_linear(r))).collect();
        let imax = (0..e)
            .max_by(|&a, &b| mids[a].abs().cmp(&mids[b].abs()))
            .expect("at least two basis elements");
        if mids[imax].abs() < theta * rat(3, 4) {
            shrunk = true;
            break;
        }
        let jmin = (0..e)
            .filter(|&i| i != imax)
            .min_by(|&a, &b| mids[a].abs().cmp(&mids[b].abs()))
            .expect("rank at least two");
        ctx.tighten_nonzero(&rows[jmin])?;
        let k = round_rat(&iv_mid(&iv_div(
            &ctx.eval_linear(&rows[imax]),
            &ctx.eval_linear(&rows[jmin]),
        )));
        if k.is_zero() {
            // midpoints too noisy to make progress at this precision
            return Err(PointError::PrecisionExhausted);
        }
        rows[imax] = rows[imax].sub(&rows[jmin].scale(&Rat::from(k.clone())));
        acc.add_mul_row(imax, jmin, &-k);
    }
    if !shrunk {
        return Err(PointError::PrecisionExhausted);
    }

    // slide the first coordinate next to ω along the second basis element
    if !omega.is_zero() {
        ctx.tighten_nonzero(&rows[1])?;
        // the multiple below is of order |ω|/|rows[1]|, so the divisor needs
        // a width small relative to its own magnitude, not just to θ —
        // otherwise the rounded multiple drifts by a fixed fraction of ω no
        // matter how small θ gets
        let den = ctx.eval_linear(&rows[1]);
        let den_mag = if den.0.is_positive() { den.0 } else { -den.1 };
        let rel = den_mag * theta / (rat(8, 1) * (Rat::one() + omega.abs()));
        ctx.tighten_linear(&rows[1], &rel)?;
        let num = iv_sub(&(omega.clone(), omega.clone()), &ctx.eval_linear(&rows[0]));
        let k = round_rat(&iv_mid(&iv_div(&num, &ctx.eval_linear(&rows[1]))));
        rows[0] = rows[0].add(&rows[1].scale(&Rat::from(k.clone())));
        acc.add_mul_row(0, 1, &k);
    }

    let gamma = UnimodularMap::new(eta.mat() * &acc)
        .expect("product of unimodular factors is unimodular");
    match certified_within(&x.apply(&gamma), z, eps)? {
        true => Ok(Some(gamma)),
        false => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// certified interval arithmetic over a basis

type Iv = (Rat, Rat);

fn iv_add(a: &Iv, b: &Iv) -> Iv {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn iv_sub(a: &Iv, b: &Iv) -> Iv {
    (&a.0 - &b.1, &a.1 - &b.0)
}

fn iv_mul(a: &Iv, b: &Iv) -> Iv {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    (lo, hi)
}

fn iv_scale(c: &Rat, a: &Iv) -> Iv {
    if c.is_negative() {
        (c * &a.1, c * &a.0)
    } else {
        (c * &a.0, c * &a.1)
    }
}

/// Requires `b` to exclude zero.
fn iv_div(a: &Iv, b: &Iv) -> Iv {
    debug_assert!(b.0.is_positive() || b.1.is_negative(), "division by an interval through 0");
    let quotients = [&a.0 / &b.0, &a.0 / &b.1, &a.1 / &b.0, &a.1 / &b.1];
    let lo = quotients.iter().min().unwrap().clone();
    let hi = quotients.iter().max().unwrap().clone();
    (lo, hi)
}

fn iv_mid(a: &Iv) -> Rat {
    (&a.0 + &a.1) / rat(2, 1)
}

/// Per-call refinement state: local copies of the basis enclosures plus the
/// bisection depth spent on each label. Calls never share refinement work,
/// which keeps the library types immutable and freely shareable.
struct IntervalCtx {
    basis: Arc<SymbolicBasis>,
    enclosures: Vec<Iv>,
    depths: Vec<u32>,
}

impl IntervalCtx {
    fn new(basis: Arc<SymbolicBasis>) -> Self {
        let enclosures = (0..basis.len()).map(|i| basis.enclosure(i)).collect();
        let depths = vec![0; basis.len()];
        IntervalCtx { basis, enclosures, depths }
    }

    fn width(&self, i: usize) -> Rat {
        &self.enclosures[i].1 - &self.enclosures[i].0
    }

    fn refinable(&self, i: usize) -> bool {
        matches!(self.basis.kind(i), LabelKind::Root { .. })
            && self.depths[i] < self.basis.max_depth()
            && !self.width(i).is_zero()
    }

    /// One bisection step on label `i`; keeps the root bracketed.
    fn refine(&mut self, i: usize) {
        let LabelKind::Root { poly } = self.basis.kind(i) else {
            unreachable!("only root labels are refinable");
        };
        let poly = poly.clone();
        let (lo, hi) = self.enclosures[i].clone();
        let mid = iv_mid(&(lo.clone(), hi.clone()));
        let smid = poly_sign(&poly, &mid);
        self.enclosures[i] = if smid == 0 {
            (mid.clone(), mid)
        } else if smid == poly_sign(&poly, &lo) {
            (mid, hi)
        } else {
            (lo, mid)
        };
        self.depths[i] += 1;
    }

    fn eval_linear(&self, coeffs: &RatVector) -> Iv {
        let mut acc = (Rat::zero(), Rat::zero());
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = iv_add(&acc, &iv_scale(c, &self.enclosures[i]));
        }
        acc
    }

    fn eval_quad(&self, q: &RatMatrix) -> Iv {
        let mut acc = (Rat::zero(), Rat::zero());
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                let c = q.at(i, j);
                if c.is_zero() {
                    continue;
                }
                let prod = iv_mul(&self.enclosures[i], &self.enclosures[j]);
                acc = iv_add(&acc, &iv_scale(c, &prod));
            }
        }
        acc
    }

    /// Refines the widest refinable label among `touched`; false when none is.
    fn refine_widest(&mut self, touched: &[bool]) -> bool {
        let mut best: Option<usize> = None;
        for i in 0..self.basis.len() {
            if !touched[i] || !self.refinable(i) {
                continue;
            }
            if best.map_or(true, |b| self.width(i) > self.width(b)) {
                best = Some(i);
            }
        }
        match best {
            Some(i) => {
                self.refine(i);
                true
            }
            None => false,
        }
    }

    /// Certified sign of a linear combination: `Ok(-1 | 0 | 1)`. Zero is
    /// only reported when the enclosure is exact, which for independent
    /// constants means the combination is formally zero.
    fn certify_sign_linear(&mut self, coeffs: &RatVector) -> Result<i8, PointError> {
        let touched: Vec<bool> = coeffs.iter().map(|c| !c.is_zero()).collect();
        loop {
            let (lo, hi) = self.eval_linear(coeffs);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            if lo == hi {
                return Ok(0);
            }
            if !self.refine_widest(&touched) {
                return Err(PointError::PrecisionExhausted);
            }
        }
    }

    /// Refines until the enclosure of the combination is at most `target` wide.
    fn tighten_linear(&mut self, coeffs: &RatVector, target: &Rat) -> Result<(), PointError> {
        let touched: Vec<bool> = coeffs.iter().map(|c| !c.is_zero()).collect();
        loop {
            let (lo, hi) = self.eval_linear(coeffs);
            if &(&hi - &lo) <= target {
                return Ok(());
            }
            if !self.refine_widest(&touched) {
                return Err(PointError::PrecisionExhausted);
            }
        }
    }

    /// Refines until the enclosure of the combination excludes zero.
    fn tighten_nonzero(&mut self, coeffs: &RatVector) -> Result<(), PointError> {
        let touched: Vec<bool> = coeffs.iter().map(|c| !c.is_zero()).collect();
        loop {
            let (lo, hi) = self.eval_linear(coeffs);
            if lo.is_positive() || hi.is_negative() {
                return Ok(());
            }
            if !self.refine_widest(&touched) {
                return Err(PointError::PrecisionExhausted);
            }
        }
    }

    /// Certified strict `q(constants) < bound` (or its certified negation).
    fn certify_quad_lt(&mut self, q: &RatMatrix, bound: &Rat) -> Result<bool, PointError> {
        let touched = quad_touched(q);
        loop {
            let (lo, hi) = self.eval_quad(q);
            if &hi < bound {
                return Ok(true);
            }
            if &lo >= bound {
                return Ok(false);
            }
            if !self.refine_widest(&touched) {
                return Err(PointError::PrecisionExhausted);
            }
        }
    }

    /// Certified `q(constants) ≥ 0` (or its certified negation).
    fn certify_quad_nonneg(&mut self, q: &RatMatrix) -> Result<bool, PointError> {
        let touched = quad_touched(q);
        loop {
            let (lo, hi) = self.eval_quad(q);
            if !lo.is_negative() {
                return Ok(true);
            }
            if hi.is_negative() {
                return Ok(false);
            }
            if !self.refine_widest(&touched) {
                return Err(PointError::PrecisionExhausted);
            }
        }
    }
}

fn quad_touched(q: &RatMatrix) -> Vec<bool> {
    let mut touched = vec![false; q.rows().max(q.cols())];
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            if !q.at(i, j).is_zero() {
                touched[i] = true;
                touched[j] = true;
            }
        }
    }
    touched
}
