//! Independent oracles for the rest of the crate: bounded brute-force
//! enumeration of unimodular matrices, mediant regularization of rational
//! segments, exact squared Euclidean volumes, and a generator of random
//! regular simplexes.
//!
//! Nothing here is needed to *compute* invariants; these routines exist so
//! the main algorithms can be checked against slower, structurally unrelated
//! computations of the same quantities.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratgeom::{
    dehomog, homog, RationalPoint, RationalSimplex, SimplicialComplex,
};
use crate::scalar::{int, Int, Rat};
use crate::zlinalg::{
    complete_to_basis, random_unimodular, saturation_basis, IntMatrix, IntVector, RatMatrix,
    UnimodularMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TestkitError {
    /// Brute-force enumeration is only meant for desk-scale checks.
    #[error("enumeration supports n in 1..=3 and bound in 1..=3 (got n={n}, bound={bound})")]
    UnsupportedSize { n: usize, bound: i64 },
}

/// Streams every `n × n` integer matrix with entries in `[-bound, bound]`
/// and determinant `±1`, each exactly once, in a fixed order.
///
/// The stream is `Clone` (cloning restarts nothing — it duplicates the
/// current position), and a fresh call to [`enumerate_unimodular`] always
/// restarts from the beginning.
#[derive(Clone, Debug)]
pub struct UnimodularEnumeration {
    n: usize,
    bound: i64,
    next_code: u64,
    total: u64,
}

pub fn enumerate_unimodular(
    n: usize,
    bound: i64,
) -> Result<UnimodularEnumeration, TestkitError> {
    if !(1..=3).contains(&n) || !(1..=3).contains(&bound) {
        return Err(TestkitError::UnsupportedSize { n, bound });
    }
    let radix = (2 * bound + 1) as u64;
    let total = radix.pow((n * n) as u32);
    Ok(UnimodularEnumeration { n, bound, next_code: 0, total })
}

impl UnimodularEnumeration {
    /// Decodes an odometer position into matrix entries, row-major, the
    /// first entry varying slowest.
    fn entries(&self, code: u64) -> Vec<i64> {
        let radix = (2 * self.bound + 1) as u64;
        let mut out = vec![0i64; self.n * self.n];
        let mut rest = code;
        for slot in out.iter_mut().rev() {
            *slot = (rest % radix) as i64 - self.bound;
            rest /= radix;
        }
        out
    }
}

fn det_small(n: usize, e: &[i64]) -> i64 {
    match n {
        1 => e[0],
        2 => e[0] * e[3] - e[1] * e[2],
        3 => {
            e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6])
        }
        _ => unreachable!("enumeration sizes are 1..=3"),
    }
}

impl Iterator for UnimodularEnumeration {
    type Item = UnimodularMap;

    fn next(&mut self) -> Option<UnimodularMap> {
        while self.next_code < self.total {
            let code = self.next_code;
            self.next_code += 1;
            let e = self.entries(code);
            let d = det_small(self.n, &e);
            if d == 1 || d == -1 {
                let rows = e
                    .chunks(self.n)
                    .map(|row| row.iter().map(|&v| int(v)).collect())
                    .collect();
                let m = IntMatrix::from_rows(rows);
                return Some(UnimodularMap::new(m).expect("determinant filtered to ±1"));
            }
        }
        None
    }
}

/// Regular (Farey) triangulation of a rational segment.
///
/// The segment's endpoint lifts span a rank-2 saturated lattice `L`; the
/// subdivision points are the lattice points on the boundary of the convex
/// hull of the nonzero part of `cone(ã, b̃) ∩ L` — the Stern–Brocot chain of
/// the segment. Consecutive chain points form bases of `L`, so every piece
/// is regular, and the chain is computed directly: from the current lift `C`
/// step to the unique primitive `W` with `det(C, W) = 1` lying deepest
/// toward `b̃`, which strictly decreases the remaining index `det(·, b̃)`.
///
/// Splitting each bad piece at its raw Farey mediant — the primitive part of
/// `p̃ + q̃` — reaches the same chain whenever it stops, but it does not
/// always stop: a pair of index 5 can produce an infinite branch whose
/// pieces all keep index 5 (starting from `[2/7, 1]`, say), so the hull walk
/// is the reliable route to the same triangulation.
///
/// ```
/// use zorbit::measure::lambda_complex;
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::scalar::rat;
/// use zorbit::testkit::mediant_regularize_segment;
///
/// let delta = mediant_regularize_segment(
///     &RationalPoint::origin(2),
///     &RationalPoint::from_i64(&[2, 2]),
/// );
/// // split once at (1,1): two unit pieces
/// assert_eq!(delta.maximal_of_dim(1).len(), 2);
/// assert_eq!(lambda_complex(&delta, 1), Ok(rat(2, 1)));
/// ```
pub fn mediant_regularize_segment(
    a: &RationalPoint,
    b: &RationalPoint,
) -> SimplicialComplex {
    assert_ne!(a, b, "regularization needs a real segment");
    let ambient = a.dim();
    let pa = homog(a).into_vector();
    let pb = homog(b).into_vector();
    let lifts = IntMatrix::from_row_vectors(&[pa.clone(), pb.clone()], ambient + 1);
    let basis = saturation_basis(&lifts.to_rat());
    debug_assert_eq!(basis.rows(), 2);
    // lattice coordinates of the endpoint lifts (integral by saturation,
    // primitive because the lifts are primitive in the ambient lattice)
    let coords_of = |v: &IntVector| -> (Int, Int) {
        let sol = basis
            .to_rat()
            .transpose()
            .solve_right(&RatMatrix::from_row_vectors(&[v.to_rat()], ambient + 1).transpose())
            .expect("endpoint lift lies in the span")
            .col_vector(0)
            .to_int()
            .expect("saturated basis gives integer coordinates");
        (sol.at(0).clone(), sol.at(1).clone())
    };
    let p = coords_of(&pa);
    let q = coords_of(&pb);
    let cross =
        |x: &(Int, Int), y: &(Int, Int)| -> Int { &x.0 * &y.1 - &x.1 * &y.0 };
    let d0 = cross(&p, &q);
    assert!(!d0.is_zero(), "distinct points have independent lifts");
    let ori = if d0.is_negative() { int(-1) } else { int(1) };

    let mut chain: Vec<(Int, Int)> = vec![p.clone()];
    let mut c = p;
    loop {
        let idx = &ori * cross(&c, &q);
        debug_assert!(idx.is_positive());
        if idx.is_one() {
            chain.push(q);
            break;
        }
        // particular solution of ori·cross(c, W) = 1 from Bézout on the
        // coprime coordinates of c
        let (g, x, y) = crate::scalar::xgcd(&c.0, &c.1);
        debug_assert!(g.is_one());
        let w0 = (&-&ori * &y, &ori * &x);
        // slide W = w0 + t·c to the hull vertex: the unique representative
        // with ori·cross(W, q) in [1, idx); that value is the next index,
        // so the walk terminates
        let r = &ori * cross(&w0, &q);
        let v = num_integer::Integer::mod_floor(&(&r - &int(1)), &idx) + &int(1);
        debug_assert!(v < idx, "the hull vertex cannot be parallel to the far endpoint");
        let t = (&v - &r) / &idx;
        let w = (&w0.0 + &(&t * &c.0), &w0.1 + &(&t * &c.1));
        chain.push(w.clone());
        c = w;
    }

    // back to ambient lifts and points
    let verts: Vec<RationalPoint> = chain
        .iter()
        .map(|(u0, u1)| {
            let lift = basis.row_vector(0).scale(u0).add(&basis.row_vector(1).scale(u1));
            dehomog(&lift).expect("hull chain vectors are primitive with positive last entry")
        })
        .collect();
    // consecutive chain points tile conv(a, b) end to end, so the complex
    // is valid by construction; skip the quadratic re-validation
    let mut parts: Vec<RationalSimplex> = Vec::new();
    for v in &verts {
        parts.push(RationalSimplex::new(vec![v.clone()]).expect("a vertex is a simplex"));
    }
    for pair in verts.windows(2) {
        parts.push(
            RationalSimplex::new(pair.to_vec()).expect("consecutive chain points differ"),
        );
    }
    SimplicialComplex::from_valid_parts(ambient, parts)
}

/// Squared `k`-dimensional Euclidean volume of the parallelotope spanned by
/// the generators: the Gram determinant, kept exactly rational.
///
/// ```
/// use zorbit::ratgeom::RationalPoint;
/// use zorbit::scalar::rat;
/// use zorbit::testkit::gram_sq_volume;
///
/// let g = [
///     RationalPoint::from_strs(&["1/2", "0"]).unwrap(),
///     RationalPoint::from_strs(&["0", "1/2"]).unwrap(),
/// ];
/// assert_eq!(gram_sq_volume(&g), rat(1, 16));
/// ```
pub fn gram_sq_volume(generators: &[RationalPoint]) -> Rat {
    let k = generators.len();
    let mut gram = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, generators[i].as_vector().dot(generators[j].as_vector()));
        }
    }
    gram.det()
}

/// Draws a uniformly scrambled regular `k`-simplex in `R^n`, returned as an
/// ordered vertex list. With `v0_integral` the first vertex is a point of
/// `Z^n` (handy for pyramid-style identities).
///
/// The construction takes the leading `k + 1` rows of a random basis of
/// `Z^{n+1}` and massages last coordinates to be positive (and, on request,
/// exactly `1` in the first row) by row operations, so the rows stay part of
/// a basis throughout — which is precisely regularity of the vertex set.
pub fn random_regular_simplex(
    n: usize,
    k: usize,
    seed: u64,
    v0_integral: bool,
) -> Vec<RationalPoint> {
    assert!(k <= n, "a k-simplex needs k <= n");
    let mut m = random_unimodular(n + 1, 20, seed).into_mat();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    if v0_integral {
        // rotate the last column onto e_1 so row 0 gets last coordinate 1,
        // then re-scramble the other rows without touching row 0
        let c = m.col_vector(n + 1 - 1);
        let comp = complete_to_basis(&IntMatrix::from_row_vectors(&[c], n + 1))
            .expect("columns of a unimodular matrix are primitive");
        let w = crate::zlinalg::unimodular_inverse(
            &UnimodularMap::new(comp).expect("basis completion is unimodular"),
        )
        .into_mat()
        .transpose();
        m = &w * &m;
        debug_assert!(m.at(0, n).is_one());
        for _ in 0..4 * n {
            let i = rng.gen_range(1..=n);
            let mut j = rng.gen_range(0..=n);
            while j == i {
                j = rng.gen_range(0..=n);
            }
            let c = int(rng.gen_range(-2i64..=2));
            if !c.is_zero() {
                m.add_mul_row(i, j, &c);
            }
        }
    }
    for i in 0..=k {
        if m.at(i, n).is_zero() {
            let j = (0..m.rows())
                .find(|&j| j != i && !m.at(j, n).is_zero())
                .expect("some basis row has a nonzero last coordinate");
            m.add_mul_row(i, j, &Int::one());
        }
        if m.at(i, n).is_negative() {
            m.negate_row(i);
        }
    }
    (0..=k)
        .map(|i| dehomog(&m.row_vector(i)).expect("basis rows are primitive lifts"))
        .collect()
}
