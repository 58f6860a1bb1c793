//! Hermite and Smith normal forms, basis completion, lattice saturation.
//!
//! Conventions are fixed once here and relied on everywhere else:
//!
//! * `hnf` is row-style: the returned `H` has its nonzero rows first, pivot
//!   columns strictly increasing, each pivot positive, and every entry above a
//!   pivot reduced into `[0, pivot)`. This makes `H` a *canonical* basis of
//!   the row lattice — two integer matrices generate the same lattice exactly
//!   when their Hermite forms agree entrywise.
//! * `snf` returns the full transform pair, diagonal nonnegative with each
//!   entry dividing the next.

use num_traits::{One, Signed, Zero};

use crate::scalar::{xgcd, Int};
use crate::zlinalg::matrix::{IntMatrix, RatMatrix};
use crate::zlinalg::ZlinalgError;

/// Replaces rows `r` and `i` of `m` by the row pairs
/// `(a*row_r + b*row_i, c*row_r + d*row_i)`.
fn two_row_transform(m: &mut IntMatrix, r: usize, i: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
    for j in 0..m.cols() {
        let x = m.at(r, j).clone();
        let y = m.at(i, j).clone();
        m.set(r, j, a * &x + b * &y);
        m.set(i, j, c * &x + d * &y);
    }
}

fn two_col_transform(m: &mut IntMatrix, r: usize, i: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
    for row in 0..m.rows() {
        let x = m.at(row, r).clone();
        let y = m.at(row, i).clone();
        m.set(row, r, a * &x + b * &y);
        m.set(row, i, c * &x + d * &y);
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U * A == H` and `det U == ±1`.
///
/// ```
/// use zorbit::zlinalg::{hnf, IntMatrix};
///
/// let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
/// let (h, u) = hnf(&a);
/// assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
/// assert_eq!(&u * &a, h);
/// ```
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut r = 0;
    for j in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        let Some(p) = (r..h.rows()).find(|&i| !h.at(i, j).is_zero()) else {
            continue;
        };
        h.swap_rows(r, p);
        u.swap_rows(r, p);
        for i in r + 1..h.rows() {
            if h.at(i, j).is_zero() {
                continue;
            }
            // det-1 transform landing gcd at (r, j) and zero at (i, j)
            let (g, x, y) = xgcd(h.at(r, j), h.at(i, j));
            let p = h.at(r, j) / &g;
            let q = h.at(i, j) / &g;
            two_row_transform(&mut h, r, i, &x, &y, &-&q, &p);
            two_row_transform(&mut u, r, i, &x, &y, &-&q, &p);
        }
        if h.at(r, j).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h.at(r, j).clone();
        for i in 0..r {
            let q = num_integer::Integer::div_floor(h.at(i, j), &pivot);
            if !q.is_zero() {
                h.add_mul_row(i, r, &-&q);
                u.add_mul_row(i, r, &-&q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Number of leading nonzero rows of a Hermite form.
pub(crate) fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.rows()).take_while(|&i| !h.is_zero_row(i)).count()
}

/// Inverse of an integer matrix with determinant `±1`, or `None`.
pub(crate) fn inverse_int(m: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), m.cols(), "inverse of non-square matrix");
    let (h, u) = hnf(m);
    if h == IntMatrix::identity(m.rows()) {
        Some(u)
    } else {
        None
    }
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `U * A * V == S`, `U` and `V` unimodular, `S`
/// diagonal with nonnegative entries and `S[i][i]` dividing `S[i+1][i+1]`.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let k = a.rows().min(a.cols());
    let mut t = 0;
    while t < k {
        // move some nonzero entry of the trailing block to (t, t)
        let mut found = None;
        'search: for i in t..s.rows() {
            for j in t..s.cols() {
                if !s.at(i, j).is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = found else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // alternate row and column clearing until (t, t) is alone
        loop {
            for i in t + 1..s.rows() {
                if s.at(i, t).is_zero() {
                    continue;
                }
                let (g, x, y) = xgcd(s.at(t, t), s.at(i, t));
                let p = s.at(t, t) / &g;
                let q = s.at(i, t) / &g;
                two_row_transform(&mut s, t, i, &x, &y, &-&q, &p);
                two_row_transform(&mut u, t, i, &x, &y, &-&q, &p);
            }
            let row_clear = (t + 1..s.cols()).all(|j| s.at(t, j).is_zero());
            if row_clear {
                break;
            }
            for j in t + 1..s.cols() {
                if s.at(t, j).is_zero() {
                    continue;
                }
                let (g, x, y) = xgcd(s.at(t, t), s.at(t, j));
                let p = s.at(t, t) / &g;
                let q = s.at(t, j) / &g;
                two_col_transform(&mut s, t, j, &x, &y, &-&q, &p);
                two_col_transform(&mut v, t, j, &x, &y, &-&q, &p);
            }
            let col_clear = (t + 1..s.rows()).all(|i| s.at(i, t).is_zero());
            if col_clear {
                break;
            }
        }

        // repair the divisibility chain: fold a bad successor into row t-1
        // and redo that position (its pivot strictly shrinks, so this stops)
        if t > 0 && !(s.at(t, t) % s.at(t - 1, t - 1)).is_zero() {
            s.add_mul_row(t - 1, t, &Int::one());
            u.add_mul_row(t - 1, t, &Int::one());
            t -= 1;
            continue;
        }
        t += 1;
    }
    for i in 0..k {
        if s.at(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    (s, u, v)
}

/// Extends the rows of `b` to a basis of `Z^m`.
///
/// The result `W` is an `m x m` matrix with `|det W| == 1` whose first `k`
/// rows are exactly the rows of `b`. Fails with [`ZlinalgError::NotSaturated`]
/// when no such extension exists, i.e. when the rows are dependent or span a
/// sublattice strictly denser in its rational span than the lattice itself.
///
/// ```
/// use zorbit::zlinalg::{complete_to_basis, IntMatrix};
///
/// let w = complete_to_basis(&IntMatrix::from_i64(&[&[2, 3]])).unwrap();
/// assert_eq!(w.row(0), IntMatrix::from_i64(&[&[2, 3]]).row(0));
/// assert!(w.det() == 1.into() || w.det() == (-1).into());
/// ```
pub fn complete_to_basis(b: &IntMatrix) -> Result<IntMatrix, ZlinalgError> {
    let (k, m) = (b.rows(), b.cols());
    assert!(k <= m, "cannot extend {k} rows to a basis of Z^{m}");
    let (s, u, v) = snf(b);
    let saturated = (0..k).all(|i| s.at(i, i).is_one());
    if !saturated {
        return Err(ZlinalgError::NotSaturated);
    }
    // B = U^-1 [I|0] V^-1, so gluing U^-1 onto the top-left of an identity
    // and multiplying by V^-1 reproduces B in the first k rows.
    let uinv = inverse_int(&u).expect("snf transform is unimodular");
    let vinv = inverse_int(&v).expect("snf transform is unimodular");
    let mut block = IntMatrix::identity(m);
    for i in 0..k {
        for j in 0..k {
            block.set(i, j, uinv.at(i, j).clone());
        }
    }
    let w = &block * &vinv;
    debug_assert_eq!(w.take_rows(0..k), *b);
    debug_assert!(w.det().magnitude().is_one());
    Ok(w)
}

/// Canonical basis (in Hermite form) of `span_Q(rows) ∩ Z^m`.
///
/// The result has one row per dimension of the rational row span; in
/// particular a primitive system is returned unchanged up to Hermite
/// normalization, and denominators are cleared exactly.
///
/// ```
/// use zorbit::zlinalg::{saturation_basis, IntMatrix, RatMatrix};
///
/// let a = RatMatrix::from_strs(&[&["2/3", "0", "1"], &["2/3", "1", "1"]]).unwrap();
/// assert_eq!(
///     saturation_basis(&a),
///     IntMatrix::from_i64(&[&[2, 0, 3], &[0, 1, 0]])
/// );
/// ```
pub fn saturation_basis(a: &RatMatrix) -> IntMatrix {
    let m = a.cols();
    let (cleared, _) = a.clear_denominators();
    let (h, _) = hnf(&cleared);
    let r = hnf_rank(&h);
    if r == 0 {
        return IntMatrix::zeros(0, m);
    }
    let b = h.take_rows(0..r);
    // B = U^-1 D (first r rows of V^-1) with D invertible, so those rows of
    // V^-1 span the same rational space and are part of a basis of Z^m:
    // they generate the full intersection with the integer lattice.
    let (_, _, v) = snf(&b);
    let vinv = inverse_int(&v).expect("snf transform is unimodular");
    let (sat, _) = hnf(&vinv.take_rows(0..r));
    sat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gcd, int};
    use crate::zlinalg::matrix::IntVector;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
        IntMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| int(rng.gen_range(-bound..=bound))).collect())
                .collect(),
        )
    }

    fn assert_hnf_shape(h: &IntMatrix) {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(j) => {
                    assert!(!seen_zero, "zero row above nonzero row");
                    assert!(last_pivot.map_or(true, |p| p < j), "pivots not increasing");
                    assert!(h.at(i, j).is_positive(), "pivot not positive");
                    for above in 0..i {
                        let e = h.at(above, j);
                        assert!(
                            !e.is_negative() && e < h.at(i, j),
                            "entry above pivot not reduced"
                        );
                    }
                    last_pivot = Some(j);
                }
            }
        }
    }

    #[test]
    fn test_hnf_worked_example() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(&u * &a, h);
        assert_eq!(u.det().magnitude().to_u32(), Some(1));
    }

    #[test]
    fn test_hnf_random_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..300 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let a = random_matrix(&mut rng, rows, cols, 9);
            let (h, u) = hnf(&a);
            assert_eq!(&u * &a, h);
            assert_eq!(u.det().magnitude().to_u32(), Some(1));
            assert_hnf_shape(&h);
        }
    }

    #[test]
    fn test_hnf_canonical_for_equal_lattices() {
        // shuffling generators or adding integer combinations keeps the HNF
        let mut rng = ChaCha8Rng::seed_from_u64(202);
        for _ in 0..100 {
            let a = random_matrix(&mut rng, 3, 4, 6);
            let mut b = a.clone();
            b.swap_rows(0, 2);
            b.add_mul_row(1, 0, &int(rng.gen_range(-4..=4)));
            b.add_mul_row(2, 1, &int(rng.gen_range(-4..=4)));
            assert_eq!(hnf(&a).0, hnf(&b).0);
        }
    }

    #[test]
    fn test_hnf_degenerate_shapes() {
        let (h, u) = hnf(&IntMatrix::zeros(0, 3));
        assert_eq!(h, IntMatrix::zeros(0, 3));
        assert_eq!(u, IntMatrix::identity(0));
        let (h, _) = hnf(&IntMatrix::zeros(2, 2));
        assert_eq!(h, IntMatrix::zeros(2, 2));
    }

    #[test]
    fn test_snf_worked_examples() {
        let (s, u, v) = snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(&(&u * &IntMatrix::from_i64(&[&[2, 0], &[0, 3]])) * &v, s);

        let (s, _, _) = snf(&IntMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(s, IntMatrix::from_i64(&[&[2, 0]]));
    }

    /// gcd of all k x k minors, the classical characterization of the SNF
    /// diagonal: S[k-1][k-1] == minor_gcd(k) / minor_gcd(k-1).
    fn minor_gcd(a: &IntMatrix, k: usize) -> Int {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        let mut s = vec![first];
                        s.append(&mut rest);
                        out.push(s);
                    }
                }
            }
            out.retain(|s| s.len() == k);
            out
        }
        let mut g = int(0);
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let mut m = IntMatrix::zeros(k, k);
                for (i, &r) in rs.iter().enumerate() {
                    for (j, &c) in cs.iter().enumerate() {
                        m.set(i, j, a.at(r, c).clone());
                    }
                }
                g = gcd(&g, &m.det());
            }
        }
        g
    }

    #[test]
    fn test_snf_against_minor_gcd_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        for _ in 0..120 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..4);
            let a = random_matrix(&mut rng, rows, cols, 7);
            let (s, u, v) = snf(&a);
            assert_eq!(&(&u * &a) * &v, s);
            assert_eq!(u.det().magnitude().to_u32(), Some(1));
            assert_eq!(v.det().magnitude().to_u32(), Some(1));
            let k = rows.min(cols);
            let mut prev = int(1);
            for t in 0..k {
                let d = minor_gcd(&a, t + 1);
                let expect = if prev.is_zero() { int(0) } else { &d / &prev };
                assert_eq!(*s.at(t, t), expect, "diagonal vs minor gcd at {t}");
                // off-diagonal clear and divisibility chain
                for j in 0..s.cols() {
                    if j != t {
                        assert!(s.at(t, j).is_zero());
                    }
                }
                if t > 0 && !s.at(t - 1, t - 1).is_zero() {
                    assert!((s.at(t, t) % s.at(t - 1, t - 1)).is_zero());
                }
                prev = d;
            }
        }
    }

    #[test]
    fn test_complete_to_basis_worked_example() {
        let b = IntMatrix::from_i64(&[&[2, 3]]);
        let w = complete_to_basis(&b).unwrap();
        assert_eq!(w.take_rows(0..1), b);
        assert_eq!(w.det().magnitude().to_u32(), Some(1));
    }

    #[test]
    fn test_complete_to_basis_rejects_imprimitive() {
        assert!(matches!(
            complete_to_basis(&IntMatrix::from_i64(&[&[2, 4]])),
            Err(ZlinalgError::NotSaturated)
        ));
        // dependent rows can never be part of a basis
        assert!(matches!(
            complete_to_basis(&IntMatrix::from_i64(&[&[1, 0], &[2, 0]])),
            Err(ZlinalgError::NotSaturated)
        ));
    }

    #[test]
    fn test_complete_to_basis_random() {
        // draw saturated inputs as leading rows of a random basis of Z^m
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for _ in 0..1000 {
            let m = rng.gen_range(1..5);
            let k = rng.gen_range(0..=m);
            let basis = crate::zlinalg::random_unimodular(m, 12, rng.gen());
            let b = basis.mat().take_rows(0..k);
            let w = complete_to_basis(&b).expect("leading rows of a basis are saturated");
            assert_eq!(w.take_rows(0..k), b);
            assert_eq!(w.det().magnitude().to_u32(), Some(1));
        }
    }

    #[test]
    fn test_saturation_worked_examples() {
        let a = RatMatrix::from_strs(&[&["1/2", "1/2"]]).unwrap();
        assert_eq!(saturation_basis(&a), IntMatrix::from_i64(&[&[1, 1]]));

        let a = RatMatrix::from_strs(&[&["2/3", "0", "1"], &["2/3", "1", "1"]]).unwrap();
        assert_eq!(saturation_basis(&a), IntMatrix::from_i64(&[&[2, 0, 3], &[0, 1, 0]]));
    }

    #[test]
    fn test_saturation_is_saturated_and_spans() {
        let mut rng = ChaCha8Rng::seed_from_u64(505);
        for _ in 0..200 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..5);
            let num = random_matrix(&mut rng, rows, cols, 8);
            let den = int(rng.gen_range(1..6));
            let a = num.to_rat().scale(&crate::scalar::Rat::new(int(1), den));
            let sat = saturation_basis(&a);
            // same rational span
            assert_eq!(sat.to_rat().rank(), a.rank());
            assert_eq!(sat.to_rat().vstack(&a).rank(), a.rank());
            // saturated: extends to a basis of Z^cols
            assert!(complete_to_basis(&sat).is_ok());
            // idempotent and canonical
            assert_eq!(saturation_basis(&sat.to_rat()), sat);
        }
    }

    #[test]
    fn test_saturation_finds_integer_points() {
        // the 1/5-scaled row recovers the primitive direction
        let a = RatMatrix::from_strs(&[&["2/5", "4/5"]]).unwrap();
        assert_eq!(saturation_basis(&a), IntMatrix::from_i64(&[&[1, 2]]));
        // zero input has empty saturation
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(saturation_basis(&z), IntMatrix::zeros(0, 3));
    }

    #[test]
    fn test_inverse_int() {
        let m = IntMatrix::from_i64(&[&[1, -1], &[2, -3]]);
        let inv = inverse_int(&m).unwrap();
        assert_eq!(inv, IntMatrix::from_i64(&[&[3, -1], &[2, -1]]));
        assert_eq!(&m * &inv, IntMatrix::identity(2));
        assert!(inverse_int(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn test_saturation_membership_oracle() {
        // every integer vector in the rational span lies in the row lattice
        // of the saturation basis (brute force over a small box)
        let a = RatMatrix::from_strs(&[&["2/3", "0", "1"], &["2/3", "1", "1"]]).unwrap();
        let sat = saturation_basis(&a);
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                for z in -4i64..=4 {
                    let v = IntVector::from_i64(&[x, y, z]);
                    let vr = RatMatrix::from_row_vectors(&[v.to_rat()], 3);
                    let in_span = a.vstack(&vr).rank() == a.rank();
                    if !in_span {
                        continue;
                    }
                    // solve over Q against the saturation basis; must be integral
                    let sol = sat
                        .to_rat()
                        .transpose()
                        .solve_right(&vr.transpose())
                        .expect("in span");
                    assert!(
                        (0..sol.rows()).all(|i| sol.at(i, 0).denom().is_one()),
                        "integer point {v:?} missed by saturation basis"
                    );
                }
            }
        }
    }
}
