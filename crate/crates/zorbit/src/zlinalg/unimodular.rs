//! Verified unimodular maps and their affine extensions.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::int;
use crate::zlinalg::hnf::inverse_int;
use crate::zlinalg::matrix::{IntMatrix, IntVector, RatMatrix, RatVector};
use crate::zlinalg::ZlinalgError;

/// An integer matrix with determinant `+1` or `-1`, i.e. an automorphism of
/// the lattice `Z^n`. The determinant is checked at construction, so holding
/// a value of this type is proof of unimodularity.
#[derive(Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    mat: IntMatrix,
    det: i8,
}

impl UnimodularMap {
    pub fn new(mat: IntMatrix) -> Result<Self, ZlinalgError> {
        assert_eq!(mat.rows(), mat.cols(), "unimodular map must be square");
        let d = mat.det();
        if d.magnitude().is_one() {
            let det = if d.is_one() { 1 } else { -1 };
            Ok(UnimodularMap { mat, det })
        } else {
            Err(ZlinalgError::NotUnimodular { det: d })
        }
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap { mat: IntMatrix::identity(n), det: 1 }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> IntMatrix {
        self.mat
    }

    /// `+1` or `-1`.
    pub fn det(&self) -> i8 {
        self.det
    }

    pub fn inverse(&self) -> UnimodularMap {
        let inv = inverse_int(&self.mat).expect("determinant already verified");
        UnimodularMap { mat: inv, det: self.det }
    }

    /// `self` after `other`: `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap { mat: &self.mat * &other.mat, det: self.det * other.det }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.mat.mul_vec(v)
    }

    pub fn apply_rat_vector(&self, v: &RatVector) -> RatVector {
        self.mat.to_rat().mul_vec(v)
    }

    /// Image of a whole rational matrix of column vectors: `M ↦ U·M`.
    pub fn apply_rat_matrix(&self, m: &RatMatrix) -> RatMatrix {
        &self.mat.to_rat() * m
    }
}

impl std::fmt::Debug for UnimodularMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UnimodularMap(det {}) {:?}", self.det, self.mat)
    }
}

/// A map `v ↦ U v + b` with `U` unimodular and `b` integral — the affine
/// transformations preserving the lattice `Z^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineUnimodularMap {
    pub linear: UnimodularMap,
    pub shift: IntVector,
}

impl AffineUnimodularMap {
    pub fn new(linear: UnimodularMap, shift: IntVector) -> Self {
        assert_eq!(linear.dim(), shift.len(), "shift dimension mismatch");
        AffineUnimodularMap { linear, shift }
    }

    pub fn identity(n: usize) -> Self {
        AffineUnimodularMap { linear: UnimodularMap::identity(n), shift: IntVector::zeros(n) }
    }

    pub fn from_linear(linear: UnimodularMap) -> Self {
        let n = linear.dim();
        AffineUnimodularMap { linear, shift: IntVector::zeros(n) }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.linear.apply(v).add(&self.shift)
    }

    pub fn apply_rat_vector(&self, v: &RatVector) -> RatVector {
        self.linear.apply_rat_vector(v).add(&self.shift.to_rat())
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        AffineUnimodularMap {
            linear: self.linear.compose(&other.linear),
            shift: self.linear.apply(&other.shift).add(&self.shift),
        }
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let inv = self.linear.inverse();
        let shift = inv.apply(&self.shift).neg();
        AffineUnimodularMap { linear: inv, shift }
    }
}

impl std::fmt::Debug for AffineUnimodularMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AffineUnimodularMap {:?} + {:?}", self.linear, self.shift)
    }
}

/// Inverse of a unimodular map, again unimodular.
///
/// ```
/// use zorbit::zlinalg::{unimodular_inverse, IntMatrix, UnimodularMap};
///
/// let u = UnimodularMap::new(IntMatrix::from_i64(&[&[1, -1], &[2, -3]])).unwrap();
/// assert_eq!(
///     unimodular_inverse(&u).mat(),
///     &IntMatrix::from_i64(&[&[3, -1], &[2, -1]])
/// );
/// ```
pub fn unimodular_inverse(u: &UnimodularMap) -> UnimodularMap {
    u.inverse()
}

/// Deterministic pseudorandom element of `GL(n, Z)`, built from `steps`
/// elementary operations (row swaps, negations, and shears with small
/// multipliers) applied to the identity. Equal `(n, steps, seed)` triples
/// always produce the same matrix.
pub fn random_unimodular(n: usize, steps: usize, seed: u64) -> UnimodularMap {
    assert!(n > 0, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::identity(n);
    let mut det = 1i8;
    for _ in 0..steps {
        match rng.gen_range(0..4u8) {
            0 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                m.swap_rows(i, j);
                det = -det;
            }
            1 => {
                m.negate_row(rng.gen_range(0..n));
                det = -det;
            }
            _ if n >= 2 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let c = loop {
                    let c = rng.gen_range(-3i64..=3);
                    if c != 0 {
                        break c;
                    }
                };
                m.add_mul_row(i, j, &int(c));
            }
            _ => {} // n == 1: only negation changes anything
        }
    }
    UnimodularMap { mat: m, det }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn test_new_rejects_non_unimodular() {
        assert!(UnimodularMap::new(IntMatrix::from_i64(&[&[2]])).is_err());
        assert!(UnimodularMap::new(IntMatrix::from_i64(&[&[1, 0], &[0, -1]])).is_ok());
    }

    #[test]
    fn test_det_sign_tracked() {
        let u = UnimodularMap::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(u.det(), -1);
        assert_eq!(u.compose(&u).det(), 1);
    }

    #[test]
    fn test_inverse_round_trip() {
        for seed in 0..50 {
            let u = random_unimodular(3, 30, seed);
            let inv = u.inverse();
            assert_eq!(u.compose(&inv).mat(), &IntMatrix::identity(3));
            assert_eq!(inv.compose(&u).mat(), &IntMatrix::identity(3));
            assert_eq!(i64::from(u.det()) * i64::from(u.mat().det().to_i64().unwrap()), 1);
        }
    }

    #[test]
    fn test_random_unimodular_is_deterministic() {
        assert_eq!(random_unimodular(4, 40, 9).mat(), random_unimodular(4, 40, 9).mat());
        assert_ne!(random_unimodular(4, 40, 9).mat(), random_unimodular(4, 40, 10).mat());
    }

    #[test]
    fn test_random_unimodular_dimension_one() {
        for seed in 0..10 {
            let u = random_unimodular(1, 25, seed);
            assert_eq!(u.mat().det().magnitude().to_u32(), Some(1));
        }
    }

    #[test]
    fn test_affine_compose_and_inverse() {
        for seed in 0..40 {
            let a = AffineUnimodularMap::new(
                random_unimodular(3, 20, seed),
                IntVector::from_i64(&[(seed % 5) as i64 - 2, 1, -3]),
            );
            let b = AffineUnimodularMap::new(
                random_unimodular(3, 20, seed + 1000),
                IntVector::from_i64(&[2, 0, (seed % 7) as i64]),
            );
            let v = IntVector::from_i64(&[1, -2, 5]);
            // composition acts like sequential application
            assert_eq!(a.compose(&b).apply(&v), a.apply(&b.apply(&v)));
            // inverse undoes
            let id = a.compose(&a.inverse());
            assert_eq!(id.apply(&v), v);
        }
    }
}
