//! Rational points and their homogeneous integer lifts.
//!
//! A point `x ∈ Q^n` with least common denominator `d = den(x)` lifts to the
//! primitive integer vector `x̃ = (d·x_1, …, d·x_n, d) ∈ Z^{n+1}` with
//! positive last entry. The lift is the bridge between affine rational
//! geometry and lattice arithmetic: almost every predicate in this crate is a
//! statement about lifts.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::ratgeom::GeomError;
use crate::scalar::{Int, ParseRatError, Rat};
use crate::zlinalg::{IntVector, RatVector};

/// A point of `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: RatVector,
}

impl RationalPoint {
    pub fn new(coords: RatVector) -> Self {
        RationalPoint { coords }
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint { coords: RatVector::zeros(n) }
    }

    pub fn from_strs(coords: &[&str]) -> Result<Self, ParseRatError> {
        Ok(RationalPoint { coords: RatVector::from_strs(coords)? })
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalPoint {
            coords: RatVector::new(coords.iter().map(|&c| Rat::from(Int::from(c))).collect()),
        }
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Rat {
        self.coords.at(i)
    }

    pub fn as_vector(&self) -> &RatVector {
        &self.coords
    }

    pub fn into_vector(self) -> RatVector {
        self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    /// Least common denominator of the coordinates; see [`den`].
    pub fn den(&self) -> Int {
        self.coords.lcm_denoms()
    }

    /// Homogeneous correspondent; see [`homog`].
    pub fn homog(&self) -> HomogeneousVector {
        homog(self)
    }

    /// Image under a unimodular map.
    pub fn apply(&self, u: &crate::zlinalg::UnimodularMap) -> RationalPoint {
        RationalPoint::new(u.apply_rat_vector(&self.coords))
    }

    /// Image under an affine unimodular map.
    pub fn apply_affine(&self, m: &crate::zlinalg::AffineUnimodularMap) -> RationalPoint {
        RationalPoint::new(m.apply_rat_vector(&self.coords))
    }
}

impl std::fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})", self.coords)
    }
}

// Lexicographic order on coordinates; gives simplex vertex lists a canonical
// form so that vertex-set equality is plain equality.
impl Ord for RationalPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "comparing points of different dimension");
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for RationalPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Primitive integer vector with positive last coordinate — the image of a
/// rational point under homogenization, or equally a primitive ray of
/// `Z^{n+1}` meeting the affine chart.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousVector {
    v: IntVector,
}

impl HomogeneousVector {
    /// Validates primitivity and last-coordinate positivity.
    pub fn new(v: IntVector) -> Result<Self, GeomError> {
        assert!(!v.is_empty(), "homogeneous vector needs at least the denominator entry");
        if !v.at(v.len() - 1).is_positive() {
            return Err(GeomError::InvalidHomogeneous {
                reason: format!("last coordinate {} is not positive", v.at(v.len() - 1)),
            });
        }
        if !v.content().is_one() {
            return Err(GeomError::InvalidHomogeneous {
                reason: format!("vector is not primitive (content {})", v.content()),
            });
        }
        Ok(HomogeneousVector { v })
    }

    /// Canonical representative of the ray through `v`: divides out the
    /// content and flips sign so the last coordinate is positive. `None` when
    /// the last coordinate is zero (a direction, not a point).
    pub fn from_ray(v: &IntVector) -> Option<Self> {
        let last = v.at(v.len() - 1);
        if last.is_zero() {
            return None;
        }
        let mut c = v.content();
        if last.is_negative() {
            c = -c;
        }
        Some(HomogeneousVector {
            v: IntVector::new(v.iter().map(|x| x / &c).collect()),
        })
    }

    /// Ambient dimension of the underlying point (`len - 1`).
    pub fn dim(&self) -> usize {
        self.v.len() - 1
    }

    pub fn as_vector(&self) -> &IntVector {
        &self.v
    }

    pub fn into_vector(self) -> IntVector {
        self.v
    }

    /// The denominator entry.
    pub fn last(&self) -> &Int {
        self.v.at(self.v.len() - 1)
    }

    pub fn point(&self) -> RationalPoint {
        let d = self.last();
        RationalPoint::new(RatVector::new(
            (0..self.dim()).map(|i| Rat::new(self.v.at(i).clone(), d.clone())).collect(),
        ))
    }
}

impl std::fmt::Debug for HomogeneousVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "~{:?}", self.v)
    }
}

/// Least common denominator of a rational point; `den(0) = 1`.
///
/// ```
/// use zorbit::ratgeom::{den, RationalPoint};
/// use zorbit::scalar::int;
///
/// let x = RationalPoint::from_strs(&["1/2", "3/4"]).unwrap();
/// assert_eq!(den(&x), int(4));
/// assert_eq!(den(&RationalPoint::origin(3)), int(1));
/// ```
pub fn den(x: &RationalPoint) -> Int {
    x.den()
}

/// The homogeneous correspondent `x̃ = (den(x)·x, den(x))`, primitive with
/// positive last entry by construction.
pub fn homog(x: &RationalPoint) -> HomogeneousVector {
    let d = x.den();
    let dr = Rat::from(d.clone());
    let mut v: Vec<Int> = x.as_vector().iter().map(|c| (c * &dr).to_integer()).collect();
    v.push(d);
    // any common divisor of the entries would divide den(x) into a smaller
    // common denominator, so the lift is automatically primitive
    HomogeneousVector { v: IntVector::new(v) }
}

/// Inverse of [`homog`]: rejects vectors that are not primitive or whose last
/// entry is not positive.
pub fn dehomog(v: &IntVector) -> Result<RationalPoint, GeomError> {
    Ok(HomogeneousVector::new(v.clone())?.point())
}
