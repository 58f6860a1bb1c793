//! Simplicial complexes with exact validity checking.
//!
//! A complex here is a finite set of rational simplexes that is closed under
//! taking faces and in which any two members meet exactly in the hull of
//! their common vertices. The second condition is what makes the measure
//! formula a sum over maximal simplexes without double counting; it is
//! checked *exactly* by enumerating the vertices of the intersection polytope
//! of each pair, which is cheap at the dimensions this crate targets.

use std::collections::HashSet;

use num_traits::Zero;

use crate::ratgeom::point::RationalPoint;
use crate::ratgeom::simplex::{homog_rat, RationalSimplex};
use crate::ratgeom::GeomError;
use crate::scalar::Rat;
use crate::zlinalg::{AffineUnimodularMap, RatMatrix, RatVector};

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient: usize,
    simplexes: Vec<RationalSimplex>, // sorted, duplicate-free
}

impl SimplicialComplex {
    /// Validates and normalizes a simplex list into a complex.
    pub fn new(ambient: usize, simplexes: Vec<RationalSimplex>) -> Result<Self, GeomError> {
        for s in &simplexes {
            if s.ambient_dim() != ambient {
                return Err(GeomError::InvalidComplex {
                    reason: format!(
                        "simplex {s:?} lives in R^{}, complex in R^{ambient}",
                        s.ambient_dim()
                    ),
                });
            }
        }
        let mut sims = simplexes;
        sort_simplexes(&mut sims);
        for w in sims.windows(2) {
            if w[0] == w[1] {
                return Err(GeomError::InvalidComplex {
                    reason: format!("duplicate simplex {:?}", w[0]),
                });
            }
        }
        // closed under faces
        for s in &sims {
            for f in s.faces() {
                if sims.binary_search_by(|c| cmp_simplexes(c, &f)).is_err() {
                    return Err(GeomError::InvalidComplex {
                        reason: format!("face {f:?} of {s:?} is missing"),
                    });
                }
            }
        }
        // pairwise intersections are common faces
        for i in 0..sims.len() {
            for j in i + 1..sims.len() {
                check_intersection(&sims[i], &sims[j])?;
            }
        }
        Ok(SimplicialComplex { ambient, simplexes: sims })
    }

    /// The complex generated by `tops`: all faces are added, then the result
    /// is validated as usual.
    pub fn closure_of(ambient: usize, tops: Vec<RationalSimplex>) -> Result<Self, GeomError> {
        let mut seen: HashSet<Vec<RationalPoint>> = HashSet::new();
        let mut sims = Vec::new();
        for t in tops {
            for f in t.faces() {
                if seen.insert(f.vertices().to_vec()) {
                    sims.push(f);
                }
            }
        }
        Self::new(ambient, sims)
    }

    pub fn empty(ambient: usize) -> Self {
        SimplicialComplex { ambient, simplexes: Vec::new() }
    }

    /// Skips validation — for internal use where validity is inherited
    /// (subcomplexes of an already validated complex).
    pub(crate) fn from_valid_parts(ambient: usize, mut simplexes: Vec<RationalSimplex>) -> Self {
        sort_simplexes(&mut simplexes);
        SimplicialComplex { ambient, simplexes }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn simplexes(&self) -> &[RationalSimplex] {
        &self.simplexes
    }

    /// Highest simplex dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplexes.iter().map(|s| s.dim()).max()
    }

    /// The `i`-simplexes that are faces of no other simplex of the complex.
    pub fn maximal_of_dim(&self, i: usize) -> Vec<&RationalSimplex> {
        self.simplexes
            .iter()
            .filter(|s| s.dim() == i)
            .filter(|s| {
                !self
                    .simplexes
                    .iter()
                    .any(|t| t.dim() > s.dim() && s.is_face_of(t))
            })
            .collect()
    }

    /// Image complex under an affine unimodular map (re-validated; such maps
    /// preserve complex validity, so this cannot fail).
    pub fn transform(&self, m: &AffineUnimodularMap) -> SimplicialComplex {
        assert_eq!(m.dim(), self.ambient);
        let sims = self
            .simplexes
            .iter()
            .map(|s| {
                RationalSimplex::new(s.vertices().iter().map(|v| v.apply_affine(m)).collect())
                    .expect("affine unimodular image of a simplex is a simplex")
            })
            .collect();
        Self::new(self.ambient, sims).expect("affine unimodular image of a complex is a complex")
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Complex{:?}", self.simplexes)
    }
}

fn cmp_simplexes(a: &RationalSimplex, b: &RationalSimplex) -> std::cmp::Ordering {
    (a.vertices().len(), a.vertices()).cmp(&(b.vertices().len(), b.vertices()))
}

fn sort_simplexes(sims: &mut [RationalSimplex]) {
    sims.sort_by(cmp_simplexes);
}

/// `S ∩ T` must equal the hull of the common vertices. Both sides are convex,
/// and the hull is trivially contained in the intersection, so it suffices to
/// check every *vertex* of the intersection polytope against the hull.
fn check_intersection(s: &RationalSimplex, t: &RationalSimplex) -> Result<(), GeomError> {
    let common: Vec<&RationalPoint> =
        s.vertices().iter().filter(|v| t.vertices().contains(v)).collect();
    for x in intersection_vertices(s, t) {
        let ok = if common.is_empty() {
            false // intersection should have been empty
        } else {
            in_hull(&x, &common)
        };
        if !ok {
            return Err(GeomError::InvalidComplex {
                reason: format!(
                    "{s:?} and {t:?} meet at {x:?}, outside their common face"
                ),
            });
        }
    }
    Ok(())
}

/// Vertices of `{(u, w) ≥ 0 : Σu_i s_i = Σw_j t_j, Σu = 1, Σw = 1}`, mapped
/// into R^n. The polytope is bounded, so it is the hull of its vertices, and
/// every vertex is a basic solution supported on independent columns.
fn intersection_vertices(s: &RationalSimplex, t: &RationalSimplex) -> Vec<RationalPoint> {
    let n = s.ambient_dim();
    let (ks, kt) = (s.vertices().len(), t.vertices().len());
    let m = ks + kt;
    // columns: lifted s-vertices, then negated t-vertices with the two
    // sum-to-one rows kept separate
    let mut e = RatMatrix::zeros(n + 2, m);
    for (c, v) in s.vertices().iter().enumerate() {
        for i in 0..n {
            e.set(i, c, v.coord(i).clone());
        }
        e.set(n, c, Rat::from(crate::scalar::int(1)));
    }
    for (c, v) in t.vertices().iter().enumerate() {
        for i in 0..n {
            e.set(i, ks + c, -v.coord(i));
        }
        e.set(n + 1, ks + c, Rat::from(crate::scalar::int(1)));
    }
    let mut rhs = RatMatrix::zeros(n + 2, 1);
    rhs.set(n, 0, Rat::from(crate::scalar::int(1)));
    rhs.set(n + 1, 0, Rat::from(crate::scalar::int(1)));

    let rank = e.rank();
    let mut out: Vec<RationalPoint> = Vec::new();
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    for cols in column_subsets(m, rank) {
        let eb = select_cols(&e, &cols);
        if eb.rank() != rank {
            continue;
        }
        let Some(y) = eb.solve_right(&rhs) else {
            continue;
        };
        if (0..y.rows()).any(|i| y.at(i, 0) < &Rat::zero()) {
            continue;
        }
        // basic feasible solution: assemble the barycentric u-part
        let mut u = vec![Rat::zero(); ks];
        for (pos, &c) in cols.iter().enumerate() {
            if c < ks {
                u[c] = y.at(pos, 0).clone();
            }
        }
        let mut x = RatVector::zeros(n);
        for (c, v) in s.vertices().iter().enumerate() {
            x = x.add(&v.as_vector().scale(&u[c]));
        }
        let key = x.as_slice().to_vec();
        if seen.insert(key) {
            out.push(RationalPoint::new(x));
        }
    }
    out
}

fn column_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            cur.push(c);
            rec(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k.min(m), &mut cur, &mut out);
    out
}

fn select_cols(e: &RatMatrix, cols: &[usize]) -> RatMatrix {
    let mut out = RatMatrix::zeros(e.rows(), cols.len());
    for i in 0..e.rows() {
        for (jj, &j) in cols.iter().enumerate() {
            out.set(i, jj, e.at(i, j).clone());
        }
    }
    out
}

/// Unique barycentric solve over an affinely independent vertex set.
fn in_hull(x: &RationalPoint, hull: &[&RationalPoint]) -> bool {
    let n = x.dim();
    let rows: Vec<RatVector> = hull.iter().map(|v| homog_rat(v)).collect();
    let a = RatMatrix::from_row_vectors(&rows, n + 1).transpose();
    let b = RatMatrix::from_row_vectors(&[homog_rat(x)], n + 1).transpose();
    match a.solve_right(&b) {
        None => false,
        Some(sol) => (0..sol.rows()).all(|i| sol.at(i, 0) >= &Rat::zero()),
    }
}
