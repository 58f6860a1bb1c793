//! Input documents: points (rational or symbolic), subspaces, and measure
//! queries, all parsed from JSON files with exact string-encoded values.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use zorbit::point_orbits::{SymbolicBasis, SymbolicConstant, SymbolicPoint};
use zorbit::ratgeom::{
    make_subspace, GeomError, Parallelotope, RationalAffineSubspace, RationalPoint,
    RationalSimplex, SimplicialComplex, SubspaceDesc,
};
use zorbit::scalar::{parse_rat, Int, Rat};
use zorbit::zlinalg::{IntMatrix, IntVector, RatMatrix, RatVector};

use crate::output::{error_doc, Failure};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Malformed(format!("{}: {}", path.display(), e)))
}

fn bad(path: &Path, msg: impl AsRef<str>) -> Failure {
    Failure::Malformed(format!("{}: {}", path.display(), msg.as_ref()))
}

fn parse_rat_or(path: &Path, s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| bad(path, e.to_string()))
}

fn parse_int_or(path: &Path, s: &str) -> Result<Int, Failure> {
    s.trim()
        .parse::<Int>()
        .map_err(|_| bad(path, format!("not an integer: {s:?}")))
}

// ---------------------------------------------------------------------------
// points

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    #[serde(default)]
    basis: Vec<BasisEntry>,
    coords: Vec<CoordEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    label: String,
    approx_lo: String,
    approx_hi: String,
    /// Optional polynomial (constant coefficient first) of which the
    /// constant is the unique root inside the enclosure; providing it lets
    /// certification refine the enclosure on demand.
    #[serde(default)]
    root_of: Option<Vec<String>>,
}

/// A coordinate is either a plain rational or its row of coefficients over
/// the basis (unit first).
#[derive(Deserialize)]
#[serde(untagged)]
enum CoordEntry {
    Scalar(String),
    Row(Vec<String>),
}

fn sign_at(poly: &[Rat], x: &Rat) -> i8 {
    let mut v = Rat::new(0.into(), 1.into());
    for c in poly.iter().rev() {
        v = v * x + c;
    }
    match v.cmp(&Rat::new(0.into(), 1.into())) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Reads a point file. The symbolic basis constructor enforces its
/// invariants with panics, so everything it would reject is checked here
/// first and reported as malformed input instead.
pub fn read_point(path: &Path) -> Result<SymbolicPoint, Failure> {
    let file: PointFile = read_json(path)?;
    let mut labels: Vec<String> = Vec::new();
    let mut constants = Vec::with_capacity(file.basis.len());
    for entry in &file.basis {
        if entry.label == "1" || entry.label.is_empty() || labels.contains(&entry.label) {
            return Err(bad(path, format!("basis label {:?} is reserved, empty, or repeated", entry.label)));
        }
        labels.push(entry.label.clone());
        let lo = parse_rat_or(path, &entry.approx_lo)?;
        let hi = parse_rat_or(path, &entry.approx_hi)?;
        if lo > hi {
            return Err(bad(path, format!("empty enclosure for {:?}", entry.label)));
        }
        let constant = match &entry.root_of {
            None => SymbolicConstant::opaque(&entry.label, lo, hi),
            Some(coeffs) => {
                let poly: Vec<Rat> = coeffs
                    .iter()
                    .map(|c| parse_rat_or(path, c))
                    .collect::<Result<_, _>>()?;
                if poly.len() < 2 || poly.last().unwrap() == &Rat::new(0.into(), 1.into()) {
                    return Err(bad(path, format!("root_of for {:?} must be a nonconstant polynomial", entry.label)));
                }
                let (slo, shi) = (sign_at(&poly, &lo), sign_at(&poly, &hi));
                if slo != 0 && shi != 0 && slo == shi {
                    return Err(bad(path, format!("enclosure for {:?} does not bracket a root of root_of", entry.label)));
                }
                SymbolicConstant::root(&entry.label, poly, lo, hi)
            }
        };
        constants.push(constant);
    }
    let width = constants.len() + 1;
    if file.coords.is_empty() {
        return Err(bad(path, "coords must not be empty"));
    }
    let mut rows = Vec::with_capacity(file.coords.len());
    for (i, entry) in file.coords.iter().enumerate() {
        let row = match entry {
            CoordEntry::Scalar(s) => {
                let mut row = vec![Rat::new(0.into(), 1.into()); width];
                row[0] = parse_rat_or(path, s)?;
                row
            }
            CoordEntry::Row(cells) => {
                if cells.len() != width {
                    return Err(bad(
                        path,
                        format!(
                            "coordinate {i} has {} coefficients, expected {width} (unit first, then the basis labels)",
                            cells.len()
                        ),
                    ));
                }
                cells.iter().map(|c| parse_rat_or(path, c)).collect::<Result<_, _>>()?
            }
        };
        rows.push(RatVector::new(row));
    }
    let basis = SymbolicBasis::new(constants);
    Ok(SymbolicPoint::new(basis, RatMatrix::from_row_vectors(&rows, width)))
}

// ---------------------------------------------------------------------------
// subspaces

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceFile {
    #[serde(default)]
    generators: Option<Vec<Vec<String>>>,
    #[serde(default)]
    equations: Option<EquationsFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationsFile {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
}

pub fn geom_reason(e: &GeomError) -> &'static str {
    match e {
        GeomError::EmptySubspace => "empty-subspace",
        GeomError::DegenerateSimplex => "degenerate-simplex",
        GeomError::InvalidComplex { .. } => "invalid-complex",
        GeomError::InvalidHomogeneous { .. } => "invalid-homogeneous",
        GeomError::InvalidLattice { .. } => "invalid-lattice",
    }
}

fn parse_point(path: &Path, coords: &[String]) -> Result<RationalPoint, Failure> {
    let vals: Vec<Rat> =
        coords.iter().map(|c| parse_rat_or(path, c)).collect::<Result<_, _>>()?;
    Ok(RationalPoint::new(RatVector::new(vals)))
}

pub fn read_subspace(path: &Path) -> Result<RationalAffineSubspace, Failure> {
    let file: SubspaceFile = read_json(path)?;
    let desc = match (file.generators, file.equations) {
        (Some(gens), None) => {
            expect_rect(path, &gens, "generators")?;
            let pts = gens
                .iter()
                .map(|row| parse_point(path, row))
                .collect::<Result<Vec<_>, _>>()?;
            SubspaceDesc::Generators(pts)
        }
        (None, Some(eqs)) => {
            let n = expect_rect(path, &eqs.a, "equations.A")?;
            if eqs.b.len() != eqs.a.len() {
                return Err(bad(path, "equations.b must have one entry per row of A"));
            }
            let mut rows = Vec::with_capacity(eqs.a.len());
            for row in &eqs.a {
                let vals: Vec<Int> =
                    row.iter().map(|c| parse_int_or(path, c)).collect::<Result<_, _>>()?;
                rows.push(IntVector::new(vals));
            }
            let b: Vec<Int> =
                eqs.b.iter().map(|c| parse_int_or(path, c)).collect::<Result<_, _>>()?;
            SubspaceDesc::Equations {
                a: IntMatrix::from_row_vectors(&rows, n),
                b: IntVector::new(b),
            }
        }
        _ => {
            return Err(bad(path, "provide exactly one of \"generators\" or \"equations\""));
        }
    };
    make_subspace(&desc)
        .map_err(|e| Failure::Domain(error_doc(geom_reason(&e), &e.to_string())))
}

/// All rows nonempty and of one common width; returns the width.
fn expect_rect(path: &Path, rows: &[Vec<String>], what: &str) -> Result<usize, Failure> {
    let Some(first) = rows.first() else {
        return Err(bad(path, format!("{what} must not be empty")));
    };
    if first.is_empty() {
        return Err(bad(path, format!("{what} rows must not be empty")));
    }
    if rows.iter().any(|r| r.len() != first.len()) {
        return Err(bad(path, format!("{what} rows must all have the same length")));
    }
    Ok(first.len())
}

// ---------------------------------------------------------------------------
// measures

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum MeasureFile {
    Segment { a: Vec<String>, b: Vec<String> },
    Parallelotope { generators: Vec<Vec<String>> },
    Complex { ambient: usize, simplexes: Vec<Vec<Vec<String>>> },
}

pub enum MeasureInput {
    Segment { a: RationalPoint, b: RationalPoint },
    Parallelotope(Parallelotope),
    Complex(SimplicialComplex),
}

impl MeasureInput {
    pub fn kind(&self) -> &'static str {
        match self {
            MeasureInput::Segment { .. } => "segment",
            MeasureInput::Parallelotope(_) => "parallelotope",
            MeasureInput::Complex(_) => "complex",
        }
    }

    /// The index `i` of `λ_i` to evaluate when none is requested.
    pub fn default_index(&self) -> usize {
        match self {
            MeasureInput::Segment { .. } => 1,
            MeasureInput::Parallelotope(p) => p.generators().len(),
            MeasureInput::Complex(c) => c.dim().unwrap_or(0),
        }
    }
}

pub fn read_measure(path: &Path) -> Result<MeasureInput, Failure> {
    let file: MeasureFile = read_json(path)?;
    match file {
        MeasureFile::Segment { a, b } => {
            if a.is_empty() || a.len() != b.len() {
                return Err(bad(path, "segment endpoints must be nonempty points of equal dimension"));
            }
            Ok(MeasureInput::Segment { a: parse_point(path, &a)?, b: parse_point(path, &b)? })
        }
        MeasureFile::Parallelotope { generators } => {
            expect_rect(path, &generators, "generators")?;
            let pts = generators
                .iter()
                .map(|row| parse_point(path, row))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MeasureInput::Parallelotope(Parallelotope::new(pts)))
        }
        MeasureFile::Complex { ambient, simplexes } => {
            if ambient == 0 {
                return Err(bad(path, "ambient dimension must be positive"));
            }
            let mut sims = Vec::with_capacity(simplexes.len());
            for verts in &simplexes {
                if verts.iter().any(|v| v.len() != ambient) {
                    return Err(bad(path, "every vertex must have exactly `ambient` coordinates"));
                }
                let pts = verts
                    .iter()
                    .map(|row| parse_point(path, row))
                    .collect::<Result<Vec<_>, _>>()?;
                let s = RationalSimplex::new(pts)
                    .map_err(|e| Failure::Domain(error_doc(geom_reason(&e), &e.to_string())))?;
                sims.push(s);
            }
            // listing only the top cells suffices; faces are closed over
            SimplicialComplex::closure_of(ambient, sims)
                .map(MeasureInput::Complex)
                .map_err(|e| Failure::Domain(error_doc(geom_reason(&e), &e.to_string())))
        }
    }
}

// ---------------------------------------------------------------------------
// inline flag values

/// `--target`: comma-separated rational coordinates.
pub fn parse_target(s: &str) -> Result<RationalPoint, Failure> {
    let vals: Vec<Rat> = s
        .split(',')
        .map(|c| parse_rat(c).map_err(|e| Failure::Malformed(format!("--target: {e}"))))
        .collect::<Result<_, _>>()?;
    if vals.is_empty() {
        return Err(Failure::Malformed("--target must list at least one coordinate".into()));
    }
    Ok(RationalPoint::new(RatVector::new(vals)))
}

/// `--eps`: a positive rational.
pub fn parse_eps(s: &str) -> Result<Rat, Failure> {
    let eps = parse_rat(s).map_err(|e| Failure::Malformed(format!("--eps: {e}")))?;
    if eps <= Rat::new(0.into(), 1.into()) {
        return Err(Failure::Malformed("--eps must be positive".into()));
    }
    Ok(eps)
}
