//! `zorbit` — exact JSON certificates for unimodular orbit questions.
//!
//! Every subcommand reads exact rational data, computes with no floating
//! point anywhere, and prints a single JSON document. Exit code 0 means the
//! question had a positive answer; 1 means a well-posed question resolved
//! negatively (not equivalent, not dense, no such measure); 2 means the
//! input could not be understood.

mod input;
mod output;

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use zorbit::affine_orbits::{d_from_v, subspace_invariant, witness_subspace, AffineError};
use zorbit::measure::{lambda_complex, lambda_parallelotope, lambda_segment, MeasureError};
use zorbit::point_orbits::{
    approx_orbit, equivalent_points, h_invariant, is_dense, witness_point, Density,
    PointError,
};
use zorbit::zlinalg::random_unimodular;

use input::{parse_eps, parse_target, read_measure, read_point, read_subspace, MeasureInput};
use output::{
    error_doc, int_json, int_matrix_json, int_vector_json, rat_approx, rat_json,
    rat_matrix_json, rat_vector_json, Failure,
};

#[derive(Parser)]
#[command(
    name = "zorbit",
    version,
    about = "Classify orbits of points and rational affine subspaces under integer matrices of determinant ±1, with exact JSON certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The subgroup of R generated by a point's coordinates
    PointInvariant {
        /// Point files (JSON)
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Fan out over the input files with this many threads
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
    },
    /// Whether two points lie on the same orbit, witness matrix included
    PointEquiv {
        x: PathBuf,
        y: PathBuf,
    },
    /// Whether a point's orbit is dense, with a certificate either way
    PointDense {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
    },
    /// A matrix driving a dense orbit into an eps-ball around a target
    DenseApprox {
        x: PathBuf,
        /// Target point as comma-separated rationals, e.g. "355/113,1/7"
        #[arg(long)]
        target: String,
        /// Radius of the ball around the target, e.g. "1/1000"
        #[arg(long)]
        eps: String,
    },
    /// The (dim, V, d) invariant of a rational affine subspace
    SubspaceInvariant {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Add a lossy decimal rendering of V
        #[arg(long)]
        approx: bool,
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
    },
    /// Whether two subspaces lie on the same orbit, witness matrix included
    SubspaceEquiv {
        f: PathBuf,
        g: PathBuf,
    },
    /// The lattice measure λ_i of a segment, parallelotope, or complex
    Measure {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Which dimensional part to evaluate (defaults to the natural one)
        #[arg(long)]
        index: Option<usize>,
        /// Add a lossy decimal rendering of the measure
        #[arg(long)]
        approx: bool,
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
    },
    /// A reproducible pseudorandom matrix with determinant ±1
    RandomUnimodular {
        #[arg(long)]
        ambient_dim: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let (doc, code) = dispatch(cli.command);
    println!("{doc}");
    std::process::exit(code);
}

fn dispatch(cmd: Command) -> (Value, i32) {
    match cmd {
        Command::PointInvariant { files, jobs } => batch(&files, jobs, |p| {
            let x = read_point(p)?;
            let inv = h_invariant(&x);
            Ok(json!({
                "basis": x.basis().labels(),
                "rank": inv.rank(),
                "generators": rat_matrix_json(inv.generators()),
            }))
        }),
        Command::PointEquiv { x, y } => finish(point_equiv(&x, &y)),
        Command::PointDense { files, jobs } => batch(&files, jobs, |p| point_dense(p)),
        Command::DenseApprox { x, target, eps } => finish(dense_approx(&x, &target, &eps)),
        Command::SubspaceInvariant { files, approx, jobs } => batch(&files, jobs, move |p| {
            let f = read_subspace(p)?;
            let inv = subspace_invariant(&f);
            let d = d_from_v(inv.dim(), inv.volume());
            let mut doc = json!({
                "dim": inv.dim(),
                "V": rat_json(inv.volume()),
                "d": int_json(&d),
            });
            if approx {
                doc["V_approx"] = json!(rat_approx(inv.volume()));
            }
            Ok(doc)
        }),
        Command::SubspaceEquiv { f, g } => finish(subspace_equiv(&f, &g)),
        Command::Measure { files, index, approx, jobs } => {
            batch(&files, jobs, move |p| measure_one(p, index, approx))
        }
        Command::RandomUnimodular { ambient_dim, seed } => {
            finish(random_matrix(ambient_dim, seed))
        }
    }
}

fn finish(r: Result<Value, Failure>) -> (Value, i32) {
    match r {
        Ok(doc) => (doc, 0),
        Err(Failure::Domain(doc)) => (doc, 1),
        Err(Failure::Malformed(msg)) => (error_doc("malformed-input", &msg), 2),
    }
}

/// Runs `worker` over the files — in input order in the output, fanned out
/// over threads when `--jobs` asks for it. A single file prints its document
/// bare; several print an array. The exit code is the worst one seen.
fn batch<F>(files: &[PathBuf], jobs: Option<NonZeroUsize>, worker: F) -> (Value, i32)
where
    F: Fn(&Path) -> Result<Value, Failure> + Sync,
{
    if files.len() == 1 {
        return finish(worker(&files[0]));
    }
    let threads = jobs.map_or(1, NonZeroUsize::get).min(files.len());
    let slots: Vec<OnceLock<(Value, i32)>> = files.iter().map(|_| OnceLock::new()).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= files.len() {
                    break;
                }
                let out = finish(worker(&files[i]));
                slots[i].set(out).expect("each slot is claimed by one worker");
            });
        }
    });
    let mut docs = Vec::with_capacity(files.len());
    let mut code = 0;
    for slot in slots {
        let (doc, c) = slot.into_inner().expect("every slot was filled");
        code = code.max(c);
        docs.push(doc);
    }
    (Value::Array(docs), code)
}

fn point_equiv(xp: &Path, yp: &Path) -> Result<Value, Failure> {
    let x = read_point(xp)?;
    let y = read_point(yp)?;
    if x.dim() != y.dim() {
        return Err(Failure::Malformed(format!(
            "points have different ambient dimensions ({} vs {})",
            x.dim(),
            y.dim()
        )));
    }
    match equivalent_points(&x, &y) {
        Ok(true) => {
            let gamma = witness_point(&x, &y, false).map_err(point_failure)?;
            Ok(json!({ "equivalent": true, "witness": int_matrix_json(gamma.mat()) }))
        }
        Ok(false) => Err(Failure::Domain(json!({ "equivalent": false }))),
        Err(e) => Err(point_failure(e)),
    }
}

fn point_dense(p: &Path) -> Result<Value, Failure> {
    let x = read_point(p)?;
    match is_dense(&x) {
        Density::Dense { generators: (g0, g1) } => Ok(json!({
            "dense": true,
            "generators": [g0.to_string(), g1.to_string()],
        })),
        Density::Origin => Err(Failure::Domain(json!({ "dense": false, "origin": true }))),
        Density::Halfline { p, xi } => Err(Failure::Domain(json!({
            "dense": false,
            "p": int_vector_json(&p),
            "xi": xi.to_string(),
        }))),
    }
}

fn dense_approx(xp: &Path, target: &str, eps: &str) -> Result<Value, Failure> {
    let x = read_point(xp)?;
    let z = parse_target(target)?;
    let eps = parse_eps(eps)?;
    if z.dim() != x.dim() {
        return Err(Failure::Malformed(format!(
            "--target has {} coordinates but the point lives in R^{}",
            z.dim(),
            x.dim()
        )));
    }
    let gamma = approx_orbit(&x, &z, &eps).map_err(point_failure)?;
    Ok(json!({
        "gamma": int_matrix_json(gamma.mat()),
        "det": gamma.det(),
        "target": rat_vector_json(z.as_vector()),
        "eps": rat_json(&eps),
    }))
}

fn subspace_equiv(fp: &Path, gp: &Path) -> Result<Value, Failure> {
    let f = read_subspace(fp)?;
    let g = read_subspace(gp)?;
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Failure::Malformed(format!(
            "subspaces have different ambient dimensions ({} vs {})",
            f.ambient_dim(),
            g.ambient_dim()
        )));
    }
    match witness_subspace(&f, &g) {
        Ok(gamma) => {
            Ok(json!({ "equivalent": true, "witness": int_matrix_json(gamma.mat()) }))
        }
        Err(AffineError::NotEquivalent) => {
            Err(Failure::Domain(json!({ "equivalent": false })))
        }
        Err(e) => Err(Failure::Domain(error_doc(affine_reason(&e), &e.to_string()))),
    }
}

fn measure_one(p: &Path, index: Option<usize>, approx: bool) -> Result<Value, Failure> {
    let input = read_measure(p)?;
    let i = index.unwrap_or_else(|| input.default_index());
    let lambda = match &input {
        MeasureInput::Segment { a, b } => {
            if i != 1 {
                return Err(Failure::Malformed(
                    "a segment only carries the 1-dimensional measure".into(),
                ));
            }
            lambda_segment(a, b)
        }
        MeasureInput::Parallelotope(par) => {
            lambda_parallelotope(par, i).map_err(measure_failure)?
        }
        MeasureInput::Complex(c) => lambda_complex(c, i).map_err(measure_failure)?,
    };
    let mut doc = json!({ "kind": input.kind(), "index": i, "lambda": rat_json(&lambda) });
    if approx {
        doc["lambda_approx"] = json!(rat_approx(&lambda));
    }
    Ok(doc)
}

fn random_matrix(n: usize, seed: u64) -> Result<Value, Failure> {
    if n == 0 {
        return Err(Failure::Malformed("--ambient-dim must be positive".into()));
    }
    let gamma = random_unimodular(n, RANDOM_STEPS, seed);
    Ok(json!({ "matrix": int_matrix_json(gamma.mat()), "det": gamma.det() }))
}

/// Mixing length for `random-unimodular`; enough that entries move well away
/// from ±1 without exploding in magnitude.
const RANDOM_STEPS: usize = 48;

fn point_failure(e: PointError) -> Failure {
    let reason = match &e {
        PointError::BasisMismatch => "basis-mismatch",
        PointError::NotEquivalent => "not-equivalent",
        PointError::CannotFixSign => "cannot-fix-sign",
        PointError::NotDense => "not-dense",
        PointError::PrecisionExhausted => "precision-exhausted",
    };
    Failure::Domain(error_doc(reason, &e.to_string()))
}

fn measure_failure(e: MeasureError) -> Failure {
    let reason = match &e {
        MeasureError::NotRegular { .. } => "not-regular",
        MeasureError::UnsupportedDimension { .. } => "unsupported-dimension",
    };
    Failure::Domain(error_doc(reason, &e.to_string()))
}

fn affine_reason(e: &AffineError) -> &'static str {
    match e {
        AffineError::DenominatorMismatch { .. } => "denominator-mismatch",
        AffineError::NotRegular { .. } => "not-regular",
        AffineError::NotEquivalent => "not-equivalent",
    }
}
