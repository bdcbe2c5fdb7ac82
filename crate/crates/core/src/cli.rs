//! Command-line front end. Every command prints one JSON document on stdout
//! and exits with 0 (success), 1 (verification failure) or 2 (bad input).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::curves::{self, NormalizeMode};
use crate::detrep::{self, Tolerances};
use crate::error::Error;
use crate::exterior::GammaTensor;
use crate::hyperbolicity::{self, PlaneSpec};
use crate::io::{self, matrix_to_rows, vector_to_row, CurveFile, GammaFile, Number};
use crate::linalg::{self, CVec};

#[derive(Debug, Parser)]
#[command(name = "livsic", version, about = "Livsic-type determinantal representations of rational curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Generic,
    RealSection,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build γ for a curve file via Bezoutians.
    Construct {
        curve: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "generic")]
        mode: Mode,
        /// Real hyperplane for `--mode real-section`, as a JSON list.
        #[arg(long)]
        hyperplane: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a tensor contains a curve and is very reasonable.
    Verify {
        gamma: PathBuf,
        curve: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Decide whether a plane is a hyperbolicity witness for a real curve.
    Witness {
        curve: PathBuf,
        /// Basis of the plane: inline JSON list of vectors or a path to one.
        #[arg(long)]
        plane: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Export a Hermitian tensor as a linear matrix inequality in Plücker coordinates.
    Lmi {
        gamma: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in example tensor.
    Examples {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determinant profile along a seeded pencil of planes.
    Slice {
        gamma: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Degree of a tensor from seeded transversal slices.
    Degree {
        gamma: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
}

/// Exit status plus the JSON document to print.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub output: Value,
}

impl Outcome {
    fn new(code: i32, output: Value) -> Self {
        Outcome { code, output }
    }

    pub fn render(&self) -> String {
        io::to_json(&self.output).expect("JSON values always serialize")
    }
}

struct Failure {
    code: i32,
    error: Error,
}

type Step<T> = std::result::Result<T, Failure>;

fn bad_input(error: Error) -> Failure {
    Failure { code: 2, error }
}

fn failed(error: Error) -> Failure {
    Failure { code: 1, error }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Construct { curve, seed, mode, hyperplane, out } => construct(&curve, seed, mode, hyperplane.as_deref(), out.as_deref()),
        Command::Verify { gamma, curve, seed, samples, tol } => verify(&gamma, &curve, seed, samples, tol),
        Command::Witness { curve, plane, seed, count, tol } => witness(&curve, &plane, seed, count, tol),
        Command::Lmi { gamma, out } => lmi(&gamma, out.as_deref()),
        Command::Examples { name, out } => examples(&name, out.as_deref()),
        Command::Slice { gamma, seed, samples } => slice(&gamma, seed, samples),
        Command::Degree { gamma, seed, trials } => degree(&gamma, seed, trials),
    };
    result.unwrap_or_else(|f| {
        Outcome::new(f.code, json!({ "status": "error", "error_code": f.error.code(), "message": f.error.to_string() }))
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome::new(code, json!({ "status": if code == 0 { "help" } else { "error" }, "message": e.to_string() }))
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn load_gamma(path: &Path) -> Step<GammaTensor> {
    io::read_json::<GammaFile>(path).and_then(|f| f.to_gamma()).map_err(bad_input)
}

fn load_curve(path: &Path) -> Step<curves::RationalCurveParam> {
    io::read_json::<CurveFile>(path).and_then(|f| f.to_curve()).map_err(bad_input)
}

/// Inline JSON when the argument starts with `[`, otherwise a file path.
fn load_json_arg<T: for<'de> serde::Deserialize<'de>>(arg: &str) -> Step<T> {
    if arg.trim_start().starts_with('[') {
        io::parse_json(arg).map_err(bad_input)
    } else {
        io::read_json(Path::new(arg)).map_err(bad_input)
    }
}

fn write_out<T: Serialize>(out: Option<&Path>, value: &T) -> Step<()> {
    match out {
        Some(p) => io::write_json(p, value).map_err(bad_input),
        None => Ok(()),
    }
}

fn construct(path: &Path, seed: u64, mode: Mode, hyperplane: Option<&str>, out: Option<&Path>) -> Step<Outcome> {
    let curve = load_curve(path)?;
    curves::validate_curve(&curve, 16, seed).map_err(bad_input)?;
    let mode = match (mode, hyperplane) {
        (Mode::Generic, None) => NormalizeMode::Generic,
        (Mode::Generic, Some(_)) => return Err(bad_input(Error::invalid("--hyperplane needs --mode real-section"))),
        (Mode::RealSection, None) => return Err(bad_input(Error::invalid("--mode real-section needs --hyperplane"))),
        (Mode::RealSection, Some(h)) => {
            let h: Vec<Number> = load_json_arg(h)?;
            let mut real = Vec::with_capacity(h.len());
            for x in h {
                match x {
                    Number::Real(v) => real.push(v),
                    Number::Complex([re, 0.0]) => real.push(re),
                    Number::Complex(_) => return Err(bad_input(Error::invalid("hyperplane must be real"))),
                }
            }
            NormalizeMode::RealSection(real)
        }
    };
    let built = curves::construct_for_curve(&curve, seed, &mode).map_err(failed)?;
    let file = GammaFile::from_gamma(&built.gamma);
    write_out(out, &file)?;
    let r = &built.report;
    let report = json!({
        "divisor": r.divisor.points().iter().map(|&z| Number::pair(z)).collect::<Vec<_>>(),
        "normalization": matrix_to_rows(&built.normalization.g),
        "containment_residual": r.containment_residual,
        "kernel_relation_residual": r.kernel_relation_residual,
        "vr": r.vr,
    });
    let code = if r.vr { 0 } else { 1 };
    Ok(Outcome::new(code, json!({ "status": status(code), "gamma": file, "report": report })))
}

fn status(code: i32) -> &'static str {
    if code == 0 {
        "ok"
    } else {
        "fail"
    }
}

fn verify(gamma_path: &Path, curve_path: &Path, seed: u64, samples: usize, tol: f64) -> Step<Outcome> {
    let gamma = load_gamma(gamma_path)?;
    let curve = load_curve(curve_path)?;
    if gamma.d() != curve.d() || gamma.k() != 1 {
        return Err(bad_input(Error::invalid(format!(
            "tensor (d = {}, k = {}) does not match a curve in P^{}",
            gamma.d(),
            gamma.k(),
            curve.d()
        ))));
    }
    let containment = curves::containment_check(&curve, &gamma, samples, seed, tol).map_err(bad_input)?;
    let vr = match detrep::is_very_reasonable(&gamma, 8, seed, &Tolerances::default()) {
        Ok(v) => v,
        Err(Error::TransversalityFailure(_) | Error::SingularBasePlane) => false,
        Err(e) => return Err(failed(e)),
    };
    let code = if containment.pass && vr { 0 } else { 1 };
    Ok(Outcome::new(code, json!({ "status": status(code), "containment": to_value(&containment), "very_reasonable": vr })))
}

fn witness(curve_path: &Path, plane: &str, seed: u64, count: usize, tol: f64) -> Step<Outcome> {
    let curve = load_curve(curve_path)?;
    let vectors: Vec<Vec<Number>> = load_json_arg(plane)?;
    let plane = PlaneSpec::new(io::parse_vectors(&vectors)).map_err(bad_input)?;
    if !curve.is_real() || !plane.is_real() {
        return Err(bad_input(Error::invalid("witness test needs a real curve and a real plane")));
    }
    curves::validate_curve(&curve, 16, seed).map_err(bad_input)?;
    let report = hyperbolicity::witness_consistency(&curve, &plane, count, seed, tol).map_err(|e| match e {
        Error::InvalidArgument(_) => bad_input(e),
        other => failed(other),
    })?;
    let code = if report.witness { 0 } else { 1 };
    let mut out = to_value(&report);
    out["status"] = json!(status(code));
    Ok(Outcome::new(code, out))
}

fn lmi(gamma_path: &Path, out: Option<&Path>) -> Step<Outcome> {
    let gamma = load_gamma(gamma_path)?;
    let export = hyperbolicity::lmi_export(&gamma).map_err(bad_input)?;
    let terms: Vec<Value> = export
        .terms
        .iter()
        .map(|(j, m)| json!({ "J": j.as_slice(), "matrix": matrix_to_rows(m) }))
        .collect();
    let doc = json!({ "d": export.d, "k": export.k, "n": export.n, "terms": terms });
    write_out(out, &doc)?;
    Ok(Outcome::new(0, doc))
}

fn examples(name: &str, out: Option<&Path>) -> Step<Outcome> {
    let gamma = curves::builtin_example(name).map_err(bad_input)?;
    let file = GammaFile::from_gamma(&gamma);
    write_out(out, &file)?;
    Ok(Outcome::new(0, to_value(&file)))
}

fn slice(gamma_path: &Path, seed: u64, samples: usize) -> Step<Outcome> {
    let gamma = load_gamma(gamma_path)?;
    let mut rng = linalg::rng(seed);
    let dim = gamma.d() + 1;
    let base = gamma.d() - gamma.k() - 1;
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> CVec {
        CVec::from_iterator(dim, (0..dim).map(|_| linalg::c(rng.gen_range(-1.0..1.0))))
    };
    let v0: Vec<CVec> = (0..base).map(|_| draw(&mut rng)).collect();
    let (w1, w2) = (draw(&mut rng), draw(&mut rng));
    let profile = detrep::schubert_det_profile(&gamma, &v0, &w1, &w2, samples).map_err(failed)?;
    let doc = json!({
        "v0": v0.iter().map(vector_to_row).collect::<Vec<_>>(),
        "w1": vector_to_row(&w1),
        "w2": vector_to_row(&w2),
        "coefficients": profile.poly.coeffs().iter().map(|&z| Number::pair(z)).collect::<Vec<_>>(),
        "degree": profile.poly.degree(),
        "n": gamma.n(),
        "roots_at_infinity": profile.roots_at_infinity,
    });
    Ok(Outcome::new(0, doc))
}

fn degree(gamma_path: &Path, seed: u64, trials: usize) -> Step<Outcome> {
    let gamma = load_gamma(gamma_path)?;
    let tol = Tolerances::default();
    if !detrep::is_nondegenerate(&gamma, trials, seed, &tol) {
        return Ok(Outcome::new(1, json!({ "status": "fail", "nondegenerate": false })));
    }
    let report = detrep::degree(&gamma, trials, seed, &tol).map_err(failed)?;
    let mut out = to_value(&report);
    out["very_reasonable"] = json!(report.degree == gamma.n());
    out["status"] = json!("ok");
    Ok(Outcome::new(0, out))
}
