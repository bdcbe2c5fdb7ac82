//! Hyperbolicity of real rational curves with respect to codimension-2
//! planes: the exact dividing test, definiteness of `γ(V)`, sampled real
//! sections, the Grassmannian metric, slice probes and LMI export.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::curves::{self, lambda_functions, NormalizeMode, RationalCurveParam};
use crate::error::{Error, Result};
use crate::exterior::{self, complement_sign, plucker_coords, subsets, GammaTensor, IndexSet, PluckerVector};
use crate::linalg::{self, c, CMat, CVec, C64, ZERO};
use crate::ratfunc::{is_dividing, DividingVerdict, Poly, RationalFunction};

/// A projective `(d−2)`-plane given by `d−1` spanning vectors.
#[derive(Debug, Clone)]
pub struct PlaneSpec {
    basis: Vec<CVec>,
    plucker: PluckerVector,
    dual: (CVec, CVec),
}

impl PlaneSpec {
    pub fn new(basis: Vec<CVec>) -> Result<Self> {
        let dim = basis.first().map(|v| v.len()).ok_or_else(|| Error::invalid("empty plane"))?;
        if dim < 3 || basis.len() != dim - 2 || basis.iter().any(|v| v.len() != dim) {
            return Err(Error::invalid(format!("a codimension-2 plane in C^{dim} needs {} vectors", dim.saturating_sub(2))));
        }
        let plucker = plucker_coords(&basis)?;
        let dual = exterior::dual_plucker_pair(&basis)?;
        Ok(PlaneSpec { basis, plucker, dual })
    }

    pub fn from_real(vectors: &[&[f64]]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| linalg::real_vec(v)).collect())
    }

    /// `span{e_i : i ∈ indices}` in `C^{d+1}`.
    pub fn coordinate(d: usize, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i > d) {
            return Err(Error::invalid("coordinate index out of range"));
        }
        Self::new(indices.iter().map(|&i| linalg::unit(d + 1, i)).collect())
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    pub fn plucker(&self) -> &PluckerVector {
        &self.plucker
    }

    pub fn dual_pair(&self) -> (&CVec, &CVec) {
        (&self.dual.0, &self.dual.1)
    }

    pub fn d(&self) -> usize {
        self.basis[0].len() - 1
    }

    pub fn is_real(&self) -> bool {
        self.basis.iter().all(|v| v.iter().all(|z| z.im == 0.0))
    }
}

fn require_real(curve: &RationalCurveParam, plane: &PlaneSpec) -> Result<()> {
    if !curve.is_real() {
        return Err(Error::invalid("curve has non-real coefficients"));
    }
    if !plane.is_real() {
        return Err(Error::invalid("plane is not real"));
    }
    if curve.d() != plane.d() {
        return Err(Error::invalid(format!("curve lives in P^{}, plane in P^{}", curve.d(), plane.d())));
    }
    Ok(())
}

/// `κ_0 = Σ a_i λ_i`, `κ_1 = Σ b_i λ_i` for the dual pair `(a, b)` of `V`.
pub fn kappa_pair(curve: &RationalCurveParam, plane: &PlaneSpec) -> Result<(RationalFunction, RationalFunction)> {
    require_real(curve, plane)?;
    let lambdas = lambda_functions(curve)?;
    let combo = |w: &CVec| {
        let terms: Vec<(C64, &RationalFunction)> = w.iter().copied().zip(&lambdas).filter(|(z, _)| *z != ZERO).collect();
        RationalFunction::linear_combination(&terms)
    };
    Ok((combo(&plane.dual.0)?, combo(&plane.dual.1)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionStats {
    pub samples: usize,
    pub all_real: usize,
    /// Largest `|Im r| / (1 + |r|)` over all roots seen.
    pub max_imag: f64,
}

impl SectionStats {
    pub fn all_real_fraction(&self) -> f64 {
        if self.samples == 0 {
            1.0
        } else {
            self.all_real as f64 / self.samples as f64
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    /// `V ∩ C = ∅`.
    pub disjoint: bool,
    pub dividing: DividingVerdict,
    pub witness: bool,
    pub definite_sign: Option<i8>,
    pub section_stats: Option<SectionStats>,
}

/// Pullbacks `A = Σ a_j μ_j`, `B = Σ b_j μ_j` of the dual pair.
fn pullback_pair(curve: &RationalCurveParam, plane: &PlaneSpec) -> Result<(Poly, Poly)> {
    Ok((curve.pullback(&plane.dual.0)?.real_part(), curve.pullback(&plane.dual.1)?.real_part()))
}

fn is_disjoint(curve: &RationalCurveParam, a: &Poly, b: &Poly) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Ok(false);
    }
    let n = curve.n();
    if a.degree() < Some(n) && b.degree() < Some(n) {
        return Ok(false);
    }
    let (low, high) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
    if low.degree() == Some(0) {
        return Ok(true);
    }
    for r in low.roots()? {
        let rel = high.eval(r).norm() / high.eval_scale(r).max(f64::MIN_POSITIVE);
        if rel <= 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The normative witness test: `V` misses `C` and `B/A` is dividing.
pub fn is_witness_exact(curve: &RationalCurveParam, plane: &PlaneSpec, tol: f64) -> Result<WitnessReport> {
    require_real(curve, plane)?;
    let (a, b) = pullback_pair(curve, plane)?;
    let disjoint = is_disjoint(curve, &a, &b)?;
    let not_dividing = DividingVerdict { is_dividing: false, orientation_sign: None, failure_witness: None, failure_root: None };
    let dividing = if a.is_zero() {
        not_dividing
    } else {
        let ratio = RationalFunction::new(b, a)?.reduce()?;
        if ratio.is_constant() {
            not_dividing
        } else {
            is_dividing(&ratio, tol)?
        }
    };
    let witness = disjoint && dividing.is_dividing;
    Ok(WitnessReport { disjoint, dividing, witness, definite_sign: None, section_stats: None })
}

fn require_hermitian(gamma: &GammaTensor, tol: f64) -> Result<()> {
    for (set, m) in gamma.entries() {
        if !linalg::is_hermitian(m, tol) {
            return Err(Error::NotHermitian(set.to_string()));
        }
    }
    Ok(())
}

fn definiteness(m: &CMat, tol: f64) -> Option<i8> {
    let ev = linalg::hermitian_eigenvalues(m);
    let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let (lo, hi) = (ev[0], ev[ev.len() - 1]);
    if lo > tol * scale {
        Some(1)
    } else if hi < -tol * scale {
        Some(-1)
    } else {
        None
    }
}

/// `+1` when `γ(V) ≻ 0`, `−1` when `γ(V) ≺ 0`.
pub fn is_witness_definite(gamma: &GammaTensor, plane: &PlaneSpec, tol: f64) -> Result<Option<i8>> {
    require_hermitian(gamma, 1e-12)?;
    if !plane.is_real() {
        return Err(Error::invalid("plane is not real"));
    }
    let m = exterior::contract_subspace(gamma, &plane.basis)?;
    Ok(definiteness(&m, tol))
}

/// Real hyperplanes `αa + βb ⊇ V` sampled on the unit circle; counts those
/// whose section is totally real.
pub fn sampled_section_reality(curve: &RationalCurveParam, plane: &PlaneSpec, count: usize, seed: u64, tol: f64) -> Result<SectionStats> {
    require_real(curve, plane)?;
    let (a, b) = pullback_pair(curve, plane)?;
    if !is_disjoint(curve, &a, &b)? {
        return Err(Error::invalid("plane meets the curve"));
    }
    let mut rng = linalg::rng(seed);
    let mut all_real = 0;
    let mut max_imag: f64 = 0.0;
    for _ in 0..count {
        let theta: f64 = rng.gen_range(0.0..2.0 * PI);
        let p = &a.scale(c(theta.cos())) + &b.scale(c(theta.sin()));
        let p = p.trimmed(1e-14);
        let roots = if p.degree().unwrap_or(0) == 0 { Vec::new() } else { p.roots()? };
        let worst = roots.iter().map(|r| r.im.abs() / (1.0 + r.norm())).fold(0.0, f64::max);
        max_imag = max_imag.max(worst);
        if worst <= tol {
            all_real += 1;
        }
    }
    Ok(SectionStats { samples: count, all_real, max_imag })
}

fn projection(basis: &[CVec]) -> Result<CMat> {
    let m = linalg::columns(basis);
    if linalg::rank(&m, 1e-12) < basis.len() {
        return Err(Error::invalid("basis vectors are linearly dependent"));
    }
    let q = m.qr().q();
    Ok(&q * q.adjoint())
}

/// `‖P_V − P_V'‖₂` for the orthogonal projections onto the two spans.
pub fn grassmann_distance(v: &[CVec], w: &[CVec]) -> Result<f64> {
    let dim = v.first().map(|x| x.len());
    if v.is_empty() || v.len() != w.len() || w.iter().chain(v).any(|x| Some(x.len()) != dim) {
        return Err(Error::invalid("planes of different dimension"));
    }
    Ok(linalg::spectral_norm(&(projection(v)? - projection(w)?)))
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceConvexityReport {
    pub trials: usize,
    pub same_sign_pairs: usize,
    pub opposite_sign_pairs: usize,
    /// Pairs where at least one endpoint is not definite.
    pub indefinite_pairs: usize,
    pub violations: usize,
}

fn slice_matrix(gamma: &GammaTensor, v0: &[CVec], w: &CVec) -> Result<CMat> {
    let mut basis = v0.to_vec();
    basis.push(w.clone());
    exterior::contract_subspace(gamma, &basis)
}

fn check_slice_base(gamma: &GammaTensor, v0: &[CVec]) -> Result<()> {
    let want = gamma.d() - gamma.k() - 1;
    if v0.len() != want || v0.iter().any(|v| v.len() != gamma.d() + 1 || v.iter().any(|z| z.im != 0.0)) {
        return Err(Error::invalid(format!("slice base needs {want} real vectors")));
    }
    if !v0.is_empty() && linalg::rank(&linalg::columns(v0), 1e-12) < v0.len() {
        return Err(Error::invalid("slice base is linearly dependent"));
    }
    Ok(())
}

/// For random real `w1, w2` with `γ(V0 + w1)`, `γ(V0 + w2)` definite of the
/// same sign, checks that the midpoint is definite of that sign too.
pub fn slice_convexity_probe(gamma: &GammaTensor, v0: &[CVec], trials: usize, seed: u64, tol: f64) -> Result<SliceConvexityReport> {
    require_hermitian(gamma, 1e-12)?;
    check_slice_base(gamma, v0)?;
    let mut rng = linalg::rng(seed);
    let mut report = SliceConvexityReport { trials, same_sign_pairs: 0, opposite_sign_pairs: 0, indefinite_pairs: 0, violations: 0 };
    let dim = gamma.d() + 1;
    for _ in 0..trials {
        let w1 = linalg::random_real_vec(&mut rng, dim);
        let w2 = linalg::random_real_vec(&mut rng, dim);
        let m1 = slice_matrix(gamma, v0, &w1);
        let m2 = slice_matrix(gamma, v0, &w2);
        let (Ok(m1), Ok(m2)) = (m1, m2) else {
            report.indefinite_pairs += 1;
            continue;
        };
        match (definiteness(&m1, tol), definiteness(&m2, tol)) {
            (Some(s1), Some(s2)) if s1 == s2 => {
                report.same_sign_pairs += 1;
                let mid = slice_matrix(gamma, v0, &((w1 + w2) * c(0.5)))?;
                if definiteness(&mid, tol) != Some(s1) {
                    report.violations += 1;
                }
            }
            (Some(_), Some(_)) => report.opposite_sign_pairs += 1,
            _ => report.indefinite_pairs += 1,
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct PencilScan {
    pub grid: usize,
    pub positive: usize,
    pub negative: usize,
    /// Maximal runs of positive (resp. negative) grid points; one run each
    /// means the definiteness sets are intervals.
    pub positive_runs: usize,
    pub negative_runs: usize,
}

impl PencilScan {
    pub fn has_gaps(&self) -> bool {
        self.positive_runs > 1 || self.negative_runs > 1
    }
}

/// Scans `t ↦ γ(span(V0, w1 + t w2))` at `t = tan θ` on a uniform `θ` grid.
pub fn slice_pencil_scan(gamma: &GammaTensor, v0: &[CVec], w1: &CVec, w2: &CVec, grid: usize, tol: f64) -> Result<PencilScan> {
    require_hermitian(gamma, 1e-12)?;
    check_slice_base(gamma, v0)?;
    let m1 = slice_matrix(gamma, v0, w1)?;
    let m2 = slice_matrix(gamma, v0, w2)?;
    let mut scan = PencilScan { grid, positive: 0, negative: 0, positive_runs: 0, negative_runs: 0 };
    let mut prev: Option<i8> = None;
    for i in 0..grid {
        let theta = PI * ((i as f64 + 0.5) / grid as f64 - 0.5);
        let m = &m1 * c(theta.cos()) + &m2 * c(theta.sin());
        let s = definiteness(&m, tol);
        match s {
            Some(1) => {
                scan.positive += 1;
                if prev != Some(1) {
                    scan.positive_runs += 1;
                }
            }
            Some(_) => {
                scan.negative += 1;
                if prev != Some(-1) {
                    scan.negative_runs += 1;
                }
            }
            None => {}
        }
        prev = s;
    }
    Ok(scan)
}

/// `γ(V) = Σ_J p(V)_J M_J` with `M_J = (−1)^{σ(I)} γ_I`, `J = I^c`.
#[derive(Debug, Clone)]
pub struct SpectrahedronExport {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub terms: Vec<(IndexSet, CMat)>,
}

impl SpectrahedronExport {
    pub fn evaluate(&self, p: &PluckerVector) -> CMat {
        let mut acc = CMat::zeros(self.n, self.n);
        for (j, m) in &self.terms {
            let coeff = p.get(j);
            if coeff != ZERO {
                acc += m * coeff;
            }
        }
        acc
    }
}

pub fn lmi_export(gamma: &GammaTensor) -> Result<SpectrahedronExport> {
    require_hermitian(gamma, 1e-12)?;
    let (d, k, n) = (gamma.d(), gamma.k(), gamma.n());
    let mut terms = Vec::new();
    for i in subsets(d, k + 1) {
        let sign = complement_sign(&i, d)? as f64;
        terms.push((i.complement(d), gamma.entry(&i) * c(sign)));
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SpectrahedronExport { d, k, n, terms })
}

#[derive(Debug, Clone, Serialize)]
pub struct PathReport {
    pub pass: bool,
    pub first_failure: Option<usize>,
    /// Distances between consecutive planes.
    pub steps: Vec<f64>,
}

pub fn witness_path_check(curve: &RationalCurveParam, planes: &[PlaneSpec], tol: f64) -> Result<PathReport> {
    let mut first_failure = None;
    for (i, plane) in planes.iter().enumerate() {
        if !is_witness_exact(curve, plane, tol)?.witness {
            first_failure = Some(i);
            break;
        }
    }
    let steps = planes.windows(2).map(|w| grassmann_distance(w[0].basis(), w[1].basis())).collect::<Result<_>>()?;
    Ok(PathReport { pass: first_failure.is_none(), first_failure, steps })
}

/// Candidate real hyperplanes for a Hermitian construction: `x_0`, then the
/// pencil through `V`.
fn section_candidates(plane: &PlaneSpec, seed: u64) -> Vec<Vec<f64>> {
    let d = plane.d();
    let re = |v: &CVec| v.iter().map(|z| z.re).collect::<Vec<f64>>();
    let (a, b) = plane.dual_pair();
    let mut out = vec![re(&linalg::unit(d + 1, 0)), re(a), re(b)];
    let mut rng = linalg::rng(seed);
    for _ in 0..8 {
        let theta: f64 = rng.gen_range(0.0..2.0 * PI);
        out.push(re(&(a * c(theta.cos()) + b * c(theta.sin()))));
    }
    out
}

/// `γ` built from a real section when one is available.
pub fn hermitian_construction(curve: &RationalCurveParam, plane: &PlaneSpec, seed: u64) -> Result<Option<GammaTensor>> {
    for h in section_candidates(plane, seed) {
        match curves::construct_for_curve(curve, seed, &NormalizeMode::RealSection(h)) {
            Ok(built) => return Ok(Some(built.gamma)),
            Err(Error::SectionNotReal | Error::NormalizationFailure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Exact test plus both cross-checks; disagreement is an error.
pub fn witness_consistency(curve: &RationalCurveParam, plane: &PlaneSpec, count: usize, seed: u64, tol: f64) -> Result<WitnessReport> {
    let mut report = is_witness_exact(curve, plane, tol)?;
    let gamma = hermitian_construction(curve, plane, seed)?;
    report.definite_sign = match &gamma {
        Some(g) => is_witness_definite(g, plane, 1e-9)?,
        None => None,
    };
    if report.disjoint {
        let stats = sampled_section_reality(curve, plane, count, seed, 1e-8)?;
        let all = stats.all_real == stats.samples;
        report.section_stats = Some(stats);
        if report.witness && !all {
            return Err(Error::Inconsistency("witness but a sampled section is not real".into()));
        }
    }
    if report.witness != report.definite_sign.is_some() {
        return Err(Error::Inconsistency(format!(
            "exact verdict {} but definiteness sign {:?}",
            report.witness, report.definite_sign
        )));
    }
    Ok(report)
}
