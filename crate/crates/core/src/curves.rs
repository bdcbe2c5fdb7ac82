//! Rational curves `t ↦ (μ_0(t) : … : μ_d(t))`, their coordinate
//! normalization, and the Bezoutian construction `γ_ij = B_D(λ_i, λ_j)`
//! with `λ_j = μ_j/μ_0` and `D` the zeros of `μ_0`.

use rand::Rng;
use serde::Serialize;

use crate::bezoutian::{self, Divisor, Side};
use crate::detrep::{self, Tolerances};
use crate::error::{Error, Result};
use crate::exterior::{self, gamma_from_entries, GammaTensor};
use crate::linalg::{self, c, CMat, CVec, C64, ONE, ZERO};
use crate::ratfunc::{is_root, Poly, RationalFunction};

const NORMALIZE_ATTEMPTS: usize = 64;
const ROOT_SEPARATION: f64 = 1e-6;
const REAL_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalCurveParam {
    d: usize,
    n: usize,
    polys: Vec<Poly>,
    real: bool,
}

impl RationalCurveParam {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::invalid("a curve needs at least two coordinates"));
        }
        if polys.iter().all(|p| p.is_zero()) {
            return Err(Error::invalid("all coordinates vanish"));
        }
        let n = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let real = polys.iter().all(|p| p.coeffs().iter().all(|z| z.im == 0.0));
        Ok(RationalCurveParam { d: polys.len() - 1, n, polys, real })
    }

    /// Real coefficient lists, ascending.
    pub fn from_real(coeffs: &[&[f64]]) -> Result<Self> {
        Self::new(coeffs.iter().map(|c| Poly::from_real(c)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Degree of the parametrization, `max deg μ_j`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn point(&self, t: C64) -> CVec {
        CVec::from_iterator(self.d + 1, self.polys.iter().map(|p| p.eval(t)))
    }

    /// `(d+1) × (n+1)` coefficient matrix.
    pub fn coefficient_matrix(&self) -> CMat {
        CMat::from_fn(self.d + 1, self.n + 1, |i, j| self.polys[i].coeff(j))
    }

    /// `μ ↦ gμ`.
    pub fn transform(&self, g: &CMat) -> Result<Self> {
        if g.shape() != (self.d + 1, self.d + 1) {
            return Err(Error::invalid(format!("transform must be {0}x{0}", self.d + 1)));
        }
        let polys = (0..=self.d)
            .map(|i| {
                (0..=self.d).fold(Poly::zero(), |acc, j| {
                    if g[(i, j)] == ZERO {
                        acc
                    } else {
                        &acc + &self.polys[j].scale(g[(i, j)])
                    }
                })
            })
            .collect();
        Self::new(polys)
    }

    /// The pullback `Σ h_j μ_j` of a hyperplane.
    pub fn pullback(&self, h: &CVec) -> Result<Poly> {
        if h.len() != self.d + 1 {
            return Err(Error::invalid("hyperplane has the wrong length"));
        }
        Ok(self.polys.iter().zip(h.iter()).fold(Poly::zero(), |acc, (p, &hj)| &acc + &p.scale(hj)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveDiagnostics {
    pub d: usize,
    pub n: usize,
    pub rank: usize,
    pub samples: usize,
    /// Sampled pairs `s ≠ t` with proportional images.
    pub collisions: usize,
}

fn common_root(polys: &[Poly]) -> Result<Option<C64>> {
    let nonzero: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some(pivot) = nonzero.iter().min_by_key(|p| p.degree()) else {
        return Ok(None);
    };
    if pivot.degree() == Some(0) {
        return Ok(None);
    }
    Ok(pivot.roots()?.into_iter().find(|&r| nonzero.iter().all(|p| is_root(p, r))))
}

/// Base-point freeness, nondegeneracy and sampled injectivity.
pub fn validate_curve(c: &RationalCurveParam, samples: usize, seed: u64) -> Result<CurveDiagnostics> {
    if let Some(r) = common_root(&c.polys)? {
        return Err(Error::BasePoint(format!("{r}")));
    }
    let rank = linalg::rank(&c.coefficient_matrix(), 1e-12);
    if rank < c.d + 1 {
        return Err(Error::DegenerateSpan { rank, expected: c.d + 1 });
    }
    let mut rng = linalg::rng(seed);
    let mut collisions = 0;
    for _ in 0..samples {
        let s = linalg::random_complex(&mut rng) * 2.0;
        let t = linalg::random_complex(&mut rng) * 2.0;
        if (s - t).norm() < 1e-3 {
            continue;
        }
        let pair = linalg::columns(&[c.point(s).normalize(), c.point(t).normalize()]);
        if linalg::rank(&pair, 1e-9) < 2 {
            collisions += 1;
        }
    }
    Ok(CurveDiagnostics { d: c.d, n: c.n, rank, samples, collisions })
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormalizeMode {
    Generic,
    /// Use the given real hyperplane as the new `x_0`; its section must be
    /// totally real.
    RealSection(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct NormalizationResult {
    pub g: CMat,
    pub curve: RationalCurveParam,
    pub divisor: Divisor,
}

/// Roots of `μ_0` if the curve is normalized, otherwise the reason it is not.
fn normalized_divisor(c: &RationalCurveParam) -> std::result::Result<Vec<C64>, String> {
    let mu0 = &c.polys[0];
    let scale = c.polys.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if mu0.degree() != Some(c.n) || c.n == 0 || mu0.leading().norm() <= 1e-10 * scale {
        return Err(format!("deg μ_0 = {:?}, expected {}", mu0.degree(), c.n));
    }
    let roots = mu0.roots().map_err(|e| e.to_string())?;
    let spread = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for (i, p) in roots.iter().enumerate() {
        for q in &roots[i + 1..] {
            if (p - q).norm() <= ROOT_SEPARATION * spread {
                return Err(format!("μ_0 has a repeated root near {p}"));
            }
        }
    }
    let mu1 = &c.polys[1];
    if let Some(r) = roots.iter().find(|&&r| is_root(mu1, r)) {
        return Err(format!("μ_0 and μ_1 share the root {r}"));
    }
    Ok(roots)
}

fn accept(c: &RationalCurveParam, g: CMat) -> Option<NormalizationResult> {
    let curve = c.transform(&g).ok()?;
    let roots = normalized_divisor(&curve).ok()?;
    let divisor = Divisor::new(roots).ok()?;
    Some(NormalizationResult { g, curve, divisor })
}

pub fn normalize_coordinates(curve: &RationalCurveParam, seed: u64, mode: &NormalizeMode) -> Result<NormalizationResult> {
    let dim = curve.d + 1;
    let mut rng = linalg::rng(seed);
    match mode {
        NormalizeMode::Generic => {
            if let Some(r) = accept(curve, CMat::identity(dim, dim)) {
                return Ok(r);
            }
            for _ in 0..NORMALIZE_ATTEMPTS {
                let g = CMat::from_fn(dim, dim, |_, _| c(rng.gen_range(-1.0..1.0)));
                if linalg::rank(&g, 1e-8) < dim {
                    continue;
                }
                if let Some(r) = accept(curve, g) {
                    return Ok(r);
                }
            }
            Err(Error::NormalizationFailure(NORMALIZE_ATTEMPTS + 1))
        }
        NormalizeMode::RealSection(h) => {
            if h.len() != dim || h.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid("hyperplane has the wrong length"));
            }
            let pivot = (0..dim)
                .max_by(|&i, &j| h[i].abs().partial_cmp(&h[j].abs()).unwrap())
                .filter(|&i| h[i] != 0.0)
                .ok_or_else(|| Error::invalid("zero hyperplane"))?;
            let mu0 = curve.pullback(&linalg::real_vec(h))?;
            if mu0.degree() != Some(curve.n) {
                return Err(Error::NormalizationFailure(1));
            }
            for r in mu0.roots()? {
                if r.im.abs() > REAL_ROOT_TOL * (1.0 + r.norm()) {
                    return Err(Error::SectionNotReal);
                }
            }
            let others: Vec<usize> = (0..dim).filter(|&j| j != pivot).collect();
            let mut g = CMat::zeros(dim, dim);
            for j in 0..dim {
                g[(0, j)] = c(h[j]);
            }
            for (row, &j) in others.iter().enumerate() {
                g[(row + 1, j)] = ONE;
            }
            for attempt in 0..=NORMALIZE_ATTEMPTS {
                if attempt > 0 {
                    // mix the remaining rows into the second one
                    for &j in &others {
                        g[(1, j)] = c(rng.gen_range(-1.0..1.0));
                    }
                    if linalg::rank(&g, 1e-8) < dim {
                        continue;
                    }
                }
                if let Some(mut r) = accept(curve, g.clone()) {
                    let cleaned: Vec<C64> = r.divisor.points().iter().map(|z| c(z.re)).collect();
                    r.divisor = Divisor::new(cleaned)?;
                    return Ok(r);
                }
            }
            Err(Error::NormalizationFailure(NORMALIZE_ATTEMPTS + 1))
        }
    }
}

/// `λ_j = μ_j / μ_0`, reduced; `λ_0 = 1`.
pub fn lambda_functions(c: &RationalCurveParam) -> Result<Vec<RationalFunction>> {
    normalized_divisor(c).map_err(Error::NotNormalized)?;
    let mu0 = &c.polys[0];
    let mut out = vec![RationalFunction::constant(ONE)];
    for p in &c.polys[1..] {
        out.push(RationalFunction::new(p.clone(), mu0.clone())?.reduce()?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub gamma: GammaTensor,
    pub divisor: Divisor,
    pub containment_residual: f64,
    /// `max ‖(λ_j(t)γ_0i − λ_i(t)γ_0j + γ_ij) u_right(t)‖` over `1 ≤ i < j`, relative.
    pub kernel_relation_residual: f64,
    pub vr: bool,
}

const CONSTRUCT_SAMPLES: usize = 50;

/// `γ_ij = B_D(λ_i, λ_j)` for a normalized curve.
pub fn construct_gamma(c: &RationalCurveParam, seed: u64) -> Result<ConstructionReport> {
    let divisor = Divisor::new(normalized_divisor(c).map_err(Error::NotNormalized)?)?;
    let lambdas = lambda_functions(c)?;
    let mut entries = Vec::new();
    for i in 0..=c.d {
        for j in i + 1..=c.d {
            let b = bezoutian::bezout_matrix(&lambdas[i], &lambdas[j], &divisor)?;
            entries.push((vec![i, j], b.matrix));
        }
    }
    let gamma = gamma_from_entries(c.d, 1, c.n, entries)?;
    let containment = containment_check(c, &gamma, CONSTRUCT_SAMPLES, seed, 1e-8)?;
    let kernel_relation_residual = kernel_relation_residual(&lambdas, &gamma, &divisor, CONSTRUCT_SAMPLES, seed)?;
    let tol = Tolerances::default();
    let vr = detrep::is_very_reasonable(&gamma, 8, seed, &tol)?;
    Ok(ConstructionReport { gamma, divisor, containment_residual: containment.max_residual, kernel_relation_residual, vr })
}

fn sample_parameter(rng: &mut impl Rng, i: usize) -> C64 {
    if i.is_multiple_of(2) {
        c(rng.gen_range(-2.0..2.0))
    } else {
        linalg::random_complex(rng) * 2.0
    }
}

/// Sampled parameter avoiding the divisor.
fn sample_off_divisor(rng: &mut impl Rng, i: usize, divisor: &Divisor) -> C64 {
    loop {
        let t = sample_parameter(rng, i);
        if divisor.points().iter().all(|p| (t - p).norm() > 1e-3) {
            return t;
        }
    }
}

fn kernel_relation_residual(
    lambdas: &[RationalFunction],
    gamma: &GammaTensor,
    divisor: &Divisor,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = linalg::rng(seed ^ 0x6b65_726e);
    let scale = gamma.scale().max(f64::MIN_POSITIVE);
    let d = gamma.d();
    let mut worst: f64 = 0.0;
    for s in 0..samples {
        let t = sample_off_divisor(&mut rng, s, divisor);
        let u = bezoutian::u_vector(divisor, t, Side::Right)?.entries;
        let un = u.norm();
        let values: Vec<C64> = lambdas.iter().map(|l| l.value(t)).collect::<Result<_>>()?;
        for i in 1..=d {
            for j in i + 1..=d {
                let m = gamma.entry_at(0, i) * values[j] - gamma.entry_at(0, j) * values[i] + gamma.entry_at(i, j);
                let lam = 1.0 + values[i].norm() + values[j].norm();
                worst = worst.max((m * &u).norm() / (scale * lam * un));
            }
        }
    }
    Ok(worst)
}

/// Pipeline result with `γ` expressed in the original coordinates.
#[derive(Debug, Clone)]
pub struct CurveConstruction {
    pub normalization: NormalizationResult,
    pub report: ConstructionReport,
    /// `Λ²g^{-1}` applied to the normalized tensor, so `D(γ)` is the input curve.
    pub gamma: GammaTensor,
}

pub fn construct_for_curve(c: &RationalCurveParam, seed: u64, mode: &NormalizeMode) -> Result<CurveConstruction> {
    validate_curve(c, 16, seed)?;
    let normalization = normalize_coordinates(c, seed, mode)?;
    let report = construct_gamma(&normalization.curve, seed)?;
    let g_inv = normalization.g.clone().try_inverse().ok_or_else(|| Error::invalid("singular normalization"))?;
    let mut gamma = exterior::transform(&report.gamma, &g_inv)?;
    if c.is_real() && normalization.divisor.points().iter().all(|p| p.im == 0.0) {
        for (_, m) in gamma.entries_mut() {
            m.iter_mut().for_each(|z| z.im = 0.0);
        }
    }
    Ok(CurveConstruction { normalization, report, gamma })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub samples: usize,
    /// Largest `σ_min/σ_max` of the stacked `γ ∧ μ(t)` over the samples.
    pub max_residual: f64,
    pub min_kernel_dim: usize,
    pub max_kernel_dim: usize,
    pub pass: bool,
}

/// Samples curve points (alternately real and complex `t`) and checks they lie in `D(γ)`.
pub fn containment_check(c: &RationalCurveParam, gamma: &GammaTensor, samples: usize, seed: u64, tol: f64) -> Result<ContainmentReport> {
    if c.d != gamma.d() {
        return Err(Error::invalid(format!("curve lives in P^{}, tensor in P^{}", c.d, gamma.d())));
    }
    let mut rng = linalg::rng(seed);
    let mut max_residual: f64 = 0.0;
    let mut min_kernel_dim = usize::MAX;
    let mut max_kernel_dim = 0;
    for s in 0..samples {
        let t = sample_parameter(&mut rng, s);
        let mu = c.point(t);
        let mu = mu.unscale(mu.norm());
        let stacked = exterior::stacked_wedge(gamma, &mu)?;
        let k = linalg::kernel(&stacked, tol);
        let smax = k.singular_values.first().copied().unwrap_or(0.0);
        let smin = k.singular_values.last().copied().unwrap_or(0.0);
        let r = if smax == 0.0 { 0.0 } else { smin / smax };
        max_residual = max_residual.max(r);
        min_kernel_dim = min_kernel_dim.min(k.dim);
        max_kernel_dim = max_kernel_dim.max(k.dim);
    }
    if samples == 0 {
        min_kernel_dim = 0;
    }
    Ok(ContainmentReport { samples, max_residual, min_kernel_dim, max_kernel_dim, pass: max_residual < tol })
}

/// Names accepted by [`builtin_example`].
pub const EXAMPLE_NAMES: [&str; 3] = ["twisted_cubic", "monomial_quintic", "rational_p3"];

fn int_matrix(n: usize, rows: &[&[i32]]) -> CMat {
    CMat::from_fn(n, n, |i, j| c(rows[i][j] as f64))
}

fn build(n: usize, mats: [&[&[i32]]; 6]) -> GammaTensor {
    let keys = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let entries = keys.iter().zip(mats).map(|(k, m)| (k.to_vec(), int_matrix(n, m))).collect();
    gamma_from_entries(3, 1, n, entries).expect("built-in example is well formed")
}

/// The printed example tensors in `Λ²C⁴ ⊗ M_n(C)`.
///
/// `monomial_quintic` represents `t ↦ (1, t³, t⁴, t⁵)`; as a scheme its
/// affine ideal `(y²−xz, x²y−z², x³−yz) ∩ (z, y³, xy², x³y, x⁴)` carries an
/// embedded point at the cusp. `rational_p3` is a smooth rational quartic,
/// see [`builtin_curve`].
pub fn builtin_example(name: &str) -> Result<GammaTensor> {
    match name {
        "twisted_cubic" => Ok(build(
            3,
            [
                &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]],
                &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]],
            ],
        )),
        "monomial_quintic" => Ok(build(
            5,
            [
                &[&[0, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0]],
                &[&[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0], &[0, 0, 0, 0, 0]],
                &[&[0, 0, 0, 0, 1], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0]],
                &[&[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, -1, 0], &[0, 0, 0, 0, 0]],
                &[&[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, -1], &[0, 0, 0, -1, 0]],
                &[&[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, -1]],
            ],
        )),
        "rational_p3" => Ok(build(
            4,
            [
                &[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
                &[&[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]],
                &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]],
                &[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]],
                &[&[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]],
                &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]],
            ],
        )),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// Parametrizations: the three example curves plus `pick` (a hyperbolic
/// rational cubic) and `conic`.
pub fn builtin_curve(name: &str) -> Result<RationalCurveParam> {
    let coeffs: &[&[f64]] = match name {
        "twisted_cubic" => &[&[1.0], &[0.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]],
        "monomial_quintic" => &[&[1.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]],
        "rational_p3" => &[&[1.0], &[0.0, 1.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 0.0, 1.0]],
        "pick" => &[&[0.0, -1.0, 0.0, 1.0], &[1.0, 0.0, -3.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 1.0]],
        "conic" => &[&[1.0], &[0.0, 1.0], &[0.0, 0.0, 1.0]],
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    RationalCurveParam::from_real(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    fn pick() -> RationalCurveParam {
        builtin_curve("pick").unwrap()
    }

    #[test]
    fn validation_examples() {
        let cubic = builtin_curve("twisted_cubic").unwrap();
        let diag = validate_curve(&cubic, 20, 1).unwrap();
        assert_eq!((diag.n, diag.rank, diag.collisions), (3, 4, 0));

        let bp = RationalCurveParam::from_real(&[&[0.0, 1.0], &[0.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(validate_curve(&bp, 4, 1), Err(Error::BasePoint(_))));

        let flat = RationalCurveParam::from_real(&[&[1.0], &[0.0, 1.0], &[0.0, 2.0], &[0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(validate_curve(&flat, 4, 1), Err(Error::DegenerateSpan { rank: 3, expected: 4 })));
    }

    #[test]
    fn generic_normalization_of_twisted_cubic() {
        let cubic = builtin_curve("twisted_cubic").unwrap();
        let r = normalize_coordinates(&cubic, 7, &NormalizeMode::Generic).unwrap();
        assert_eq!(r.curve.polys()[0].degree(), Some(3));
        assert_eq!(r.divisor.len(), 3);
        assert!(r.g != CMat::identity(4, 4));
    }

    #[test]
    fn normalized_curve_keeps_identity() {
        let r = normalize_coordinates(&pick(), 7, &NormalizeMode::Generic).unwrap();
        assert_eq!(r.g, CMat::identity(4, 4));
        let r = normalize_coordinates(&pick(), 7, &NormalizeMode::RealSection(vec![1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.g, CMat::identity(4, 4));
        let mut pts: Vec<f64> = r.divisor.points().iter().map(|p| p.re).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in pts.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(r.divisor.points().iter().all(|p| p.im == 0.0));
    }

    #[test]
    fn real_section_rejects_complex_roots() {
        let cubic = builtin_curve("twisted_cubic").unwrap();
        // 1 + t³ has two non-real roots
        let err = normalize_coordinates(&cubic, 1, &NormalizeMode::RealSection(vec![1.0, 0.0, 0.0, 1.0])).unwrap_err();
        assert_eq!(err, Error::SectionNotReal);
    }

    #[test]
    fn pick_lambda_partial_fractions() {
        let l = lambda_functions(&pick()).unwrap();
        assert!(l[0].is_constant());
        let want = RationalFunction::from_partial_fractions(ZERO, &[(-ONE, c(-1.0)), (-ONE, ZERO), (-ONE, ONE)]).unwrap();
        for t in [0.3, 2.0, -5.0] {
            assert!((l[1].value(c(t)).unwrap() - want.value(c(t)).unwrap()).norm() < 1e-12);
        }
        assert!(matches!(lambda_functions(&builtin_curve("twisted_cubic").unwrap()), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn polynomial_lambda_when_divisible() {
        // μ_2 = t·μ_0
        let c = RationalCurveParam::from_real(&[&[-1.0, 0.0, 1.0], &[1.0], &[0.0, -1.0, 0.0, 1.0]]);
        // degree 3 > deg μ_0, so this is not normalized
        assert!(lambda_functions(&c.unwrap()).is_err());
        let c = RationalCurveParam::from_real(&[&[-1.0, 0.0, 1.0], &[1.0], &[-2.0, 0.0, 2.0]]).unwrap();
        let l = lambda_functions(&c).unwrap();
        assert!(l[2].poles().unwrap().is_empty());
    }

    #[test]
    fn pick_gamma_on_coordinate_plane() {
        let r = construct_gamma(&pick(), 3).unwrap();
        let gv = exterior::contract_subspace(&r.gamma, &[unit(4, 2), unit(4, 3)]).unwrap();
        assert!((gv + CMat::identity(3, 3)).iter().all(|z| z.norm() < 1e-12));
        assert!(r.vr);
        assert!(r.containment_residual < 1e-8);
        for (_, m) in r.gamma.entries() {
            assert!(linalg::is_real(m, 0.0));
            assert!((m - m.transpose()).norm() < 1e-12);
        }
    }

    #[test]
    fn twisted_cubic_pipeline() {
        let cubic = builtin_curve("twisted_cubic").unwrap();
        let built = construct_for_curve(&cubic, 7, &NormalizeMode::Generic).unwrap();
        assert!(built.report.vr);
        assert!(built.report.containment_residual < 1e-8);
        assert!(built.report.kernel_relation_residual < 1e-9);
        for (_, m) in built.report.gamma.entries() {
            assert!((m - m.transpose()).norm() < 1e-10 * m.norm().max(1.0));
        }
        assert!(containment_check(&cubic, &built.gamma, 30, 2, 1e-8).unwrap().pass);
    }

    #[test]
    fn conic_plane_tensor() {
        let conic = builtin_curve("conic").unwrap();
        let built = construct_for_curve(&conic, 2, &NormalizeMode::Generic).unwrap();
        assert_eq!(built.gamma.n(), 2);
        let g = &built.gamma;
        for t in [0.5, -1.5, 3.0] {
            let mu = conic.point(c(t));
            let m = g.entry_at(0, 1) * mu[2] - g.entry_at(0, 2) * mu[1] + g.entry_at(1, 2) * mu[0];
            assert!(m.determinant().norm() < 1e-9 * g.scale().powi(2) * mu.norm_squared());
        }
    }

    #[test]
    fn builtin_examples_contain_their_curves() {
        for name in ["twisted_cubic", "rational_p3"] {
            let g = builtin_example(name).unwrap();
            let curve = builtin_curve(name).unwrap();
            let r = containment_check(&curve, &g, 25, 11, 1e-8).unwrap();
            assert!(r.pass, "{name}: {}", r.max_residual);
            assert_eq!((r.min_kernel_dim, r.max_kernel_dim), (1, 1), "{name}");
        }
        assert!(matches!(builtin_example("nosuch"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn printed_quintic_contains_sign_twisted_curve() {
        let g = builtin_example("monomial_quintic").unwrap();
        let twisted = RationalCurveParam::from_real(&[&[1.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 0.0, -1.0], &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]]).unwrap();
        let r = containment_check(&twisted, &g, 25, 11, 1e-8).unwrap();
        assert!(r.pass && r.min_kernel_dim == 1 && r.max_kernel_dim == 1);
        // the monomial curve of the printed ideal is not contained
        let monomial = builtin_curve("monomial_quintic").unwrap();
        assert!(!containment_check(&monomial, &g, 25, 11, 1e-8).unwrap().pass);
        // flipping the sign of x2 maps one onto the other
        let flip = CMat::from_diagonal(&CVec::from_vec(vec![ONE, ONE, -ONE, ONE]));
        let moved = exterior::transform(&g, &flip).unwrap();
        assert!(containment_check(&monomial, &moved, 25, 11, 1e-8).unwrap().pass);
    }

    #[test]
    fn wrong_curve_fails_containment() {
        let g = builtin_example("twisted_cubic").unwrap();
        let quintic = builtin_curve("monomial_quintic").unwrap();
        assert!(!containment_check(&quintic, &g, 25, 11, 1e-8).unwrap().pass);
        let misprint = builtin_curve("twisted_cubic").unwrap();
        assert!(!containment_check(&misprint, &builtin_example("rational_p3").unwrap(), 25, 11, 1e-8).unwrap().pass);
    }

    #[test]
    fn curve_kernel_is_u_right() {
        let r = construct_gamma(&pick(), 5).unwrap();
        let t = c(0.37);
        let mu = pick().point(t);
        let u = bezoutian::u_vector(&r.divisor, t, Side::Right).unwrap().entries;
        for (_, blk) in exterior::wedge_point(&r.gamma, &mu).unwrap() {
            assert!((blk * &u).norm() < 1e-10);
        }
    }
}
