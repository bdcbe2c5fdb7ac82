//! Numerical analysis of Livsic-type determinantal representations:
//! membership in `D(γ)`, slicing by `(d−k)`-planes, degree and
//! very-reasonableness, pencil commutation, Schubert determinant profiles
//! and the reconstruction relations of very reasonable tensors.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{self, removal_sign, subsets, GammaTensor, IndexSet};
use crate::linalg::{self, c, CMat, CVec, C64, ZERO};
use crate::ratfunc::Poly;

/// Numerical thresholds shared by the analysis routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Singular values below `rank_rel · σ_max` count as zero.
    pub rank_rel: f64,
    /// Relative gap under which eigenvalues are clustered together.
    pub eig_cluster: f64,
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank_rel: 1e-10, eig_cluster: 1e-6, residual: 1e-9 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub kernel_dim: usize,
    /// The smallest singular values of the stacked matrix, ascending.
    pub singular_values: Vec<f64>,
    /// `σ_min / σ_max` of the stacked matrix.
    pub relative_residual: f64,
    #[serde(skip)]
    pub kernel_basis: CMat,
}

/// Kernel of the stacked `(γ ∧ μ)_J` blocks; `μ ∈ D(γ)` iff the kernel is
/// nontrivial.
pub fn membership(gamma: &GammaTensor, mu: &CVec, tol: &Tolerances) -> Result<MembershipReport> {
    let stacked = exterior::stacked_wedge(gamma, mu)?;
    let smax = linalg::spectral_norm(&stacked);
    let reference = smax.max(gamma.scale() * mu.norm());
    let k = linalg::kernel_abs(&stacked, tol.rank_rel * reference);
    let tail: Vec<f64> = k.singular_values.iter().rev().take(gamma.n().min(4)).copied().collect();
    let smin = k.singular_values.last().copied().unwrap_or(0.0);
    let relative_residual = if reference == 0.0 { 0.0 } else { smin / reference };
    Ok(MembershipReport { kernel_dim: k.dim, singular_values: tail, relative_residual, kernel_basis: k.basis })
}

/// `σ_min(γ(V)) / Σ_I ‖γ_I‖` for a unit-normalized basis.
fn invertibility_margin(gamma: &GammaTensor, basis: &[CVec]) -> Result<f64> {
    let unit: Vec<CVec> = basis.iter().map(|v| v.normalize()).collect();
    let m = exterior::contract_subspace(gamma, &unit)?;
    let scale: f64 = gamma.entries().map(|(_, g)| linalg::spectral_norm(g)).sum();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let sv = linalg::singular_values(&m);
    Ok(sv.last().copied().unwrap_or(0.0) / scale)
}

fn random_basis(rng: &mut impl Rng, d: usize, count: usize) -> Vec<CVec> {
    (0..count).map(|_| linalg::random_real_vec(rng, d + 1)).collect()
}

/// True when `det γ(V) ≠ 0` for some seeded random plane.
pub fn is_nondegenerate(gamma: &GammaTensor, trials: usize, seed: u64, tol: &Tolerances) -> bool {
    let mut rng = linalg::rng(seed);
    let count = gamma.d() - gamma.k();
    (0..trials.max(1)).any(|_| {
        let basis = random_basis(&mut rng, gamma.d(), count);
        invertibility_margin(gamma, &basis).is_ok_and(|m| m > tol.rank_rel)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SlicePoint {
    /// Coefficients `t_i` with `μ = u + Σ t_i v_i`, as `[re, im]`.
    pub coordinates: Vec<[f64; 2]>,
    #[serde(skip)]
    pub params: Vec<C64>,
    #[serde(skip)]
    pub point: CVec,
    pub kernel_dim: usize,
    /// `max_i ‖(A_i + t_i) w‖` over the kernel basis `w`.
    pub eigen_residual: f64,
    #[serde(skip)]
    pub kernel_basis: CMat,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub points: Vec<SlicePoint>,
    /// Number of eigenvalue clusters of the random pencil combination.
    pub clusters: usize,
    /// Largest deviation of a cluster eigenspace from being jointly invariant.
    pub joint_residual: f64,
    /// Smallest distance between two candidate parameter vectors.
    pub min_gap: f64,
}

/// The pencil matrices `A_i = γ(V)^{-1} γ(V, i, u)`.
pub fn pencil_matrices(gamma: &GammaTensor, basis: &[CVec], u: &CVec, tol: &Tolerances) -> Result<Vec<CMat>> {
    if basis.len() != gamma.d() - gamma.k() {
        return Err(Error::invalid(format!("plane needs {} basis vectors", gamma.d() - gamma.k())));
    }
    let mut with_u = basis.to_vec();
    with_u.push(u.clone());
    if linalg::rank(&linalg::columns(&with_u), 1e-12) < with_u.len() {
        return Err(Error::invalid("u lies in the span of the plane"));
    }
    let base = exterior::contract_subspace(gamma, basis)?;
    if linalg::rank(&base, tol.rank_rel) < gamma.n() {
        return Err(Error::SingularBasePlane);
    }
    let lu = base.lu();
    (0..basis.len())
        .map(|i| {
            let r = exterior::contract_replaced(gamma, basis, i, u)?;
            lu.solve(&r).ok_or(Error::SingularBasePlane)
        })
        .collect()
}

/// Eigenvalue clusters of a square matrix: `(mean, multiplicity)`.
fn clusters(m: &CMat, rel: f64) -> Vec<(C64, usize)> {
    let ev = linalg::eigenvalues(m);
    let scale = ev.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut groups: Vec<Vec<C64>> = Vec::new();
    for z in ev {
        match groups.iter_mut().find(|g| g.iter().any(|w| (w - z).norm() <= rel * scale)) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups.into_iter().map(|g| (g.iter().sum::<C64>() / g.len() as f64, g.len())).collect()
}

/// Random combination `Σ w_i A_i` whose eigenvalues are best separated
/// among a few seeded trials, so distinct joint eigenvalues do not collide.
fn separating_combination(a: &[CMat], n: usize) -> CMat {
    let mut rng = linalg::rng(0x51ce);
    let mut best: Option<(f64, CMat)> = None;
    for _ in 0..8 {
        let combo = a.iter().fold(CMat::zeros(n, n), |acc, m| acc + m * c(rng.gen_range(0.5..1.5)));
        let ev = linalg::eigenvalues(&combo);
        let scale = ev.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut gap = f64::INFINITY;
        for (i, x) in ev.iter().enumerate() {
            for y in &ev[i + 1..] {
                gap = gap.min((x - y).norm() / scale);
            }
        }
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, combo));
        }
    }
    best.map(|(_, m)| m).unwrap_or_else(|| CMat::zeros(n, n))
}

/// Intersections of `U = span(V, u)` with `D(γ)` from the joint eigendata of
/// the pencil matrices. A point `u + Σ t_i v_i` of `D(γ)` has kernel vectors
/// `w` with `A_i w = −t_i w`.
pub fn slice_intersections(gamma: &GammaTensor, basis: &[CVec], u: &CVec, tol: &Tolerances) -> Result<SliceReport> {
    let a = pencil_matrices(gamma, basis, u, tol)?;
    let n = gamma.n();
    let combo = separating_combination(&a, n);

    let mut points = Vec::new();
    let mut joint_residual: f64 = 0.0;
    let groups = clusters(&combo, tol.eig_cluster);
    let mut params_all: Vec<Vec<C64>> = Vec::new();
    for &(lambda, mult) in &groups {
        let shifted = &combo - CMat::from_diagonal_element(n, n, lambda);
        let e = linalg::smallest_right_singular_vectors(&shifted, mult);
        let dim = e.ncols() as f64;
        let mut params = Vec::with_capacity(a.len());
        for ai in &a {
            let comp = e.adjoint() * ai * &e;
            let t = -comp.trace() / dim;
            let resid = (ai * &e - &e * &comp).norm() / ai.norm().max(1.0);
            joint_residual = joint_residual.max(resid);
            params.push(t);
        }
        params_all.push(params.clone());
        let mut point = u.clone();
        for (v, t) in basis.iter().zip(&params) {
            point += v * *t;
        }
        let report = membership(gamma, &point, tol)?;
        if report.kernel_dim == 0 {
            continue;
        }
        let mut eigen_residual: f64 = 0.0;
        for (ai, t) in a.iter().zip(&params) {
            let r = ai * &report.kernel_basis + &report.kernel_basis * *t;
            eigen_residual = eigen_residual.max(r.norm() / ai.norm().max(1.0));
        }
        points.push(SlicePoint {
            coordinates: params.iter().map(|z| [z.re, z.im]).collect(),
            params,
            point,
            kernel_dim: report.kernel_dim,
            eigen_residual,
            kernel_basis: report.kernel_basis,
        });
    }
    let mut min_gap = f64::INFINITY;
    for (i, p) in params_all.iter().enumerate() {
        for q in &params_all[i + 1..] {
            let gap = p.iter().zip(q).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            min_gap = min_gap.min(gap);
        }
    }
    Ok(SliceReport { points, clusters: groups.len(), joint_residual, min_gap })
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    /// `max ‖[A_i, A_j]‖_F / max(1, ‖A_i‖_F ‖A_j‖_F)`.
    pub commutator: f64,
    /// Largest gap between algebraic and geometric multiplicity of any
    /// eigenvalue of any `A_i` (zero for semisimple pencils).
    pub semisimplicity_defect: usize,
}

pub fn pencil_commutation_report(gamma: &GammaTensor, basis: &[CVec], u: &CVec, tol: &Tolerances) -> Result<CommutationReport> {
    let a = pencil_matrices(gamma, basis, u, tol)?;
    let mut commutator: f64 = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let comm = &a[i] * &a[j] - &a[j] * &a[i];
            commutator = commutator.max(comm.norm() / (a[i].norm() * a[j].norm()).max(1.0));
        }
    }
    let n = gamma.n();
    let mut defect = 0;
    for ai in &a {
        for (lambda, mult) in clusters(ai, tol.eig_cluster) {
            let shifted = ai - CMat::from_diagonal_element(n, n, lambda);
            let cutoff = 1e-7 * linalg::spectral_norm(ai).max(1.0);
            let geo = linalg::kernel_abs(&shifted, cutoff).dim.min(mult);
            defect = defect.max(mult - geo);
        }
    }
    Ok(CommutationReport { commutator, semisimplicity_defect: defect })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeTrial {
    pub transversal: bool,
    pub kernel_dims: Vec<usize>,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub n: usize,
    pub trials: Vec<DegreeTrial>,
}

/// Minimum over transversal seeded slices of the summed kernel dimensions.
pub fn degree(gamma: &GammaTensor, trials: usize, seed: u64, tol: &Tolerances) -> Result<DegreeReport> {
    let mut rng = linalg::rng(seed);
    let count = gamma.d() - gamma.k();
    let mut out = Vec::new();
    let mut best: Option<usize> = None;
    for _ in 0..trials.max(1) {
        let basis = random_basis(&mut rng, gamma.d(), count);
        let u = linalg::random_real_vec(&mut rng, gamma.d() + 1);
        let slice = match slice_intersections(gamma, &basis, &u, tol) {
            Ok(s) => s,
            Err(Error::SingularBasePlane) => {
                out.push(DegreeTrial { transversal: false, kernel_dims: Vec::new(), total: 0 });
                continue;
            }
            Err(e) => return Err(e),
        };
        let kernel_dims: Vec<usize> = slice.points.iter().map(|p| p.kernel_dim).collect();
        let total = kernel_dims.iter().sum();
        let transversal = slice.joint_residual <= 1e-6 && slice.min_gap > 1e-6;
        if transversal {
            best = Some(best.map_or(total, |b: usize| b.min(total)));
        }
        out.push(DegreeTrial { transversal, kernel_dims, total });
    }
    match best {
        Some(degree) => Ok(DegreeReport { degree, n: gamma.n(), trials: out }),
        None => Err(Error::TransversalityFailure(out.len())),
    }
}

/// `deg γ == n`; degenerate tensors are not very reasonable.
pub fn is_very_reasonable(gamma: &GammaTensor, trials: usize, seed: u64, tol: &Tolerances) -> Result<bool> {
    if !is_nondegenerate(gamma, trials, seed, tol) {
        return Ok(false);
    }
    Ok(degree(gamma, trials, seed, tol)?.degree == gamma.n())
}

/// `t ↦ det γ(span(V0, w1 + t w2))` as an interpolated polynomial.
#[derive(Debug, Clone)]
pub struct SchubertProfile {
    pub poly: Poly,
    /// Intersections at `t = ∞`: `n − deg`.
    pub roots_at_infinity: usize,
}

pub fn schubert_det_profile(
    gamma: &GammaTensor,
    v0: &[CVec],
    w1: &CVec,
    w2: &CVec,
    sample_count: usize,
) -> Result<SchubertProfile> {
    if v0.len() + 1 != gamma.d() - gamma.k() {
        return Err(Error::invalid(format!("flag base needs {} vectors", gamma.d() - gamma.k() - 1)));
    }
    let mut all = v0.to_vec();
    all.push(w1.clone());
    all.push(w2.clone());
    if all.iter().any(|v| v.len() != gamma.d() + 1) {
        return Err(Error::invalid("vector length mismatch"));
    }
    if linalg::rank(&linalg::columns(&all), 1e-12) < all.len() {
        return Err(Error::invalid("w1, w2 do not extend the base independently"));
    }
    let n = gamma.n();
    let nodes = sample_count.max(n + 1);
    let values: Vec<(C64, C64)> = (0..nodes)
        .map(|j| {
            let t = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / nodes as f64);
            let mut basis = v0.to_vec();
            basis.push(w1 + w2 * t);
            // dependence is impossible: w1 + t w2 ∉ span(V0) for independent inputs
            exterior::contract_subspace(gamma, &basis).map(|m| (t, m.determinant()))
        })
        .collect::<Result<_>>()?;
    // discrete Fourier inversion on the roots of unity
    let mut coeffs: Vec<C64> = (0..nodes)
        .map(|k| values.iter().map(|(t, v)| v * t.powi(-(k as i32))).sum::<C64>() / nodes as f64)
        .collect();
    coeffs.truncate(n + 1);
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for z in coeffs.iter_mut() {
        if z.norm() <= 1e-10 * scale {
            *z = ZERO;
        }
    }
    let poly = Poly::new(coeffs);
    let deg = poly.degree().unwrap_or(0);
    Ok(SchubertProfile { poly, roots_at_infinity: n.saturating_sub(deg) })
}

/// Residuals of the reconstruction relations, per pivot `p ∈ I_0`.
#[derive(Debug, Clone, Serialize)]
pub struct StructResidual {
    pub residual: f64,
    pub per_pivot: Vec<f64>,
}

/// Checks the relations a very reasonable tensor satisfies after moving `V`
/// to `span{e_{k+1}, …, e_d}`.
///
/// With `I_0 = {0, …, k}` and `A_{ℓ,p} = −(−1)^{σ(I_0∪{ℓ}, p)} γ_{I_0}^{-1} γ_{I_0∖{p}∪{ℓ}}`,
/// every `|J| = k+2` and `p ∈ I_0` must satisfy
/// `[p∈J] (−1)^{σ(J,p)} γ_{J∖{p}} + Σ_{j∈J∖I_0} (−1)^{σ(J,j)} γ_{J∖{j}} A_{j,p} = 0`.
/// Residuals are Frobenius norms relative to `max_I ‖γ_I‖_F`.
pub fn vr_struct_residual(gamma: &GammaTensor, basis: &[CVec], tol: &Tolerances) -> Result<StructResidual> {
    let (d, k, n) = (gamma.d(), gamma.k(), gamma.n());
    if basis.len() != d - k {
        return Err(Error::invalid(format!("plane needs {} basis vectors", d - k)));
    }
    // complete V by an orthogonal complement so that V sits in the last slots
    let vmat = linalg::columns(basis);
    let comp = linalg::kernel(&vmat.adjoint(), 1e-10);
    if comp.dim != k + 1 {
        return Err(Error::invalid("basis vectors are linearly dependent"));
    }
    let mut frame = CMat::zeros(d + 1, d + 1);
    frame.view_mut((0, 0), (d + 1, k + 1)).copy_from(&comp.basis);
    frame.view_mut((0, k + 1), (d + 1, d - k)).copy_from(&vmat);
    let g = frame.try_inverse().ok_or_else(|| Error::invalid("singular frame"))?;
    let moved = exterior::transform(gamma, &g)?;

    let i0 = IndexSet::new((0..=k).collect(), d)?;
    let base = moved.entry(&i0);
    if linalg::rank(&base, tol.rank_rel) < n {
        return Err(Error::SingularBasePlane);
    }
    let lu = base.lu();
    let mut a = std::collections::BTreeMap::new();
    for l in k + 1..=d {
        let j = i0.with(l);
        for &p in i0.as_slice() {
            let sign = -(removal_sign(&j, p)? as f64);
            let solved = lu.solve(&moved.entry(&j.without(p))).ok_or(Error::SingularBasePlane)?;
            a.insert((l, p), solved * c(sign));
        }
    }
    let scale = moved.scale().max(f64::MIN_POSITIVE);
    let mut per_pivot = vec![0.0_f64; k + 1];
    for j_set in subsets(d, k + 2) {
        for (pi, &p) in i0.as_slice().iter().enumerate() {
            let mut r = CMat::zeros(n, n);
            if j_set.contains(p) {
                r += moved.entry(&j_set.without(p)) * c(removal_sign(&j_set, p)? as f64);
            }
            for &j in j_set.as_slice().iter().filter(|&&j| j > k) {
                r += moved.entry(&j_set.without(j)) * &a[&(j, p)] * c(removal_sign(&j_set, j)? as f64);
            }
            per_pivot[pi] = per_pivot[pi].max(r.norm() / scale);
        }
    }
    let residual = per_pivot.iter().copied().fold(0.0, f64::max);
    Ok(StructResidual { residual, per_pivot })
}
