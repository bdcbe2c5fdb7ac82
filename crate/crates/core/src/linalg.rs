//! Thin numerical helpers over nalgebra: numerical rank, null spaces,
//! eigenvalues of general complex matrices, seeded sampling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_real_vec<R: Rng>(rng: &mut R, len: usize) -> CVec {
    CVec::from_iterator(len, (0..len).map(|_| c(rng.gen_range(-1.0..1.0))))
}

pub fn random_complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Null space of `m` with a relative singular-value cutoff.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub dim: usize,
    /// Orthonormal columns spanning the numerical kernel.
    pub basis: CMat,
    /// Full singular spectrum (descending, padded with zeros to `ncols`).
    pub singular_values: Vec<f64>,
}

pub fn kernel(m: &CMat, rank_rel: f64) -> Kernel {
    kernel_with(m, |smax| rank_rel * smax)
}

/// Null space with an absolute singular-value cutoff.
pub fn kernel_abs(m: &CMat, cutoff: f64) -> Kernel {
    kernel_with(m, |_| cutoff)
}

/// Right singular vectors (as columns, most singular first) for the
/// `count` smallest singular values.
pub fn smallest_right_singular_vectors(m: &CMat, count: usize) -> CMat {
    let (sv, order, v_t) = right_svd(m);
    let cols = m.ncols();
    let count = count.min(sv.len());
    CMat::from_fn(cols, count, |r, k| v_t[(order[sv.len() - 1 - k], r)].conj())
}

/// Singular values (descending), their original positions and `V^T`,
/// with wide matrices padded to square.
fn right_svd(m: &CMat) -> (Vec<f64>, Vec<usize>, CMat) {
    let cols = m.ncols();
    // SVD only reports min(rows, cols) right vectors; pad to square when wide.
    let work = if m.nrows() < cols {
        let mut padded = CMat::zeros(cols, cols);
        padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    (sv, order, v_t)
}

fn kernel_with(m: &CMat, cutoff: impl Fn(f64) -> f64) -> Kernel {
    let cols = m.ncols();
    let (sv, order, v_t) = right_svd(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    let cut = cutoff(smax);
    let null: Vec<usize> = (0..sv.len()).rev().filter(|&k| smax == 0.0 || sv[k] <= cut).collect();
    let mut basis = CMat::zeros(cols, null.len());
    for (col, &k) in null.iter().enumerate() {
        for r in 0..cols {
            basis[(r, col)] = v_t[(order[k], r)].conj();
        }
    }
    Kernel { dim: null.len(), basis, singular_values: sv }
}

pub fn rank(m: &CMat, rank_rel: f64) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_rel * smax).count()
}

/// Eigenvalues of a general complex square matrix via complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    m.clone()
        .schur()
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .unwrap_or_default()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let h = (m + m.adjoint()) * c(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    let scale = m.norm().max(1.0);
    (m - m.adjoint()).norm() <= tol * scale
}

pub fn is_real(m: &CMat, tol: f64) -> bool {
    let scale = m.norm().max(1.0);
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max) <= tol * scale
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[CVec]) -> CMat {
    let rows = vectors.first().map_or(0, |v| v.len());
    CMat::from_fn(rows, vectors.len(), |r, k| vectors[k][r])
}

pub fn unit(len: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(len);
    v[i] = ONE;
    v
}

pub fn real_vec(values: &[f64]) -> CVec {
    CVec::from_iterator(values.len(), values.iter().map(|&x| c(x)))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}
