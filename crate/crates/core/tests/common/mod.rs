#![allow(dead_code)]

use livsic::exterior::subsets;
use livsic::linalg::{self, CMat, CVec, C64};
use livsic::GammaTensor;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    linalg::rng(seed)
}

pub fn cvec(rng: &mut impl Rng, len: usize) -> CVec {
    CVec::from_iterator(len, (0..len).map(|_| linalg::random_complex(rng)))
}

pub fn cmat(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| linalg::random_complex(rng))
}

pub fn real_basis(rng: &mut impl Rng, d: usize, count: usize) -> Vec<CVec> {
    (0..count).map(|_| linalg::random_real_vec(rng, d + 1)).collect()
}

pub fn random_gamma(rng: &mut impl Rng, d: usize, k: usize, n: usize) -> GammaTensor {
    let mut g = GammaTensor::zero(d, k, n).unwrap();
    for set in subsets(d, k + 1) {
        g.set(set, cmat(rng, n, n)).unwrap();
    }
    g
}

pub fn add(a: &GammaTensor, b: &GammaTensor, s: C64) -> GammaTensor {
    let mut out = a.clone();
    for (set, m) in b.entries() {
        out.set(set.clone(), a.entry(set) + m * s).unwrap();
    }
    out
}

pub fn close(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}
