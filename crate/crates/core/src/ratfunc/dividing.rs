use std::f64::consts::PI;

use serde::Serialize;

use super::{Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::linalg::{c, C64, ONE, ZERO};

/// Imaginary parts above this (relative to `1 + |r|`) mark a non-real root.
const NONREAL_REL: f64 = 1e-6;

/// Outcome of the dividing test for a real rational function on P^1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DividingVerdict {
    pub is_dividing: bool,
    /// `+1` when `f` maps the upper half-plane to itself, `-1` when `-f` does.
    pub orientation_sign: Option<i8>,
    /// A real value whose fiber contains a non-real point.
    pub failure_witness: Option<f64>,
    /// One non-real point of that fiber, `[re, im]`.
    pub failure_root: Option<[f64; 2]>,
}

/// Decides whether a real rational function has totally real fibers over
/// `R ∪ {∞}`.
///
/// A real Möbius change `t = shift − 1/s` (orientation preserving) moves
/// infinity to a finite non-pole point. In that chart `f` is dividing iff
/// every pole is real and simple and all residues share a sign; negative
/// residues mean `f` is a Pick function.
pub fn is_dividing(f: &RationalFunction, tol: f64) -> Result<DividingVerdict> {
    let f = normalize_real(f)?;
    if f.is_constant() {
        return Err(Error::invalid("constant function"));
    }
    let shift = pole_free_shift(&f)?;
    let h = f.precompose_mobius(c(shift), -ONE, ONE, ZERO)?;
    let den = h.den().clone();
    let dden = den.derivative();

    let mut sign: Option<i8> = None;
    let mut ok = true;
    for r in den.roots()? {
        let scale = 1.0 + r.norm();
        if r.im.abs() > tol.max(1e-9) * scale {
            ok = false;
            break;
        }
        let r = c(r.re);
        let dr = dden.eval(r);
        if dr.norm() <= 1e-7 * dden.eval_scale(r).max(f64::MIN_POSITIVE) {
            ok = false;
            break;
        }
        let residue = h.num().eval(r) / dr;
        let s = if residue.re < 0.0 { 1 } else { -1 };
        if residue.norm() == 0.0 {
            ok = false;
            break;
        }
        match sign {
            None => sign = Some(s),
            Some(prev) if prev != s => {
                ok = false;
                break;
            }
            _ => {}
        }
    }
    if ok && sign.is_some() {
        return Ok(DividingVerdict { is_dividing: true, orientation_sign: sign, failure_witness: None, failure_root: None });
    }
    let (witness, root) = match find_nonreal_fiber(&f)? {
        Some((w, r)) => (Some(w), Some([r.re, r.im])),
        None => (None, None),
    };
    Ok(DividingVerdict { is_dividing: false, orientation_sign: None, failure_witness: witness, failure_root: root })
}

fn normalize_real(f: &RationalFunction) -> Result<RationalFunction> {
    let f = f.reduce()?;
    if !f.num().is_real(1e-12) || !f.den().is_real(1e-12) {
        return Err(Error::invalid("dividing test needs real coefficients"));
    }
    RationalFunction::new(f.num().real_part(), f.den().real_part())?.reduce()
}

/// A real point whose chart `s = 1/(shift − t)` keeps the images of the
/// poles well separated relative to their size.
fn pole_free_shift(f: &RationalFunction) -> Result<f64> {
    let poles = f.poles()?;
    let mut re: Vec<f64> = poles.iter().map(|p| p.re).collect();
    re.sort_by(f64::total_cmp);
    let spread = poles.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let mut candidates: Vec<f64> = re.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    if let (Some(lo), Some(hi)) = (re.first(), re.last()) {
        candidates.extend([lo - 1.0, hi + 1.0, lo - spread, hi + spread]);
    } else {
        candidates.push(0.0);
    }
    let score = |s: f64| -> f64 {
        let images: Vec<C64> = poles.iter().map(|p| ONE / (c(s) - p)).collect();
        if images.iter().any(|z| !z.is_finite()) {
            return 0.0;
        }
        let size = images.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if images.len() < 2 {
            return if images.is_empty() { 1.0 } else { 1.0 / (1.0 + size) };
        }
        let mut gap = f64::INFINITY;
        for (i, a) in images.iter().enumerate() {
            for b in &images[i + 1..] {
                gap = gap.min((a - b).norm());
            }
        }
        gap / size
    };
    candidates
        .into_iter()
        .filter(|&s| poles.iter().all(|p| (c(s) - p).norm() > 1e-9 * spread))
        .map(|s| (s, score(s)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(s, _)| s)
        .ok_or_else(|| Error::invalid("could not find a pole-free real shift"))
}

/// Fiber of `f` over the real value `v`: roots of `num − v·den`.
pub(crate) fn fiber(f: &RationalFunction, v: f64) -> Result<Vec<C64>> {
    let p: Poly = f.num() - &f.den().scale(c(v));
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    p.roots()
}

/// Values just past each real critical value, where two real preimages
/// turn into a conjugate pair.
fn near_critical_values(f: &RationalFunction) -> Result<Vec<f64>> {
    let (num, den) = (f.num(), f.den());
    let w = &(&num.derivative() * den) - &(num * &den.derivative());
    if w.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for x in w.roots()? {
        if x.im.abs() > NONREAL_REL * (1.0 + x.norm()) {
            continue;
        }
        let Some(v) = f.evaluate(c(x.re)).finite() else { continue };
        let v = v.re;
        for k in 2..=10 {
            let step = 10f64.powi(-k);
            for delta in [step * v.abs(), step] {
                if delta > 0.0 {
                    out.extend([v + delta, v - delta]);
                }
            }
        }
    }
    Ok(out)
}

fn find_nonreal_fiber(f: &RationalFunction) -> Result<Option<(f64, C64)>> {
    let mut candidates = vec![1.0, -1.0, 0.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 10.0, -10.0];
    candidates.extend(near_critical_values(f)?);
    let grid = 512;
    candidates.extend((1..grid).map(|i| (PI * (i as f64 / grid as f64 - 0.5)).tan()));
    for v in candidates {
        for r in fiber(f, v)? {
            if r.im.abs() > NONREAL_REL * (1.0 + r.norm()) {
                return Ok(Some((v, r)));
            }
        }
    }
    Ok(None)
}
