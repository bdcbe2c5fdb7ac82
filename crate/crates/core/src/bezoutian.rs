//! Genus-zero Bezoutians.
//!
//! With the Cauchy kernel `K(p, q) = 1/(q − p)` and the frames
//! `u_left(p)_i = 1/(p_i − p)`, `u_right(q)_i = 1/(q − p_i)`, the Bezoutian of
//! `f, g ∈ L(D)` is the unique matrix with
//!
//! ```text
//! (f(p) g(q) − f(q) g(p)) K(p, q) = u_left(p) · B · u_right(q)
//! ```
//!
//! Matching residues at the divisor points gives the entry formulas used by
//! [`bezout_matrix`]:
//! `b_ii = b_i c_i − a_i d_i` and `b_ij = (a_i c_j − a_j c_i)/(p_i − p_j)`,
//! where `f ~ a_i/(t − p_i) + b_i` and `g ~ c_i/(t − p_i) + d_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, C64, ONE};
use crate::ratfunc::{is_root, RationalFunction};

const POINT_TOL: f64 = 1e-12;

/// Reduced effective divisor of finite points.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    points: Vec<C64>,
}

impl Divisor {
    pub fn new(points: Vec<C64>) -> Result<Self> {
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(Error::invalid("divisor points must be finite"));
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if (p - q).norm() <= POINT_TOL * (1.0 + p.norm()) {
                    return Err(Error::invalid(format!("divisor point {p} repeated")));
                }
            }
        }
        Ok(Divisor { points })
    }

    pub fn real(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn contains(&self, q: C64) -> Option<C64> {
        self.points.iter().copied().find(|p| (q - p).norm() <= POINT_TOL * (1.0 + p.norm()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UVector {
    pub entries: CVec,
    pub side: Side,
    pub at: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BezoutMatrix {
    pub matrix: CMat,
    pub divisor: Divisor,
}

pub fn cauchy_kernel(p: C64, q: C64) -> Result<C64> {
    if p == q {
        return Err(Error::PoleOnDiagonal);
    }
    Ok(ONE / (q - p))
}

pub fn u_vector(divisor: &Divisor, q: C64, side: Side) -> Result<UVector> {
    if let Some(p) = divisor.contains(q) {
        return Err(Error::PoleAtDivisor(format!("{p}")));
    }
    let entries = CVec::from_iterator(
        divisor.len(),
        divisor.points.iter().map(|&p| match side {
            Side::Right => ONE / (q - p),
            Side::Left => ONE / (p - q),
        }),
    );
    Ok(UVector { entries, side, at: q })
}

/// Checks that every pole of `f` is simple, finite and lies in `D`.
fn check_in_ld(f: &RationalFunction, divisor: &Divisor) -> Result<RationalFunction> {
    let f = f.reduce()?;
    if f.pole_at_infinity() {
        return Err(Error::NotInLD("pole at infinity".into()));
    }
    for pole in f.poles()? {
        if !divisor.points.iter().any(|&p| is_root(f.den(), p) && (pole - p).norm() <= 1e-6 * (1.0 + p.norm())) {
            return Err(Error::NotInLD(format!("pole {pole} outside the divisor")));
        }
    }
    Ok(f)
}

pub fn bezout_matrix(f: &RationalFunction, g: &RationalFunction, divisor: &Divisor) -> Result<BezoutMatrix> {
    let f = check_in_ld(f, divisor)?;
    let g = check_in_ld(g, divisor)?;
    let laurent = |h: &RationalFunction| -> Result<Vec<_>> {
        divisor
            .points
            .iter()
            .map(|&p| {
                h.laurent_simple(p).map_err(|e| match e {
                    Error::UnsupportedPoleOrder(s) => Error::NotInLD(format!("pole of order > 1 at {s}")),
                    other => other,
                })
            })
            .collect()
    };
    let fl = laurent(&f)?;
    let gl = laurent(&g)?;
    let m = divisor.len();
    let pts = &divisor.points;
    let matrix = CMat::from_fn(m, m, |i, j| {
        if i == j {
            fl[i].b * gl[i].a - fl[i].a * gl[i].b
        } else {
            (fl[i].a * gl[j].a - fl[j].a * gl[i].a) / (pts[i] - pts[j])
        }
    });
    Ok(BezoutMatrix { matrix, divisor: divisor.clone() })
}

/// `|(f(p)g(q) − f(q)g(p))K(p,q) − u_left(p)·B·u_right(q)|`; for `p = q` the
/// limit form `f(p)g'(p) − f'(p)g(p)` is used.
pub fn fundamental_identity_residual(
    b: &BezoutMatrix,
    f: &RationalFunction,
    g: &RationalFunction,
    p: C64,
    q: C64,
) -> Result<f64> {
    let ul = u_vector(&b.divisor, p, Side::Left)?;
    let ur = u_vector(&b.divisor, q, Side::Right)?;
    let rhs = (ul.entries.transpose() * &b.matrix * &ur.entries)[(0, 0)];
    let lhs = if p == q {
        f.value(p)? * g.derivative_at(p)? - f.derivative_at(p)? * g.value(p)?
    } else {
        (f.value(p)? * g.value(q)? - f.value(q)? * g.value(p)?) * cauchy_kernel(p, q)?
    };
    Ok((lhs - rhs).norm())
}

/// `‖B_D(f,g) · u_right(z)‖` without checking that `z` is a common zero.
pub fn common_zero_residual(f: &RationalFunction, g: &RationalFunction, divisor: &Divisor, z: C64) -> Result<f64> {
    let b = bezout_matrix(f, g, divisor)?;
    let u = u_vector(divisor, z, Side::Right)?;
    Ok((&b.matrix * &u.entries).norm())
}

/// Residual of `B_D(f,g) · u_right(z) = 0` at a common zero `z`.
pub fn verify_common_zero(f: &RationalFunction, g: &RationalFunction, divisor: &Divisor, z: C64) -> Result<f64> {
    for h in [f, g] {
        if !is_root(h.reduce()?.num(), z) {
            return Err(Error::invalid(format!("{z} is not a common zero")));
        }
    }
    common_zero_residual(f, g, divisor, z)
}

/// `‖(g(z) B(1,f) − f(z) B(1,g) + B(f,g)) · u_right(z)‖`.
pub fn det_vanish_residual(f: &RationalFunction, g: &RationalFunction, divisor: &Divisor, z: C64) -> Result<f64> {
    let u = u_vector(divisor, z, Side::Right)?;
    let one = RationalFunction::constant(ONE);
    let b1f = bezout_matrix(&one, f, divisor)?.matrix;
    let b1g = bezout_matrix(&one, g, divisor)?.matrix;
    let bfg = bezout_matrix(f, g, divisor)?.matrix;
    let m = b1f * g.value(z)? - b1g * f.value(z)? + bfg;
    Ok((m * u.entries).norm())
}

/// Pairing matrix of the fiber `g^{-1}(z)` under `B(1, g − z)`.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub fiber: Vec<C64>,
    pub pairing: CMat,
    /// `g'(q_i)` for comparison with the diagonal.
    pub derivatives: Vec<C64>,
}

impl DualityReport {
    pub fn max_off_diagonal(&self) -> f64 {
        let m = self.pairing.nrows();
        (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.pairing[(i, j)].norm())
            .fold(0.0, f64::max)
    }

    pub fn max_diagonal_error(&self) -> f64 {
        self.derivatives.iter().enumerate().map(|(i, d)| (self.pairing[(i, i)] - d).norm()).fold(0.0, f64::max)
    }
}

pub fn duality_report(g: &RationalFunction, divisor: &Divisor, z: f64) -> Result<DualityReport> {
    let g = g.reduce()?;
    let shifted = RationalFunction::linear_combination(&[(ONE, &g), (-ONE, &RationalFunction::constant(C64::new(z, 0.0)))])?;
    let fiber_poly = shifted.num();
    let fiber = if fiber_poly.degree().unwrap_or(0) == 0 { Vec::new() } else { fiber_poly.roots()? };
    if fiber.len() != divisor.len() {
        return Err(Error::invalid(format!(
            "fiber over {z} has {} finite points, divisor has {}",
            fiber.len(),
            divisor.len()
        )));
    }
    for (i, p) in fiber.iter().enumerate() {
        for q in &fiber[i + 1..] {
            if (p - q).norm() <= 1e-7 * (1.0 + p.norm()) {
                return Err(Error::RamifiedFiber(format!("{z}")));
            }
        }
    }
    let b = bezout_matrix(&RationalFunction::constant(ONE), &shifted, divisor)?;
    let lefts: Vec<CVec> = fiber.iter().map(|&q| u_vector(divisor, q, Side::Left).map(|u| u.entries)).collect::<Result<_>>()?;
    let rights: Vec<CVec> = fiber.iter().map(|&q| u_vector(divisor, q, Side::Right).map(|u| u.entries)).collect::<Result<_>>()?;
    let m = fiber.len();
    let pairing = CMat::from_fn(m, m, |i, j| (lefts[i].transpose() * &b.matrix * &rights[j])[(0, 0)]);
    let derivatives = fiber.iter().map(|&q| g.derivative_at(q)).collect::<Result<_>>()?;
    Ok(DualityReport { fiber, pairing, derivatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn rf(num: &[f64], den: &[f64]) -> RationalFunction {
        RationalFunction::from_real(num, den).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(cauchy_kernel(c(0.0), c(1.0)).unwrap(), c(1.0));
        assert_eq!(cauchy_kernel(c(1.0), c(0.0)).unwrap(), c(-1.0));
        let p = c(0.3);
        let eps = 1e-7;
        assert!(((cauchy_kernel(p, p + eps).unwrap() * eps) - c(1.0)).norm() < 1e-9);
        assert_eq!(cauchy_kernel(p, p), Err(Error::PoleOnDiagonal));
    }

    #[test]
    fn u_vector_examples() {
        let d = Divisor::real(&[0.0, 1.0]).unwrap();
        let r = u_vector(&d, c(3.0), Side::Right).unwrap();
        assert!((r.entries[0] - c(1.0 / 3.0)).norm() < 1e-15 && (r.entries[1] - c(0.5)).norm() < 1e-15);
        let l = u_vector(&d, c(2.0), Side::Left).unwrap();
        assert!((l.entries[0] - c(-0.5)).norm() < 1e-15 && (l.entries[1] - c(-1.0)).norm() < 1e-15);
        let r2 = u_vector(&d, c(2.0), Side::Right).unwrap();
        assert!((r2.entries + l.entries).norm() < 1e-15);
        assert!(matches!(u_vector(&d, c(1.0), Side::Right), Err(Error::PoleAtDivisor(_))));
    }

    #[test]
    fn alternation_gives_zero() {
        let d = Divisor::real(&[0.0, 1.0]).unwrap();
        let f = rf(&[1.0, 3.0], &[0.0, -1.0, 1.0]);
        assert!(bezout_matrix(&f, &f, &d).unwrap().matrix.norm() < 1e-13);
    }

    #[test]
    fn not_in_ld_errors() {
        let d = Divisor::real(&[0.0]).unwrap();
        let one = RationalFunction::constant(c(1.0));
        // pole at 1 outside D
        assert!(matches!(bezout_matrix(&one, &rf(&[1.0], &[-1.0, 1.0]), &d), Err(Error::NotInLD(_))));
        // pole at infinity
        assert!(matches!(bezout_matrix(&one, &rf(&[0.0, 1.0], &[1.0]), &d), Err(Error::NotInLD(_))));
        // double pole at 0
        assert!(matches!(bezout_matrix(&one, &rf(&[1.0], &[0.0, 0.0, 1.0]), &d), Err(Error::NotInLD(_))));
    }

    #[test]
    fn limit_form_of_identity() {
        // f = 1, g = 1/t: both sides equal g'(2) = −1/4
        let d = Divisor::real(&[0.0]).unwrap();
        let one = RationalFunction::constant(c(1.0));
        let g = rf(&[1.0], &[0.0, 1.0]);
        let b = bezout_matrix(&one, &g, &d).unwrap();
        let ul = u_vector(&d, c(2.0), Side::Left).unwrap().entries;
        let ur = u_vector(&d, c(2.0), Side::Right).unwrap().entries;
        let rhs = (ul.transpose() * &b.matrix * ur)[(0, 0)];
        assert!((rhs - c(-0.25)).norm() < 1e-15);
        assert!(fundamental_identity_residual(&b, &one, &g, c(2.0), c(2.0)).unwrap() < 1e-15);
    }

    #[test]
    fn padding_with_non_poles() {
        let f = rf(&[1.0], &[0.0, 1.0]);
        let g = rf(&[1.0], &[-1.0, 1.0]);
        let small = bezout_matrix(&f, &g, &Divisor::real(&[0.0, 1.0]).unwrap()).unwrap().matrix;
        let big = bezout_matrix(&f, &g, &Divisor::real(&[0.0, 1.0, 5.0]).unwrap()).unwrap().matrix;
        assert!((big.view((0, 0), (2, 2)) - &small).norm() < 1e-14);
        assert!(big.row(2).norm() < 1e-14 && big.column(2).norm() < 1e-14);
    }

    #[test]
    fn ramified_fiber_rejected() {
        // 1/(t(t−1)) has a critical point at t = 1/2 with value −4
        let g = rf(&[1.0], &[0.0, -1.0, 1.0]);
        let d = Divisor::real(&[0.0, 1.0]).unwrap();
        assert!(matches!(duality_report(&g, &d, -4.0), Err(Error::RamifiedFiber(_))));
    }
}
