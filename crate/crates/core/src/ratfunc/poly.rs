use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64, ONE, ZERO};

/// Univariate polynomial over C, coefficients in ascending degree.
/// Exact trailing zeros are stripped, so the zero polynomial is `[]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&x| c(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(value: C64) -> Self {
        Poly::new(vec![value])
    }

    /// `t - root`
    pub fn linear(root: C64) -> Self {
        Poly::new(vec![-root, ONE])
    }

    pub fn monomial(degree: usize, coeff: C64) -> Self {
        let mut v = vec![ZERO; degree + 1];
        v[degree] = coeff;
        Poly::new(v)
    }

    pub fn from_roots(roots: &[C64]) -> Self {
        roots.iter().fold(Poly::constant(ONE), |acc, &r| &acc * &Poly::linear(r))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * t + a)
    }

    /// `Σ |a_i| |t|^i`, the natural scale for judging `|p(t)|`.
    pub fn eval_scale(&self, t: C64) -> f64 {
        let r = t.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect())
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let bound = tol * self.norm().max(f64::MIN_POSITIVE);
        self.coeffs.iter().all(|z| z.im.abs() <= bound)
    }

    pub fn real_part(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|z| c(z.re)).collect())
    }

    /// Drops leading coefficients below `rel * ‖p‖`.
    pub fn trimmed(&self, rel: f64) -> Poly {
        let bound = rel * self.norm();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|z| z.norm() <= bound) {
            v.pop();
        }
        Poly::new(v)
    }

    /// Quotient and remainder of division by `t - root`.
    pub fn deflate(&self, root: C64) -> (Poly, C64) {
        let Some(deg) = self.degree() else {
            return (Poly::zero(), ZERO);
        };
        if deg == 0 {
            return (Poly::zero(), self.coeffs[0]);
        }
        let mut q = vec![ZERO; deg];
        let mut carry = ZERO;
        for i in (0..=deg).rev() {
            let val = self.coeffs[i] + carry * root;
            if i == 0 {
                return (Poly::new(q), val);
            }
            q[i - 1] = val;
            carry = val;
        }
        unreachable!()
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![ZERO; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let factor = rem[i + dd] / lead;
            q[i] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= factor * dc;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(q), Poly::new(rem)))
    }

    /// `p((α s + β)/(γ s + δ)) · (γ s + δ)^degree`, a polynomial in `s`.
    pub fn compose_mobius(&self, alpha: C64, beta: C64, gamma: C64, delta: C64, degree: usize) -> Poly {
        let top = Poly::new(vec![beta, alpha]);
        let bottom = Poly::new(vec![delta, gamma]);
        let mut acc = Poly::zero();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let term = &pow(&top, k) * &pow(&bottom, degree - k);
            acc = &acc + &term.scale(a);
        }
        acc
    }

    /// All roots with multiplicity: eigenvalues of the companion matrix,
    /// each refined by one Newton step when that lowers the residual.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let deg = self.degree().ok_or_else(|| Error::invalid("roots of the zero polynomial"))?;
        let zeros = self.coeffs.iter().take_while(|&&z| z == ZERO).count();
        let reduced = Poly::new(self.coeffs[zeros..].to_vec());
        let mut roots = vec![ZERO; zeros];
        let m = deg - zeros;
        if m == 0 {
            return Ok(roots);
        }
        let lead = reduced.leading();
        let mut companion = CMat::zeros(m, m);
        for i in 1..m {
            companion[(i, i - 1)] = ONE;
        }
        for i in 0..m {
            companion[(i, m - 1)] = -reduced.coeffs[i] / lead;
        }
        let found = linalg::eigenvalues(&companion);
        let dp = reduced.derivative();
        for r in found {
            let fr = reduced.eval(r);
            let dfr = dp.eval(r);
            let mut best = r;
            if dfr.norm() > 0.0 {
                let cand = r - fr / dfr;
                if reduced.eval(cand).norm() < fr.norm() {
                    best = cand;
                }
            }
            roots.push(best);
        }
        Ok(roots)
    }
}

fn pow(p: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::constant(ONE), |acc, _| &acc * p)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self.coeffs.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(i, z)| {
            let coeff = if z.im == 0.0 { format!("{}", z.re) } else { format!("({z})") };
            match i {
                0 => coeff,
                1 => format!("{coeff}*t"),
                _ => format!("{coeff}*t^{i}"),
            }
        });
        write!(f, "{}", terms.format(" + "))
    }
}
