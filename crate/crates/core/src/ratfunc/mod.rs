//! Polynomials and rational functions over C in floating point, with the
//! local data the Bezoutian needs at simple poles.

mod dividing;
mod poly;

pub use dividing::{is_dividing, DividingVerdict};
pub use poly::Poly;

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

/// Relative threshold for deciding that a point is a root of a polynomial.
const ROOT_REL: f64 = 1e-9;
/// Relative threshold on `|den'(p)|` below which a pole is not simple.
const SIMPLE_REL: f64 = 1e-7;
/// Denominator roots closer than this (relative) are the same pole.
const MERGE_REL: f64 = 1e-8;

/// `num / den` with `den` monic.
///
/// Functions built from partial fractions also keep that form, so linear
/// combinations and pole expansions of them avoid the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    reduced: bool,
    fractions: Option<Fractions>,
}

/// `constant + Σ residue / (t − pole)` with distinct poles and nonzero residues.
#[derive(Debug, Clone, PartialEq)]
struct Fractions {
    constant: C64,
    terms: Vec<(C64, C64)>,
}

impl Fractions {
    fn pole_index(&self, p: C64) -> Option<usize> {
        self.terms.iter().position(|&(_, q)| same_pole(p, q))
    }
}

fn same_pole(p: C64, q: C64) -> bool {
    (p - q).norm() <= MERGE_REL * (1.0 + q.norm())
}

/// Value of a rational function on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Finite(C64),
    Infinity,
}

impl Value {
    pub fn finite(self) -> Option<C64> {
        match self {
            Value::Finite(z) => Some(z),
            Value::Infinity => None,
        }
    }
}

/// Local data `f(t) = a/(t − pole) + b + O(t − pole)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleExpansion {
    pub pole: C64,
    pub a: C64,
    pub b: C64,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        let lead = den.leading();
        Ok(RationalFunction { num: num.scale(ONE / lead), den: den.scale(ONE / lead), reduced: false, fractions: None })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::constant(ONE), reduced: true, fractions: None }
    }

    pub fn constant(value: C64) -> Self {
        let mut f = Self::from_poly(Poly::constant(value));
        f.fractions = Some(Fractions { constant: value, terms: Vec::new() });
        f
    }

    /// Real coefficients, ascending: `num / den`.
    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(Poly::from_real(num), Poly::from_real(den))?.reduce()
    }

    /// `Σ residue_i / (t − pole_i) + constant`; repeated poles are merged.
    pub fn from_partial_fractions(constant: C64, terms: &[(C64, C64)]) -> Result<Self> {
        let mut fr = Fractions { constant, terms: Vec::new() };
        for &(res, pole) in terms {
            match fr.pole_index(pole) {
                Some(i) => fr.terms[i].0 += res,
                None => fr.terms.push((res, pole)),
            }
        }
        fr.terms.retain(|t| t.0 != C64::new(0.0, 0.0));
        let poles: Vec<C64> = fr.terms.iter().map(|t| t.1).collect();
        let den = Poly::from_roots(&poles);
        let mut num = den.scale(constant);
        for (i, &(res, _)) in fr.terms.iter().enumerate() {
            let others: Vec<C64> = poles.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &p)| p).collect();
            num = &num + &Poly::from_roots(&others).scale(res);
        }
        let mut f = Self::new(num, den)?;
        f.reduced = true;
        f.fractions = Some(fr);
        Ok(f)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Cancels common roots of numerator and denominator.
    pub fn reduce(&self) -> Result<Self> {
        if self.reduced {
            return Ok(self.clone());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Poly::constant(ONE), reduced: true, fractions: self.fractions.clone() });
        }
        loop {
            if den.degree().unwrap_or(0) == 0 || num.degree().unwrap_or(0) == 0 {
                break;
            }
            let common = den.roots()?.into_iter().find(|&r| is_root(&num, r));
            match common {
                Some(r) => {
                    num = num.deflate(r).0;
                    den = den.deflate(r).0;
                }
                None => break,
            }
        }
        let lead = den.leading();
        Ok(RationalFunction { num: num.scale(ONE / lead), den: den.scale(ONE / lead), reduced: true, fractions: self.fractions.clone() })
    }

    /// `max(deg num, deg den)`; zero for constants.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.num.is_real(tol) && self.den.is_real(tol)
    }

    /// Finite poles (roots of the reduced denominator), with multiplicity.
    pub fn poles(&self) -> Result<Vec<C64>> {
        let r = self.reduce()?;
        if r.den.degree() == Some(0) {
            return Ok(Vec::new());
        }
        r.den.roots()
    }

    /// True when `f` has a pole at infinity.
    pub fn pole_at_infinity(&self) -> bool {
        self.num.degree().unwrap_or(0) > self.den.degree().unwrap_or(0)
    }

    pub fn evaluate(&self, t: C64) -> Value {
        let d = self.den.eval(t);
        let n = self.num.eval(t);
        if d.norm() <= 1e-14 * self.den.eval_scale(t) && n.norm() > 1e-14 * self.num.eval_scale(t) {
            Value::Infinity
        } else {
            Value::Finite(n / d)
        }
    }

    /// Finite value or a pole-at-divisor error.
    pub fn value(&self, t: C64) -> Result<C64> {
        self.evaluate(t).finite().ok_or_else(|| Error::PoleAtDivisor(format!("{t}")))
    }

    pub fn derivative_at(&self, t: C64) -> Result<C64> {
        let d = self.den.eval(t);
        if d.norm() <= 1e-14 * self.den.eval_scale(t) {
            return Err(Error::PoleAtDivisor(format!("{t}")));
        }
        let n = self.num.eval(t);
        Ok((self.num.derivative().eval(t) * d - n * self.den.derivative().eval(t)) / (d * d))
    }

    pub fn scale(&self, s: C64) -> Self {
        let fractions = self.fractions.as_ref().map(|fr| Fractions {
            constant: fr.constant * s,
            terms: fr.terms.iter().map(|&(r, p)| (r * s, p)).collect(),
        });
        RationalFunction { num: self.num.scale(s), den: self.den.clone(), reduced: self.reduced || s == ONE, fractions }
    }

    /// Linear combination `Σ c_i f_i` over the least common denominator, reduced.
    pub fn linear_combination(terms: &[(C64, &RationalFunction)]) -> Result<Self> {
        if terms.iter().all(|(_, f)| f.fractions.is_some()) {
            let mut constant = C64::new(0.0, 0.0);
            let mut all = Vec::new();
            for &(coef, f) in terms {
                let fr = f.fractions.as_ref().expect("checked above");
                constant += coef * fr.constant;
                all.extend(fr.terms.iter().map(|&(r, p)| (coef * r, p)));
            }
            return Self::from_partial_fractions(constant, &all);
        }
        let reduced: Vec<(C64, RationalFunction)> = terms.iter().map(|&(coef, f)| Ok((coef, f.reduce()?))).collect::<Result<_>>()?;
        let mut poles: Vec<C64> = Vec::new();
        let mut assignments: Vec<Vec<usize>> = Vec::new();
        for (_, f) in &reduced {
            let mut used = vec![false; poles.len()];
            let mut mine = Vec::new();
            let roots = if f.den.degree().unwrap_or(0) == 0 { Vec::new() } else { f.den.roots()? };
            for r in roots {
                let hit = (0..poles.len()).find(|&i| !used[i] && (poles[i] - r).norm() <= MERGE_REL * (1.0 + r.norm()));
                let i = hit.unwrap_or_else(|| {
                    poles.push(r);
                    used.push(false);
                    poles.len() - 1
                });
                used[i] = true;
                mine.push(i);
            }
            assignments.push(mine);
        }
        let mut num = Poly::zero();
        for ((coef, f), mine) in reduced.iter().zip(&assignments) {
            let rest: Vec<C64> = (0..poles.len()).filter(|i| !mine.contains(i)).map(|i| poles[i]).collect();
            num = &num + &(&f.num * &Poly::from_roots(&rest)).scale(*coef);
        }
        Self::new(num, Poly::from_roots(&poles))?.reduce()
    }

    /// Simple-pole expansion at `p`; `a = 0` when `p` is not a pole.
    pub fn laurent_simple(&self, p: C64) -> Result<PoleExpansion> {
        if let Some(fr) = &self.fractions {
            let hit = fr.pole_index(p);
            let b = fr
                .terms
                .iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != hit)
                .fold(fr.constant, |acc, (_, &(r, q))| acc + r / (p - q));
            let a = hit.map_or(C64::new(0.0, 0.0), |i| fr.terms[i].0);
            return Ok(PoleExpansion { pole: p, a, b });
        }
        let f = self.reduce()?;
        if !is_root(&f.den, p) {
            return Ok(PoleExpansion { pole: p, a: C64::new(0.0, 0.0), b: f.num.eval(p) / f.den.eval(p) });
        }
        let d1 = f.den.derivative();
        let d2 = d1.derivative();
        let dp = d1.eval(p);
        if dp.norm() <= SIMPLE_REL * d1.eval_scale(p).max(f64::MIN_POSITIVE) {
            return Err(Error::UnsupportedPoleOrder(format!("{p}")));
        }
        // den = den'(p)(t−p) + den''(p)/2 (t−p)² + …
        let np = f.num.eval(p);
        let a = np / dp;
        let b = (f.num.derivative().eval(p) * dp - np * d2.eval(p) * 0.5) / (dp * dp);
        Ok(PoleExpansion { pole: p, a, b })
    }

    /// Precomposition with the Möbius map `t = (α s + β)/(γ s + δ)`.
    pub fn precompose_mobius(&self, alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let deg = self.degree();
        let num = self.num.compose_mobius(alpha, beta, gamma, delta, deg);
        let den = self.den.compose_mobius(alpha, beta, gamma, delta, deg);
        Self::new(num, den)?.reduce()
    }

    /// Postcomposition `(α f + β)/(γ f + δ)`.
    pub fn postcompose_mobius(&self, alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let num = &self.num.scale(alpha) + &self.den.scale(beta);
        let den = &self.num.scale(gamma) + &self.den.scale(delta);
        Self::new(num, den)?.reduce()
    }
}

pub(crate) fn is_root(p: &Poly, t: C64) -> bool {
    p.eval(t).norm() <= ROOT_REL * p.eval_scale(t).max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn inv_t() -> RationalFunction {
        RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap()
    }

    #[test]
    fn laurent_examples() {
        let e = inv_t().laurent_simple(c(0.0)).unwrap();
        assert!((e.a - c(1.0)).norm() < 1e-14 && e.b.norm() < 1e-14);

        let f = RationalFunction::from_partial_fractions(c(0.0), &[(c(1.0), c(0.0)), (c(1.0), c(1.0))]).unwrap();
        let e = f.laurent_simple(c(0.0)).unwrap();
        assert!((e.a - c(1.0)).norm() < 1e-12);
        assert!((e.b + c(1.0)).norm() < 1e-12);

        let one = RationalFunction::constant(c(1.0));
        let e = one.laurent_simple(c(4.0)).unwrap();
        assert_eq!((e.a, e.b), (c(0.0), c(1.0)));
    }

    #[test]
    fn double_pole_rejected() {
        let f = RationalFunction::from_real(&[1.0], &[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(f.laurent_simple(c(0.0)), Err(Error::UnsupportedPoleOrder(_))));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(inv_t().evaluate(c(2.0)), Value::Finite(c(0.5)));
        assert_eq!(inv_t().evaluate(c(0.0)), Value::Infinity);
        let f = RationalFunction::from_real(&[-1.0, 1.0], &[-1.0, 1.0]).unwrap();
        assert!(f.is_reduced());
        let v = f.evaluate(c(1.0)).finite().unwrap();
        assert!((v - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn linear_combination_shares_denominators() {
        let f = inv_t();
        let g = RationalFunction::from_real(&[1.0], &[-1.0, 1.0]).unwrap();
        let h = RationalFunction::linear_combination(&[(c(2.0), &f), (c(-1.0), &g)]).unwrap();
        let t = c(3.0);
        let want = 2.0 / 3.0 - 1.0 / 2.0;
        assert!((h.value(t).unwrap() - c(want)).norm() < 1e-14);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let f = RationalFunction::from_real(&[1.0, 2.0], &[3.0, 0.0, 1.0]).unwrap();
        let t = c(0.7);
        let h = 1e-6;
        let fd = (f.value(t + h).unwrap() - f.value(t - h).unwrap()) / (2.0 * h);
        assert!((f.derivative_at(t).unwrap() - fd).norm() < 1e-8);
    }

    #[test]
    fn partial_fractions_stay_exact() {
        let f = RationalFunction::from_partial_fractions(c(0.5), &[(c(2.0), c(1.0)), (c(-1.0), c(3.0))]).unwrap();
        let g = RationalFunction::from_partial_fractions(c(1.0), &[(c(1.0), c(1.0))]).unwrap();
        // 3f − 6g = −4.5 − 3/(t−3): the pole at 1 cancels, h(1) = −4.5 + 1.5
        let h = RationalFunction::linear_combination(&[(c(3.0), &f), (c(-6.0), &g)]).unwrap();
        assert_eq!(h.den().degree(), Some(1));
        let at1 = h.laurent_simple(c(1.0)).unwrap();
        assert_eq!((at1.a, at1.b), (c(0.0), c(-3.0)));
        let at3 = h.laurent_simple(c(3.0)).unwrap();
        assert_eq!((at3.a, at3.b), (c(-3.0), c(-4.5)));
        let expanded = RationalFunction::new(h.num().clone(), h.den().clone()).unwrap();
        let slow = expanded.laurent_simple(c(3.0)).unwrap();
        assert!((slow.a - at3.a).norm() < 1e-12 && (slow.b - at3.b).norm() < 1e-12);
    }
}
