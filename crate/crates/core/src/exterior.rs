//! Exterior-algebra bookkeeping for tensors in `Λ^{k+1} C^{d+1} ⊗ M_n(C)`.
//!
//! Basis multivectors `e_I` are indexed by strictly increasing index sets.
//! The orientation of `Λ^{d+1} C^{d+1}` is fixed by `e_0 ∧ … ∧ e_d ↦ 1`;
//! every sign in this crate is derived from [`removal_sign`] and
//! [`complement_sign`].

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, CVec, C64, ZERO};
#[cfg(test)]
use crate::linalg::ONE;

/// Strictly increasing subset of `{0, …, d}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(elements: Vec<usize>, d: usize) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("index set {elements:?} is not strictly increasing")));
        }
        if let Some(&last) = elements.last() {
            if last > d {
                return Err(Error::invalid(format!("index {last} out of range 0..={d}")));
            }
        }
        Ok(IndexSet(elements))
    }

    /// Builds from any order; duplicates are rejected.
    pub fn from_unsorted(mut elements: Vec<usize>, d: usize) -> Result<Self> {
        elements.sort_unstable();
        Self::new(elements, d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn without(&self, j: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| x != j).collect())
    }

    pub fn with(&self, j: usize) -> IndexSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&j) {
            v.insert(pos, j);
        }
        IndexSet(v)
    }

    pub fn complement(&self, d: usize) -> IndexSet {
        IndexSet((0..=d).filter(|&j| !self.contains(j)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// All subsets of `{0, …, d}` with `size` elements, in lexicographic order.
pub fn subsets(d: usize, size: usize) -> Vec<IndexSet> {
    (0..=d).combinations(size).map(IndexSet).collect()
}

/// `(-1)^{σ(J,j)}` with `σ(J,j) = |{j' ∈ J : j' > j}|`: the sign of
/// `e_{J∖{j}} ∧ e_j = ± e_J`.
pub fn removal_sign(set: &IndexSet, j: usize) -> Result<i32> {
    if !set.contains(j) {
        return Err(Error::invalid(format!("{j} is not in {set}")));
    }
    let larger = set.0.iter().filter(|&&x| x > j).count();
    Ok(if larger % 2 == 0 { 1 } else { -1 })
}

/// Sign `s` with `e_I ∧ e_{I^c} = s · e_0 ∧ … ∧ e_d`.
pub fn complement_sign(set: &IndexSet, d: usize) -> Result<i32> {
    if set.0.iter().any(|&i| i > d) {
        return Err(Error::invalid(format!("{set} not contained in 0..={d}")));
    }
    // inversions of the permutation (I, I^c): pairs i ∈ I, j ∈ I^c with j < i
    let inversions: usize = set.0.iter().map(|&i| (0..i).filter(|&j| !set.contains(j)).count()).sum();
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Element of `Λ^{k+1} C^{d+1} ⊗ M_n(C)`, stored sparsely (absent key = zero).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTensor {
    d: usize,
    k: usize,
    n: usize,
    entries: BTreeMap<IndexSet, CMat>,
}

impl GammaTensor {
    pub fn zero(d: usize, k: usize, n: usize) -> Result<Self> {
        if k + 1 > d + 1 {
            return Err(Error::invalid(format!("k = {k} too large for d = {d}")));
        }
        Ok(GammaTensor { d, k, n, entries: BTreeMap::new() })
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, index: IndexSet, matrix: CMat) -> Result<()> {
        if index.len() != self.k + 1 {
            return Err(Error::invalid(format!("index {index} must have {} elements", self.k + 1)));
        }
        if index.as_slice().iter().any(|&i| i > self.d) {
            return Err(Error::invalid(format!("index {index} out of range")));
        }
        if matrix.shape() != (self.n, self.n) {
            return Err(Error::invalid(format!(
                "matrix for {index} is {:?}, expected {}x{}",
                matrix.shape(),
                self.n,
                self.n
            )));
        }
        self.entries.insert(index, matrix);
        Ok(())
    }

    /// Convenience setter from a plain index list.
    pub fn set_indices(&mut self, index: &[usize], matrix: CMat) -> Result<()> {
        let set = IndexSet::new(index.to_vec(), self.d)?;
        self.set(set, matrix)
    }

    pub fn get(&self, index: &IndexSet) -> Option<&CMat> {
        self.entries.get(index)
    }

    pub fn entry(&self, index: &IndexSet) -> CMat {
        self.entries.get(index).cloned().unwrap_or_else(|| CMat::zeros(self.n, self.n))
    }

    /// `γ_ij` for a `k = 1` tensor, with `γ_ji = −γ_ij` and `γ_ii = 0`.
    pub fn entry_at(&self, i: usize, j: usize) -> CMat {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.entry(&IndexSet(vec![i, j])),
            Ordering::Greater => -self.entry(&IndexSet(vec![j, i])),
            Ordering::Equal => CMat::zeros(self.n, self.n),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IndexSet, &CMat)> {
        self.entries.iter()
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = (&IndexSet, &mut CMat)> {
        self.entries.iter_mut()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|m| m.iter().all(|z| *z == ZERO))
    }

    /// Largest Frobenius norm over the stored entries.
    pub fn scale(&self) -> f64 {
        self.entries.values().map(|m| m.norm()).fold(0.0, f64::max)
    }

    /// Block direct sum `γ' ⊕ γ''`.
    pub fn direct_sum(&self, other: &GammaTensor) -> Result<GammaTensor> {
        if self.d != other.d || self.k != other.k {
            return Err(Error::invalid("direct sum needs equal (d, k)"));
        }
        let n = self.n + other.n;
        let mut out = GammaTensor::zero(self.d, self.k, n)?;
        for set in subsets(self.d, self.k + 1) {
            let (a, b) = (self.get(&set), other.get(&set));
            if a.is_none() && b.is_none() {
                continue;
            }
            let mut m = CMat::zeros(n, n);
            if let Some(a) = a {
                m.view_mut((0, 0), (self.n, self.n)).copy_from(a);
            }
            if let Some(b) = b {
                m.view_mut((self.n, self.n), (other.n, other.n)).copy_from(b);
            }
            out.set(set, m)?;
        }
        Ok(out)
    }

    fn check_point(&self, mu: &CVec) -> Result<()> {
        if mu.len() != self.d + 1 {
            return Err(Error::invalid(format!("vector has length {}, expected {}", mu.len(), self.d + 1)));
        }
        Ok(())
    }
}

/// Coordinates of a decomposable multivector `v_0 ∧ … ∧ v_{m-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector {
    pub d: usize,
    pub m: usize,
    pub coords: BTreeMap<IndexSet, C64>,
}

impl PluckerVector {
    pub fn get(&self, set: &IndexSet) -> C64 {
        self.coords.get(set).copied().unwrap_or(ZERO)
    }
}

/// `(γ ∧ μ)_J = Σ_{j∈J} (-1)^{σ(J,j)} μ_j γ_{J∖{j}}` for every `|J| = k+2`.
pub fn wedge_point(gamma: &GammaTensor, mu: &CVec) -> Result<BTreeMap<IndexSet, CMat>> {
    gamma.check_point(mu)?;
    if mu.iter().all(|z| *z == ZERO) {
        return Err(Error::invalid("zero vector is not a projective point"));
    }
    let mut out = BTreeMap::new();
    if gamma.k + 2 > gamma.d + 1 {
        return Ok(out);
    }
    for set in subsets(gamma.d, gamma.k + 2) {
        let mut acc = CMat::zeros(gamma.n, gamma.n);
        for &j in set.as_slice() {
            if mu[j] == ZERO {
                continue;
            }
            if let Some(g) = gamma.get(&set.without(j)) {
                let sign = removal_sign(&set, j)? as f64;
                acc += g * (mu[j] * sign);
            }
        }
        out.insert(set, acc);
    }
    Ok(out)
}

/// All blocks of `γ ∧ μ` stacked vertically: a `C(d+1,k+2)·n × n` matrix.
pub fn stacked_wedge(gamma: &GammaTensor, mu: &CVec) -> Result<CMat> {
    let blocks = wedge_point(gamma, mu)?;
    let n = gamma.n;
    let mut out = CMat::zeros(blocks.len() * n, n);
    for (b, m) in blocks.values().enumerate() {
        out.view_mut((b * n, 0), (n, n)).copy_from(m);
    }
    Ok(out)
}

fn check_basis(basis: &[CVec], d: usize, expected: usize) -> Result<CMat> {
    if basis.len() != expected {
        return Err(Error::invalid(format!("expected {expected} basis vectors, got {}", basis.len())));
    }
    if basis.iter().any(|v| v.len() != d + 1) {
        return Err(Error::invalid(format!("basis vectors must have length {}", d + 1)));
    }
    let m = linalg::columns(basis);
    if linalg::rank(&m, 1e-12) < expected {
        return Err(Error::invalid("basis vectors are linearly dependent"));
    }
    Ok(m)
}

/// Maximal minors of the `(d+1) × m` basis matrix.
pub fn plucker_coords(basis: &[CVec]) -> Result<PluckerVector> {
    let d = basis.first().map(|v| v.len()).ok_or_else(|| Error::invalid("empty basis"))? - 1;
    let m = check_basis(basis, d, basis.len())?;
    Ok(plucker_unchecked(&m, d))
}

fn plucker_unchecked(m: &CMat, d: usize) -> PluckerVector {
    let size = m.ncols();
    let mut coords = BTreeMap::new();
    for set in subsets(d, size) {
        let minor = CMat::from_fn(size, size, |r, col| m[(set.as_slice()[r], col)]);
        coords.insert(set, minor.determinant());
    }
    PluckerVector { d, m: size, coords }
}

/// `γ(V) = Σ_{|I|=k+1} (-1)^{σ(I)} p(V)_{I^c} γ_I` for a basis of `d-k` vectors.
pub fn contract_subspace(gamma: &GammaTensor, basis: &[CVec]) -> Result<CMat> {
    let m = check_basis(basis, gamma.d, gamma.d - gamma.k)?;
    Ok(contract_plucker(gamma, &plucker_unchecked(&m, gamma.d)))
}

/// Same contraction, starting from Plücker coordinates of size `d-k`.
pub fn contract_plucker(gamma: &GammaTensor, p: &PluckerVector) -> CMat {
    let mut acc = CMat::zeros(gamma.n, gamma.n);
    for (set, g) in gamma.entries() {
        let coeff = p.get(&set.complement(gamma.d));
        if coeff == ZERO {
            continue;
        }
        let sign = complement_sign(set, gamma.d).expect("stored keys are in range") as f64;
        acc += g * (coeff * sign);
    }
    acc
}

/// `γ(V, i, u)`: the contraction with the `i`-th basis slot replaced by `u`.
pub fn contract_replaced(gamma: &GammaTensor, basis: &[CVec], i: usize, u: &CVec) -> Result<CMat> {
    if i >= basis.len() {
        return Err(Error::invalid(format!("slot {i} out of range for {} basis vectors", basis.len())));
    }
    if basis.len() != gamma.d - gamma.k {
        return Err(Error::invalid(format!("expected {} basis vectors", gamma.d - gamma.k)));
    }
    gamma.check_point(u)?;
    let mut replaced = basis.to_vec();
    replaced[i] = u.clone();
    // dependent replacements are legitimate here and give zero
    let m = linalg::columns(&replaced);
    Ok(contract_plucker(gamma, &plucker_unchecked(&m, gamma.d)))
}

/// Covectors `(a, b)` annihilating a `(d-2)`-plane, normalized so that
/// `a_i b_j − a_j b_i = (-1)^{σ({i,j})} p(V)_{{i,j}^c}` for all `i < j`.
pub fn dual_plucker_pair(basis: &[CVec]) -> Result<(CVec, CVec)> {
    let d = basis.first().map(|v| v.len()).ok_or_else(|| Error::invalid("empty basis"))? - 1;
    if d < 1 {
        return Err(Error::invalid("ambient dimension must be at least 1"));
    }
    let m = check_basis(basis, d, d - 1)?;
    let p = plucker_unchecked(&m, d);

    // annihilator: kernel of the bilinear pairing with every basis vector
    let ann = annihilator(&m);
    let (a, b_raw) = rref_pair(&ann);

    let mut target = Vec::new();
    let mut minors = Vec::new();
    for pair in subsets(d, 2) {
        let (i, j) = (pair.as_slice()[0], pair.as_slice()[1]);
        let sign = complement_sign(&pair, d)? as f64;
        target.push(p.get(&pair.complement(d)) * sign);
        minors.push(a[i] * b_raw[j] - a[j] * b_raw[i]);
    }
    let (best, _) = target
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
        .ok_or_else(|| Error::invalid("no Plücker coordinates"))?;
    let ratio = minors[best] / target[best];
    if ratio.norm() == 0.0 {
        return Err(Error::Calibration("annihilator minors vanish".into()));
    }
    let b = b_raw / ratio;
    let scale = target.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (t, mnr) in target.iter().zip(&minors) {
        if (mnr / ratio - t).norm() > 1e-9 * scale.max(1e-300) {
            return Err(Error::Calibration(format!("minor {} vs Plücker {}", mnr / ratio, t)));
        }
    }
    Ok((a, b))
}

/// Two covectors spanning the annihilator of the column span of `m`
/// (bilinear, no conjugation). Real input gives real output.
fn annihilator(m: &CMat) -> CMat {
    let real = linalg::is_real(m, 0.0);
    if real {
        let re = m.map(|z| z.re).transpose();
        let cols = re.ncols();
        let mut square = nalgebra::DMatrix::<f64>::zeros(cols, cols);
        square.view_mut((0, 0), (re.nrows(), cols)).copy_from(&re);
        let svd = square.svd(false, true);
        let v_t = svd.v_t.unwrap();
        let mut order: Vec<usize> = (0..cols).collect();
        order.sort_by(|&x, &y| svd.singular_values[x].partial_cmp(&svd.singular_values[y]).unwrap());
        CMat::from_fn(2, cols, |r, col| c(v_t[(order[r], col)]))
    } else {
        let k = linalg::kernel(&m.transpose(), 1e-10);
        let cols = m.nrows();
        // kernel of m^T as a map C^{d+1} → C^{d-1}: the columns of k.basis
        CMat::from_fn(2, cols, |r, col| k.basis[(col, r)])
    }
}

/// Reduced row-echelon form of a rank-2, 2-row matrix.
fn rref_pair(m: &CMat) -> (CVec, CVec) {
    let mut rows = [m.row(0).transpose(), m.row(1).transpose()];
    let cols = m.ncols();
    let scale = linalg::max_abs(m);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == 2 {
            break;
        }
        let best = (pivot_row..2).max_by(|&x, &y| rows[x][col].norm().partial_cmp(&rows[y][col].norm()).unwrap()).unwrap();
        if rows[best][col].norm() <= 1e-10 * scale {
            continue;
        }
        rows.swap(pivot_row, best);
        let pv = rows[pivot_row][col];
        rows[pivot_row] /= pv;
        let other = 1 - pivot_row;
        let factor = rows[other][col];
        let pivot = rows[pivot_row].clone();
        rows[other] -= pivot * factor;
        pivot_row += 1;
    }
    for row in rows.iter_mut() {
        let top = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
        row.iter_mut().filter(|z| z.norm() <= 1e-14 * top).for_each(|z| *z = ZERO);
    }
    let [a, b] = rows;
    (a, b)
}

/// `γ'` with every `e_I` replaced by `Λ^{k+1}g · e_I`, i.e.
/// `γ'_J = Σ_I det(g[J, I]) γ_I`. Then `μ ∈ D(γ) ⇔ gμ ∈ D(γ')`.
pub fn transform(gamma: &GammaTensor, g: &CMat) -> Result<GammaTensor> {
    let dim = gamma.d + 1;
    if g.shape() != (dim, dim) {
        return Err(Error::invalid(format!("transform must be {dim}x{dim}")));
    }
    if linalg::rank(g, 1e-12) < dim {
        return Err(Error::invalid("transform matrix is singular"));
    }
    let size = gamma.k + 1;
    let mut out = GammaTensor::zero(gamma.d, gamma.k, gamma.n)?;
    for target in subsets(gamma.d, size) {
        let mut acc = CMat::zeros(gamma.n, gamma.n);
        let mut any = false;
        for (source, m) in gamma.entries() {
            let minor = CMat::from_fn(size, size, |r, col| g[(target.as_slice()[r], source.as_slice()[col])]);
            let det = minor.determinant();
            if det != ZERO {
                acc += m * det;
                any = true;
            }
        }
        if any {
            out.set(target, acc)?;
        }
    }
    Ok(out)
}

/// The tensor for the given list of `(indices, matrix)` pairs.
pub fn gamma_from_entries(d: usize, k: usize, n: usize, entries: Vec<(Vec<usize>, CMat)>) -> Result<GammaTensor> {
    let mut g = GammaTensor::zero(d, k, n)?;
    for (idx, m) in entries {
        g.set_indices(&idx, m)?;
    }
    Ok(g)
}

#[cfg(test)]
pub(crate) fn scalar_matrix(n: usize, value: C64) -> CMat {
    CMat::from_diagonal_element(n, n, value)
}

#[cfg(test)]
pub(crate) fn identity(n: usize) -> CMat {
    scalar_matrix(n, ONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_vec, unit};

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec(), 10).unwrap()
    }

    #[test]
    fn removal_sign_examples() {
        assert_eq!(removal_sign(&set(&[0, 1, 2]), 2).unwrap(), 1);
        assert_eq!(removal_sign(&set(&[0, 1, 2]), 1).unwrap(), -1);
        assert_eq!(removal_sign(&set(&[0, 2, 3]), 0).unwrap(), 1);
        assert!(matches!(removal_sign(&set(&[0, 2]), 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn complement_sign_examples() {
        assert_eq!(complement_sign(&set(&[0, 1]), 2).unwrap(), 1);
        assert_eq!(complement_sign(&set(&[0, 2]), 2).unwrap(), -1);
        assert_eq!(complement_sign(&set(&[1, 2]), 3).unwrap(), 1);
        assert!(complement_sign(&set(&[1, 5]), 3).is_err());
    }

    #[test]
    fn index_set_rejects_unsorted() {
        assert!(IndexSet::new(vec![2, 1], 3).is_err());
        assert!(IndexSet::new(vec![1, 1], 3).is_err());
        assert!(IndexSet::new(vec![1, 4], 3).is_err());
    }

    fn line_tensor() -> GammaTensor {
        gamma_from_entries(2, 1, 1, vec![(vec![0, 1], identity(1))]).unwrap()
    }

    #[test]
    fn wedge_single_term() {
        let w = wedge_point(&line_tensor(), &real_vec(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[&set(&[0, 1, 2])][(0, 0)], ONE);
    }

    #[test]
    fn wedge_plane_curve_formula() {
        // (γ∧μ)_{012} = μ2 γ01 − μ1 γ02 + μ0 γ12 with scalar entries 2, 3, 5
        let g = gamma_from_entries(
            2,
            1,
            1,
            vec![(vec![0, 1], scalar_matrix(1, c(2.0))), (vec![0, 2], scalar_matrix(1, c(3.0))), (vec![1, 2], scalar_matrix(1, c(5.0)))],
        )
        .unwrap();
        let mu = real_vec(&[7.0, 11.0, 13.0]);
        let w = wedge_point(&g, &mu).unwrap();
        let expected = 13.0 * 2.0 - 11.0 * 3.0 + 7.0 * 5.0;
        assert!((w[&set(&[0, 1, 2])][(0, 0)] - c(expected)).norm() < 1e-14);
        let v = contract_subspace(&g, &[mu]).unwrap();
        assert!((v[(0, 0)] - c(expected)).norm() < 1e-14);
    }

    #[test]
    fn wedge_rejects_zero() {
        assert!(wedge_point(&line_tensor(), &CVec::zeros(3)).is_err());
    }

    #[test]
    fn contract_scaling_and_dependence() {
        let g = crate::curves::builtin_example("twisted_cubic").unwrap();
        let b = [unit(4, 1), unit(4, 2)];
        let m = contract_subspace(&g, &b).unwrap();
        let m2 = contract_subspace(&g, &[unit(4, 1) * c(2.0), unit(4, 2)]).unwrap();
        assert!((m2 - &m * c(2.0)).norm() < 1e-14);
        assert!(contract_subspace(&g, &[unit(4, 1), unit(4, 1)]).is_err());
    }

    #[test]
    fn replaced_slot_identities() {
        let g = crate::curves::builtin_example("twisted_cubic").unwrap();
        let b = vec![unit(4, 1), unit(4, 2)];
        let same = contract_replaced(&g, &b, 0, &b[0]).unwrap();
        assert!((same - contract_subspace(&g, &b).unwrap()).norm() < 1e-14);
        let zero = contract_replaced(&g, &b, 0, &(unit(4, 2) * c(3.0))).unwrap();
        assert!(zero.norm() < 1e-14);
        // basis (e0, e2): only p_{02} ≠ 0, I = {1,3}, parity of (1,3,0,2) is odd
        let r = contract_replaced(&g, &b, 0, &unit(4, 0)).unwrap();
        assert!((r + g.entry(&set(&[1, 3]))).norm() < 1e-14);
        assert!(contract_replaced(&g, &b, 2, &unit(4, 0)).is_err());
    }

    #[test]
    fn plucker_examples() {
        let p = plucker_coords(&[unit(4, 1), unit(4, 2)]).unwrap();
        for (s, v) in &p.coords {
            let expected = if s.as_slice() == [1, 2] { ONE } else { ZERO };
            assert_eq!(*v, expected);
        }
        assert!(plucker_coords(&[unit(4, 1), unit(4, 1) * c(2.0)]).is_err());
    }

    #[test]
    fn dual_pair_coordinate_planes() {
        let (a, b) = dual_plucker_pair(&[unit(4, 1), unit(4, 2)]).unwrap();
        assert!((a.clone() - unit(4, 0) * a[0]).norm() < 1e-14);
        assert!((b.clone() - unit(4, 3) * b[3]).norm() < 1e-14);
        let (a, b) = dual_plucker_pair(&[unit(5, 2), unit(5, 3), unit(5, 4)]).unwrap();
        assert!((a.clone() - unit(5, 0) * a[0]).norm() < 1e-14);
        assert!((b.clone() - unit(5, 1) * b[1]).norm() < 1e-14);
        // a0 b1 − a1 b0 = sign({0,1}) p_{234} = 1
        assert!((a[0] * b[1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn transform_examples() {
        let g = crate::curves::builtin_example("twisted_cubic").unwrap();
        let id = identity(4);
        assert_eq!(transform(&g, &id).unwrap().entry(&set(&[0, 3])), g.entry(&set(&[0, 3])));
        let scaled = transform(&g, &scalar_matrix(4, c(3.0))).unwrap();
        for s in subsets(3, 2) {
            assert!((scaled.entry(&s) - g.entry(&s) * c(9.0)).norm() < 1e-12);
        }
        let plane = gamma_from_entries(
            2,
            1,
            1,
            vec![(vec![0, 1], scalar_matrix(1, c(2.0))), (vec![0, 2], scalar_matrix(1, c(3.0))), (vec![1, 2], scalar_matrix(1, c(5.0)))],
        )
        .unwrap();
        let swap = CMat::from_row_slice(3, 3, &[ZERO, ONE, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ONE]);
        let t = transform(&plane, &swap).unwrap();
        assert_eq!(t.entry(&set(&[0, 1]))[(0, 0)], c(-2.0));
        assert_eq!(t.entry(&set(&[0, 2]))[(0, 0)], c(5.0));
        assert_eq!(t.entry(&set(&[1, 2]))[(0, 0)], c(3.0));
        assert!(transform(&g, &CMat::zeros(4, 4)).is_err());
    }
}
