//! JSON file formats for tensors, curves and planes.
//!
//! Complex numbers are written as `[re, im]`; readers also accept a bare
//! real number.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curves::RationalCurveParam;
use crate::error::{Error, Result};
use crate::exterior::{GammaTensor, IndexSet};
use crate::linalg::{CMat, CVec, C64};
use crate::ratfunc::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Real(f64),
    Complex([f64; 2]),
}

impl Number {
    pub fn value(self) -> C64 {
        match self {
            Number::Real(x) => C64::new(x, 0.0),
            Number::Complex([re, im]) => C64::new(re, im),
        }
    }

    pub fn pair(z: C64) -> Self {
        Number::Complex([z.re, z.im])
    }
}

pub fn matrix_to_rows(m: &CMat) -> Vec<Vec<Number>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| Number::pair(m[(i, j)])).collect()).collect()
}

pub fn vector_to_row(v: &CVec) -> Vec<Number> {
    v.iter().map(|&z| Number::pair(z)).collect()
}

fn rows_to_matrix(rows: &[Vec<Number>], n: usize) -> Result<CMat> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::invalid(format!("matrix must be {n}x{n}")));
    }
    Ok(CMat::from_fn(n, n, |i, j| rows[i][j].value()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaEntry {
    #[serde(rename = "I")]
    pub indices: Vec<usize>,
    pub matrix: Vec<Vec<Number>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaFile {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub entries: Vec<GammaEntry>,
}

impl GammaFile {
    pub fn from_gamma(gamma: &GammaTensor) -> Self {
        let entries = gamma
            .entries()
            .map(|(set, m)| GammaEntry { indices: set.as_slice().to_vec(), matrix: matrix_to_rows(m) })
            .collect();
        GammaFile { d: gamma.d(), k: gamma.k(), n: gamma.n(), entries }
    }

    pub fn to_gamma(&self) -> Result<GammaTensor> {
        let mut g = GammaTensor::zero(self.d, self.k, self.n)?;
        for e in &self.entries {
            if e.indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!("index list {:?} is not strictly increasing", e.indices)));
            }
            let set = IndexSet::new(e.indices.clone(), self.d)?;
            if g.get(&set).is_some() {
                return Err(Error::invalid(format!("index list {:?} repeated", e.indices)));
            }
            g.set(set, rows_to_matrix(&e.matrix, self.n)?)?;
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub d: usize,
    pub n: usize,
    pub polys: Vec<Vec<Number>>,
}

impl CurveFile {
    pub fn from_curve(curve: &RationalCurveParam) -> Self {
        let polys = curve.polys().iter().map(|p| p.coeffs().iter().map(|&z| Number::pair(z)).collect()).collect();
        CurveFile { d: curve.d(), n: curve.n(), polys }
    }

    pub fn to_curve(&self) -> Result<RationalCurveParam> {
        if self.polys.len() != self.d + 1 {
            return Err(Error::invalid(format!("expected {} polynomials, found {}", self.d + 1, self.polys.len())));
        }
        let polys = self.polys.iter().map(|p| Poly::new(p.iter().map(|x| x.value()).collect())).collect();
        let curve = RationalCurveParam::new(polys)?;
        if curve.n() != self.n {
            return Err(Error::invalid(format!("declared degree {} but polynomials have degree {}", self.n, curve.n())));
        }
        Ok(curve)
    }
}

/// A list of vectors, e.g. the basis of a plane.
pub fn parse_vectors(values: &[Vec<Number>]) -> Vec<CVec> {
    values.iter().map(|v| CVec::from_iterator(v.len(), v.iter().map(|x| x.value()))).collect()
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed JSON: {e}")))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = to_json(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

/// Pretty printer that renders every float with 17 significant digits.
struct FixedDigits<'a>(serde_json::ser::PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
            self.0.$name(w)
        }
    )*};
}

impl serde_json::ser::Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    delegate!(begin_array, end_array, end_array_value, begin_object, end_object, begin_object_value, end_object_value);
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::invalid(format!("serialization failed: {e}")))?;
    String::from_utf8(buf).map_err(|e| Error::invalid(format!("serialization failed: {e}")))
}
