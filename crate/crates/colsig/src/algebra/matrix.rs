use std::fmt;
use std::ops::{Index, IndexMut};

use serde_json::{json, Value};

use super::scalar::{Complex, Real};
use crate::error::{Error, Result};

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    prec: usize,
    data: Vec<Complex>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize, prec: usize) -> Self {
        CMat { rows, cols, prec, data: vec![Complex::zero(prec); rows * cols] }
    }

    pub fn identity(n: usize, prec: usize) -> Self {
        let mut m = CMat::zeros(n, n, prec);
        for i in 0..n {
            m[(i, i)] = Complex::one(prec);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, prec: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, prec, data }
    }

    pub fn from_f64(rows: usize, cols: usize, prec: usize, entries: &[(f64, f64)]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMat::from_fn(rows, cols, prec, |i, j| {
            let (re, im) = entries[i * cols + j];
            Complex::from_f64(re, im, prec)
        })
    }

    pub fn from_columns(rows: usize, prec: usize, cols: &[Vec<Complex>]) -> Self {
        CMat::from_fn(rows, cols.len(), prec, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn select_columns(&self, range: std::ops::Range<usize>) -> CMat {
        let start = range.start;
        CMat::from_fn(self.rows, range.len(), self.prec, |i, j| self[(i, start + j)].clone())
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> CMat {
        let start = range.start;
        CMat::from_fn(range.len(), self.cols, self.prec, |i, j| self[(start + i, j)].clone())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, self.prec, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, self.prec, |i, j| self[(i, j)].conj())
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, self.prec, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let prec = self.prec.max(rhs.prec);
        let mut out = CMat::zeros(self.rows, rhs.cols, prec);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex::zero(self.prec);
                for (k, x) in v.iter().enumerate() {
                    acc += &(&self[(i, k)] * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, self.prec, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, self.prec, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn neg(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, self.prec, |i, j| -&self[(i, j)])
    }

    pub fn scale(&self, s: &Complex) -> CMat {
        CMat::from_fn(self.rows, self.cols, self.prec, |i, j| &self[(i, j)] * s)
    }

    pub fn hstack(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.rows, rhs.rows);
        let c = self.cols;
        CMat::from_fn(self.rows, c + rhs.cols, self.prec.max(rhs.prec), |i, j| {
            if j < c {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - c)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.cols);
        let r = self.rows;
        CMat::from_fn(r + rhs.rows, self.cols, self.prec.max(rhs.prec), |i, j| {
            if i < r {
                self[(i, j)].clone()
            } else {
                rhs[(i - r, j)].clone()
            }
        })
    }

    pub fn block_diag(&self, rhs: &CMat) -> CMat {
        let (r, c) = (self.rows, self.cols);
        let prec = self.prec.max(rhs.prec);
        CMat::from_fn(r + rhs.rows, c + rhs.cols, prec, |i, j| match (i < r, j < c) {
            (true, true) => self[(i, j)].clone(),
            (false, false) => rhs[(i - r, j - c)].clone(),
            _ => Complex::zero(prec),
        })
    }

    /// Largest entry magnitude (max of |re|, |im|).
    pub fn max_mag(&self) -> Real {
        self.data.iter().fold(Real::zero(self.prec), |m, z| m.max(z.mag()))
    }

    /// Largest entry magnitude, floored at 1.
    pub fn scale_floor(&self) -> Real {
        self.max_mag().max(Real::one(self.prec))
    }

    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        self.sub(rhs).max_mag().to_f64()
    }

    pub fn with_precision(&self, prec: usize) -> CMat {
        CMat { rows: self.rows, cols: self.cols, prec, data: self.data.iter().map(|z| z.with_precision(prec)).collect() }
    }

    pub fn to_f64(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].to_f64_pair()).collect()).collect()
    }

    /// `{rows, cols, entries: [[re, im], ...]}` with row-major entries.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.data.iter().map(|z| json!([z.re.to_f64(), z.im.to_f64()])).collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn from_json(v: &Value, prec: usize) -> Result<CMat> {
        let bad = |m: &str| Error::Parse(format!("matrix json: {m}"));
        let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| bad("missing rows"))? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("missing cols"))? as usize;
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows * cols {
            return Err(bad("entry count does not match shape"));
        }
        let mut data = Vec::with_capacity(entries.len());
        for e in entries {
            let z = match e {
                Value::Number(n) => Complex::from_f64(n.as_f64().unwrap_or(0.0), 0.0, prec),
                Value::Array(p) if p.len() == 2 => {
                    let re = p[0].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
                    let im = p[1].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
                    Complex::from_f64(re, im, prec)
                }
                _ => return Err(bad("entries must be [re, im] pairs")),
            };
            data.push(z);
        }
        Ok(CMat { rows, cols, prec, data })
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} @{}", self.rows, self.cols, self.prec)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let (re, im) = self[(i, j)].to_f64_pair();
                    format!("{re:+.6}{im:+.6}i")
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
