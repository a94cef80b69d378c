//! Colored Gassner representation and the forms ξ_c.
//!
//! The unreduced matrices come from Fox calculus on the Artin action, with
//! the variable of strand j set to t_{|c_j|}^{sgn c_j}. They satisfy
//! U·u(top) = u(bottom) for u_j = τ_j − 1 and multiply left to right along
//! the word.
//!
//! The reduced matrices are written in the basis
//!   w_j = ŷ_j − ŷ_{j+1}                                   (|c_j| = |c_{j+1}|)
//!   w_j = (1 − t_{|c_{j+1}|}) ŷ_j − (1 − t_{|c_j|}) ŷ_{j+1}   (otherwise)
//! with ŷ_j = ẽ_j for positive strands and ŷ_j = −t_{|c_j|} ẽ_j for negative
//! ones. Row-wise restriction gives R with W_c·U = R·W_{c'}; the exported
//! matrix is B = Rᵀ, which acts on columns, is unitary in the sense
//! Bᵀ ξ B̄ = ξ, and composes as B(w₁w₂) = B(w₂)·B(w₁).

use std::ops::Index;

use serde_json::{json, Value};

use crate::algebra::{CMat, Complex, LaurentPoly, TorusPoint};
use crate::braid::{BraidWord, Coloring, Letter};
use crate::ctx::Ctx;
use crate::error::{Error, Result};

/// Dense matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct LMat {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<LaurentPoly>,
}

impl LMat {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LMat { rows, cols, nvars, data: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = LMat::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn mul(&self, rhs: &LMat) -> LMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = LMat::zeros(self.rows, rhs.cols, self.nvars);
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
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> LMat {
        let mut out = LMat::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self[(i, j)].clone());
            }
        }
        out
    }

    /// Conjugate transpose under t_i ↦ t_i⁻¹.
    pub fn adjoint(&self) -> LMat {
        let mut out = LMat::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self[(i, j)].bar());
            }
        }
        out
    }

    pub fn evaluate_values(&self, values: &[Complex], prec: usize) -> CMat {
        CMat::from_fn(self.rows, self.cols, prec, |i, j| self[(i, j)].evaluate_values(values, prec))
    }

    pub fn evaluate(&self, point: &TorusPoint, prec: usize) -> Result<CMat> {
        if point.num_vars() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, point.num_vars()));
        }
        Ok(self.evaluate_values(&point.values(prec), prec))
    }

    /// `{rows, cols, entries: ["t1 - 1", ...]}` with row-major entries.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.data.iter().map(|p| Value::String(p.to_string())).collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }
}

impl Index<(usize, usize)> for LMat {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnreducedRep {
    pub coloring: Coloring,
    pub top: Coloring,
    pub matrix: LMat,
}

/// Reduced matrix B at a torus point, acting on columns.
#[derive(Debug, Clone)]
pub struct ReducedRep {
    pub coloring: Coloring,
    pub top: Coloring,
    pub point: TorusPoint,
    pub matrix: CMat,
}

/// Reduced matrix over Λ for single-colored words.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicReducedRep {
    pub coloring: Coloring,
    pub top: Coloring,
    pub matrix: LMat,
}

#[derive(Debug, Clone)]
pub struct XiForm {
    pub coloring: Coloring,
    pub point: TorusPoint,
    pub matrix: CMat,
}

fn strand_var(c: &Coloring, j: usize) -> LaurentPoly {
    LaurentPoly::var(c.mu(), c.color(j) - 1, c.sign(j))
}

/// u_j = τ_j − 1.
pub fn fox_vector(c: &Coloring) -> Vec<LaurentPoly> {
    let one = LaurentPoly::one(c.mu());
    (0..c.len()).map(|j| &strand_var(c, j) - &one).collect()
}

fn letter_unreduced_symbolic(c: &Coloring, l: Letter) -> LMat {
    let n = c.len();
    let nv = c.mu();
    let i = l.pos();
    let mut m = LMat::identity(n, nv);
    let one = LaurentPoly::one(nv);
    let zero = LaurentPoly::zero(nv);
    if l.sign > 0 {
        let (a, b) = (strand_var(c, i), strand_var(c, i + 1));
        m.set(i, i, &one - &a);
        m.set(i, i + 1, b);
        m.set(i + 1, i, one);
        m.set(i + 1, i + 1, zero);
    } else {
        let ainv = LaurentPoly::var(nv, c.color(i) - 1, -c.sign(i));
        let b = strand_var(c, i + 1);
        m.set(i, i, zero);
        m.set(i, i + 1, one.clone());
        m.set(i + 1, i, ainv.clone());
        m.set(i + 1, i + 1, &(&b - &one) * &ainv);
    }
    m
}

pub fn unreduced_burau(w: &BraidWord) -> UnreducedRep {
    let mut c = w.bottom().clone();
    let mut m = LMat::identity(c.len(), c.mu());
    for &l in w.letters() {
        m = m.mul(&letter_unreduced_symbolic(&c, l));
        c = c.swapped(l.pos());
    }
    UnreducedRep { coloring: w.bottom().clone(), top: c, matrix: m }
}

/// Fails with `EvaluationAtOne` when ω_i = 1 on a color that occurs in `c`.
pub fn check_evaluable(c: &Coloring, point: &TorusPoint) -> Result<()> {
    if point.num_vars() != c.mu() {
        return Err(Error::VarMismatch(c.mu(), point.num_vars()));
    }
    for i in c.occurring() {
        if point.is_one(i - 1) {
            return Err(Error::EvaluationAtOne(i));
        }
    }
    Ok(())
}

fn strand_value(c: &Coloring, j: usize, vals: &[Complex]) -> Complex {
    let v = &vals[c.color(j) - 1];
    if c.sign(j) > 0 {
        v.clone()
    } else {
        v.conj()
    }
}

fn letter_unreduced(c: &Coloring, l: Letter, vals: &[Complex], prec: usize) -> CMat {
    let i = l.pos();
    let mut m = CMat::identity(c.len(), prec);
    let one = Complex::one(prec);
    if l.sign > 0 {
        m[(i, i)] = &one - &strand_value(c, i, vals);
        m[(i, i + 1)] = strand_value(c, i + 1, vals);
        m[(i + 1, i)] = one;
        m[(i + 1, i + 1)] = Complex::zero(prec);
    } else {
        let ainv = strand_value(c, i, vals).conj();
        m[(i, i)] = Complex::zero(prec);
        m[(i, i + 1)] = one.clone();
        m[(i + 1, i + 1)] = &(&strand_value(c, i + 1, vals) - &one) * &ainv;
        m[(i + 1, i)] = ainv;
    }
    m
}

fn unit_s(c: &Coloring, j: usize, vals: &[Complex]) -> Complex {
    if c.sign(j) > 0 {
        Complex::one(vals[0].precision())
    } else {
        -&vals[c.color(j) - 1]
    }
}

/// Bidiagonal basis: row j holds (α_j at column j, −β_j at column j+1).
fn basis_coeffs(c: &Coloring, vals: &[Complex]) -> Vec<(Complex, Complex)> {
    let prec = vals[0].precision();
    let one = Complex::one(prec);
    (0..c.len().saturating_sub(1))
        .map(|j| {
            let (sj, sk) = (unit_s(c, j, vals), unit_s(c, j + 1, vals));
            if c.color(j) == c.color(j + 1) {
                (sj, sk)
            } else {
                let a = &(&one - &vals[c.color(j + 1) - 1]) * &sj;
                let b = &(&one - &vals[c.color(j) - 1]) * &sk;
                (a, b)
            }
        })
        .collect()
}

/// Rows are the reduced basis vectors in ẽ-coordinates.
pub fn basis_matrix(c: &Coloring, point: &TorusPoint, prec: usize) -> Result<CMat> {
    check_evaluable(c, point)?;
    Ok(basis_from_coeffs(c.len(), &basis_coeffs(c, &point.values(prec)), prec))
}

fn basis_from_coeffs(n: usize, co: &[(Complex, Complex)], prec: usize) -> CMat {
    let mut w = CMat::zeros(n.saturating_sub(1), n, prec);
    for (j, (a, b)) in co.iter().enumerate() {
        w[(j, j)] = a.clone();
        w[(j, j + 1)] = -b;
    }
    w
}

/// Solves W_c·U = R·W_{ct} for R by forward substitution.
fn restrict(c: &Coloring, u: &CMat, ct: &Coloring, vals: &[Complex], ctx: &Ctx) -> Result<CMat> {
    let n = c.len();
    let m = n.saturating_sub(1);
    let prec = ctx.bits;
    if m == 0 {
        return Ok(CMat::zeros(0, 0, prec));
    }
    let a = basis_from_coeffs(n, &basis_coeffs(c, vals), prec).mul(u);
    let co = basis_coeffs(ct, vals);
    let mut r = CMat::zeros(m, m, prec);
    for row in 0..m {
        for k in 0..m {
            // A[row,k] = R[row,k]·α_k − R[row,k−1]·β_{k−1}
            let mut rhs = a[(row, k)].clone();
            if k > 0 {
                rhs += &(&r[(row, k - 1)] * &co[k - 1].1);
            }
            r[(row, k)] = &rhs / &co[k].0;
        }
    }
    let mut resid = crate::algebra::Real::zero(prec);
    for row in 0..m {
        let res = &a[(row, m)] + &(&r[(row, m - 1)] * &co[m - 1].1);
        resid = resid.max(res.mag());
    }
    let scale = a.scale_floor();
    if resid > &ctx.tol_real() * &scale {
        return Err(Error::SubspaceNotInvariant(resid.to_f64()));
    }
    Ok(r)
}

/// Row-convention matrix R of one letter at bottom coloring `c`.
pub fn letter_row_matrix(c: &Coloring, l: Letter, vals: &[Complex], ctx: &Ctx) -> Result<CMat> {
    let u = letter_unreduced(c, l, vals, ctx.bits);
    restrict(c, &u, &c.swapped(l.pos()), vals, ctx)
}

/// Row-convention matrix R of a word (R(w₁w₂) = R(w₁)R(w₂)).
pub fn word_row_matrix(w: &BraidWord, vals: &[Complex], ctx: &Ctx) -> Result<CMat> {
    let mut c = w.bottom().clone();
    let mut r = CMat::identity(c.len().saturating_sub(1), ctx.bits);
    for &l in w.letters() {
        r = r.mul(&letter_row_matrix(&c, l, vals, ctx)?);
        c = c.swapped(l.pos());
    }
    Ok(r)
}

/// Evaluates and restricts a symbolic unreduced matrix.
pub fn reduce(u: &UnreducedRep, point: &TorusPoint, ctx: &Ctx) -> Result<ReducedRep> {
    check_evaluable(&u.coloring, point)?;
    let vals = point.values(ctx.bits);
    let um = u.matrix.evaluate_values(&vals, ctx.bits);
    let r = restrict(&u.coloring, &um, &u.top, &vals, ctx)?;
    Ok(ReducedRep { coloring: u.coloring.clone(), top: u.top.clone(), point: point.clone(), matrix: r.transpose() })
}

/// B_ω(w), computed letter by letter.
pub fn reduced_burau(w: &BraidWord, point: &TorusPoint, ctx: &Ctx) -> Result<ReducedRep> {
    check_evaluable(w.bottom(), point)?;
    let vals = point.values(ctx.bits);
    let r = word_row_matrix(w, &vals, ctx)?;
    Ok(ReducedRep { coloring: w.bottom().clone(), top: w.top(), point: point.clone(), matrix: r.transpose() })
}

fn single_color(c: &Coloring) -> Result<usize> {
    let occ = c.occurring();
    if occ.len() != 1 {
        return Err(Error::UnsupportedColoring(format!("symbolic reduction needs a single color, got {c}")));
    }
    Ok(occ[0])
}

/// Symbolic reduced matrix for single-colored words; exact since the
/// diagonal of the basis consists of units ±t^k.
pub fn reduce_symbolic(u: &UnreducedRep) -> Result<SymbolicReducedRep> {
    let color = single_color(&u.coloring)?;
    let n = u.coloring.len();
    let m = n.saturating_sub(1);
    let nv = u.coloring.mu();
    let s = |c: &Coloring, j: usize| -> (LaurentPoly, LaurentPoly) {
        if c.sign(j) > 0 {
            (LaurentPoly::one(nv), LaurentPoly::one(nv))
        } else {
            let t = LaurentPoly::var(nv, color - 1, 1);
            let tinv = LaurentPoly::var(nv, color - 1, -1);
            (-&t, -&tinv)
        }
    };
    let mut wc = LMat::zeros(m, n, nv);
    for j in 0..m {
        wc.set(j, j, s(&u.coloring, j).0);
        wc.set(j, j + 1, -&s(&u.coloring, j + 1).0);
    }
    let a = wc.mul(&u.matrix);
    let mut r = LMat::zeros(m, m, nv);
    for row in 0..m {
        let mut prev = LaurentPoly::zero(nv);
        for k in 0..m {
            let mut rhs = a[(row, k)].clone();
            if k > 0 {
                rhs = &rhs + &(&prev * &s(&u.top, k).0);
            }
            let v = &rhs * &s(&u.top, k).1;
            prev = v.clone();
            r.set(row, k, v);
        }
        if m > 0 {
            let res = &a[(row, m)] + &(&prev * &s(&u.top, m).0);
            if !res.is_zero() {
                return Err(Error::SubspaceNotInvariant(f64::INFINITY));
            }
        }
    }
    Ok(SymbolicReducedRep { coloring: u.coloring.clone(), top: u.top.clone(), matrix: r.transpose() })
}

/// Symbolic basis vectors in ẽ-coordinates.
fn symbolic_basis(c: &Coloring) -> Vec<Vec<LaurentPoly>> {
    let n = c.len();
    let nv = c.mu();
    let one = LaurentPoly::one(nv);
    let s = |j: usize| {
        if c.sign(j) > 0 {
            one.clone()
        } else {
            -&LaurentPoly::var(nv, c.color(j) - 1, 1)
        }
    };
    (0..n.saturating_sub(1))
        .map(|j| {
            let mut v = vec![LaurentPoly::zero(nv); n];
            if c.color(j) == c.color(j + 1) {
                v[j] = s(j);
                v[j + 1] = -&s(j + 1);
            } else {
                let tk = LaurentPoly::var(nv, c.color(j + 1) - 1, 1);
                let tj = LaurentPoly::var(nv, c.color(j) - 1, 1);
                v[j] = &(&one - &tk) * &s(j);
                v[j + 1] = -&(&(&one - &tj) * &s(j + 1));
            }
            v
        })
        .collect()
}

/// Intersection pairing on the fat graph of the punctured disk. Half-edges
/// run out₁, in₁, …, out_n, in_n counterclockwise; a chain with ẽ-coordinates
/// x carries flow x_k on out_k and −τ_k x_k on in_k.
fn xi_pair_symbolic(c: &Coloring, x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentPoly {
    let nv = c.mu();
    let flows = |v: &[LaurentPoly]| -> Vec<LaurentPoly> {
        let mut f = Vec::with_capacity(2 * v.len());
        for (k, a) in v.iter().enumerate() {
            f.push(a.clone());
            f.push(-&(&strand_var(c, k) * a));
        }
        f
    };
    let (fx, fy) = (flows(x), flows(y));
    let mut acc = LaurentPoly::zero(nv);
    let mut prefix = LaurentPoly::zero(nv);
    for (q, yq) in fy.iter().enumerate() {
        let is_out = q % 2 == 0;
        if is_out {
            prefix = &prefix + &fx[q];
        }
        if !yq.is_zero() && !prefix.is_zero() {
            acc = &acc + &(&prefix * &yq.bar());
        }
        if !is_out {
            prefix = &prefix + &fx[q];
        }
    }
    acc
}

/// ξ_c over Λ_μ in the reduced basis.
pub fn xi_symbolic(c: &Coloring) -> LMat {
    let b = symbolic_basis(c);
    let m = b.len();
    let mut out = LMat::zeros(m, m, c.mu());
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, xi_pair_symbolic(c, &b[i], &b[j]));
        }
    }
    out
}

/// ξ_c(ω).
pub fn xi_form(c: &Coloring, point: &TorusPoint, ctx: &Ctx) -> Result<XiForm> {
    check_evaluable(c, point)?;
    let matrix = xi_symbolic(c).evaluate(point, ctx.bits)?;
    Ok(XiForm { coloring: c.clone(), point: point.clone(), matrix })
}
