//! Hermitian and skew-Hermitian form calculus over ℂ.
//!
//! Forms are evaluated as ξ(a, b) = aᵀ M b̄: linear in the first argument,
//! conjugate-linear in the second. Subspaces are stored by a basis in
//! reduced column-echelon form.

use crate::algebra::{CMat, Complex, Real};
use crate::ctx::Ctx;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Hermitian,
    SkewHermitian,
}

#[derive(Debug, Clone)]
pub struct FormMatrix {
    pub matrix: CMat,
    pub kind: FormKind,
}

impl FormMatrix {
    /// Checks M* = M (or M* = −M) within tolerance.
    pub fn new(matrix: CMat, kind: FormKind, ctx: &Ctx) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension("form matrix must be square".into()));
        }
        let target = match kind {
            FormKind::Hermitian => matrix.clone(),
            FormKind::SkewHermitian => matrix.neg(),
        };
        let dev = matrix.adjoint().sub(&target).max_mag();
        if dev > &ctx.tol_real() * &matrix.scale_floor() {
            return Err(Error::Dimension(format!("matrix is not {kind:?} (deviation {dev:?})")));
        }
        Ok(FormMatrix { matrix, kind })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// ξ(a, b) = aᵀ M b̄.
    pub fn eval(&self, a: &[Complex], b: &[Complex]) -> Complex {
        pair(&self.matrix, a, b)
    }
}

/// aᵀ M b̄.
pub fn pair(m: &CMat, a: &[Complex], b: &[Complex]) -> Complex {
    let bc: Vec<Complex> = b.iter().map(Complex::conj).collect();
    let mb = m.mul_vec(&bc);
    let mut acc = Complex::zero(m.precision());
    for (x, y) in a.iter().zip(&mb) {
        acc += &(x * y);
    }
    acc
}

/// Gram matrix Aᵀ M B̄ of the columns of `a` against the columns of `b`.
pub fn gram(m: &CMat, a: &CMat, b: &CMat) -> CMat {
    a.transpose().mul(&m.mul(&b.conj()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }
}

/// Result of Gauss–Jordan elimination with complete pivoting.
#[derive(Debug, Clone)]
pub struct Elim {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    pub reduced: CMat,
}

/// Gauss–Jordan elimination choosing pivots among the first `pivot_cols`
/// columns only; remaining columns ride along as right-hand sides.
pub fn gauss_jordan(m: &CMat, pivot_cols: usize, ctx: &Ctx) -> Result<Elim> {
    let (rows, prec) = (m.rows(), m.precision());
    let mut a = m.clone();
    let scale = m.select_columns(0..pivot_cols).scale_floor();
    let mut pivots = Vec::new();
    let mut used = vec![false; pivot_cols];
    for r in 0..rows.min(pivot_cols) {
        let mut best: Option<(usize, usize, Real)> = None;
        for i in r..rows {
            for j in (0..pivot_cols).filter(|&j| !used[j]) {
                let mag = a[(i, j)].mag();
                if best.as_ref().is_none_or(|(_, _, b)| mag > *b) {
                    best = Some((i, j, mag));
                }
            }
        }
        let Some((pi, pj, mag)) = best else { break };
        if !ctx.decide(&mag, &scale)? {
            break;
        }
        if pi != r {
            for j in 0..a.cols() {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(pi, j)].clone();
                a[(pi, j)] = tmp;
            }
        }
        let inv = a[(r, pj)].inv();
        for j in 0..a.cols() {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in (0..rows).filter(|&i| i != r) {
            let f = a[(i, pj)].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..a.cols() {
                let d = &f * &a[(r, j)];
                a[(i, j)] -= &d;
            }
            a[(i, pj)] = Complex::zero(prec);
        }
        used[pj] = true;
        pivots.push(pj);
    }
    Ok(Elim { rank: pivots.len(), pivots, reduced: a })
}

pub fn rank(m: &CMat, ctx: &Ctx) -> Result<usize> {
    Ok(gauss_jordan(m, m.cols(), ctx)?.rank)
}

/// Basis of {x : M x = 0} as columns.
pub fn null_space(m: &CMat, ctx: &Ctx) -> Result<CMat> {
    let (n, prec) = (m.cols(), m.precision());
    let e = gauss_jordan(m, n, ctx)?;
    let free: Vec<usize> = (0..n).filter(|j| !e.pivots.contains(j)).collect();
    let mut out = CMat::zeros(n, free.len(), prec);
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = Complex::one(prec);
        for (r, &p) in e.pivots.iter().enumerate() {
            out[(p, k)] = -&e.reduced[(r, f)];
        }
    }
    Ok(out)
}

/// Solves A X = B for square nonsingular A.
pub fn solve(a: &CMat, b: &CMat, ctx: &Ctx) -> Result<CMat> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n {
        return Err(Error::Dimension("solve expects a square system".into()));
    }
    let e = gauss_jordan(&a.hstack(b), n, ctx)?;
    if e.rank < n {
        return Err(Error::Singular);
    }
    let mut x = CMat::zeros(n, b.cols(), a.precision());
    for (r, &p) in e.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = e.reduced[(r, n + j)].clone();
        }
    }
    Ok(x)
}

pub fn inverse(a: &CMat, ctx: &Ctx) -> Result<CMat> {
    solve(a, &CMat::identity(a.rows(), a.precision()), ctx)
}

/// A particular solution of A x = b, or `NotInSum` if none exists.
pub fn solve_consistent(a: &CMat, b: &[Complex], ctx: &Ctx) -> Result<Vec<Complex>> {
    let k = a.cols();
    let prec = a.precision();
    let col = CMat::from_columns(a.rows(), prec, &[b.to_vec()]);
    let e = gauss_jordan(&a.hstack(&col), k, ctx)?;
    let scale = a.scale_floor().max(col.max_mag());
    let mut resid = Real::zero(prec);
    for r in e.rank..a.rows() {
        resid = resid.max(e.reduced[(r, k)].mag());
    }
    if ctx.decide(&resid, &scale)? {
        return Err(Error::NotInSum(resid.to_f64()));
    }
    let mut x = vec![Complex::zero(prec); k];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.reduced[(r, k)].clone();
    }
    Ok(x)
}

/// Subspace of ℂ^ambient with a canonical basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: CMat,
}

impl Subspace {
    pub fn zero(ambient: usize, prec: usize) -> Self {
        Subspace { ambient, basis: CMat::zeros(ambient, 0, prec) }
    }

    pub fn full(ambient: usize, prec: usize) -> Self {
        Subspace { ambient, basis: CMat::identity(ambient, prec) }
    }

    /// Span of the columns of `vectors`, canonicalized.
    pub fn span(vectors: &CMat, ctx: &Ctx) -> Result<Self> {
        let ambient = vectors.rows();
        let prec = vectors.precision();
        let scale = vectors.scale_floor();
        // normalize columns so the echelon decisions are scale free
        let mut cols = Vec::new();
        for j in 0..vectors.cols() {
            let v = vectors.column(j);
            let mag = v.iter().fold(Real::zero(prec), |m, z| m.max(z.mag()));
            if ctx.classify(&mag, &scale) == Some(false) {
                continue;
            }
            let inv = Complex::new(Real::one(prec) / &mag, Real::zero(prec));
            cols.push(v.iter().map(|z| z * &inv).collect::<Vec<_>>());
        }
        let m = CMat::from_columns(ambient, prec, &cols).transpose();
        let rows = echelon_rows(&m, ctx)?;
        Ok(Subspace { ambient, basis: rows.transpose() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Columns are the canonical basis.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace, ctx: &Ctx) -> Result<Subspace> {
        self.check(other)?;
        Subspace::span(&self.basis.hstack(&other.basis), ctx)
    }

    pub fn intersect(&self, other: &Subspace, ctx: &Ctx) -> Result<Subspace> {
        self.check(other)?;
        let n = null_space(&self.basis.hstack(&other.basis.neg()), ctx)?;
        let coeffs = n.select_rows(0..self.dim());
        Subspace::span(&self.basis.mul(&coeffs), ctx)
    }

    pub fn contains(&self, v: &[Complex], ctx: &Ctx) -> Result<bool> {
        match solve_consistent(&self.basis, v, ctx) {
            Ok(_) => Ok(true),
            Err(Error::NotInSum(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Equality of canonical bases within `tol`.
    pub fn approx_eq(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.basis.max_abs_diff(&other.basis) <= tol
    }

    /// Same subspace with its basis carried at `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Subspace {
        Subspace { ambient: self.ambient, basis: self.basis.with_precision(prec) }
    }

    /// Image under a linear map.
    pub fn image(&self, map: &CMat, ctx: &Ctx) -> Result<Subspace> {
        Subspace::span(&map.mul(&self.basis), ctx)
    }
}

/// Reduced row-echelon form with leftmost pivots; returns the nonzero rows.
fn echelon_rows(m: &CMat, ctx: &Ctx) -> Result<CMat> {
    let (rows, cols, prec) = (m.rows(), m.cols(), m.precision());
    let mut a = m.clone();
    let scale = m.scale_floor();
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        let (mut pi, mut best) = (r, a[(r, j)].mag());
        for i in r + 1..rows {
            let mag = a[(i, j)].mag();
            if mag > best {
                pi = i;
                best = mag;
            }
        }
        if !ctx.decide(&best, &scale)? {
            for i in r..rows {
                a[(i, j)] = Complex::zero(prec);
            }
            continue;
        }
        if pi != r {
            for c in 0..cols {
                let tmp = a[(r, c)].clone();
                a[(r, c)] = a[(pi, c)].clone();
                a[(pi, c)] = tmp;
            }
        }
        let inv = a[(r, j)].inv();
        for c in 0..cols {
            a[(r, c)] = &a[(r, c)] * &inv;
        }
        a[(r, j)] = Complex::one(prec);
        for i in (0..rows).filter(|&i| i != r) {
            let f = a[(i, j)].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..cols {
                let d = &f * &a[(r, c)];
                a[(i, c)] -= &d;
            }
            a[(i, j)] = Complex::zero(prec);
        }
        r += 1;
    }
    Ok(a.select_rows(0..r))
}

pub fn subspace_sum(u: &Subspace, v: &Subspace, ctx: &Ctx) -> Result<Subspace> {
    u.sum(v, ctx)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace, ctx: &Ctx) -> Result<Subspace> {
    u.intersect(v, ctx)
}

/// Writes a = a₁ + a₂ with a₁ ∈ U and a₂ ∈ V.
pub fn decompose(a: &[Complex], u: &Subspace, v: &Subspace, ctx: &Ctx) -> Result<(Vec<Complex>, Vec<Complex>)> {
    u.check(v)?;
    if a.len() != u.ambient {
        return Err(Error::Dimension("vector length differs from ambient dimension".into()));
    }
    let x = solve_consistent(&u.basis.hstack(&v.basis), a, ctx)?;
    let a1 = u.basis.mul_vec(&x[..u.dim()]);
    let a2 = v.basis.mul_vec(&x[u.dim()..]);
    Ok((a1, a2))
}

/// True iff the form vanishes on L within tolerance.
pub fn is_isotropic(l: &Subspace, xi: &CMat, ctx: &Ctx) -> bool {
    if l.dim() == 0 {
        return true;
    }
    let g = gram(xi, l.basis(), l.basis());
    let scale = xi.scale_floor();
    g.max_mag() <= &ctx.tol_real() * &scale
}

/// Inertia of a Hermitian matrix. Eigenvalues within tol·scale of zero are
/// null; any eigenvalue in the band (tol, 10·tol]·scale reports `NearWall`.
pub fn hermitian_inertia(m: &CMat, ctx: &Ctx) -> Result<Inertia> {
    let n = m.rows();
    if n == 0 {
        return Ok(Inertia::default());
    }
    let prec = m.precision();
    let half = Real::one(prec) / Real::from_i64(2, prec);
    let h = m.add(&m.adjoint()).scale(&Complex::new(half, Real::zero(prec)));
    let scale = h.scale_floor();
    let (d, e2) = tridiagonalize(h);
    let t = &ctx.tol_real() * &scale;
    let t10 = &t * &Real::from_i64(10, prec);
    let tiny = &(&t * &t) * &Real::from_f64(1e-30, prec);
    let below = |s: &Real| sturm_count(&d, &e2, s, &tiny);
    let (a, b, c, e) = (below(&-t10.clone()), below(&-t.clone()), below(&t), below(&t10));
    if a != b || c != e {
        return Err(Error::NearWall(ctx.bits));
    }
    Ok(Inertia { pos: n - c, neg: b, null: c - b })
}

/// Escalating wrapper around [`hermitian_inertia`]; errors with
/// `PrecisionExhausted` at the cap.
pub fn hermitian_signature(m: &FormMatrix, ctx: &Ctx) -> Result<Inertia> {
    if m.kind != FormKind::Hermitian {
        return Err(Error::Dimension("signature needs a Hermitian form".into()));
    }
    crate::ctx::escalate(ctx, |c| {
        let mat = m.matrix.with_precision(c.bits.max(m.matrix.precision()));
        hermitian_inertia(&mat, c)
    })
}

/// Householder reduction of a Hermitian matrix to real tridiagonal form.
/// Returns the diagonal and the squared moduli of the subdiagonal.
fn tridiagonalize(mut a: CMat) -> (Vec<Real>, Vec<Real>) {
    let n = a.rows();
    let prec = a.precision();
    let two = Real::from_i64(2, prec);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<Complex> = (0..m).map(|i| a[(k + 1 + i, k)].clone()).collect();
        let nx2 = x.iter().fold(Real::zero(prec), |s, z| s + z.norm_sqr());
        let tail2 = &nx2 - &x[0].norm_sqr();
        if tail2.is_zero() {
            continue;
        }
        let nx = nx2.sqrt();
        let ax0 = x[0].abs();
        let phase = if ax0.is_zero() {
            Complex::one(prec)
        } else {
            x[0].scale(&(Real::one(prec) / &ax0))
        };
        let mut v = x.clone();
        v[0] = &x[0] + &phase.scale(&nx);
        let vn2 = v.iter().fold(Real::zero(prec), |s, z| s + z.norm_sqr());
        let tau = &two / &vn2;
        // p = τ A v on the trailing block
        let p: Vec<Complex> = (0..m)
            .map(|i| {
                let mut acc = Complex::zero(prec);
                for j in 0..m {
                    acc += &(&a[(k + 1 + i, k + 1 + j)] * &v[j]);
                }
                acc.scale(&tau)
            })
            .collect();
        let mut vp = Complex::zero(prec);
        for i in 0..m {
            vp += &(&v[i].conj() * &p[i]);
        }
        let kk = vp.re.clone() * &tau / &two;
        let q: Vec<Complex> = (0..m).map(|i| &p[i] - &v[i].scale(&kk)).collect();
        for i in 0..m {
            for j in 0..m {
                let d = &(&v[i] * &q[j].conj()) + &(&q[i] * &v[j].conj());
                a[(k + 1 + i, k + 1 + j)] -= &d;
            }
        }
        let sub = -phase.scale(&nx);
        a[(k + 1, k)] = sub.clone();
        a[(k, k + 1)] = sub.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = Complex::zero(prec);
            a[(k, k + 1 + i)] = Complex::zero(prec);
        }
    }
    let d = (0..n).map(|i| a[(i, i)].re.clone()).collect();
    let e2 = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)].norm_sqr()).collect();
    (d, e2)
}

/// Number of eigenvalues of the tridiagonal matrix below `s`.
fn sturm_count(d: &[Real], e2: &[Real], s: &Real, tiny: &Real) -> usize {
    let mut count = 0;
    let mut q = Real::one(s.precision());
    for i in 0..d.len() {
        q = if i == 0 { &d[0] - s } else { &(&d[i] - s) - &(&e2[i - 1] / &q) };
        if q.is_zero() {
            q = tiny.clone();
        }
        if q.is_negative() {
            count += 1;
        }
    }
    count
}
