//! Randomized property suites and the generators behind them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{CMat, Complex, Gauss, LaurentPoly, Real, TorusPoint};
use crate::braid::{BraidWord, Coloring, Letter};
use crate::cover::{braid_action, build_cover, eigenspace_form};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::gassner::{reduced_burau, xi_form, xi_symbolic, LMat};
use crate::linalg::{inverse, Subspace};
use crate::linksig::{additivity_defect, braid_signature, seifert_signature};
use crate::maslov::{maslov, maslov_alt, meyer, meyer_via_maslov, IsotropicTriple, MaslovAlt, UnitaryPair};

/// Largest entry of Bᵀ ξ B̄ − ξ accepted by the unitarity suite.
pub const UNITARITY_TOL: f64 = 1e-9;
/// Relative spread accepted in the cover/ξ entrywise ratio.
pub const RATIO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem,
    Oracle,
    MaslovDefs,
    Unitarity,
    Forms,
    Padding,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Theorem, Suite::Oracle, Suite::MaslovDefs, Suite::Unitarity, Suite::Forms, Suite::Padding];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => Suite::Theorem,
            "oracle" => Suite::Oracle,
            "maslov-defs" => Suite::MaslovDefs,
            "unitarity" => Suite::Unitarity,
            "forms" => Suite::Forms,
            "padding" => Suite::Padding,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Theorem => "theorem",
            Suite::Oracle => "oracle",
            Suite::MaslovDefs => "maslov-defs",
            Suite::Unitarity => "unitarity",
            Suite::Forms => "forms",
            Suite::Padding => "padding",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "first_failure": self.first_failure,
        })
    }
}

/// Outcome of one trial: Ok(()) or a description of the counterexample.
pub type Trial = std::result::Result<(), String>;

fn run(name: &str, trials: usize, rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Trial) -> SuiteReport {
    let mut rep = SuiteReport { suite: name.to_string(), trials, passed: 0, failed: 0, first_failure: None };
    for _ in 0..trials {
        match f(rng) {
            Ok(()) => rep.passed += 1,
            Err(e) => {
                rep.failed += 1;
                rep.first_failure.get_or_insert(e);
            }
        }
    }
    rep
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64, ctx: &Ctx) -> Vec<SuiteReport> {
    if suite == Suite::All {
        return Suite::EACH.iter().flat_map(|&s| run_suite(s, trials, seed, ctx)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = suite.to_string();
    match suite {
        Suite::Theorem => vec![
            run(&name, trials, &mut rng, |r| theorem_trial(r, ctx)),
            run("theorem/bounds", trials, &mut rng, |r| bounds_trial(r, ctx)),
        ],
        Suite::Oracle => vec![run(&name, trials, &mut rng, |r| oracle_trial(r, ctx))],
        Suite::MaslovDefs => vec![
            run("maslov-defs/triples", trials, &mut rng, |r| maslov_defs_trial(r, ctx)),
            run("maslov-defs/meyer", trials, &mut rng, |r| meyer_defs_trial(r, ctx)),
        ],
        Suite::Unitarity => vec![run(&name, trials, &mut rng, |r| unitarity_trial(r, ctx))],
        Suite::Forms => vec![
            run("forms/sign-sequence", trials, &mut rng, |r| sign_sequence_trial(r)),
            run("forms/cover", trials, &mut rng, |r| cover_trial(r, ctx)),
        ],
        Suite::Padding => vec![run(&name, trials, &mut rng, |r| padding_trial(r, ctx))],
        Suite::All => unreachable!(),
    }
}

fn fail<E: fmt::Display>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

// ---------------------------------------------------------------- braids

/// Coloring on n strands using colors 1..=mu with random orientations.
pub fn random_coloring(rng: &mut impl Rng, n: usize, mu: usize, signed: bool) -> Coloring {
    let entries = (0..n)
        .map(|_| {
            let c = rng.gen_range(1..=mu as i32);
            if signed && rng.gen_bool(0.5) {
                -c
            } else {
                c
            }
        })
        .collect();
    Coloring::new(entries, mu).expect("valid coloring")
}

/// Random word followed by adjacent transpositions that return every strand
/// label to its starting slot. None if that exceeds `max_len`.
fn try_endomorphism(rng: &mut impl Rng, c: &Coloring, max_len: usize, positive: bool) -> Option<BraidWord> {
    let n = c.len();
    if n < 2 {
        return Some(BraidWord::identity(c.clone()));
    }
    let sign = |rng: &mut dyn rand::RngCore| if positive || rng.gen_bool(0.5) { 1 } else { -1 };
    let len = rng.gen_range(0..=max_len);
    let mut cur = c.entries().to_vec();
    let mut letters = Vec::new();
    for _ in 0..len {
        let i = rng.gen_range(0..n - 1);
        letters.push(Letter::new(i + 1, sign(rng)));
        cur.swap(i, i + 1);
    }
    let target = c.entries();
    for j in 0..n {
        if cur[j] == target[j] {
            continue;
        }
        let k = (j + 1..n).find(|&k| cur[k] == target[j])?;
        for i in (j..k).rev() {
            letters.push(Letter::new(i + 1, sign(rng)));
            cur.swap(i, i + 1);
        }
    }
    if letters.len() > max_len {
        return None;
    }
    let w = BraidWord::new(c.clone(), letters).ok()?;
    w.is_endomorphism().then_some(w)
}

/// Endomorphism of `c` of length at most `max_len`.
pub fn random_endomorphism(rng: &mut impl Rng, c: &Coloring, max_len: usize, positive: bool) -> BraidWord {
    loop {
        if let Some(w) = try_endomorphism(rng, c, max_len, positive) {
            return w;
        }
    }
}

/// a/k with a coprime to k, so the order is exactly k.
fn random_root(rng: &mut impl Rng, k: u64) -> (u64, u64) {
    loop {
        let a = rng.gen_range(1..k);
        if a.gcd(&k) == 1 {
            return (a, k);
        }
    }
}

/// Point with every order in 2..=max_order, the orders pairwise coprime and
/// coprime to ℓ(c). None after a bounded number of attempts.
pub fn random_admissible_point(rng: &mut impl Rng, c: &Coloring, max_order: u64) -> Option<TorusPoint> {
    let ell = c.ell();
    for _ in 0..200 {
        let rot: Vec<(u64, u64)> = (0..c.mu())
            .map(|_| {
                let k = rng.gen_range(2..=max_order);
                random_root(rng, k)
            })
            .collect();
        let p = TorusPoint::new(rot);
        if p.is_in_tp() && p.is_admissible(&ell) {
            return Some(p);
        }
    }
    None
}

/// Point in the torus with no coordinate equal to 1.
pub fn random_point(rng: &mut impl Rng, mu: usize, max_order: u64) -> TorusPoint {
    TorusPoint::new(
        (0..mu)
            .map(|_| {
                let k = rng.gen_range(2..=max_order);
                random_root(rng, k)
            })
            .collect(),
    )
}

// ------------------------------------------------------ linear algebra

fn random_complex(rng: &mut impl Rng, prec: usize) -> Complex {
    Complex::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), prec)
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, prec: usize) -> CMat {
    CMat::from_fn(rows, cols, prec, |_, _| random_complex(rng, prec))
}

/// Columns orthonormal for the standard Hermitian product, by Gram–Schmidt
/// at full precision.
fn orthonormal(rng: &mut impl Rng, rows: usize, cols: usize, prec: usize) -> CMat {
    let mut out: Vec<Vec<Complex>> = Vec::new();
    while out.len() < cols {
        let mut v: Vec<Complex> = (0..rows).map(|_| random_complex(rng, prec)).collect();
        for u in &out {
            let mut d = Complex::zero(prec);
            for (a, b) in v.iter().zip(u) {
                d += &(a * &b.conj());
            }
            for (a, b) in v.iter_mut().zip(u) {
                *a -= &(&d * b);
            }
        }
        let norm = v.iter().fold(Real::zero(prec), |acc, a| acc + a.norm_sqr()).sqrt();
        if norm.to_f64() < 1e-3 {
            continue;
        }
        let inv = Real::one(prec) / norm;
        out.push(v.iter().map(|a| a.scale(&inv)).collect());
    }
    CMat::from_columns(rows, prec, &out)
}

/// Row-permuted unit upper triangular matrix with small Gaussian integer
/// entries, so always invertible.
fn random_basis_change(rng: &mut impl Rng, n: usize, prec: usize) -> CMat {
    let mut p = CMat::identity(n, prec);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                p[(i, j)] = Complex::from_gauss(rng.gen_range(-2..=2), rng.gen_range(-1..=1), prec);
            }
        }
    }
    let shuffle: Vec<usize> = {
        let mut s: Vec<usize> = (0..n).collect();
        s.shuffle(rng);
        s
    };
    CMat::from_fn(n, n, prec, |i, j| p[(shuffle[i], j)].clone())
}

/// Diagonal skew-Hermitian form i·diag(+1…, −1…, 0…).
fn diagonal_form(p: usize, q: usize, z: usize, prec: usize) -> CMat {
    let i = Complex::from_gauss(0, 1, prec);
    CMat::from_fn(p + q + z, p + q + z, prec, |a, b| {
        if a != b {
            Complex::zero(prec)
        } else if a < p {
            i.clone()
        } else if a < p + q {
            -&i
        } else {
            Complex::zero(prec)
        }
    })
}

/// Isotropic subspace [Q; V; Z] for the diagonal form, with Q, V orthonormal.
fn isotropic_columns(rng: &mut impl Rng, p: usize, q: usize, z: usize, prec: usize) -> CMat {
    let r = rng.gen_range(0..=p.min(q));
    let extra = rng.gen_range(0..=z);
    let qm = orthonormal(rng, p, r, prec);
    let vm = orthonormal(rng, q, r, prec);
    let zm = random_matrix(rng, z, r, prec);
    let top = qm.vstack(&vm).vstack(&zm);
    let null = CMat::zeros(p + q, extra, prec).vstack(&random_matrix(rng, z, extra, prec));
    top.hstack(&null)
}

fn span_subset(rng: &mut impl Rng, cols: &CMat, prec: usize) -> CMat {
    let keep: Vec<Vec<Complex>> = (0..cols.cols()).filter(|_| rng.gen_bool(0.6)).map(|j| cols.column(j)).collect();
    if keep.is_empty() {
        return CMat::zeros(cols.rows(), 0, prec);
    }
    CMat::from_columns(cols.rows(), prec, &keep)
}

/// Random isotropic triple in ambient dimension ≤ `max_dim`, in a random
/// basis. About half the triples share subspaces or directions.
pub fn random_isotropic_triple(rng: &mut impl Rng, max_dim: usize, ctx: &Ctx) -> Result<IsotropicTriple> {
    let prec = ctx.bits;
    let d = rng.gen_range(1..=max_dim);
    let z = if rng.gen_bool(0.2) { rng.gen_range(0..=d.min(2)) } else { 0 };
    let p = rng.gen_range(0..=d - z);
    let q = d - z - p;
    let form = diagonal_form(p, q, z, prec);
    let mut ls: Vec<CMat> = (0..3).map(|_| isotropic_columns(rng, p, q, z, prec)).collect();
    match rng.gen_range(0..6) {
        0 => ls[2] = ls[0].clone(),
        1 => ls[1] = span_subset(rng, &ls[0], prec),
        2 => ls[2] = span_subset(rng, &ls[1], prec),
        _ => {}
    }
    let pm = random_basis_change(rng, d, prec);
    let pinv = inverse(&pm, ctx)?;
    let form = pm.transpose().mul(&form).mul(&pm.conj());
    let subs = ls
        .iter()
        .map(|l| if l.cols() == 0 { Ok(Subspace::zero(d, prec)) } else { Subspace::span(&pinv.mul(l), ctx) })
        .collect::<Result<Vec<_>>>()?;
    let [l1, l2, l3]: [Subspace; 3] = subs.try_into().expect("three subspaces");
    IsotropicTriple::new(form, l1, l2, l3, ctx)
}

/// Cayley transform (I − X)⁻¹(I + X) with D·X skew-Hermitian.
fn cayley(rng: &mut impl Rng, p: usize, q: usize, ctx: &Ctx) -> Result<CMat> {
    let prec = ctx.bits;
    let n = p + q;
    let a = random_matrix(rng, n, n, prec);
    let s = a.sub(&a.adjoint());
    let dx = CMat::from_fn(n, n, prec, |i, j| if i < p { s[(i, j)].clone() } else { -&s[(i, j)] });
    let id = CMat::identity(n, prec);
    Ok(inverse(&id.sub(&dx), ctx)?.mul(&id.add(&dx)))
}

/// Random unitary pair: Cayley transforms for a diagonal form in a random
/// basis, or Burau matrices of random braids with ξ.
pub fn random_unitary_pair(rng: &mut impl Rng, ctx: &Ctx) -> Result<UnitaryPair> {
    let prec = ctx.bits;
    if rng.gen_bool(0.3) {
        let mu = rng.gen_range(1..=2);
        let n = rng.gen_range(2..=5);
        let c = random_coloring(rng, n, mu, true);
        let w = random_point(rng, mu, 9);
        let b1 = reduced_burau(&random_endomorphism(rng, &c, 8, false), &w, ctx)?.matrix;
        let b2 = match rng.gen_range(0..3) {
            0 => inverse(&b1, ctx)?,
            1 => b1.clone(),
            _ => reduced_burau(&random_endomorphism(rng, &c, 8, false), &w, ctx)?.matrix,
        };
        return UnitaryPair::new(xi_form(&c, &w, ctx)?.matrix, b1, b2, ctx);
    }
    let d = rng.gen_range(1..=4);
    let p = rng.gen_range(0..=d);
    let q = d - p;
    let form = diagonal_form(p, q, 0, prec);
    let g1 = cayley(rng, p, q, ctx)?;
    let g2 = match rng.gen_range(0..4) {
        0 => inverse(&g1, ctx)?,
        1 => CMat::identity(d, prec),
        _ => cayley(rng, p, q, ctx)?,
    };
    let pm = random_basis_change(rng, d, prec);
    let pinv = inverse(&pm, ctx)?;
    let conj = |g: &CMat| pinv.mul(g).mul(&pm);
    UnitaryPair::new(pm.transpose().mul(&form).mul(&pm.conj()), conj(&g1), conj(&g2), ctx)
}

// ---------------------------------------------------------------- forms

/// Closed formula for ξ of a one-colored sign sequence ε: diagonal
/// h_j(t − t⁻¹) with h_j = (ε_j + ε_{j+1})/2, and off-diagonal entries
/// 1 − t^{ε_{j+1}} above and their negated conjugates below.
pub fn sign_sequence_form(eps: &[i32]) -> LMat {
    let n = eps.len();
    let m = n.saturating_sub(1);
    let mut out = LMat::zeros(m, m, 1);
    let t = LaurentPoly::var(1, 0, 1);
    let tinv = LaurentPoly::var(1, 0, -1);
    let one = LaurentPoly::one(1);
    for j in 0..m {
        let h = (eps[j] + eps[j + 1]) / 2;
        out.set(j, j, (&t - &tinv).scale(Gauss::new(h as i64, 0)));
        if j + 1 < m {
            let te = LaurentPoly::var(1, 0, eps[j + 1]);
            out.set(j, j + 1, &one - &te);
            out.set(j + 1, j, &te.bar() - &one);
        }
    }
    out
}

/// The single positive real r with a = r·b entrywise, within `rel` relative
/// deviation. Entries where b vanishes must vanish in a.
pub fn positive_ratio(a: &CMat, b: &CMat, rel: f64) -> std::result::Result<f64, String> {
    let (a, b) = (a.to_f64(), b.to_f64());
    let big = b.iter().flatten().chain(a.iter().flatten()).map(|z| z.0.hypot(z.1)).fold(0.0, f64::max);
    let mut ratio: Option<f64> = None;
    for (ra, rb) in a.iter().zip(&b) {
        for (x, y) in ra.iter().zip(rb) {
            let ny = y.0.hypot(y.1);
            if ny <= 1e-12 * big.max(1.0) {
                if x.0.hypot(x.1) > 1e-12 * big.max(1.0) {
                    return Err(format!("entry {x:?} where the reference vanishes"));
                }
                continue;
            }
            let d = ny * ny;
            let r = ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d);
            if r.1.abs() > rel * r.0.abs() || r.0 <= 0.0 {
                return Err(format!("ratio {r:?} is not a positive real"));
            }
            if let Some(r0) = ratio {
                if (r.0 - r0).abs() > rel * r0 {
                    return Err(format!("ratio {} differs from {r0}", r.0));
                }
            }
            ratio = Some(r.0);
        }
    }
    Ok(ratio.unwrap_or(1.0))
}

// --------------------------------------------------------------- trials

/// Admissible instance for the additivity theorem.
pub fn random_theorem_instance(rng: &mut impl Rng) -> (BraidWord, BraidWord, TorusPoint) {
    loop {
        let mu = rng.gen_range(1..=2);
        let n = rng.gen_range(2..=5);
        let c = random_coloring(rng, n, mu, true);
        if c.ell().iter().any(|&l| l == 0) {
            continue;
        }
        let Some(w) = random_admissible_point(rng, &c, 13) else { continue };
        let w1 = random_endomorphism(rng, &c, 12, false);
        let w2 = random_endomorphism(rng, &c, 12, false);
        return (w1, w2, w);
    }
}

/// Signature defect of a composite equals minus the Meyer cocycle.
pub fn theorem_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let (w1, w2, w) = random_theorem_instance(rng);
    let tag = format!("c={} w1=[{w1}] w2=[{w2}] ω={w}", w1.bottom());
    let d = additivity_defect(&w1, &w2, &w, false, ctx).map_err(fail(&tag))?;
    if d.lhs != d.rhs {
        return Err(format!("{tag}: lhs {} ≠ rhs {}", d.lhs, d.rhs));
    }
    Ok(())
}

/// |defect| ≤ 2(n−1), and the jump bound for one crossing change.
pub fn bounds_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let (w1, w2, w) = random_theorem_instance(rng);
    let tag = format!("c={} w1=[{w1}] w2=[{w2}] ω={w}", w1.bottom());
    let d = additivity_defect(&w1, &w2, &w, false, ctx).map_err(fail(&tag))?;
    let n = w1.strands() as i64;
    if d.lhs.abs() > 2 * (n - 1) {
        return Err(format!("{tag}: defect {} exceeds 2(n−1)", d.lhs));
    }
    crossing_jump(&w1, &w, rng, ctx).map_err(|e| format!("{tag}: {e}"))
}

/// Signature changes by at most 2 when one crossing is flipped.
pub fn crossing_jump(w: &BraidWord, omega: &TorusPoint, rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    if w.is_empty() {
        return Ok(());
    }
    let p = rng.gen_range(0..w.len());
    let mut letters = w.letters().to_vec();
    letters[p] = letters[p].inverse();
    let flipped = w.with_letters(letters).map_err(|e| e.to_string())?;
    let s0 = braid_signature(w, omega, true, ctx).map_err(|e| e.to_string())?.signature;
    let s1 = braid_signature(&flipped, omega, true, ctx).map_err(|e| e.to_string())?.signature;
    if (s0 - s1).abs() > 2 {
        return Err(format!("flipping letter {p} moves the signature from {s0} to {s1}"));
    }
    Ok(())
}

/// Meyer recursion against the Seifert oracle for one-colored braids with
/// positively oriented strands.
pub fn oracle_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let n = rng.gen_range(2..=5);
    let c = Coloring::new(vec![1; n], 1).expect("coloring");
    let positive = rng.gen_bool(0.5);
    let w = random_endomorphism(rng, &c, 12, positive);
    let omega = random_point(rng, 1, 13);
    let tag = format!("n={n} w=[{w}] ω={omega}");
    let a = braid_signature(&w, &omega, false, ctx).map_err(fail(&tag))?.signature;
    let b = seifert_signature(&w, &omega, ctx).map_err(fail(&tag))?.signature;
    if a != b {
        return Err(format!("{tag}: recursion {a} ≠ Seifert {b}"));
    }
    Ok(())
}

pub fn maslov_defs_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let t = random_isotropic_triple(rng, 8, ctx).map_err(fail("generator"))?;
    let tag = format!("triple in dimension {} with dims {:?}", t.form().rows(), t.subspaces().iter().map(Subspace::dim).collect::<Vec<_>>());
    let a = maslov(&t, ctx).map_err(fail(&tag))?.signature();
    let b = maslov_alt(&t, MaslovAlt::Quotient, ctx).map_err(fail(&tag))?.signature();
    let c = maslov_alt(&t, MaslovAlt::GgKernel, ctx).map_err(fail(&tag))?.signature();
    if a != b || a != c {
        return Err(format!("{tag}: {a}, {b}, {c}"));
    }
    Ok(())
}

pub fn meyer_defs_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let p = random_unitary_pair(rng, ctx).map_err(fail("generator"))?;
    let tag = format!("pair in dimension {}", p.form().rows());
    let a = meyer(&p, ctx).map_err(fail(&tag))?.signature();
    let b = meyer_via_maslov(&p, ctx).map_err(fail(&tag))?.signature();
    if a != b {
        return Err(format!("{tag}: E-space {a} ≠ Maslov {b}"));
    }
    Ok(())
}

/// Bᵀ ξ B̄ = ξ, equivalently B* ξ̄ B = ξ̄.
pub fn unitarity_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let mu = rng.gen_range(1..=3);
    let n = rng.gen_range(2..=6);
    let c = random_coloring(rng, n, mu, true);
    let w = random_endomorphism(rng, &c, 12, false);
    let omega = random_point(rng, mu, 13);
    let tag = format!("c={c} w=[{w}] ω={omega}");
    let b = reduced_burau(&w, &omega, ctx).map_err(fail(&tag))?.matrix;
    let xi = xi_form(&c, &omega, ctx).map_err(fail(&tag))?.matrix;
    let dev = b.transpose().mul(&xi).mul(&b.conj()).max_abs_diff(&xi);
    if dev > UNITARITY_TOL * xi.max_mag().to_f64().max(1.0) {
        return Err(format!("{tag}: deviation {dev:e}"));
    }
    Ok(())
}

pub fn sign_sequence_trial(rng: &mut impl Rng) -> Trial {
    let n = rng.gen_range(2..=6);
    let eps: Vec<i32> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let c = Coloring::new(eps.clone(), 1).map_err(|e| e.to_string())?;
    if xi_symbolic(&c) != sign_sequence_form(&eps) {
        return Err(format!("ε={eps:?}"));
    }
    Ok(())
}

/// Cover form is a positive multiple of ξ, and the cover action equals the
/// reduced Burau matrix.
pub fn cover_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let mu = rng.gen_range(1..=2);
    let n = rng.gen_range(2..=4);
    let c = random_coloring(rng, n, mu, true);
    let omega = random_point(rng, mu, if mu == 1 { 9 } else { 5 });
    let tag = format!("c={c} ω={omega}");
    let cov = build_cover(&c, &omega).map_err(fail(&tag))?;
    let e = eigenspace_form(&cov, ctx).map_err(fail(&tag))?;
    let xi = xi_form(&c, &omega, ctx).map_err(fail(&tag))?.matrix;
    positive_ratio(&e.form, &xi, RATIO_TOL).map_err(|m| format!("{tag}: {m}"))?;
    let w = random_endomorphism(rng, &c, 6, false);
    let a = braid_action(&cov, &w, ctx).map_err(fail(&tag))?;
    let b = reduced_burau(&w, &omega, ctx).map_err(fail(&tag))?.matrix;
    let dev = a.max_abs_diff(&b);
    if dev > 1e-9 {
        return Err(format!("{tag} w=[{w}]: action deviates by {dev:e}"));
    }
    Ok(())
}

/// Adding split trivial strands leaves the signature unchanged.
pub fn padding_trial(rng: &mut impl Rng, ctx: &Ctx) -> Trial {
    let mu = rng.gen_range(1..=2);
    let n = rng.gen_range(2..=4);
    let one_colored = mu == 1 && rng.gen_bool(0.5);
    let c = random_coloring(rng, n, mu, !one_colored);
    let w = random_endomorphism(rng, &c, 10, false);
    let omega = loop {
        let p = random_point(rng, mu, 11);
        if p.is_in_tp() {
            break p;
        }
    };
    let extra: Vec<i32> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let k = rng.gen_range(1..=mu as i32);
            if one_colored || rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect();
    let padded = w.extend_trivially(&extra).map_err(|e| e.to_string())?;
    let tag = format!("c={c} w=[{w}] extra={extra:?} ω={omega}");
    let a = braid_signature(&w, &omega, false, ctx).map_err(fail(&tag))?.signature;
    let b = braid_signature(&padded, &omega, false, ctx).map_err(fail(&tag))?.signature;
    if a != b {
        return Err(format!("{tag}: {a} ≠ {b} after padding"));
    }
    if one_colored {
        let s = seifert_signature(&padded, &omega, ctx).map_err(fail(&tag))?.signature;
        if s != a {
            return Err(format!("{tag}: Seifert {s} on the padded braid ≠ {a}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphisms_are_endomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let c = random_coloring(&mut rng, 5, 3, true);
            let w = random_endomorphism(&mut rng, &c, 12, false);
            assert!(w.is_endomorphism() && w.len() <= 12);
        }
    }

    #[test]
    fn generated_triples_are_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ctx = Ctx::default();
        for _ in 0..30 {
            random_isotropic_triple(&mut rng, 8, &ctx).unwrap();
            random_unitary_pair(&mut rng, &ctx).unwrap();
        }
    }

    #[test]
    fn suites_pass_briefly() {
        let ctx = Ctx::default();
        for rep in run_suite(Suite::All, 8, 11, &ctx) {
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn ratio_detects_sign() {
        let a = CMat::from_f64(1, 2, 128, &[(0.0, 2.0), (1.0, 0.0)]);
        assert_eq!(positive_ratio(&a, &a, 1e-9).unwrap(), 1.0);
        assert!(positive_ratio(&a.neg(), &a, 1e-9).is_err());
    }
}
