//! Maslov index of isotropic triples and the Meyer cocycle of unitary pairs.
//!
//! All forms are skew-Hermitian matrices M with ξ(a, b) = aᵀ M b̄, and
//! automorphisms act on columns, so γ is unitary when γᵀ M γ̄ = M.

use crate::algebra::CMat;
use crate::ctx::{escalate, Ctx};
use crate::error::{Error, Result};
use crate::linalg::{decompose, gram, hermitian_inertia, inverse, is_isotropic, null_space, rank, Inertia, Subspace};

#[derive(Debug, Clone)]
pub struct IsotropicTriple {
    form: CMat,
    l: [Subspace; 3],
}

impl IsotropicTriple {
    pub fn new(form: CMat, l1: Subspace, l2: Subspace, l3: Subspace, ctx: &Ctx) -> Result<Self> {
        let n = form.rows();
        for (k, l) in [&l1, &l2, &l3].into_iter().enumerate() {
            if l.ambient_dim() != n {
                return Err(Error::Dimension(format!("L{} lives in dimension {}, form has {n}", k + 1, l.ambient_dim())));
            }
            if !is_isotropic(l, &form, ctx) {
                return Err(Error::Dimension(format!("L{} is not isotropic", k + 1)));
            }
        }
        Ok(IsotropicTriple { form, l: [l1, l2, l3] })
    }

    pub fn form(&self) -> &CMat {
        &self.form
    }

    pub fn subspaces(&self) -> &[Subspace; 3] {
        &self.l
    }

    fn with_precision(&self, prec: usize) -> IsotropicTriple {
        IsotropicTriple { form: self.form.with_precision(prec), l: self.l.clone().map(|s| s.with_precision(prec)) }
    }
}

#[derive(Debug, Clone)]
pub struct UnitaryPair {
    form: CMat,
    g1: CMat,
    g2: CMat,
}

impl UnitaryPair {
    pub fn new(form: CMat, g1: CMat, g2: CMat, ctx: &Ctx) -> Result<Self> {
        let n = form.rows();
        for (k, g) in [&g1, &g2].into_iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::Dimension(format!("γ{} is not {n}×{n}", k + 1)));
            }
            let dev = g.transpose().mul(&form).mul(&g.conj()).sub(&form).max_mag();
            let scale = form.scale_floor().max(g.scale_floor());
            if ctx.decide(&dev, &scale)? {
                return Err(Error::Dimension(format!("γ{} is not unitary (deviation {:e})", k + 1, dev.to_f64())));
            }
        }
        Ok(UnitaryPair { form, g1, g2 })
    }

    pub fn form(&self) -> &CMat {
        &self.form
    }

    pub fn gammas(&self) -> (&CMat, &CMat) {
        (&self.g1, &self.g2)
    }

    fn with_precision(&self, prec: usize) -> UnitaryPair {
        UnitaryPair { form: self.form.with_precision(prec), g1: self.g1.with_precision(prec), g2: self.g2.with_precision(prec) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaslovAlt {
    /// Same form on a complement of (L₁∩L₃)+(L₂∩L₃) in (L₁+L₂)∩L₃.
    Quotient,
    /// ξ(a₂, b₁) on {v₁+v₂+v₃ = 0} ⊂ L₁⊕L₂⊕L₃.
    GgKernel,
}

/// f(a, b) = ξ(a₂, b) on the columns of `s`, with a = a₁ + a₂ from L₁ + L₂.
fn decomposed_form(t: &IsotropicTriple, s: &CMat, ctx: &Ctx) -> Result<Inertia> {
    let [l1, l2, _] = &t.l;
    let cols = (0..s.cols()).map(|j| decompose(&s.column(j), l1, l2, ctx).map(|(_, a2)| a2)).collect::<Result<Vec<_>>>()?;
    let a2 = CMat::from_columns(s.rows(), s.precision(), &cols);
    hermitian_inertia(&gram(&t.form, &a2, s), ctx)
}

fn maslov_once(t: &IsotropicTriple, ctx: &Ctx) -> Result<Inertia> {
    let [l1, l2, l3] = &t.l;
    let s = l1.sum(l2, ctx)?.intersect(l3, ctx)?;
    decomposed_form(t, s.basis(), ctx)
}

fn maslov_quotient_once(t: &IsotropicTriple, ctx: &Ctx) -> Result<Inertia> {
    let [l1, l2, l3] = &t.l;
    let s = l1.sum(l2, ctx)?.intersect(l3, ctx)?;
    let q = l1.intersect(l3, ctx)?.sum(&l2.intersect(l3, ctx)?, ctx)?;
    let mut acc = q.basis().clone();
    let mut r = q.dim();
    let mut chosen = Vec::new();
    for j in 0..s.dim() {
        let v = s.basis().column(j);
        let trial = acc.hstack(&CMat::from_columns(s.ambient_dim(), s.basis().precision(), &[v.clone()]));
        let rk = rank(&trial, ctx)?;
        if rk > r {
            acc = trial;
            r = rk;
            chosen.push(v);
        }
    }
    let comp = CMat::from_columns(s.ambient_dim(), s.basis().precision(), &chosen);
    decomposed_form(t, &comp, ctx)
}

fn maslov_gg_once(t: &IsotropicTriple, ctx: &Ctx) -> Result<Inertia> {
    let [l1, l2, l3] = &t.l;
    let (k1, k2) = (l1.dim(), l2.dim());
    let n = null_space(&l1.basis().hstack(l2.basis()).hstack(l3.basis()), ctx)?;
    let b1 = l1.basis().mul(&n.select_rows(0..k1));
    let a2 = l2.basis().mul(&n.select_rows(k1..k1 + k2));
    hermitian_inertia(&gram(&t.form, &a2, &b1), ctx)
}

/// Maslov index, as the signature of f(a, b) = ξ(a₂, b) on (L₁+L₂)∩L₃.
pub fn maslov(t: &IsotropicTriple, ctx: &Ctx) -> Result<Inertia> {
    escalate(ctx, |c| maslov_once(&t.with_precision(c.bits), c))
}

pub fn maslov_alt(t: &IsotropicTriple, which: MaslovAlt, ctx: &Ctx) -> Result<Inertia> {
    escalate(ctx, |c| {
        let t = t.with_precision(c.bits);
        match which {
            MaslovAlt::Quotient => maslov_quotient_once(&t, c),
            MaslovAlt::GgKernel => maslov_gg_once(&t, c),
        }
    })
}

/// Meyer cocycle from γ₁⁻¹ and γ₂ on E = Im(γ₁⁻¹ − id) ∩ Im(id − γ₂), with
/// b(e, e′) = ξ(x₁ + x₂, e′). Preimages range over a null-space basis, so the
/// Gram matrix may carry extra null directions. Does not escalate.
pub fn meyer_from_inverse(form: &CMat, g1_inv: &CMat, g2: &CMat, ctx: &Ctx) -> Result<Inertia> {
    let n = form.rows();
    let prec = form.precision().max(ctx.bits);
    let id = CMat::identity(n, prec);
    let a1 = g1_inv.sub(&id);
    let a2 = id.sub(g2);
    let ns = null_space(&a1.hstack(&a2.neg()), ctx)?;
    let x1 = ns.select_rows(0..n);
    let x2 = ns.select_rows(n..2 * n);
    let e = a1.mul(&x1);
    hermitian_inertia(&gram(form, &x1.add(&x2), &e), ctx)
}

/// Non-escalating Meyer cocycle.
pub fn meyer_once(form: &CMat, g1: &CMat, g2: &CMat, ctx: &Ctx) -> Result<Inertia> {
    meyer_from_inverse(form, &inverse(g1, ctx)?, g2, ctx)
}

pub fn meyer(p: &UnitaryPair, ctx: &Ctx) -> Result<Inertia> {
    escalate(ctx, |c| {
        let p = p.with_precision(c.bits);
        meyer_once(&p.form, &p.g1, &p.g2, c)
    })
}

/// Γ_γ = {v ⊕ γv}.
pub fn graph(g: &CMat, ctx: &Ctx) -> Result<Subspace> {
    Subspace::span(&CMat::identity(g.cols(), g.precision()).vstack(g), ctx)
}

pub fn diagonal(n: usize, ctx: &Ctx) -> Result<Subspace> {
    graph(&CMat::identity(n, ctx.bits), ctx)
}

/// (−ξ) ⊕ ξ on H ⊕ H.
pub fn doubled_form(form: &CMat) -> CMat {
    form.neg().block_diag(form)
}

/// −Maslov(Γ_{γ₁⁻¹}, Γ_id, Γ_{γ₂}) in (−ξ) ⊕ ξ.
pub fn meyer_via_maslov(p: &UnitaryPair, ctx: &Ctx) -> Result<Inertia> {
    escalate(ctx, |c| {
        let p = p.with_precision(c.bits);
        let n = p.form.rows();
        let t = IsotropicTriple {
            form: doubled_form(&p.form),
            l: [graph(&inverse(&p.g1, c)?, c)?, diagonal(n, c)?, graph(&p.g2, c)?],
        };
        let m = maslov_once(&t, c)?;
        Ok(Inertia { pos: m.neg, neg: m.pos, null: m.null })
    })
}

/// {h₁ ⊕ h₃ | ∃ h₂ : h₁ ⊕ h₂ ∈ N₁, h₂ ⊕ h₃ ∈ N₂}, for N₁ ⊂ H₁⊕H₂ and
/// N₂ ⊂ H₂⊕H₃ with dim H₂ = `mid`.
pub fn compose_relations(n1: &Subspace, n2: &Subspace, mid: usize, ctx: &Ctx) -> Result<Subspace> {
    let d1 = n1
        .ambient_dim()
        .checked_sub(mid)
        .ok_or_else(|| Error::Dimension("first relation is smaller than the middle space".into()))?;
    let d3 = n2
        .ambient_dim()
        .checked_sub(mid)
        .ok_or_else(|| Error::Dimension("second relation is smaller than the middle space".into()))?;
    let (b1, b2) = (n1.basis(), n2.basis());
    let p1 = b1.select_rows(0..d1);
    let q1 = b1.select_rows(d1..d1 + mid);
    let p2 = b2.select_rows(0..mid);
    let q2 = b2.select_rows(mid..mid + d3);
    let ns = null_space(&q1.hstack(&p2.neg()), ctx)?;
    let x = ns.select_rows(0..b1.cols());
    let y = ns.select_rows(b1.cols()..b1.cols() + b2.cols());
    Subspace::span(&p1.mul(&x).vstack(&q2.mul(&y)), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Complex, TorusPoint};

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn one_by_one(z: Complex) -> CMat {
        CMat::from_fn(1, 1, 128, |_, _| z.clone())
    }

    fn w(a: u64, b: u64) -> Complex {
        TorusPoint::new(vec![(a, b)]).value(0, 128)
    }

    fn mm1(a: u64, b: u64) -> UnitaryPair {
        let om = w(a, b);
        let form = one_by_one(&om - &om.conj());
        let g = one_by_one(-&om);
        UnitaryPair::new(form, g.clone(), g, &ctx()).unwrap()
    }

    #[test]
    fn single_half_twist_meyer() {
        for (a, b) in [(1, 3), (1, 5), (2, 7), (5, 12), (1, 4)] {
            let p = mm1(a, b);
            assert_eq!(meyer(&p, &ctx()).unwrap().signature(), 1, "{a}/{b}");
            assert_eq!(meyer_via_maslov(&p, &ctx()).unwrap().signature(), 1, "{a}/{b}");
        }
        for (a, b) in [(0, 1), (1, 2)] {
            let p = mm1(a, b);
            assert_eq!(meyer(&p, &ctx()).unwrap().signature(), 0);
            assert_eq!(meyer_via_maslov(&p, &ctx()).unwrap().signature(), 0);
        }
    }

    #[test]
    fn maslov_of_half_twist_graphs() {
        let p = mm1(1, 3);
        let c = ctx();
        let t = IsotropicTriple::new(
            doubled_form(p.form()),
            graph(&inverse(p.gammas().0, &c).unwrap(), &c).unwrap(),
            diagonal(1, &c).unwrap(),
            graph(p.gammas().1, &c).unwrap(),
            &c,
        )
        .unwrap();
        assert_eq!(maslov(&t, &c).unwrap().signature(), -1);
        assert_eq!(maslov_alt(&t, MaslovAlt::Quotient, &c).unwrap().signature(), -1);
        assert_eq!(maslov_alt(&t, MaslovAlt::GgKernel, &c).unwrap().signature(), -1);
    }

    #[test]
    fn two_dimensional_example() {
        let c = ctx();
        for (a, b) in [(1, 7), (2, 7), (3, 7), (1, 6), (1, 5), (2, 5), (1, 3), (1, 9), (4, 9)] {
            let om = w(a, b);
            let one = Complex::one(128);
            let d = &om - &om.conj();
            let form = CMat::from_fn(2, 2, 128, |i, j| match (i, j) {
                (0, 1) => &one - &om,
                (1, 0) => &om.conj() - &one,
                _ => d.clone(),
            });
            let g1 = CMat::from_fn(2, 2, 128, |i, j| match (i, j) {
                (0, 0) => -&om,
                (1, 0) => Complex::zero(128),
                _ => one.clone(),
            });
            let g2 = g1.mul(&g1);
            let p = UnitaryPair::new(form, g1, g2, &c).unwrap();
            let re = 1.0 - 2.0 * (2.0 * std::f64::consts::PI * a as f64 / b as f64).cos();
            let want = if re.abs() < 1e-12 { 0 } else { re.signum() as i64 };
            assert_eq!(meyer(&p, &c).unwrap().signature(), want, "{a}/{b}");
            assert_eq!(meyer_via_maslov(&p, &c).unwrap().signature(), want, "{a}/{b}");
        }
    }

    #[test]
    fn two_variable_example() {
        let c = ctx();
        for (a1, b1, a2, b2) in [(1, 2, 1, 3), (1, 3, 2, 5), (1, 5, 3, 7), (2, 3, 4, 5), (1, 7, 1, 11)] {
            let pt = TorusPoint::new(vec![(a1, b1), (a2, b2)]);
            let (w1, w2) = (pt.value(0, 128), pt.value(1, 128));
            let w12 = &w1 * &w2;
            let xi = &(&(&w1 - &w1.conj()) + &(&w2 - &w2.conj())) - &(&w12 - &w12.conj());
            let g = one_by_one(w12.clone());
            let p = UnitaryPair::new(one_by_one(xi), g.clone(), g, &c).unwrap();
            let one = Complex::one(128);
            let v = &(&(&one - &w1) * &(&one - &w2)) * &(&one - &w12);
            let want = v.re.to_f64().signum() as i64;
            assert_eq!(meyer(&p, &c).unwrap().signature(), want);
            assert_eq!(meyer_via_maslov(&p, &c).unwrap().signature(), want);
        }
    }

    #[test]
    fn repeated_subspace_gives_zero() {
        let c = ctx();
        let p = mm1(2, 7);
        let form = doubled_form(p.form());
        let l1 = graph(&one_by_one(w(3, 7)), &c).unwrap();
        let l2 = diagonal(1, &c).unwrap();
        let t = IsotropicTriple::new(form, l1, l2.clone(), l2, &c).unwrap();
        assert_eq!(maslov(&t, &c).unwrap().signature(), 0);
    }

    #[test]
    fn non_isotropic_is_rejected() {
        let c = ctx();
        let form = one_by_one(Complex::from_gauss(0, 1, 128));
        let full = Subspace::full(1, 128);
        assert!(IsotropicTriple::new(form, full.clone(), full.clone(), full, &c).is_err());
    }

    #[test]
    fn graphs_compose_in_reverse() {
        let c = ctx();
        let g1 = CMat::from_f64(2, 2, 128, &[(0.0, 1.0), (1.0, 0.0), (2.0, 0.0), (0.0, -1.0)]);
        let g2 = CMat::from_f64(2, 2, 128, &[(1.0, 1.0), (0.0, 0.0), (3.0, 0.0), (1.0, 0.0)]);
        let comp = compose_relations(&graph(&g1, &c).unwrap(), &graph(&g2, &c).unwrap(), 2, &c).unwrap();
        assert!(comp.approx_eq(&graph(&g2.mul(&g1), &c).unwrap(), 1e-25));
        let with_diag = compose_relations(&graph(&g1, &c).unwrap(), &diagonal(2, &c).unwrap(), 2, &c).unwrap();
        assert!(with_diag.approx_eq(&graph(&g1, &c).unwrap(), 1e-25));
    }
}
