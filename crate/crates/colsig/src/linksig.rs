//! Link signatures: C-complex forms, the Seifert oracle for positive braids,
//! and the crossing-change recursion through Meyer cocycles.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{CMat, Complex, TorusPoint};
use crate::braid::{BraidWord, Coloring, Letter};
use crate::ctx::{escalate, Ctx};
use crate::error::{Error, Result};
use crate::gassner::{check_evaluable, letter_row_matrix, word_row_matrix, xi_symbolic};
use crate::linalg::{hermitian_inertia, FormKind, FormMatrix, Inertia};
use crate::maslov::meyer_from_inverse;

/// Generalized Seifert matrices A^ε of a C-complex, keyed by sign vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CComplexData {
    mu: usize,
    size: usize,
    matrices: BTreeMap<Vec<i8>, Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct CComplexFile {
    mu: usize,
    matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

fn parse_signs(key: &str) -> Result<Vec<i8>> {
    key.chars()
        .map(|ch| match ch {
            '+' => Ok(1),
            '-' | '−' => Ok(-1),
            _ => Err(Error::InvalidCComplex(format!("bad sign key {key:?}"))),
        })
        .collect()
}

fn sign_key(eps: &[i8]) -> String {
    eps.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect()
}

fn all_signs(mu: usize) -> Vec<Vec<i8>> {
    (0..1usize << mu).map(|bits| (0..mu).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect()).collect()
}

fn transpose(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

impl CComplexData {
    /// Missing A^{−ε} are filled in as (A^ε)ᵀ; present pairs must satisfy
    /// that relation exactly.
    pub fn new(mu: usize, given: BTreeMap<Vec<i8>, Vec<Vec<i64>>>) -> Result<Self> {
        if mu == 0 {
            return Err(Error::InvalidCComplex("mu must be positive".into()));
        }
        let size = given.values().next().map(Vec::len).unwrap_or(0);
        for (eps, a) in &given {
            if eps.len() != mu {
                return Err(Error::InvalidCComplex(format!("key {} has length {}, expected {mu}", sign_key(eps), eps.len())));
            }
            if a.len() != size || a.iter().any(|r| r.len() != size) {
                return Err(Error::InvalidCComplex(format!("matrix {} is not {size}×{size}", sign_key(eps))));
            }
        }
        let mut matrices = BTreeMap::new();
        for eps in all_signs(mu) {
            let neg: Vec<i8> = eps.iter().map(|e| -e).collect();
            let a = match (given.get(&eps), given.get(&neg)) {
                (Some(a), Some(b)) => {
                    if transpose(b, size) != *a {
                        return Err(Error::InvalidCComplex(format!("A^{} is not the transpose of A^{}", sign_key(&eps), sign_key(&neg))));
                    }
                    a.clone()
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => transpose(b, size),
                (None, None) => return Err(Error::InvalidCComplex(format!("missing A^{} and A^{}", sign_key(&eps), sign_key(&neg)))),
            };
            matrices.insert(eps, a);
        }
        Ok(CComplexData { mu, size, matrices })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("C-complex json: {e}")))?;
        let mut given = BTreeMap::new();
        for (k, v) in f.matrices {
            given.insert(parse_signs(&k)?, v);
        }
        CComplexData::new(f.mu, given)
    }

    pub fn to_json(&self) -> Value {
        let matrices: BTreeMap<String, &Vec<Vec<i64>>> = self.matrices.iter().map(|(k, v)| (sign_key(k), v)).collect();
        json!({ "mu": self.mu, "matrices": matrices })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self, eps: &[i8]) -> Option<&Vec<Vec<i64>>> {
        self.matrices.get(eps)
    }
}

/// H(ω) = Σ_ε Π_i (1 − ω̄_i^{ε_i}) A^ε.
pub fn ccomplex_h(data: &CComplexData, w: &TorusPoint, ctx: &Ctx) -> Result<FormMatrix> {
    if w.num_vars() != data.mu {
        return Err(Error::VarMismatch(data.mu, w.num_vars()));
    }
    let prec = ctx.bits;
    let vals = w.values(prec);
    let one = Complex::one(prec);
    let mut h = CMat::zeros(data.size, data.size, prec);
    for (eps, a) in &data.matrices {
        let mut coef = one.clone();
        for (v, &e) in vals.iter().zip(eps) {
            let z = if e > 0 { v.conj() } else { v.clone() };
            coef = &coef * &(&one - &z);
        }
        for i in 0..data.size {
            for j in 0..data.size {
                if a[i][j] != 0 {
                    let d = coef.scale(&crate::algebra::Real::from_i64(a[i][j], prec));
                    h[(i, j)] += &d;
                }
            }
        }
    }
    FormMatrix::new(h, FormKind::Hermitian, ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MeyerAlgorithm,
    SeifertOracle,
    Ccomplex,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::MeyerAlgorithm => "meyer_algorithm",
            Method::SeifertOracle => "seifert_oracle",
            Method::Ccomplex => "ccomplex",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureResult {
    pub omega: TorusPoint,
    pub signature: i64,
    /// Null count of the form; not available from the crossing-change recursion.
    pub nullity: Option<usize>,
    pub method: Method,
    /// False when ω lies outside the set where the value is proved correct.
    pub guaranteed: bool,
}

impl SignatureResult {
    pub fn to_json(&self) -> Value {
        json!({
            "omega": self.omega.to_string(),
            "signature": self.signature,
            "nullity": self.nullity,
            "method": self.method.to_string(),
            "guaranteed": self.guaranteed,
        })
    }
}

pub fn ccomplex_signature(data: &CComplexData, w: &TorusPoint, ctx: &Ctx) -> Result<SignatureResult> {
    let inertia = escalate(ctx, |c| hermitian_inertia(&ccomplex_h(data, w, c)?.matrix, c))?;
    Ok(SignatureResult {
        omega: w.clone(),
        signature: inertia.signature(),
        nullity: Some(inertia.null),
        method: Method::Ccomplex,
        guaranteed: w.is_in_tp(),
    })
}

/// Seifert matrix of the closure of a positive-colored braid from Seifert's
/// algorithm: one disk per strand, one band per letter, and one loop per pair
/// of consecutive letters with the same index.
pub fn seifert_from_braid(w: &BraidWord) -> Result<Vec<Vec<i64>>> {
    if !w.bottom().entries().iter().all(|&c| c == 1) {
        return Err(Error::UnsupportedColoring(format!("the Seifert oracle needs every strand colored +1, got {}", w.bottom())));
    }
    let letters = w.letters();
    let mut by_index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, l) in letters.iter().enumerate() {
        by_index.entry(l.index).or_default().push(p);
    }
    let gens: Vec<(usize, usize, usize)> =
        by_index.iter().flat_map(|(&i, ps)| ps.windows(2).map(move |pq| (i, pq[0], pq[1]))).collect();
    let m = gens.len();
    let sg = |p: usize| letters[p].sign;
    let mut a = vec![vec![0i64; m]; m];
    for (x, &(i, p, q)) in gens.iter().enumerate() {
        a[x][x] = match (sg(p) > 0, sg(q) > 0) {
            (true, true) => -1,
            (false, false) => 1,
            _ => 0,
        };
        for (y, &(j, r, s)) in gens.iter().enumerate() {
            if x == y {
                continue;
            }
            if i == j && q == r {
                if sg(q) > 0 {
                    a[x][y] = 1;
                } else {
                    a[y][x] = -1;
                }
            } else if j == i + 1 {
                if p < r && r < q && q < s {
                    a[x][y] = 1;
                } else if r < p && p < s && s < q {
                    a[x][y] = -1;
                }
            }
        }
    }
    Ok(a)
}

/// (1 − ω)A + (1 − ω̄)Aᵀ.
pub fn levine_tristram_matrix(a: &[Vec<i64>], w: &TorusPoint, ctx: &Ctx) -> Result<CMat> {
    if w.num_vars() != 1 {
        return Err(Error::VarMismatch(1, w.num_vars()));
    }
    let prec = ctx.bits;
    let om = w.value(0, prec);
    let one = Complex::one(prec);
    let (u, v) = (&one - &om, &one - &om.conj());
    let n = a.len();
    Ok(CMat::from_fn(n, n, prec, |i, j| {
        let x = u.scale(&crate::algebra::Real::from_i64(a[i][j], prec));
        let y = v.scale(&crate::algebra::Real::from_i64(a[j][i], prec));
        &x + &y
    }))
}

pub fn seifert_signature(w: &BraidWord, omega: &TorusPoint, ctx: &Ctx) -> Result<SignatureResult> {
    let a = seifert_from_braid(w)?;
    let inertia = escalate(ctx, |c| hermitian_inertia(&levine_tristram_matrix(&a, omega, c)?, c))?;
    Ok(SignatureResult {
        omega: omega.clone(),
        signature: inertia.signature(),
        nullity: Some(inertia.null),
        method: Method::SeifertOracle,
        guaranteed: omega.is_in_tp(),
    })
}

/// Re-signs every letter so that, along the closure, the strand met earlier
/// (component rank, then traversal position) always passes over. The closure
/// of the result is an unlink with the same components.
pub fn layered_word(w: &BraidWord) -> Result<BraidWord> {
    let comps = w.closure_components()?;
    let mut key = vec![(0usize, 0usize); w.strands()];
    for (rank, comp) in comps.iter().enumerate() {
        for (k, &s) in comp.strands.iter().enumerate() {
            key[s] = (rank, k);
        }
    }
    let at = w.strand_levels();
    let letters = w
        .letters()
        .iter()
        .enumerate()
        .map(|(p, l)| {
            let (left, right) = (at[p][l.pos()], at[p][l.pos() + 1]);
            Letter::new(l.index, if key[left] < key[right] { 1 } else { -1 })
        })
        .collect();
    w.with_letters(letters)
}

/// Signature of the closure of an admissible endomorphism at one precision.
fn signature_once(w: &BraidWord, omega: &TorusPoint, ctx: &Ctx) -> Result<i64> {
    let vals = omega.values(ctx.bits);
    let levels = w.levels();
    let word = w.letters();
    let w0 = layered_word(w)?;
    let cur0 = w0.letters();
    let len = word.len();
    let m = w.strands() - 1;

    let mut suffix = vec![CMat::identity(m, ctx.bits); len + 1];
    for q in (0..len).rev() {
        suffix[q] = letter_row_matrix(&levels[q], cur0[q], &vals, ctx)?.mul(&suffix[q + 1]);
    }
    let mut prefix = CMat::identity(m, ctx.bits);
    let mut forms: HashMap<Coloring, CMat> = HashMap::new();
    let mut total = 0i64;
    for p in 0..len {
        let cp = &levels[p];
        let here = letter_row_matrix(cp, word[p], &vals, ctx)?;
        if cur0[p] != word[p] {
            let old = cur0[p];
            let i = old.pos();
            let hopf = if cp.color(i) == cp.color(i + 1) { -(old.sign as i64) * (cp.sign(i) * cp.sign(i + 1)) as i64 } else { 0 };
            let beta = here.mul(&suffix[p + 1]).mul(&prefix);
            let back = word_row_matrix(&BraidWord::new(cp.clone(), vec![old.inverse(), old.inverse()])?, &vals, ctx)?;
            let xi = match forms.get(cp) {
                Some(x) => x.clone(),
                None => {
                    let x = xi_symbolic(cp).evaluate_values(&vals, ctx.bits);
                    forms.insert(cp.clone(), x.clone());
                    x
                }
            };
            let meyer = meyer_from_inverse(&xi, &back.transpose(), &beta.transpose(), ctx)?;
            total += -hopf + meyer.signature();
        }
        prefix = prefix.mul(&here);
    }
    Ok(total)
}

fn guard(omega: &TorusPoint, force: bool) -> Result<bool> {
    let ok = omega.is_in_tp();
    if !ok && !force {
        return Err(Error::OutsideGuarantee(omega.to_string()));
    }
    Ok(ok)
}

/// Multivariable signature of the closure of `w` at ω. Pads with trivial
/// strands until the coloring is admissible, then walks from a layered word
/// to `w` one crossing change at a time.
pub fn braid_signature(w: &BraidWord, omega: &TorusPoint, force: bool, ctx: &Ctx) -> Result<SignatureResult> {
    if !w.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    if omega.num_vars() != w.bottom().mu() {
        return Err(Error::VarMismatch(w.bottom().mu(), omega.num_vars()));
    }
    let guaranteed = guard(omega, force)?;
    let padded = w.pad_for_admissibility(omega)?;
    check_evaluable(padded.bottom(), omega)?;
    let signature = escalate(ctx, |c| signature_once(&padded, omega, c))?;
    Ok(SignatureResult { omega: omega.clone(), signature, nullity: None, method: Method::MeyerAlgorithm, guaranteed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub lhs: i64,
    pub rhs: i64,
    pub guaranteed: bool,
}

/// (sign(w₁w₂) − sign(w₁) − sign(w₂), −Meyer(B_ω(w₁), B_ω(w₂))).
pub fn additivity_defect(w1: &BraidWord, w2: &BraidWord, omega: &TorusPoint, force: bool, ctx: &Ctx) -> Result<Defect> {
    let w12 = w1.compose(w2)?;
    if !w1.is_endomorphism() || !w2.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let c = w1.bottom();
    if omega.num_vars() != c.mu() {
        return Err(Error::VarMismatch(c.mu(), omega.num_vars()));
    }
    let guaranteed = omega.is_in_tp() && omega.is_admissible(&c.ell());
    if !guaranteed && !force {
        return Err(Error::OutsideGuarantee(omega.to_string()));
    }
    let sig = |w: &BraidWord| braid_signature(w, omega, true, ctx).map(|r| r.signature);
    let lhs = sig(&w12)? - sig(w1)? - sig(w2)?;
    check_evaluable(c, omega)?;
    let rhs = escalate(ctx, |cx| {
        let vals = omega.values(cx.bits);
        let xi = xi_symbolic(c).evaluate_values(&vals, cx.bits);
        let g1_inv = word_row_matrix(&w1.reflect(), &vals, cx)?.transpose();
        let g2 = word_row_matrix(w2, &vals, cx)?.transpose();
        meyer_from_inverse(&xi, &g1_inv, &g2, cx).map(|m: Inertia| -m.signature())
    })?;
    Ok(Defect { lhs, rhs, guaranteed })
}

/// ⌈|sign_ω|/2⌉, a lower bound for the unlinking number.
pub fn unlinking_bound(w: &BraidWord, omega: &TorusPoint, force: bool, ctx: &Ctx) -> Result<(SignatureResult, u64)> {
    let r = braid_signature(w, omega, force, ctx)?;
    let b = r.signature.unsigned_abs().div_ceil(2);
    Ok((r, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &str, c: &str) -> BraidWord {
        BraidWord::parse(w, &Coloring::parse(c, None).unwrap()).unwrap()
    }

    fn p(s: &str) -> TorusPoint {
        TorusPoint::parse(s).unwrap()
    }

    fn sig(w: &str, c: &str, om: &str) -> i64 {
        braid_signature(&word(w, c), &p(om), false, &Ctx::default()).unwrap().signature
    }

    #[test]
    fn hopf_and_unknot() {
        assert_eq!(sig("1 1", "1,1", "1/3"), -1);
        assert_eq!(sig("-1 -1", "1,1", "1/3"), 1);
        assert_eq!(sig("1", "1,1", "1/3"), 0);
        assert_eq!(sig("1 1", "1,2", "1/2,1/3"), 0);
    }

    #[test]
    fn trefoil_at_order_five() {
        assert_eq!(sig("1 1 1", "1,1", "1/5"), -2);
        assert_eq!(sig("1 1 1", "1,1", "2/5"), -2);
        assert_eq!(sig("1 1 1", "1,1", "1/7"), 0);
    }

    #[test]
    fn outside_guarantee_is_refused() {
        let w = word("1 1", "1,2");
        let e = braid_signature(&w, &p("1/2,1/4"), false, &Ctx::default()).unwrap_err();
        assert!(matches!(e, Error::OutsideGuarantee(_)));
        assert!(braid_signature(&w, &p("1/2,1/4"), true, &Ctx::default()).is_ok());
    }

    #[test]
    fn seifert_examples() {
        assert_eq!(seifert_from_braid(&word("1 1", "1,1")).unwrap(), vec![vec![-1]]);
        assert!(seifert_from_braid(&word("1", "1,1")).unwrap().is_empty());
        assert_eq!(seifert_from_braid(&word("1 1 1", "1,1")).unwrap().len(), 2);
        assert!(seifert_from_braid(&word("1 1", "1,2")).is_err());
    }

    #[test]
    fn layered_words_close_to_unlinks() {
        for (w, c) in [("1 1 1", "1,1"), ("1 -2 1 2 2", "1,1,1"), ("1 2 3 1 2 -1 3", "1,1,1,1")] {
            let l = layered_word(&word(w, c)).unwrap();
            assert_eq!(l.closure_components().unwrap().len(), word(w, c).closure_components().unwrap().len());
            let s = seifert_signature(&l, &p("2/7"), &Ctx::default()).unwrap();
            assert_eq!(s.signature, 0, "{w}");
        }
    }

    #[test]
    fn ccomplex_examples() {
        let hopf = CComplexData::from_json(r#"{"mu":1,"matrices":{"+":[[-1]],"-":[[-1]]}}"#).unwrap();
        assert_eq!(ccomplex_signature(&hopf, &p("1/4"), &Ctx::default()).unwrap().signature, -1);
        let two = CComplexData::from_json(r#"{"mu":2,"matrices":{"++":[],"+-":[],"-+":[],"--":[]}}"#).unwrap();
        assert_eq!(ccomplex_signature(&two, &p("1/2,1/3"), &Ctx::default()).unwrap().signature, 0);
        let bad = CComplexData::from_json(r#"{"mu":1,"matrices":{"+":[[1,2],[0,1]],"-":[[1,2],[0,1]]}}"#);
        assert!(matches!(bad, Err(Error::InvalidCComplex(_))));
        let ex4 = CComplexData::from_json(r#"{"mu":2,"matrices":{"++":[[-1]],"−−":[[-1]],"+-":[[0]],"-+":[[0]]}}"#).unwrap();
        assert_eq!(ccomplex_signature(&ex4, &p("1/3,1/5"), &Ctx::default()).unwrap().signature, -1);
    }

    #[test]
    fn defect_examples() {
        let s = word("1", "1,1");
        let c = Ctx::default();
        let d = additivity_defect(&s, &s, &p("1/3"), false, &c).unwrap();
        assert_eq!((d.lhs, d.rhs), (-1, -1));
        assert!(matches!(additivity_defect(&s, &s, &p("1/2"), false, &c), Err(Error::OutsideGuarantee(_))));
        let d = additivity_defect(&s, &s, &p("1/2"), true, &c).unwrap();
        assert_eq!((d.lhs, d.rhs), (-1, 0));
        let id = BraidWord::identity(Coloring::parse("1,1", None).unwrap());
        let d = additivity_defect(&id, &id, &p("1/3"), false, &c).unwrap();
        assert_eq!((d.lhs, d.rhs), (0, 0));
    }

    #[test]
    fn unlinking_bounds() {
        let c = Ctx::default();
        assert_eq!(unlinking_bound(&word("1 1 1", "1,1"), &p("1/5"), false, &c).unwrap().1, 1);
        assert_eq!(unlinking_bound(&word("1", "1,1"), &p("1/5"), false, &c).unwrap().1, 0);
        assert_eq!(unlinking_bound(&word("1 1", "1,1"), &p("1/5"), false, &c).unwrap().1, 1);
    }
}
