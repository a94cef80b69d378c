use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex as NComplex;

use super::scalar::Complex;
use super::torus::TorusPoint;
use crate::error::{Error, Result};

/// Gaussian integer coefficient.
pub type Gauss = NComplex<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Laurent polynomial in μ variables with Gaussian-integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Gauss>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        LaurentPoly::monomial(nvars, vec![0; nvars], Gauss::new(c, 0))
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, coeff: Gauss) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = LaurentPoly::zero(nvars);
        if coeff != Gauss::new(0, 0) {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// t_i^e, with `i` zero-based.
    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        LaurentPoly::monomial(nvars, exps, Gauss::new(1, 0))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Gauss)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Gauss {
        self.terms.get(exps).copied().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.nvars, other.nvars))
        }
    }

    fn accumulate(&mut self, exps: Vec<i32>, c: Gauss) {
        let zero = Gauss::new(0, 0);
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if *v == zero {
                    self.terms.remove(&exps);
                }
            }
            None if c != zero => {
                self.terms.insert(exps, c);
            }
            None => {}
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other, 1),
            ArithOp::Sub => self.add_unchecked(other, -1),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Self, sign: i64) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c * sign);
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.accumulate(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: Gauss) -> Self {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.accumulate(e.clone(), v * c);
        }
        out
    }

    /// The involution t_i ↦ t_i⁻¹ with conjugated coefficients.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.conj())).collect(),
        }
    }

    /// Substitutes t_i = values[i].
    pub fn evaluate_values(&self, values: &[Complex], prec: usize) -> Complex {
        assert_eq!(values.len(), self.nvars, "evaluation point length");
        let mut acc = Complex::zero(prec);
        for (e, c) in &self.terms {
            let mut term = Complex::from_gauss(c.re, c.im, prec);
            for (v, &k) in values.iter().zip(e) {
                if k != 0 {
                    term = &term * &v.powi(k as i64);
                }
            }
            acc += &term;
        }
        acc
    }

    pub fn evaluate(&self, w: &TorusPoint, prec: usize) -> Result<Complex> {
        if w.num_vars() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, w.num_vars()));
        }
        Ok(self.evaluate_values(&w.values(prec), prec))
    }

    fn var_name(&self, i: usize) -> String {
        if self.nvars == 1 {
            "t".to_string()
        } else {
            format!("t{}", i + 1)
        }
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.arith(rhs, ArithOp::Add).expect("variable count")
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.arith(rhs, ArithOp::Sub).expect("variable count")
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.arith(rhs, ArithOp::Mul).expect("variable count")
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(Gauss::new(-1, 0))
    }
}

fn fmt_coeff(c: Gauss) -> (bool, String) {
    // (negative, magnitude text); text is empty for a unit coefficient
    match (c.re, c.im) {
        (re, 0) => (re < 0, if re.abs() == 1 { String::new() } else { re.abs().to_string() }),
        (0, im) => {
            let m = if im.abs() == 1 { String::new() } else { im.abs().to_string() };
            (im < 0, format!("{m}i"))
        }
        (re, im) => (false, format!("({re}{im:+}i)")),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = fmt_coeff(*c);
            let mut mono = String::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => mono.push_str(&self.var_name(i)),
                    _ => mono.push_str(&format!("{}^{}", self.var_name(i), x)),
                }
            }
            let body = match (mag.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => mag,
                (false, false) => format!("{mag}{mono}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(e: i32) -> LaurentPoly {
        LaurentPoly::var(1, 0, e)
    }

    #[test]
    fn difference_of_squares() {
        let p = &t(1) + &t(-1);
        let q = &t(1) - &t(-1);
        assert_eq!(&p * &q, &t(2) - &t(-2));
    }

    #[test]
    fn self_difference_is_empty() {
        let p = &t(3) + &LaurentPoly::constant(1, 4);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).terms().count(), 0);
    }

    #[test]
    fn product_of_linear_factors() {
        let one = LaurentPoly::one(2);
        let a = &one - &LaurentPoly::var(2, 1, 1);
        let b = &one - &LaurentPoly::var(2, 0, 1);
        let t12 = LaurentPoly::monomial(2, vec![1, 1], Gauss::new(1, 0));
        let expect = &(&(&one - &LaurentPoly::var(2, 0, 1)) - &LaurentPoly::var(2, 1, 1)) + &t12;
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn bar_of_monomials_and_constants() {
        let t12 = LaurentPoly::monomial(2, vec![1, 1], Gauss::new(1, 0));
        assert_eq!(t12.bar(), LaurentPoly::monomial(2, vec![-1, -1], Gauss::new(1, 0)));
        let d = &t(1) - &t(-1);
        assert_eq!(d.bar(), -&d);
        assert_eq!(LaurentPoly::constant(1, 5).bar(), LaurentPoly::constant(1, 5));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert_eq!(a.arith(&b, ArithOp::Add), Err(Error::VarMismatch(1, 2)));
    }

    #[test]
    fn evaluate_at_i() {
        let d = &t(1) - &t(-1);
        let v = d.evaluate(&TorusPoint::parse("1/4").unwrap(), 128).unwrap();
        assert!(v.re.abs().to_f64() < 1e-35);
        assert!((v.im.to_f64() - 2.0).abs() < 1e-35);
    }

    #[test]
    fn evaluate_at_one_sums_coefficients() {
        let p = &(&t(3) + &LaurentPoly::constant(1, -7)) + &t(-2).scale(Gauss::new(2, 1));
        let v = p.evaluate(&TorusPoint::parse("0/1").unwrap(), 128).unwrap();
        assert!((v.re.to_f64() + 4.0).abs() < 1e-30);
        assert!((v.im.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn display_is_lexicographic() {
        assert_eq!((&t(2) - &t(-2)).to_string(), "-t^-2 + t^2");
        assert_eq!((-&t(1)).to_string(), "-t");
        let p = &LaurentPoly::var(2, 0, 1) - &LaurentPoly::monomial(2, vec![1, 1], Gauss::new(1, 0));
        assert_eq!(p.to_string(), "t1 - t1t2");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(-3i32..=3, nvars), -4i64..=4, -4i64..=4), 0..6).prop_map(
            move |ts| {
                let mut p = LaurentPoly::zero(nvars);
                for (e, re, im) in ts {
                    p = &p + &LaurentPoly::monomial(nvars, e, Gauss::new(re, im));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn bar_is_an_involutive_homomorphism(p in arb_poly(2), q in arb_poly(2)) {
            prop_assert_eq!(p.bar().bar(), p.clone());
            prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
            prop_assert_eq!((&p + &q).bar(), &p.bar() + &q.bar());
            prop_assert!(p.terms().all(|(_, c)| *c != Gauss::new(0, 0)));
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(p in arb_poly(2), q in arb_poly(2), a in 1u64..7, b in 1u64..5) {
            let w = TorusPoint::new(vec![(a, 7), (b, 5)]);
            let pq = (&p * &q).evaluate(&w, 128).unwrap();
            let prod = &p.evaluate(&w, 128).unwrap() * &q.evaluate(&w, 128).unwrap();
            prop_assert!((&pq - &prod).abs().to_f64() < 1e-25);
            let pb = p.bar().evaluate(&w, 128).unwrap();
            let cj = p.evaluate(&w, 128).unwrap().conj();
            prop_assert!((&pb - &cj).abs().to_f64() < 1e-25);
        }
    }
}
