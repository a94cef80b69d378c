//! Multiprecision real and complex scalars.
//!
//! Every value carries an explicit binary precision; arithmetic between two
//! values rounds to the larger of the two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig};

type F = FBig<HalfEven, 2>;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 128;
/// Precision cap for escalation.
pub const MAX_PRECISION: usize = 1024;

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(F);

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real(F::ZERO.with_precision(prec).value())
    }

    pub fn one(prec: usize) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real(F::from(v).with_precision(prec).value())
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        let f = F::try_from(v).unwrap_or(F::ZERO);
        Real(f.with_precision(prec).value())
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Same value carried at `prec` bits (rounds when lowering).
    pub fn with_precision(&self, prec: usize) -> Self {
        Real(self.0.clone().with_precision(prec).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0 < F::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.0 == F::ZERO
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    /// (cos 2πa/b, sin 2πa/b).
    pub fn cos_sin_turn(a: i64, b: u64, prec: usize) -> (Real, Real) {
        let ctx = Context::<HalfEven>::new(prec);
        let x = F::from(a);
        let (s, c) = ctx.sin_cos_unit(x.repr(), b as usize, None);
        let s = s.expect("finite input").value();
        let c = c.expect("finite input").value();
        (Real(c.with_precision(prec).value()), Real(s.with_precision(prec).value()))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real(self.0 $op rhs.0)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(self.0 $op &rhs.0)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Complex::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Complex::new(Real::from_i64(v, prec), Real::zero(prec))
    }

    pub fn from_gauss(re: i64, im: i64, prec: usize) -> Self {
        Complex::new(Real::from_i64(re, prec), Real::from_i64(im, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex::new(Real::from_f64(re, prec), Real::from_f64(im, prec))
    }

    /// exp(2πi·a/b).
    pub fn root_of_unity(a: i64, b: u64, prec: usize) -> Self {
        let (c, s) = Real::cos_sin_turn(a, b, prec);
        Complex::new(c, s)
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        Complex::new(self.re.with_precision(prec), self.im.with_precision(prec))
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    /// max(|re|, |im|), cheap and within a factor √2 of the modulus.
    pub fn mag(&self) -> Real {
        self.re.abs().max(self.im.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Complex::one(self.precision());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}{:+e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex::new(&num.re / &n, &num.im / &n)
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        &self + &rhs
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        &self - &rhs
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        &self * &rhs
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_have_exact_order() {
        for b in [2u64, 3, 5, 7, 12] {
            for a in 1..b as i64 {
                let z = Complex::root_of_unity(a, b, 256);
                let p = z.powi(b as i64);
                let err = (&p - &Complex::one(256)).abs();
                assert!(err.to_f64() < 1e-70, "{a}/{b}: {err:?}");
            }
        }
    }

    #[test]
    fn quarter_turn_is_i() {
        let z = Complex::root_of_unity(1, 4, 128);
        assert!(z.re.abs().to_f64() < 1e-35);
        assert!((z.im.to_f64() - 1.0).abs() < 1e-35);
    }

    #[test]
    fn precision_is_carried() {
        let x = Real::from_i64(3, 200);
        let y = Real::zero(200);
        assert_eq!((&x + &y).precision(), 200);
        assert_eq!((&x / &Real::from_i64(7, 200)).precision(), 200);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Complex::from_f64(0.3, -1.2, 128);
        let b = Complex::from_f64(-2.0, 0.5, 128);
        let q = &(&a * &b) / &b;
        assert!((&q - &a).abs().to_f64() < 1e-35);
    }
}
