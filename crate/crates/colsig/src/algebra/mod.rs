//! Laurent polynomials over ℤ[i], torus points and multiprecision scalars.

pub mod laurent;
pub mod matrix;
pub mod scalar;
pub mod torus;

pub use laurent::{ArithOp, Gauss, LaurentPoly};
pub use matrix::CMat;
pub use scalar::{Complex, Real, DEFAULT_PRECISION, MAX_PRECISION};
pub use torus::TorusPoint;

/// Exact ring operation on two Laurent polynomials.
pub fn laurent_arith(p: &LaurentPoly, q: &LaurentPoly, op: ArithOp) -> crate::Result<LaurentPoly> {
    p.arith(q, op)
}

pub fn laurent_bar(p: &LaurentPoly) -> LaurentPoly {
    p.bar()
}

pub fn evaluate(p: &LaurentPoly, w: &TorusPoint, prec: usize) -> crate::Result<Complex> {
    p.evaluate(w, prec)
}

pub fn is_in_tp(w: &TorusPoint) -> bool {
    w.is_in_tp()
}

pub fn is_admissible(w: &TorusPoint, ell: &[i64]) -> bool {
    w.is_admissible(ell)
}
