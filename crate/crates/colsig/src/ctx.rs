//! Working precision and tolerance.

use crate::algebra::scalar::{Real, DEFAULT_PRECISION, MAX_PRECISION};
use crate::error::{Error, Result};

/// Relative tolerance at the default precision.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Precision context. The tolerance shrinks by one bit for every bit of
/// precision above the default, so escalation can separate values that sit
/// just above the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ctx {
    pub bits: usize,
    pub tol: f64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::new(DEFAULT_PRECISION)
    }
}

impl Ctx {
    pub fn new(bits: usize) -> Self {
        Ctx::with_tolerance(bits, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(bits: usize, tol: f64) -> Self {
        Ctx { bits: bits.max(64), tol }
    }

    /// Effective relative tolerance at this precision.
    pub fn eff_tol(&self) -> f64 {
        let extra = self.bits.saturating_sub(DEFAULT_PRECISION) as i32;
        self.tol * 2f64.powi(-extra)
    }

    pub fn tol_real(&self) -> Real {
        Real::from_f64(self.eff_tol(), self.bits)
    }

    pub fn escalated(&self) -> Option<Ctx> {
        (self.bits < MAX_PRECISION).then(|| Ctx { bits: (self.bits * 2).min(MAX_PRECISION), tol: self.tol })
    }

    /// Classify a magnitude against `scale`: `Some(false)` if negligible,
    /// `Some(true)` if significant, `None` inside the guard band.
    pub fn classify(&self, mag: &Real, scale: &Real) -> Option<bool> {
        let t = &self.tol_real() * scale;
        if *mag <= t {
            Some(false)
        } else if *mag <= &t * &Real::from_i64(10, self.bits) {
            None
        } else {
            Some(true)
        }
    }

    pub fn decide(&self, mag: &Real, scale: &Real) -> Result<bool> {
        self.classify(mag, scale).ok_or(Error::NearWall(self.bits))
    }
}

/// Run `f`, doubling the precision whenever it reports a near-wall decision.
pub fn escalate<T>(ctx: &Ctx, mut f: impl FnMut(&Ctx) -> Result<T>) -> Result<T> {
    let mut c = *ctx;
    loop {
        match f(&c) {
            Err(Error::NearWall(bits)) => match c.escalated() {
                Some(next) => c = next,
                None => return Err(Error::PrecisionExhausted(bits)),
            },
            r => return r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_shrinks_with_precision() {
        let a = Ctx::new(128).eff_tol();
        let b = Ctx::new(256).eff_tol();
        assert!(b < a * 1e-30);
    }

    #[test]
    fn escalation_stops_at_cap() {
        let r: Result<()> = escalate(&Ctx::default(), |c| Err(Error::NearWall(c.bits)));
        assert_eq!(r, Err(Error::PrecisionExhausted(MAX_PRECISION)));
    }

    #[test]
    fn escalation_returns_first_clean_result() {
        let r = escalate(&Ctx::default(), |c| if c.bits < 512 { Err(Error::NearWall(c.bits)) } else { Ok(c.bits) });
        assert_eq!(r, Ok(512));
    }
}
