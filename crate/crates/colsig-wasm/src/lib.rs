//! Browser bindings. Every entry point returns JSON text or an error string.

use colsig::algebra::TorusPoint;
use colsig::braid::{BraidWord, Coloring};
use colsig::gassner::{reduced_burau, xi_form};
use colsig::linksig::braid_signature;
use colsig::maslov::{meyer, UnitaryPair};
use colsig::{Ctx, Error, Result};
use wasm_bindgen::prelude::*;

fn parse(word: &str, colors: &str) -> Result<BraidWord> {
    BraidWord::parse(word, &Coloring::parse(colors, None)?)
}

/// Signature of a one-colored closure at ω = e^{2πia/n}, 1 ≤ a < n.
pub fn curve(word: &str, colors: &str, n: u64) -> Result<String> {
    let w = parse(word, colors)?;
    if w.bottom().mu() != 1 {
        return Err(Error::Parse("the curve needs a single color".into()));
    }
    let ctx = Ctx::default();
    let pts = (1..n)
        .map(|a| {
            let r = braid_signature(&w, &TorusPoint::new(vec![(a, n)]), true, &ctx)?;
            Ok(serde_json::json!({ "x": a as f64 / n as f64, "signature": r.signature, "guaranteed": r.guaranteed }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(serde_json::Value::Array(pts).to_string())
}

/// Signatures of a two-colored closure at (a/n, b/(n+1)). Coprime
/// denominators keep most of the grid inside the guaranteed set; `null`
/// marks the rest.
pub fn grid(word: &str, colors: &str, n: u64) -> Result<String> {
    let w = parse(word, colors)?;
    if w.bottom().mu() != 2 {
        return Err(Error::Parse("the grid needs two colors".into()));
    }
    let ctx = Ctx::default();
    let mut rows = Vec::new();
    for a in 1..n {
        let mut row = Vec::new();
        for b in 1..=n {
            match braid_signature(&w, &TorusPoint::new(vec![(a, n), (b, n + 1)]), false, &ctx) {
                Ok(r) => row.push(serde_json::json!(r.signature)),
                Err(Error::OutsideGuarantee(_)) => row.push(serde_json::Value::Null),
                Err(e) => return Err(e),
            }
        }
        rows.push(serde_json::Value::Array(row));
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

/// Meyer cocycle of the reduced matrices of two endomorphisms.
pub fn meyer_value(alpha: &str, beta: &str, colors: &str, omega: &str) -> Result<i64> {
    let p = TorusPoint::parse(omega)?;
    let c = Coloring::parse(colors, None)?;
    let (a, b) = (BraidWord::parse(alpha, &c)?, BraidWord::parse(beta, &c)?);
    if !a.is_endomorphism() || !b.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let ctx = Ctx::default();
    let pair = UnitaryPair::new(
        xi_form(&c, &p, &ctx)?.matrix,
        reduced_burau(&a, &p, &ctx)?.matrix,
        reduced_burau(&b, &p, &ctx)?.matrix,
        &ctx,
    )?;
    Ok(meyer(&pair, &ctx)?.signature())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = signatureCurve)]
pub fn signature_curve(word: &str, colors: &str, n: u32) -> std::result::Result<String, JsError> {
    curve(word, colors, n as u64).map_err(js)
}

#[wasm_bindgen(js_name = signatureGrid)]
pub fn signature_grid(word: &str, colors: &str, n: u32) -> std::result::Result<String, JsError> {
    grid(word, colors, n as u64).map_err(js)
}

#[wasm_bindgen(js_name = meyerCocycle)]
pub fn meyer_cocycle(alpha: &str, beta: &str, colors: &str, omega: &str) -> std::result::Result<i32, JsError> {
    meyer_value(alpha, beta, colors, omega).map(|v| v as i32).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_curve() {
        let v: serde_json::Value = serde_json::from_str(&curve("1 1 1", "1,1", 6).unwrap()).unwrap();
        let s: Vec<i64> = v.as_array().unwrap().iter().map(|p| p["signature"].as_i64().unwrap()).collect();
        // ω = e^{±iπ/3} are roots of the Alexander polynomial
        assert_eq!(s, vec![-1, -2, -2, -2, -1]);
    }

    #[test]
    fn torus_link_grid() {
        let v: serde_json::Value = serde_json::from_str(&grid("1 1 1 1", "1,2", 3).unwrap()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        // closed form −sgn Re[(1−ω₁)(1−ω₂)(1−ω₁ω₂)] at (1/3, b/4)
        let s: Vec<i64> = rows[0].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(s, vec![-1, -1, -1]);
        assert!(curve("1", "1,2", 3).is_err());
    }

    #[test]
    fn half_twist() {
        assert_eq!(meyer_value("1", "1", "1,1", "1/3").unwrap(), 1);
    }
}
