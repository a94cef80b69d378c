use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::scalar::Complex;
use crate::error::{Error, Result};

/// Point of the μ-torus with rational rotation numbers: coordinate i is
/// exp(2πi·a_i/b_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    rot: Vec<(u64, u64)>,
}

impl TorusPoint {
    /// Reduces each fraction to lowest terms with 0 ≤ a < b.
    pub fn new(rot: Vec<(u64, u64)>) -> Self {
        let rot = rot
            .into_iter()
            .map(|(a, b)| {
                let b = b.max(1);
                let a = a % b;
                let g = a.gcd(&b);
                (a / g, b / g)
            })
            .collect();
        TorusPoint { rot }
    }

    /// Parses `"a/b,c/d"`; a bare integer means a/1.
    pub fn parse(s: &str) -> Result<Self> {
        let mut rot = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (a, b) = match part.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, "1"),
            };
            let a: i64 = a.parse().map_err(|_| Error::Parse(format!("bad rotation numerator in {part:?}")))?;
            let b: i64 = b.parse().map_err(|_| Error::Parse(format!("bad rotation denominator in {part:?}")))?;
            if b <= 0 {
                return Err(Error::Parse(format!("rotation denominator must be positive in {part:?}")));
            }
            rot.push((a.rem_euclid(b) as u64, b as u64));
        }
        if rot.is_empty() {
            return Err(Error::Parse("empty torus point".into()));
        }
        Ok(TorusPoint::new(rot))
    }

    pub fn num_vars(&self) -> usize {
        self.rot.len()
    }

    pub fn rotations(&self) -> &[(u64, u64)] {
        &self.rot
    }

    /// Multiplicative orders k_i.
    pub fn orders(&self) -> Vec<u64> {
        self.rot.iter().map(|&(a, b)| if a == 0 { 1 } else { b }).collect()
    }

    pub fn values(&self, prec: usize) -> Vec<Complex> {
        self.rot.iter().map(|&(a, b)| Complex::root_of_unity(a as i64, b, prec)).collect()
    }

    pub fn value(&self, i: usize, prec: usize) -> Complex {
        let (a, b) = self.rot[i];
        Complex::root_of_unity(a as i64, b, prec)
    }

    pub fn is_one(&self, i: usize) -> bool {
        self.rot[i].0 == 0
    }

    /// Every order exceeds 1 and the orders are pairwise coprime.
    pub fn is_in_tp(&self) -> bool {
        let k = self.orders();
        k.iter().all(|&x| x > 1) && (0..k.len()).all(|i| (i + 1..k.len()).all(|j| k[i].gcd(&k[j]) == 1))
    }

    /// Every ℓ_i is nonzero and coprime to k_i.
    pub fn is_admissible(&self, ell: &[i64]) -> bool {
        ell.len() == self.rot.len()
            && self.orders().iter().zip(ell).all(|(&k, &l)| l != 0 && (l.unsigned_abs()).gcd(&k) == 1)
    }

    /// All points a_i/n with 1 ≤ a_i < n in every coordinate.
    pub fn grid(n: u64, mu: usize) -> Vec<TorusPoint> {
        let mut out = vec![Vec::new()];
        for _ in 0..mu {
            let mut next = Vec::new();
            for p in &out {
                for a in 1..n {
                    let mut q: Vec<(u64, u64)> = p.clone();
                    q.push((a, n));
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(TorusPoint::new).collect()
    }
}

impl FromStr for TorusPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TorusPoint::parse(s)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rot.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> Vec<u64> {
        TorusPoint::parse(s).unwrap().orders()
    }

    #[test]
    fn parse_reduces() {
        let w = TorusPoint::parse("2/6, -1/4").unwrap();
        assert_eq!(w.rotations(), &[(1, 3), (3, 4)]);
        assert_eq!(w.to_string(), "1/3,3/4");
        assert_eq!(order("0/5"), vec![1]);
        assert!(TorusPoint::parse("1/0").is_err());
        assert!(TorusPoint::parse("x").is_err());
    }

    #[test]
    fn tp_membership() {
        assert!(TorusPoint::parse("1/2,1/3").unwrap().is_in_tp());
        assert!(!TorusPoint::parse("1/2,1/4").unwrap().is_in_tp());
        assert!(!TorusPoint::parse("0/1").unwrap().is_in_tp());
    }

    #[test]
    fn admissibility() {
        assert!(!TorusPoint::parse("1/2").unwrap().is_admissible(&[2]));
        assert!(TorusPoint::parse("1/3").unwrap().is_admissible(&[2]));
        for s in ["1/2", "1/3", "2/7"] {
            assert!(!TorusPoint::parse(s).unwrap().is_admissible(&[0]));
        }
    }

    #[test]
    fn values_have_unit_modulus() {
        let w = TorusPoint::parse("3/7,5/11").unwrap();
        for z in w.values(128) {
            assert!((z.norm_sqr().to_f64() - 1.0).abs() < 1e-35);
        }
    }

    #[test]
    fn grid_excludes_one() {
        let g = TorusPoint::grid(5, 2);
        assert_eq!(g.len(), 16);
        assert!(g.iter().all(|w| w.orders() == vec![5, 5]));
    }
}
