//! Colored braid words.

use std::fmt;

use num_integer::Integer;

use crate::algebra::TorusPoint;
use crate::error::{Error, Result};

/// Sequence of signed colors c_j ∈ {±1, …, ±μ}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    entries: Vec<i32>,
    mu: usize,
}

impl Coloring {
    pub fn new(entries: Vec<i32>, mu: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&c| c == 0 || c.unsigned_abs() as usize > mu) {
            return Err(Error::Parse(format!("color {bad} outside ±1..±{mu}")));
        }
        Ok(Coloring { entries, mu })
    }

    /// Uses μ = max |c_j|.
    pub fn from_entries(entries: Vec<i32>) -> Result<Self> {
        let mu = entries.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(1);
        Coloring::new(entries, mu)
    }

    /// Parses `"1,1,-2"`.
    pub fn parse(s: &str, mu: Option<usize>) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad color {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match mu {
            Some(m) => Coloring::new(entries, m),
            None => Coloring::from_entries(entries),
        }
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// |c_j|, one-based color.
    pub fn color(&self, j: usize) -> usize {
        self.entries[j].unsigned_abs() as usize
    }

    pub fn sign(&self, j: usize) -> i32 {
        self.entries[j].signum()
    }

    /// ℓ(c)_i = Σ_{|c_j| = i} sgn(c_j).
    pub fn ell(&self) -> Vec<i64> {
        let mut l = vec![0i64; self.mu];
        for &c in &self.entries {
            l[c.unsigned_abs() as usize - 1] += c.signum() as i64;
        }
        l
    }

    /// Colors actually carried by some strand.
    pub fn occurring(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (1..=self.mu).filter(|&i| self.entries.iter().any(|c| c.unsigned_abs() as usize == i)).collect();
        v.dedup();
        v
    }

    /// Swaps entries `i` and `i+1` (zero-based).
    pub fn swapped(&self, i: usize) -> Coloring {
        let mut c = self.clone();
        c.entries.swap(i, i + 1);
        c
    }

    pub fn with_mu(&self, mu: usize) -> Result<Coloring> {
        Coloring::new(self.entries.clone(), mu)
    }

    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|&c| c > 0)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// σ_index^sign with a one-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(index: usize, sign: i8) -> Self {
        Letter { index, sign }
    }

    /// Zero-based position of the left strand.
    pub fn pos(&self) -> usize {
        self.index - 1
    }

    pub fn inverse(&self) -> Letter {
        Letter { index: self.index, sign: -self.sign }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    bottom: Coloring,
    letters: Vec<Letter>,
}

/// A closure component: its color and the bottom positions it visits in
/// traversal order, starting from the smallest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub color: usize,
    pub strands: Vec<usize>,
}

impl BraidWord {
    pub fn new(bottom: Coloring, letters: Vec<Letter>) -> Result<Self> {
        let n = bottom.len();
        for l in &letters {
            if l.index == 0 || l.index >= n || l.sign == 0 {
                return Err(Error::IndexOutOfRange { index: l.index, strands: n });
            }
        }
        Ok(BraidWord { bottom, letters })
    }

    pub fn identity(bottom: Coloring) -> Self {
        BraidWord { bottom, letters: Vec::new() }
    }

    /// Parses `"1 -2 1"` as σ₁σ₂⁻¹σ₁.
    pub fn parse(word: &str, bottom: &Coloring) -> Result<Self> {
        let letters = word
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let v: i64 = s.parse().map_err(|_| Error::Parse(format!("bad braid letter {s:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("braid letter 0".into()));
                }
                Ok(Letter::new(v.unsigned_abs() as usize, v.signum() as i8))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(bottom.clone(), letters)
    }

    pub fn bottom(&self) -> &Coloring {
        &self.bottom
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.bottom.len()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same bottom coloring with other letters.
    pub fn with_letters(&self, letters: Vec<Letter>) -> Result<BraidWord> {
        BraidWord::new(self.bottom.clone(), letters)
    }

    /// Colorings at every level; entry p is the coloring below letter p.
    pub fn levels(&self) -> Vec<Coloring> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        let mut c = self.bottom.clone();
        out.push(c.clone());
        for l in &self.letters {
            c = c.swapped(l.pos());
            out.push(c.clone());
        }
        out
    }

    pub fn top(&self) -> Coloring {
        let mut c = self.bottom.clone();
        for l in &self.letters {
            c = c.swapped(l.pos());
        }
        c
    }

    pub fn is_endomorphism(&self) -> bool {
        self.top() == self.bottom
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        let top = self.top();
        if top != other.bottom {
            return Err(Error::ColoringMismatch { top: top.entries, bottom: other.bottom.entries.clone() });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { bottom: self.bottom.clone(), letters })
    }

    /// The inverse braid: reversed letters with negated signs.
    pub fn reflect(&self) -> BraidWord {
        BraidWord { bottom: self.top(), letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    /// Which bottom strand sits at each position, per level.
    pub fn strand_levels(&self) -> Vec<Vec<usize>> {
        let mut at: Vec<usize> = (0..self.strands()).collect();
        let mut out = vec![at.clone()];
        for l in &self.letters {
            at.swap(l.pos(), l.pos() + 1);
            out.push(at.clone());
        }
        out
    }

    /// For each bottom position s, the top position where strand s ends.
    pub fn end_positions(&self) -> Vec<usize> {
        let top = self.strand_levels().pop().unwrap_or_default();
        let mut end = vec![0; top.len()];
        for (p, &s) in top.iter().enumerate() {
            end[s] = p;
        }
        end
    }

    /// Components of the closure, ordered by smallest bottom position.
    pub fn closure_components(&self) -> Result<Vec<Component>> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let end = self.end_positions();
        let mut seen = vec![false; end.len()];
        let mut out = Vec::new();
        for s in 0..end.len() {
            if seen[s] {
                continue;
            }
            let mut strands = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                strands.push(x);
                x = end[x];
            }
            out.push(Component { id: out.len(), color: self.bottom.color(s), strands });
        }
        Ok(out)
    }

    /// Disjoint union with trivial strands on the right.
    pub fn extend_trivially(&self, extra: &[i32]) -> Result<BraidWord> {
        let mut entries = self.bottom.entries.clone();
        entries.extend_from_slice(extra);
        BraidWord::new(Coloring::new(entries, self.bottom.mu)?, self.letters.clone())
    }

    /// Appends the fewest +i strands per color i making ℓ_i nonzero and
    /// coprime to the order of ω_i.
    pub fn pad_for_admissibility(&self, omega: &TorusPoint) -> Result<BraidWord> {
        if omega.num_vars() != self.bottom.mu {
            return Err(Error::VarMismatch(self.bottom.mu, omega.num_vars()));
        }
        let ell = self.bottom.ell();
        let orders = omega.orders();
        let mut extra = Vec::new();
        for i in 0..self.bottom.mu {
            let mut l = ell[i];
            while l == 0 || l.unsigned_abs().gcd(&orders[i]) != 1 {
                l += 1;
                extra.push(i as i32 + 1);
            }
        }
        self.extend_trivially(&extra)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| (l.index as i64 * l.sign as i64).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn ell(c: &Coloring) -> Vec<i64> {
    c.ell()
}

pub fn compose(w1: &BraidWord, w2: &BraidWord) -> Result<BraidWord> {
    w1.compose(w2)
}

pub fn reflect(w: &BraidWord) -> BraidWord {
    w.reflect()
}

pub fn closure_components(w: &BraidWord) -> Result<Vec<Component>> {
    w.closure_components()
}

pub fn pad_for_admissibility(w: &BraidWord, omega: &TorusPoint) -> Result<BraidWord> {
    w.pad_for_admissibility(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn col(s: &str) -> Coloring {
        Coloring::parse(s, None).unwrap()
    }

    fn word(w: &str, c: &str) -> BraidWord {
        BraidWord::parse(w, &col(c)).unwrap()
    }

    #[test]
    fn ell_counts_signed_strands() {
        assert_eq!(col("1,1").ell(), vec![2]);
        assert_eq!(col("1,-1").ell(), vec![0]);
        assert_eq!(col("-1,2").ell(), vec![-1, 1]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Coloring::parse("1,0", None).is_err());
        assert!(Coloring::parse("1,3", Some(2)).is_err());
        assert!(BraidWord::parse("1 2", &col("1,1")).is_err());
        assert!(BraidWord::parse("1 x", &col("1,1")).is_err());
    }

    #[test]
    fn composition_rules() {
        let s = word("1", "1,1");
        let id = BraidWord::identity(col("1,1"));
        assert_eq!(s.compose(&id).unwrap(), s);
        let hopf = s.compose(&s).unwrap();
        assert_eq!(hopf.to_string(), "1 1");
        assert_eq!(hopf.closure_components().unwrap().len(), 2);
        let a = word("1", "1,2");
        assert!(a.compose(&a).is_err());
        let a2 = a.compose(&word("1", "2,1")).unwrap();
        assert!(a2.is_endomorphism());
    }

    #[test]
    fn reflection_inverts() {
        assert_eq!(word("1", "1,1,1").reflect().to_string(), "-1");
        assert_eq!(word("1 -2", "1,1,1").reflect().to_string(), "2 -1");
    }

    #[test]
    fn closure_components_examples() {
        assert_eq!(BraidWord::identity(col("1,1,1")).closure_components().unwrap().len(), 3);
        assert_eq!(word("1", "1,1").closure_components().unwrap().len(), 1);
        let c = word("1 1", "1,2").closure_components().unwrap();
        assert_eq!(c.iter().map(|x| x.color).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(word("1", "1,2").closure_components(), Err(Error::NotEndomorphism));
    }

    #[test]
    fn padding_examples() {
        let p = word("1 1", "1,1").pad_for_admissibility(&TorusPoint::parse("1/2").unwrap()).unwrap();
        assert_eq!(p.bottom().entries(), &[1, 1, 1]);
        let q = word("1 1", "1,2").pad_for_admissibility(&TorusPoint::parse("1/2,1/3").unwrap()).unwrap();
        assert_eq!(q.bottom().entries(), &[1, 2]);
        let r = word("1 1", "1,-1").pad_for_admissibility(&TorusPoint::parse("1/3").unwrap()).unwrap();
        assert_eq!(r.bottom().ell(), vec![1]);
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..6).prop_flat_map(|n| {
            proptest::collection::vec((1..n, prop::bool::ANY), 0..10).prop_map(move |ls| {
                let letters = ls.into_iter().map(|(i, s)| Letter::new(i, if s { 1 } else { -1 })).collect();
                BraidWord::new(Coloring::new(vec![1; n], 1).unwrap(), letters).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn top_of_composition_is_top_of_second(w1 in arb_word(), w2 in arb_word()) {
            prop_assume!(w1.strands() == w2.strands());
            let c = w1.compose(&w2).unwrap();
            prop_assert_eq!(c.top(), w2.top());
            prop_assert_eq!(c.len(), w1.len() + w2.len());
        }

        #[test]
        fn component_count_is_conjugation_invariant(w in arb_word(), u in arb_word()) {
            prop_assume!(w.strands() == u.strands());
            let conj = u.compose(&w).unwrap().compose(&u.reflect()).unwrap();
            prop_assert_eq!(conj.closure_components().unwrap().len(), w.closure_components().unwrap().len());
        }

        #[test]
        fn padding_is_admissible(w in arb_word(), a in 1u64..13, b in 2u64..14) {
            let omega = TorusPoint::new(vec![(a, b)]);
            prop_assume!(omega.is_in_tp());
            let p = w.pad_for_admissibility(&omega).unwrap();
            prop_assert!(omega.is_admissible(&p.bottom().ell()));
        }
    }
}
