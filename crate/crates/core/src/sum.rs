//! Formal sums of roots of unity and their text syntax.
//!
//! A sum is written as comma-separated roots `e/n` (meaning `ζ_n^e`), each with an
//! optional `-` sign and an optional `k*` multiplicity, e.g. `1/8, 7/8, 1/7, 2/7, 4/7`
//! or `2*1/5, -1/3`. The empty sum is written `0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ntheory::{gcd, lcm};
use crate::root::RootOfUnity;

/// A multiset of roots of unity, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SumOfRoots {
    terms: Vec<RootOfUnity>,
}

impl SumOfRoots {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut terms: Vec<RootOfUnity>) -> Self {
        terms.sort_unstable();
        SumOfRoots { terms }
    }

    /// Sum of `ζ_n^e` for each `(n, e)`.
    pub fn from_pairs(pairs: &[(u64, i64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(n, e)| RootOfUnity::new(n, e))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Sum of `ζ_m^e` over the given exponents.
    pub fn from_exponents(m: u64, exponents: &[u64]) -> Result<Self> {
        exponents
            .iter()
            .map(|&e| RootOfUnity::from_parts(m, e))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn terms(&self) -> &[RootOfUnity] {
        &self.terms
    }

    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `lcm` of the term orders; 1 for the empty sum.
    pub fn base_modulus(&self) -> u64 {
        self.terms.iter().fold(1, |acc, t| lcm(acc, t.order()))
    }

    /// Multiset union.
    pub fn union(&self, other: &SumOfRoots) -> SumOfRoots {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::new(terms)
    }

    /// Multiplies every term by `eps`.
    pub fn rotate(&self, eps: &RootOfUnity) -> SumOfRoots {
        Self::new(self.terms.iter().map(|t| t.mul(eps)).collect())
    }

    pub fn negate(&self) -> SumOfRoots {
        self.rotate(&RootOfUnity::MINUS_ONE)
    }

    /// Applies `σ_x : ζ ↦ ζ^x` termwise.
    ///
    /// `x` must be a unit modulo the normalized base modulus; when the base modulus is
    /// `2m` with `m` odd, an even `x` is replaced by the odd representative `x + m`,
    /// which induces the same automorphism of `Q(ζ_m) = Q(ζ_{2m})`.
    pub fn galois_apply(&self, x: u64) -> Result<SumOfRoots> {
        let n = self.base_modulus();
        let norm = crate::element::normalize_modulus(n);
        if gcd(x, norm) != 1 && norm != 1 {
            return Err(Error::NotAUnit { x, modulus: norm });
        }
        let x = if n % 2 == 0 && x % 2 == 0 { x + norm } else { x };
        self.terms
            .iter()
            .map(|t| t.galois(x))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Removes one occurrence of each root in `sub`; `None` if `sub` is not contained.
    pub fn difference(&self, sub: &SumOfRoots) -> Option<SumOfRoots> {
        let mut rest = self.terms.clone();
        for t in &sub.terms {
            let pos = rest.iter().position(|r| r == t)?;
            rest.remove(pos);
        }
        Some(SumOfRoots { terms: rest })
    }

    /// Sub-multiset at the given term indices.
    pub fn select(&self, indices: &[usize]) -> SumOfRoots {
        Self::new(indices.iter().map(|&i| self.terms[i]).collect())
    }

    /// Floating-point value; used only for pruning and sanity checks.
    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().map(|t| t.to_complex()).sum()
    }
}

impl FromIterator<RootOfUnity> for SumOfRoots {
    fn from_iter<I: IntoIterator<Item = RootOfUnity>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for SumOfRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.terms.len() {
            let mut j = i;
            while j < self.terms.len() && self.terms[j] == self.terms[i] {
                j += 1;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}*", j - i)?;
            }
            write!(f, "{}", self.terms[i])?;
            i = j;
        }
        Ok(())
    }
}

fn parse_term(raw: &str) -> Result<Vec<RootOfUnity>> {
    let err = || Error::Parse(format!("bad term `{raw}`"));
    let mut s = raw.trim();
    let mut negate = false;
    if let Some(rest) = s.strip_prefix('-') {
        negate = true;
        s = rest.trim_start();
    }
    let mut count = 1u64;
    if let Some((k, rest)) = s.split_once('*') {
        count = k.trim().parse().map_err(|_| err())?;
        s = rest.trim();
        if let Some(rest) = s.strip_prefix('-') {
            negate = !negate;
            s = rest.trim_start();
        }
    }
    let (e, n) = s.split_once('/').ok_or_else(err)?;
    let e: i64 = e.trim().parse().map_err(|_| err())?;
    let n: u64 = n.trim().parse().map_err(|_| err())?;
    let mut root = RootOfUnity::new(n, e)?;
    if negate {
        root = root.neg();
    }
    Ok(vec![root; count as usize])
}

impl FromStr for SumOfRoots {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let mut terms = Vec::new();
        for part in s.split(',') {
            terms.extend(parse_term(part)?);
        }
        Ok(Self::new(terms))
    }
}

impl Serialize for SumOfRoots {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SumOfRoots {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_weight_five_sum() {
        let s: SumOfRoots = "1/8, 7/8, 1/7, 2/7, 4/7".parse().unwrap();
        assert_eq!(s.weight(), 5);
        assert_eq!(s.base_modulus(), 56);
    }

    #[test]
    fn parse_signs_and_multiplicity() {
        let s: SumOfRoots = "-1/3, 2*1/5".parse().unwrap();
        assert_eq!(s.weight(), 3);
        assert!(s.terms().contains(&RootOfUnity::new(6, 5).unwrap()));
        assert_eq!(s.to_string(), "2*1/5, 5/6");
        let back: SumOfRoots = s.to_string().parse().unwrap();
        assert_eq!(back, s);
        assert_eq!("0".parse::<SumOfRoots>().unwrap(), SumOfRoots::empty());
        assert!("1/0".parse::<SumOfRoots>().is_err());
        assert!("x/3".parse::<SumOfRoots>().is_err());
    }

    #[test]
    fn galois_on_sums() {
        let s: SumOfRoots = "1/8, 7/8, 1/7, 2/7, 4/7".parse().unwrap();
        assert_eq!(s.galois_apply(9).unwrap(), s);
        assert_eq!(s.galois_apply(15).unwrap(), s);
        assert!(s.galois_apply(2).is_err());
        // ζ5 under σ2 then σ3 returns to ζ5
        let z5: SumOfRoots = "1/5".parse().unwrap();
        let back = z5.galois_apply(2).unwrap().galois_apply(3).unwrap();
        assert_eq!(back, z5);
    }

    #[test]
    fn galois_even_unit_for_twice_odd_modulus() {
        // base modulus 10, normalized 5; σ_2 on Q_5 acts as σ_7 on Q_10
        let s: SumOfRoots = "1/10".parse().unwrap();
        assert_eq!(s.galois_apply(2).unwrap(), s.galois_apply(7).unwrap());
    }

    #[test]
    fn difference_and_union() {
        let a: SumOfRoots = "1/3, 2/3, 0/1".parse().unwrap();
        let b: SumOfRoots = "2/3".parse().unwrap();
        let rest = a.difference(&b).unwrap();
        assert_eq!(rest.weight(), 2);
        assert_eq!(rest.union(&b), a);
        assert!(b.difference(&a).is_none());
    }
}
