//! Signed integer combinations of `n`-th roots of unity and an exact zero test
//! that never leaves the sparse representation.
//!
//! For `n = p^a·m` with `p ∤ m`, write `ζ_n^e = ζ_{p^a}^u · ζ_m^v` and split
//! `u = r + j·p^{a-1}`. Since `Q(ζ_m)` and `Q(ζ_{p^a})` are linearly disjoint and the
//! only relations among `ζ_{p^a}^u` over `Q(ζ_m)` are
//! `Σ_j ζ_{p^a}^{r + j·p^{a-1}} = 0`, the combination `Σ f_{r,j} ζ_{p^a}^{r+j·p^{a-1}}`
//! is zero iff for every `r` the coefficients `f_{r,0}, …, f_{r,p-1} ∈ Z[ζ_m]` coincide.
//! Recursing on `m` strips one prime per level.

use std::ops::{AddAssign, Neg};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ntheory::{factorize, inv_mod};

/// Coefficient ring for sparse sums.
pub trait Coeff: Clone + Zero + PartialEq + Neg<Output = Self> + for<'a> AddAssign<&'a Self> {
    fn to_f64(&self) -> f64;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Coeff for i64 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Coeff for BigInt {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(if self.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        })
    }
}

/// `Σ c_e ζ_n^e` with exponents in `[0, n)`, merged and free of zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSum<C: Coeff> {
    modulus: u64,
    terms: Vec<(u64, C)>,
}

impl<C: Coeff> SparseSum<C> {
    pub fn new(modulus: u64, terms: Vec<(u64, C)>) -> Self {
        assert!(modulus > 0);
        let terms = terms.into_iter().map(|(e, c)| (e % modulus, c)).collect();
        SparseSum {
            modulus,
            terms: merge(terms),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn terms(&self) -> &[(u64, C)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-expresses the sum over `ζ_m` for a multiple `m` of the modulus.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.modulus == 0);
        let k = m / self.modulus;
        SparseSum {
            modulus: m,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `σ_x`, acting on exponents; `x` must be a unit mod the modulus.
    pub fn galois(&self, x: u64) -> Self {
        let n = self.modulus;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (crate::ntheory::mul_mod(*e, x, n), c.clone()))
            .collect();
        SparseSum {
            modulus: n,
            terms: merge(terms),
        }
    }

    /// `self - other`, both at the same modulus.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(e, c)| (*e, -c.clone())));
        SparseSum {
            modulus: self.modulus,
            terms: merge(terms),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.modulus as f64;
        self.terms
            .iter()
            .map(|(e, c)| {
                let theta = std::f64::consts::TAU * (*e as f64) / n;
                Complex64::new(theta.cos(), theta.sin()) * c.to_f64()
            })
            .sum()
    }

    /// `Σ |c_e|`, a scale for floating-point tolerances.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs_f64()).sum()
    }

    /// Exact test for `Σ c_e ζ_n^e = 0`.
    pub fn is_zero(&self) -> bool {
        let primes: Vec<(u64, u32)> = factorize(self.modulus);
        is_zero_rec(self.modulus, &primes, self.terms.clone())
    }
}

fn merge<C: Coeff>(mut terms: Vec<(u64, C)>) -> Vec<(u64, C)> {
    terms.sort_unstable_by_key(|(e, _)| *e);
    let mut out: Vec<(u64, C)> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += &c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn is_zero_rec<C: Coeff>(n: u64, primes: &[(u64, u32)], terms: Vec<(u64, C)>) -> bool {
    let terms = merge(terms);
    if terms.is_empty() {
        return true;
    }
    let Some(&(p, a)) = primes.last() else {
        // n = 1: only the integer part remains, and it is nonzero after merging.
        return false;
    };
    let rest = &primes[..primes.len() - 1];
    let q = p.pow(a);
    let m = n / q;
    let s = q / p;
    let m_inv_q = inv_mod(m % q, q).expect("coprime parts");
    let q_inv_m = if m == 1 { 0 } else { inv_mod(q % m, m).expect("coprime parts") };

    // buckets[r][j] collects the Z[ζ_m] coefficient of ζ_q^{r + j s}
    let mut buckets: Vec<Vec<Vec<(u64, C)>>> = vec![Vec::new(); s as usize];
    let mut used: Vec<usize> = Vec::new();
    for (e, c) in terms {
        let u = crate::ntheory::mul_mod(e % q, m_inv_q, q);
        let v = if m == 1 {
            0
        } else {
            crate::ntheory::mul_mod(e % m, q_inv_m, m)
        };
        let (r, j) = ((u % s) as usize, (u / s) as usize);
        if buckets[r].is_empty() {
            buckets[r] = vec![Vec::new(); p as usize];
            used.push(r);
        }
        buckets[r][j].push((v, c));
    }

    for r in used {
        let classes = std::mem::take(&mut buckets[r]);
        let classes: Vec<Vec<(u64, C)>> = classes.into_iter().map(merge).collect();
        if classes.iter().any(|c| c.is_empty()) {
            // all classes must equal the empty one, i.e. vanish
            for class in classes {
                if !class.is_empty() && !is_zero_rec(m, rest, class) {
                    return false;
                }
            }
        } else {
            let (ref_idx, _) = classes
                .iter()
                .enumerate()
                .min_by_key(|(_, c)| c.len())
                .expect("p >= 2 classes");
            let reference = classes[ref_idx].clone();
            for (j, class) in classes.into_iter().enumerate() {
                if j == ref_idx {
                    continue;
                }
                let mut diff = class;
                diff.extend(reference.iter().map(|(v, c)| (*v, -c.clone())));
                if !is_zero_rec(m, rest, diff) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact zero test for a signed list of `n`-th-root exponents with unit coefficients.
pub fn vanishes_i64(n: u64, exps: &[(u64, i64)]) -> bool {
    SparseSum::new(n, exps.to_vec()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: u64, exps: &[u64]) -> SparseSum<i64> {
        SparseSum::new(n, exps.iter().map(|&e| (e, 1)).collect())
    }

    #[test]
    fn basic_relations() {
        assert!(ones(3, &[0, 1, 2]).is_zero());
        assert!(ones(5, &[0, 1, 2, 3, 4]).is_zero());
        assert!(!ones(5, &[1, 2]).is_zero());
        assert!(ones(2, &[0, 1]).is_zero());
        assert!(!ones(1, &[0]).is_zero());
        assert!(ones(1, &[]).is_zero());
        // 1 + ζ4^2 = 0
        assert!(ones(4, &[0, 2]).is_zero());
        assert!(!ones(4, &[0, 1]).is_zero());
        // ζ9 (1 + ζ3 + ζ3²) in 9th roots
        assert!(ones(9, &[1, 4, 7]).is_zero());
        assert!(!ones(9, &[1, 4, 8]).is_zero());
    }

    #[test]
    fn weight_six_relation() {
        // ζ6 + ζ6^5 + ζ5 + ζ5^2 + ζ5^3 + ζ5^4 at modulus 30
        let s = ones(30, &[5, 25, 6, 12, 18, 24]);
        assert!(s.is_zero());
        assert!(!ones(30, &[5, 25, 6, 12, 18]).is_zero());
    }

    #[test]
    fn agrees_with_floating_point_on_small_cases() {
        // every 0/1 combination of 12th roots with up to 4 terms
        let n = 12u64;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() > 6 {
                continue;
            }
            let exps: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let s = ones(n, &exps);
            let numeric = s.to_complex().norm() < 1e-9;
            assert_eq!(s.is_zero(), numeric, "{exps:?}");
        }
    }

    #[test]
    fn bigint_coefficients() {
        let s: SparseSum<BigInt> = SparseSum::new(
            6,
            vec![(1, BigInt::from(7)), (5, BigInt::from(7)), (0, BigInt::from(-7))],
        );
        assert!(s.is_zero());
    }
}
