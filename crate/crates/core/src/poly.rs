//! Integer polynomials and cyclotomic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ntheory::factorize;

/// Dense integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Nonzero coefficients `(degree, coefficient)`.
    pub fn support(&self) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Multiplies `poly` by `x^d - 1` in place (growing it by `d`).
fn mul_binomial(poly: &mut Vec<i128>, d: usize) {
    let old = poly.len();
    poly.resize(old + d, 0);
    for i in (0..old + d).rev() {
        let shifted = if i >= d { poly[i - d] } else { 0 };
        poly[i] = shifted - poly[i];
    }
}

/// Divides `poly` exactly by `x^d - 1` in place.
fn div_binomial(poly: &mut Vec<i128>, d: usize) {
    let n = poly.len() - 1;
    let qlen = n + 1 - d;
    // poly = (x^d - 1) q  =>  q_i = q_{i-d} - p_i read from the bottom: p_i = q_{i-d} - q_i
    let mut q = vec![0i128; qlen];
    for i in 0..qlen {
        let prev = if i >= d { q[i - d] } else { 0 };
        q[i] = prev - poly[i];
    }
    *poly = q;
}

/// `Φ_n`, computed as `Φ_rad(x^{n/rad})` with `Φ_rad = Π_{d | rad} (x^d - 1)^{μ(rad/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let rad: u64 = primes.iter().product();
    let mut num = vec![1i128];
    let mut dens = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let sub: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| *p)
            .product();
        let d = (rad / sub) as usize;
        if mask.count_ones() % 2 == 0 {
            mul_binomial(&mut num, d);
        } else {
            dens.push(d);
        }
    }
    for d in dens {
        div_binomial(&mut num, d);
    }
    // Φ_rad is produced up to sign: Π(x^d - 1)^{μ} has leading term ±x^φ.
    if num.last().copied() == Some(-1) {
        num.iter_mut().for_each(|c| *c = -*c);
    }
    let stretch = (n / rad) as usize;
    let mut coeffs = vec![BigInt::zero(); (num.len() - 1) * stretch + 1];
    for (i, c) in num.into_iter().enumerate() {
        coeffs[i * stretch] = BigInt::from(c);
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::{divisors, euler_phi};

    /// Oracle: x^n - 1 divided by Φ_d for every proper divisor d, long division.
    fn phi_by_division(n: u64) -> Vec<i64> {
        let mut target = vec![0i64; n as usize + 1];
        target[0] = -1;
        target[n as usize] = 1;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let divisor = phi_by_division(d);
            let dl = divisor.len() - 1;
            let mut quotient = vec![0i64; target.len() - dl];
            let mut rem = target.clone();
            for i in (0..quotient.len()).rev() {
                let c = rem[i + dl];
                quotient[i] = c;
                for (j, dc) in divisor.iter().enumerate() {
                    rem[i + j] -= c * dc;
                }
            }
            assert!(rem.iter().all(|&c| c == 0), "inexact division");
            target = quotient;
        }
        target
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(
            cyclotomic_polynomial(5).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1, 1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(12).unwrap(),
            IntPolynomial::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic_polynomial(12).unwrap().to_string(), "x^4 - x^2 + 1");
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn matches_division_oracle() {
        for n in 1..=120u64 {
            let fast = cyclotomic_polynomial(n).unwrap();
            assert_eq!(fast, IntPolynomial::from_i64(&phi_by_division(n)), "n = {n}");
            assert_eq!(fast.degree(), Some(euler_phi(n) as usize));
            assert!(fast.is_monic());
        }
    }

    #[test]
    fn first_non_unit_coefficient() {
        let phi105 = cyclotomic_polynomial(105).unwrap();
        assert!(phi105.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }
}
