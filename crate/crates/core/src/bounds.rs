//! Quantitative bounds on `d(k)`, the largest index among cyclotomic integers of length
//! `k`, evaluated in log space. "log" is the natural logarithm throughout.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::constructions::{corollary1_construct, corollary2_construct, theorem4_example, theorem5_example};
use crate::error::{Error, Result};
use crate::galois::index_of_sum;
use crate::ntheory::{binomial, ln_big, primes_up_to, primorial_big};
use crate::sum::SumOfRoots;

/// The constant `c` with `ϑ(k) < c·k` for all `k ≥ 1`.
pub const THETA_CONSTANT: f64 = 1.000028;

/// `ϑ(k) = Σ_{p ≤ k} ln p`.
pub fn chebyshev_theta(k: u64) -> f64 {
    primes_up_to(k).iter().map(|&p| (p as f64).ln()).sum()
}

/// `Π_{p ≤ k} p`.
pub fn primorial(k: u64) -> BigUint {
    primorial_big(k)
}

/// `C(ℓ(k) + k − 1, k)`: multisets of `k` roots of order dividing `ℓ(k)`.
pub fn stars_and_bars_count(k: u64) -> BigUint {
    let ell = primorial(k);
    if k == 0 {
        return BigUint::one();
    }
    binomial(&(ell + BigUint::from(k - 1)), k)
}

/// Natural log of the count bound `e^{ck²}`.
pub fn lemma3_count_bound(k: u64) -> f64 {
    THETA_CONSTANT * (k as f64) * (k as f64)
}

/// Bell numbers `B_0..=B_n` by the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().expect("nonempty").clone()];
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        row = next;
        out.push(row[0].clone());
    }
    out
}

pub fn bell_number(k: usize) -> BigUint {
    bell_numbers(k).pop().expect("nonempty")
}

/// `k·ln(0.792k / ln(k+1))`.
pub fn log_bell_upper_bound(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("the Bell bound needs k ≥ 1".into()));
    }
    let k = k as f64;
    Ok(k * (0.792 * k / (k + 1.0).ln()).ln())
}

/// `(0.792k / ln(k+1))^k`.
pub fn bell_upper_bound(k: u64) -> Result<f64> {
    log_bell_upper_bound(k).map(f64::exp)
}

/// Natural log of `k!·(2.376·k·e^{4ck} / ln(k+1))^k`.
pub fn main_theorem_bound(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("the bound is stated for k ≥ 1".into()));
    }
    let kf = k as f64;
    let log_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    Ok(log_fact + kf * (2.376f64.ln() + kf.ln() + 4.0 * THETA_CONSTANT * kf - (kf + 1.0).ln().ln()))
}

/// Best index observed for length `k`: explicit witnesses for `k ≤ 4`, the corollary
/// constructions for `k ≥ 5`.
pub fn d_lower_observed(k: u64) -> Result<u64> {
    Ok(match k {
        0 => return Err(Error::Domain("length must be positive".into())),
        1 => 1,
        2 => index_of_sum(&"1/5, 4/5".parse::<SumOfRoots>().expect("valid")),
        3 => index_of_sum(&theorem4_example()),
        4 => index_of_sum(&theorem5_example()),
        _ => {
            let mut best = corollary1_construct(k as usize)?.index;
            if k >= 6 {
                best = best.max(corollary2_construct(k as usize)?.index);
            }
            best
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u64,
    pub log_upper: f64,
    pub lower_observed: u64,
    pub consistent: bool,
}

pub fn bound_report(k: u64) -> Result<BoundReport> {
    let log_upper = main_theorem_bound(k)?;
    let lower_observed = d_lower_observed(k)?;
    Ok(BoundReport {
        k,
        log_upper,
        lower_observed,
        consistent: (lower_observed as f64).ln() <= log_upper,
    })
}

/// Natural log of a big integer, `-inf` for zero.
pub fn ln_count(n: &BigUint) -> f64 {
    if n.is_zero() {
        f64::NEG_INFINITY
    } else {
        ln_big(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primorials_and_theta() {
        assert_eq!(primorial(8), BigUint::from(210u32));
        assert!((chebyshev_theta(10) - 210f64.ln()).abs() < 1e-12);
        assert!((chebyshev_theta(10) - 5.3471).abs() < 1e-4);
    }

    #[test]
    fn stars_and_bars() {
        assert_eq!(stars_and_bars_count(2), BigUint::from(3u32));
        assert_eq!(stars_and_bars_count(5), BigUint::from(278256u32));
    }

    #[test]
    fn bell() {
        let b: Vec<u64> = bell_numbers(6).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203]);
        assert!((bell_upper_bound(1).unwrap() - 1.1427).abs() < 1e-4);
        assert!((bell_upper_bound(5).unwrap() - 52.73).abs() < 0.01);
        assert!(bell_upper_bound(0).is_err());
    }

    #[test]
    fn main_bound() {
        let direct = (2.376 * (4.0 * THETA_CONSTANT).exp() / 2f64.ln()).ln();
        assert!((main_theorem_bound(1).unwrap() - direct).abs() < 1e-12);
        assert!(main_theorem_bound(0).is_err());
        assert!(main_theorem_bound(3).unwrap() > 4f64.ln());
    }

    #[test]
    fn observed_small_lengths() {
        assert_eq!(d_lower_observed(2).unwrap(), 2);
        assert_eq!(d_lower_observed(3).unwrap(), 4);
        assert_eq!(d_lower_observed(4).unwrap(), 6);
        assert_eq!(d_lower_observed(5).unwrap(), 6);
    }
}
