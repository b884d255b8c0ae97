//! Elementary number theory on machine integers.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Trial-division factorization, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Sieve of Eratosthenes: all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Product of the primes `<= k`, if it fits in a `u64`.
pub fn primorial_u64(k: u64) -> Option<u64> {
    primes_up_to(k)
        .into_iter()
        .try_fold(1u64, |acc, p| acc.checked_mul(p))
}

pub fn primorial_big(k: u64) -> BigUint {
    primes_up_to(k)
        .into_iter()
        .fold(BigUint::from(1u32), |acc, p| acc * p)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Residue of `x` used to store a unit modulo `n`; the trivial group mod 1 is `{1}`.
pub fn unit_residue(x: u64, n: u64) -> u64 {
    if n == 1 {
        1
    } else {
        x % n
    }
}

/// The units of `Z/n`, ascending. For `n = 1` this is `[1]`.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&x| gcd(x, n) == 1).collect()
}

/// Multiplicative order of the unit `x` modulo `n`.
pub fn mult_order(x: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let phi = euler_phi(n);
    let mut order = phi;
    for (p, _) in factorize(phi) {
        while order % p == 0 && pow_mod(x, order / p, n) == 1 {
            order /= p;
        }
    }
    order
}

/// Least primitive root modulo an odd prime `p` (or 2).
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// Chinese remaindering for pairwise-coprime moduli.
pub fn crt(moduli: &[u64], residues: &[u64]) -> Result<u64> {
    if moduli.len() != residues.len() {
        return Err(Error::Precondition(
            "moduli and residues differ in length".into(),
        ));
    }
    let mut acc = 0u64;
    let mut modulus = 1u64;
    for (&m, &r) in moduli.iter().zip(residues) {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        if gcd(modulus, m) != 1 {
            return Err(Error::NonCoprimeModuli(moduli.to_vec()));
        }
        // acc + modulus * t ≡ r (mod m)
        let inv = inv_mod(modulus % m, m).expect("coprime");
        let diff = (r % m + m - acc % m) % m;
        let t = mul_mod(diff, inv, m);
        let next = modulus
            .checked_mul(m)
            .ok_or_else(|| Error::Budget("CRT modulus overflows u64".into()))?;
        acc = (acc as u128 + modulus as u128 * t as u128) as u64 % next;
        modulus = next;
    }
    Ok(acc)
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Natural logarithm of a positive big integer, robust beyond `f64` range.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        let v: f64 = num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY);
        if v.is_finite() {
            return v.ln();
        }
    }
    let shift = bits - 64;
    let top: f64 = num_traits::ToPrimitive::to_f64(&(n >> shift)).unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_facts() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(56), 24);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primorial_u64(8), Some(210));
        assert_eq!(primorial_u64(1), Some(1));
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(units(1), vec![1]);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(47, 60), 4);
        assert_eq!(mult_order(59, 84), 6);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(13).unwrap(), 2);
        assert!(primitive_root(9).is_err());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[5, 6], &[2, 5]).unwrap(), 17);
        assert_eq!(crt(&[5, 6], &[3, 5]).unwrap(), 23);
        assert_eq!(crt(&[7], &[1]).unwrap(), 1);
        assert!(matches!(
            crt(&[4, 6], &[1, 1]),
            Err(Error::NonCoprimeModuli(_))
        ));
    }

    #[test]
    fn big_helpers() {
        let n = BigUint::from(34u32);
        assert_eq!(binomial(&n, 5), BigUint::from(278_256u32));
        let big = BigUint::from(3u32).pow(2000);
        let expect = 2000.0 * 3f64.ln();
        assert!((ln_big(&big) - expect).abs() < 1e-9 * expect);
    }
}
