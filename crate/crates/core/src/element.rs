//! Canonical elements of `Z[ζ_N]`.
//!
//! An element is stored at a normalized modulus `N` (never `≡ 2 mod 4`) as its
//! coordinate vector in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` of `Z[x]/Φ_N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ntheory::{euler_phi, gcd, lcm, mul_mod};
use crate::poly::cyclotomic_polynomial;
use crate::sparse::SparseSum;
use crate::sum::SumOfRoots;

/// `n / 2` when `n ≡ 2 (mod 4)`, else `n`. Makes `Q_n ↦ n` injective.
pub fn normalize_modulus(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

#[derive(Debug, Clone)]
pub struct CycElement {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

/// Reduces a dense polynomial (ascending, any length) modulo `Φ_n`.
fn reduce_mod_phi(mut poly: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n).expect("n > 0");
    let deg = phi.degree().expect("nonzero");
    let lower: Vec<(usize, BigInt)> = phi
        .support()
        .into_iter()
        .filter(|(i, _)| *i < deg)
        .collect();
    if poly.len() < deg {
        poly.resize(deg, BigInt::zero());
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        let base = i - deg;
        for (j, d) in &lower {
            poly[base + j] -= &c * d;
        }
    }
    poly.truncate(deg);
    poly
}

impl CycElement {
    /// The element with the given power-basis coordinates at modulus `n`.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        if normalize_modulus(n) != n {
            return Err(Error::Precondition(format!("modulus {n} is not normalized")));
        }
        if coeffs.len() != euler_phi(n) as usize {
            return Err(Error::Precondition(format!(
                "expected {} coefficients at modulus {n}",
                euler_phi(n)
            )));
        }
        Ok(CycElement { modulus: n, coeffs })
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(v: i64) -> Self {
        CycElement {
            modulus: 1,
            coeffs: vec![BigInt::from(v)],
        }
    }

    /// Builds `Σ c_e ζ_n^e` from a sparse signed sum at any modulus.
    pub fn from_sparse(s: &SparseSum<BigInt>) -> Self {
        let n = s.modulus();
        let norm = normalize_modulus(n);
        let mut dense = vec![BigInt::zero(); norm as usize];
        if norm == n {
            for (e, c) in s.terms() {
                dense[*e as usize] += c;
            }
        } else {
            // ζ_{2m}^e = -ζ_m^{(e+m)/2} for odd e; even e is ζ_m^{e/2}.
            for (e, c) in s.terms() {
                if e % 2 == 0 {
                    dense[(e / 2) as usize] += c;
                } else {
                    dense[(((e + norm) / 2) % norm) as usize] -= c;
                }
            }
        }
        CycElement {
            modulus: norm,
            coeffs: reduce_mod_phi(dense, norm),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The same element expressed at a normalized multiple `m` of the modulus.
    pub fn lift(&self, m: u64) -> Result<Self> {
        let m = normalize_modulus(m);
        if m % self.modulus != 0 {
            return Err(Error::Precondition(format!(
                "cannot lift modulus {} to {m}",
                self.modulus
            )));
        }
        if m == self.modulus {
            return Ok(self.clone());
        }
        let k = (m / self.modulus) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * k] = c.clone();
        }
        Ok(CycElement {
            modulus: m,
            coeffs: reduce_mod_phi(dense, m),
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.modulus, other.modulus);
        (self.lift(m).expect("lcm"), other.lift(m).expect("lcm"))
    }

    /// Signed sparse view `Σ c_i ζ_N^i` of the coordinates.
    pub fn to_sparse(&self) -> SparseSum<BigInt> {
        SparseSum::new(
            self.modulus,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c.clone()))
                .collect(),
        )
    }

    /// `σ_x : ζ_N ↦ ζ_N^x`, re-expanding each `ζ_N^{ix}` and re-reducing.
    pub fn galois_apply(&self, x: u64) -> Result<Self> {
        let n = self.modulus;
        if n > 1 && gcd(x, n) != 1 {
            return Err(Error::NotAUnit { x, modulus: n });
        }
        let mut dense = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[mul_mod(i as u64, x, n) as usize] += c;
            }
        }
        Ok(CycElement {
            modulus: n,
            coeffs: reduce_mod_phi(dense, n),
        })
    }

    /// Floating-point value, for sanity checks only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let theta = std::f64::consts::TAU * i as f64 / n;
                Complex64::new(theta.cos(), theta.sin()) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let rational = CycElement::from_coeffs(1, vec![self.coeffs[0].clone()]).ok()?;
        if *self == rational {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// Exact value of a formal sum, at the normalized base modulus.
pub fn sum_to_element(s: &SumOfRoots) -> CycElement {
    CycElement::from_sparse(&sparse_of_sum(s))
}

/// The sum as a signed sparse combination at its normalized base modulus.
pub fn sparse_of_sum(s: &SumOfRoots) -> SparseSum<BigInt> {
    let n = normalize_modulus(s.base_modulus());
    SparseSum::new(
        n,
        s.terms()
            .iter()
            .map(|t| {
                let (neg, r) = t.fold_sign();
                let c = if neg { -BigInt::one() } else { BigInt::one() };
                (r.exponent_at(n), c)
            })
            .collect(),
    )
}

impl PartialEq for CycElement {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycElement {}

impl Add for &CycElement {
    type Output = CycElement;
    fn add(self, rhs: &CycElement) -> CycElement {
        let (a, b) = self.common(rhs);
        CycElement {
            modulus: a.modulus,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycElement {
    type Output = CycElement;
    fn sub(self, rhs: &CycElement) -> CycElement {
        self + &(-rhs)
    }
}

impl Neg for &CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        CycElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycElement {
    type Output = CycElement;
    fn mul(self, rhs: &CycElement) -> CycElement {
        let (a, b) = self.common(rhs);
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        let mut prod = vec![BigInt::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycElement {
            modulus: a.modulus,
            coeffs: reduce_mod_phi(prod, a.modulus),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycElement {
            type Output = CycElement;
            fn $m(self, rhs: CycElement) -> CycElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        -&self
    }
}

impl fmt::Display for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[N={}] (", self.modulus)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(s: &str) -> CycElement {
        sum_to_element(&s.parse().unwrap())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_modulus(10), 5);
        assert_eq!(normalize_modulus(56), 56);
        assert_eq!(normalize_modulus(2), 1);
        assert_eq!(normalize_modulus(1), 1);
    }

    #[test]
    fn sum_values() {
        assert_eq!(val("1/3, 2/3"), CycElement::integer(-1));
        assert!(val("0/1, 1/5, 2/5, 3/5, 4/5").is_zero());
        let sqrt2 = val("1/8, 7/8");
        assert_eq!(&sqrt2 * &sqrt2, CycElement::integer(2));
        assert_eq!(sqrt2.modulus(), 8);
    }

    #[test]
    fn ring_laws_on_examples() {
        let a = val("1/7, 3/4");
        assert_eq!(&a + &CycElement::zero(), a);
        assert_eq!(&val("1/3") * &val("2/3"), CycElement::one());
        assert!((&-&a + &a).is_zero());
        assert_eq!(a.as_integer(), None);
        assert_eq!(val("1/3, 2/3, 1/2").as_integer(), Some(BigInt::from(-2)));
    }

    #[test]
    fn galois_examples() {
        let alpha = val("1/8, 7/8, 1/7, 2/7, 4/7");
        assert_eq!(alpha.modulus(), 56);
        assert_eq!(alpha.galois_apply(1).unwrap(), alpha);
        assert_eq!(alpha.galois_apply(9).unwrap(), alpha);
        assert_eq!(alpha.galois_apply(15).unwrap(), alpha);
        assert_ne!(alpha.galois_apply(3).unwrap(), alpha);
        assert!(alpha.galois_apply(14).is_err());
        let z5 = val("1/5");
        assert_eq!(z5.galois_apply(2).unwrap().galois_apply(3).unwrap(), z5);
    }

    #[test]
    fn lifting_preserves_value() {
        let a = val("1/5, 2/3");
        let lifted = a.lift(60).unwrap();
        assert_eq!(lifted.modulus(), 60);
        assert_eq!(lifted, a);
        assert!((lifted.to_complex() - a.to_complex()).norm() < 1e-9);
        assert!(a.lift(7).is_err());
    }

    #[test]
    fn twice_odd_orders_fold_signs() {
        // ζ_10 + ζ_10^9 = -(ζ5^3 + ζ5^2)
        let a = val("1/10, 9/10");
        let b = val("-3/5, -2/5");
        assert_eq!(a, b);
        assert_eq!(a.modulus(), 5);
    }
}
