use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory::{gcd, lcm};

/// The root of unity `exp(2πi·exponent/order)` in lowest terms.
///
/// `exponent` is coprime to `order` unless the root is `1`, which is stored as
/// `order = 1, exponent = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity {
        order: 1,
        exponent: 0,
    };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity {
        order: 2,
        exponent: 1,
    };

    /// `ζ_n^e` reduced to lowest terms.
    pub fn new(n: u64, e: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        let e = e.rem_euclid(n as i64) as u64;
        Ok(Self::reduced(n, e))
    }

    /// Like [`RootOfUnity::new`] for an exponent already in `u64`.
    pub fn from_parts(n: u64, e: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self::reduced(n, e % n))
    }

    /// The primitive root `ζ_n`.
    pub fn primitive(n: u64) -> Result<Self> {
        Self::from_parts(n, 1)
    }

    fn reduced(n: u64, e: u64) -> Self {
        if e == 0 {
            return Self::ONE;
        }
        let g = gcd(e, n);
        RootOfUnity {
            order: n / g,
            exponent: e / g,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Exponent of this root as a power of `ζ_m`; `m` must be a multiple of the order.
    pub fn exponent_at(&self, m: u64) -> u64 {
        debug_assert!(m % self.order == 0);
        self.exponent * (m / self.order)
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let m = lcm(self.order, other.order);
        let e = (self.exponent_at(m) + other.exponent_at(m)) % m;
        Self::reduced(m, e)
    }

    pub fn inverse(&self) -> RootOfUnity {
        Self::reduced(self.order, (self.order - self.exponent) % self.order)
    }

    pub fn pow(&self, k: u64) -> RootOfUnity {
        let e = ((self.exponent as u128 * k as u128) % self.order as u128) as u64;
        Self::reduced(self.order, e)
    }

    pub fn neg(&self) -> RootOfUnity {
        self.mul(&Self::MINUS_ONE)
    }

    /// Image under `ζ ↦ ζ^x`; `x` must be coprime to the order.
    pub fn galois(&self, x: u64) -> Result<RootOfUnity> {
        if gcd(x, self.order) != 1 && self.order != 1 {
            return Err(Error::NotAUnit {
                x,
                modulus: self.order,
            });
        }
        Ok(self.pow(x))
    }

    /// Angle as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        self.exponent as f64 / self.order as f64
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let theta = std::f64::consts::TAU * self.turns();
        num_complex::Complex64::new(theta.cos(), theta.sin())
    }

    /// Writes `ζ_{2m}^e` (m odd) as `-ζ_m^{e'}`; other roots are returned unchanged
    /// with a positive sign.
    pub fn fold_sign(&self) -> (bool, RootOfUnity) {
        if self.order % 4 == 2 {
            let m = self.order / 2;
            let e = ((self.exponent + m) / 2) % m;
            (true, Self::reduced(m, e))
        } else {
            (false, *self)
        }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.exponent, self.order)
    }
}
