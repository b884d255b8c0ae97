//! Exact arithmetic for cyclotomic integers written as sums of roots of unity.
//!
//! The crate computes conductors, Galois stabilizers and the index
//! `[Q_{c(α)} : Q(α)]`, enumerates minimal vanishing sums of roots of unity up to
//! rotation, searches for short representations, and builds the known families of
//! cyclotomic integers whose index exceeds their length.

pub mod error;
pub mod ntheory;
pub mod root;
pub mod sum;
pub mod sparse;
pub mod poly;
pub mod element;
pub mod galois;
pub mod vanishing;
pub mod length;
pub mod constructions;
pub mod bounds;
pub mod audit;

pub use element::{normalize_modulus, sum_to_element, CycElement};
pub use error::{Error, Result};
pub use galois::{ConductorReport, UnitSubgroup};
pub use poly::{cyclotomic_polynomial, IntPolynomial};
pub use root::RootOfUnity;
pub use sum::SumOfRoots;
