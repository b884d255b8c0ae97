use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity order must be positive")]
    InvalidOrder,
    #[error("{x} is not a unit modulo {modulus}")]
    NotAUnit { x: u64, modulus: u64 },
    #[error("moduli {0:?} are not pairwise coprime")]
    NonCoprimeModuli(Vec<u64>),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sum is not vanishing")]
    NotVanishing,
    #[error("sum is not a minimal vanishing sum")]
    NotMinimalVanishing,
    #[error("no subgroup of order {order} in (Z/{modulus})^x")]
    NoSubgroup { modulus: u64, order: u64 },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
