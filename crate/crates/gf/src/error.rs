use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{degree} exceeds the table bound {bound}")]
    Capacity { p: u64, degree: u32, bound: u64 },
    #[error("degree {0} is not supported by this tower")]
    Unsupported(u32),
    #[error("cannot embed degree {from} into degree {to}")]
    NotDivisor { from: u32, to: u32 },
    #[error("no root of the defining polynomial was found")]
    NoRoot,
}
