use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// The parameters (q, n, κ, h) of an inner form of GL_n and a truncation level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub q: u64,
    pub n: u32,
    pub kappa: u32,
    pub h: usize,
}

impl GroupSpec {
    pub fn new(q: u64, n: u32, kappa: u32, h: usize) -> Result<GroupSpec, SpecError> {
        prime_power(q).ok_or(SpecError::NotPrimePower(q))?;
        if n < 2 || kappa >= n || h < 1 {
            return Err(SpecError::Invalid(format!("need n ≥ 2, 0 ≤ κ < n, h ≥ 1; got n={n} κ={kappa} h={h}")));
        }
        Ok(GroupSpec { q, n, kappa, h })
    }

    pub fn p(&self) -> u64 {
        prime_power(self.q).expect("validated").0
    }

    pub fn f(&self) -> u32 {
        prime_power(self.q).expect("validated").1
    }

    /// n' = gcd(n, κ), with gcd(n, 0) = n.
    pub fn n_prime(&self) -> u32 {
        self.n.gcd(&self.kappa)
    }

    pub fn n0(&self) -> u32 {
        self.n / self.n_prime()
    }

    pub fn k0(&self) -> u32 {
        self.kappa / self.n_prime()
    }

    /// Whether the group side has an explicit model (κ = 0 or n' = 1).
    pub fn group_supported(&self) -> bool {
        self.kappa == 0 || self.n_prime() == 1
    }

    pub fn with_h(&self, h: usize) -> GroupSpec {
        GroupSpec { h, ..*self }
    }

    pub fn tuple(&self) -> [u64; 4] {
        [self.q, self.n as u64, self.kappa as u64, self.h as u64]
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.q, self.n, self.kappa, self.h)
    }
}

/// `(p, f)` with q = p^f.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut f = 0;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_parameters() {
        let s = GroupSpec::new(2, 4, 2, 1).unwrap();
        assert_eq!((s.n_prime(), s.n0(), s.k0()), (2, 2, 1));
        let s = GroupSpec::new(3, 2, 0, 2).unwrap();
        assert_eq!((s.n_prime(), s.n0(), s.k0()), (2, 1, 0));
        let s = GroupSpec::new(2, 2, 1, 2).unwrap();
        assert_eq!((s.n_prime(), s.n0(), s.k0()), (1, 2, 1));
        assert!(GroupSpec::new(6, 2, 0, 1).is_err());
        assert_eq!(prime_power(9), Some((3, 2)));
    }
}
