//! Unramified elliptic tori T_h ≅ U_L/U_L^h, their characters with exact cyclotomic values,
//! general position, Galois orbits and Howe decompositions.

pub mod cyclo;
pub mod spec;
pub mod torus;

pub use cyclo::{Cyclo, CycloBasis};
pub use spec::{prime_power, GroupSpec, SpecError};
pub use torus::{degree_formula, macdonald_volume, r_theta, HoweDecomposition, Torus, TorusChar, TorusError};
