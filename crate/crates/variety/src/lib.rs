//! The varieties X_h and their closed strata X_{h,n'}: coordinates, actions, twisted
//! Frobenius fixed points, and the counts `#S_{g,t}` that determine the characters.

pub mod action;
pub mod cache;
pub mod count;
pub mod fixed;
pub mod linalg;
pub mod model;

pub use action::{frobenius, LinearMap};
pub use cache::{digit_hash, CountCache, CountRecord};
pub use count::{count_points, Counter, POINT_CAP};
pub use fixed::{solve_twisted_fixed, BigField, FieldCache, FixedSpace};
pub use model::{Model, Point};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("{points} candidate points exceed the cap {cap}")]
    Capacity { points: u128, cap: u128 },
    #[error("fixed-point solver: {0}")]
    Solver(String),
    #[error(transparent)]
    Field(#[from] coxdl_gf::GfError),
    #[error("cache: {0}")]
    Cache(String),
}
