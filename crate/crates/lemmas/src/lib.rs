//! Verification of the concrete lemmas behind the construction: a norm image, fibers of
//! an Artin–Schreier tower, Euclidean curve reductions, determinant identities for the
//! quotient by N_h, Turnbull tableaux and the Weyl-group combinatorics.

pub mod curve;
pub mod minor;
pub mod norm;
pub mod quotient;
pub mod rh;
pub mod sigma_w;
pub mod turnbull;
pub mod verdict;

pub use curve::{curve_count, reduction_chain, verify_curve_reduction};
pub use minor::{verify_minor_identity, MinorSetup, Sampling};
pub use norm::verify_norm_image;
pub use quotient::{enumerate_xh, solve_fiber, verify_quotient_fibers};
pub use rh::{rh_points, verify_rh_fibers};
pub use sigma_w::{emptiness_predicate, sigma_hat_count, sigma_w_criteria, staircase, verify_sigma_hat_emptiness, weyl_o};
pub use turnbull::{intermediate_identity, verify_turnbull, Tableau};
pub use verdict::{LemmaError, LemmaVerdict};
