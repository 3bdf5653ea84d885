//! Parameter-side bookkeeping: a finite model of the relative Weil group of an unramified
//! extension, the induced parameters σ_θ = Ind(θ·μ), and formal degrees.

mod checks;
mod weil;

pub use checks::{formal_degree_check, verify_param_bijection, FormalDegree, ParamVerdict};
pub use weil::{rectifier, InducingChar, ParamChar, ParamError, WeilElement, WeilModel};
