//! From point counts to characters.
//!
//! For a torus character θ the trace sum
//! `c_θ(g) = (1/#T_h) Σ_t θ(t)·#S_{g,t}` is the character of the θ-isotypic part of the
//! cohomology, weighted by Frobenius eigenvalues. When the cohomology is concentrated in one
//! degree and Frobenius acts by a scalar λ, `⟨c_θ, c_θ⟩ = λ²` with `λ² = q^{n·r}`, and
//! `χ_θ = ±c_θ/λ` is a genuine irreducible character.

mod checks;
mod export;
mod oracle;
mod pipeline;

pub use checks::{central_check, cuspidal_check, degree_check, very_regular_check, twist_check, Verdict};
pub use export::{character_table_csv, character_table_json};
pub use oracle::classical_gl2_oracle;
pub use pipeline::{ClassFunction, DlError, ExtractionReport, MackeyReport, Pipeline, SCountTable};
