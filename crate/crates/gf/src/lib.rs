//! Exact arithmetic in finite fields F_{q^m}.
//!
//! Small fields (at most 2^20 elements) live in a [`Tower`] backed by Zech logarithm tables;
//! larger extensions, needed for twisted Frobenius fixed points, use [`ExtField`].

pub mod error;
pub mod ext;
pub mod field;
pub mod poly;
pub mod tower;

pub use error::GfError;
pub use ext::{ExtElem, ExtField, TowerEmbedding};
pub use field::FieldOps;
pub use tower::{Fq, Tower, TABLE_BOUND};
