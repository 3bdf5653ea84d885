//! The finite groups G_h attached to (q, n, κ, h).
//!
//! Two models are implemented:
//! * κ = 0: `GL_n(W_h(F_q))`. An element is stored as its digits, digit-major then
//!   row-major, so `digits[(d·n + i)·n + j]` is the ϖ^d digit of entry (i, j).
//! * n' = 1: units of `O_D/Π^N`, N = n(h−1)+1, written `Σ_{k<N} [a_k] Π^k` with
//!   `a_k ∈ F_{q^n}`, `Π^n = ϖ` and `Π [a] Π^{-1} = [σ^{-l}(a)]` where `l·k₀ ≡ 1 mod n`.
//!   This is the convention under which `Π` acts on the variety coordinates by the cyclic
//!   shift used in the `variety` crate.
//!
//! Elements are enumerated in a fixed order (lexicographic in the stored digits, slowest
//! first, each digit in field-element order) and referred to by index.

mod classes;
mod group;

pub use classes::{ConjClasses, CLASS_CAP};
pub use group::{group_order, ENUMERATION_CAP, very_regular_elements, GhElement, Group, GrpError, Model, ParabolicRadical};
