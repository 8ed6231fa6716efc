//! Exact computations in free metabelian weakly-Novikov algebras and in the
//! free metabelian algebras with the weak left-commutative law alone.

pub mod element;
pub mod engine;
pub mod frontend;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod verify;
pub mod wlc;
pub mod wn;
pub mod word;
