//! Witt vectors over finite fields and Laurent series, reduction of
//! Artin-Schreier-Witt classes, the local symbol, ramification invariants
//! and genus growth in Witt towers.

pub mod error;
pub mod finite_field;
pub mod laurent;
pub mod reduction;
pub mod ramification;
pub mod ring;
pub mod selftest;
pub mod symbol;
pub mod tower;
pub mod witt;

pub use error::{Error, Result};
pub use finite_field::{make_field, FqCtx, FqElem};
pub use ring::Ring;
