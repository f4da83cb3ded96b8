//! Extended Hecke algebras attached to a root datum and an integer `n`:
//! the algebra with idempotents `1_λ` indexed by characters of the
//! `n`-torsion of the torus, its canonical basis, cells and `a`-function,
//! the asymptotic ring, and the representation-theoretic invariants that
//! go with them.

pub mod cells_jring;
pub mod error;
pub mod exact_arith;
pub mod hecke;
pub mod kl;
pub mod reps;
pub mod torus_chars;
pub mod weyl;

pub use error::{Error, Result};
