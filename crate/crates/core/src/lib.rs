//! Numerical laboratory for local-realistic correlation models built on the
//! unit 3-sphere and 7-sphere, cross-checked against brute-force quantum
//! mechanics.
//!
//! Module map:
//!
//! - [`ga3`]: the Cl(3,0) kernel (multivectors, bivector beables, 3-sphere points).
//! - [`sphere7`]: the ℝ⁷ cross product, octonionic point products and GHZ embeddings.
//! - [`qmref`]: state vectors and Pauli tensor-product expectation values.
//! - [`lrmodel`]: singlet/CHSH, Hardy and GHZ model evaluators, the Hardy solver,
//!   canonical decomposition and comparison reports.
//! - [`mcsim`]: seeded hidden-variable ensembles.

pub mod error;
pub mod ga3;
pub mod lrmodel;
pub mod mcsim;
pub mod qmref;
pub mod sphere7;
pub mod tolerances;

pub use error::{Error, Result};
pub use ga3::{HiddenVariable, Multivector3, Vec3};
pub use sphere7::{CrossTable, SevenPoint, Vec7};
