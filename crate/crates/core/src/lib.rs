//! Exact computations with rational polytopes, their fans and polyhedral
//! norms: polar duality, toric charts and orbits, and horofunction limits.

pub mod corpus;
pub mod correspond;
pub mod error;
pub mod exactla;
pub mod fan;
pub mod feasibility;
pub mod horo;
pub mod json;
pub mod polytope;
pub mod toric;

mod closure;

pub use error::{Error, Result};
