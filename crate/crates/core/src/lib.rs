//! Finite presentations of countable compact dynamical systems of
//! Cantor-Bendixson rank at most two, continuous colorings of their
//! graphs, and the injective continuous homomorphism order between them.
#![forbid(unsafe_code)]

pub mod analysis;
pub mod antichains;
pub mod basis;
pub mod coloring;
pub mod error;
pub mod order;
pub mod presentation;

pub use error::{Error, Result};
