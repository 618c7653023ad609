//! Exact homological algebra over standard-graded quotients of polynomial
//! rings over prime fields: Groebner bases, complexes, resolutions, Koszul
//! complexes, and certified level bounds.

// index loops mirror the row/column notation of the underlying linear algebra
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod complex;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod homotopy;
pub mod koszul;
pub mod level;
pub mod linalg;
pub mod module;
pub mod modvec;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod session;

pub use error::EngineError;
