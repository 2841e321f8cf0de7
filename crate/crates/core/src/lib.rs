//! Exact-rational computer algebra for A∞ and L∞ algebras, their strong
//! homotopy derivations, and the free-operad resolutions that encode them.

pub mod error;
pub mod cli;
pub mod coalgebra;
pub mod family;
pub mod fixtures;
pub mod graded;
pub mod homotopy_assoc;
pub mod homotopy_lie;
pub mod io;
pub mod lincomb;
pub mod operad;
pub mod random;
pub mod signs;

pub use error::{Error, Result};
pub use lincomb::{integer, rational, LinComb, Rational};
