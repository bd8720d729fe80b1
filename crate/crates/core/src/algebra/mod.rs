//! Exact scalar arithmetic: Laurent polynomials in `q` and free modules over them.

mod laurent;
mod module;

pub use laurent::LaurentPoly;
pub use module::{FreeModule, Scalar};
