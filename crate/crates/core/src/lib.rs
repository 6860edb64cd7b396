//! Finite-field models of singular endomorphism semigroups, their normal
//! categories and cross-connections, and amalgams of the cross-connection
//! semigroups attached to the fibers of a vector bundle.
//!
//! Everything is exact and exhaustive at desk scale: GF(p) with p ≤ 7 and
//! small dimensions.

pub mod bundle;
pub mod category;
pub mod crossconn;
pub mod dual;

mod error;
pub mod gf;
pub mod semigroup;
pub mod sing;

pub use error::{Error, Result};
