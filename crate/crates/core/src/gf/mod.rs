//! Exact linear algebra over small prime fields.

mod endo;
mod enumerate;
mod field;
mod linear_map;
pub mod rowops;
mod subspace;

use serde::{Deserialize, Serialize};

pub use endo::Endo;
pub use enumerate::{
    enumerate_automorphisms, enumerate_endos, enumerate_subspaces, gaussian_binomial,
    general_linear_order, singular_count, ENDO_GUARD, SUBSPACE_COUNT_GUARD, SUBSPACE_GUARD,
};
pub use field::Field;
pub use linear_map::LinearMap;
pub use subspace::Subspace;

/// Wire form shared by subspaces and endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u8,
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
}
