//! The subspace category `S(V)`, its cones and the cone semigroup.

mod cone;
mod factor;
mod normal_cones;
mod objects;

pub use cone::{
    cone_compose, cone_star, direct_sum_m_set, is_idempotent, m_set, principal_cone,
    validate_cone, ComponentJson, Cone, ConeJson, ConeReport,
};
pub use factor::{normal_factorization, NormalFactorization};
pub use normal_cones::{
    brute_force_normal_cones, enumerate_normal_cones, principal_cones, principal_morphism,
    search_normal_cones, ConeSemigroup, ASSIGNMENT_GUARD, SEARCH_GUARD,
};
pub use objects::{retraction_along, SubspaceCategory};
