//! Finite semigroups as validated Cayley tables.

mod amalgam;
mod eggbox;
mod green;
mod ideal;
mod morphism;
mod table;

pub use amalgam::{
    null_semigroup_fixture, verify_amalgam, Amalgam, AmalgamJson, AmalgamReport,
    EmbeddingReport, TaggedElement,
};
pub use eggbox::{eggbox, eggbox_export, Eggbox, EggboxCluster};
pub use green::{class_ids, green_relations, GreenStructure};
pub use ideal::{build_left_ideal_category, HomSet, IdealCategoryData, IdealObject, Translation};
pub use morphism::{verify_morphism, MorphismReport, SemigroupMorphism};
pub use table::{CayleyJson, FiniteSemigroup, PrincipalIdeals, ASSOCIATIVITY_GUARD};
