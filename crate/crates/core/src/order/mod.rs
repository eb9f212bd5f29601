//! Injective continuous homomorphisms between presentations: finite graph
//! search, explicit point maps, and comparison of basis elements.

mod compare;
mod embedding;
mod hom;
mod structure;
mod truncation;

pub use compare::{
    compare_canonical, confirm_by_truncation, embeds, verify_certificate, Certificate, ComparisonVerdict,
    RefutationReason, Relation,
};
pub use embedding::{verify_embedding, Direction, EmbeddingMap, FamilyImage, Placement};
pub use hom::{hom_exists, injective_hom_exists, is_homomorphism, HomOutcome, HomSearch, DEFAULT_BUDGET};
pub use structure::{sigma_p_equivalent, structural_isomorphism, Isomorphism};
pub use truncation::{truncation_refutes, truncation_refutes_with_budget, TruncationOutcome};
