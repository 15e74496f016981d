//! Duality pipeline: vertex algebras and their trivialization, the dual
//! quasi-bialgebra, the double as a bidynamical structure, and the link
//! identity between the two canonical ℓ-matrices.

pub mod algebroid;
pub mod connection;
pub mod doubletwo;
pub mod dualdata;
pub mod link;
pub mod trivialization;
pub mod vertex;

pub use algebroid::{anchor_residual, morphism_residual, PolyMap, TrivialSection};
pub use connection::{flatness_residual, nabla, nabla_parts, u_h_lemma_residual};
pub use doubletwo::{double_bidyn, functoriality_residual, rmx_hat, EmbeddedLcan};
pub use dualdata::{bidual_op_residual, dual_over_l, k_homomorphism_residual, DualData};
pub use link::{link_residual, LinkReport};
pub use trivialization::{
    psi_consistency_residual, trivialization_forms_residual, trivialize, trivialize_at_zero_matches,
};
pub use vertex::{
    iso_bracket_residual, vertex_bracket, vertex_iso, vertex_iso_inv, vertex_samples, VertexElement,
};
