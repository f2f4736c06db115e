//! Retractions, Helly tests, product embeddings and hull search.

mod embed;
mod gadgets;
mod helly;
mod hull;
mod maps;
mod selftest;
mod verdict;

pub use embed::{
    default_embedding_bound, embed_zigzag_product, minimum_factor_embedding, zigzag_homomorphisms,
    zigzag_segment, EmbeddingCertificate, EmbeddingFailure, ZigzagFactor,
};
pub use gadgets::{default_gadget_size, gadget_cancellation_extension, gadget_cycle_extension};
pub use helly::{all_balls, balls_2helly, berge_helly, BallHellyReport, BallRecord, HellyOutcome};
pub use hull::{injective_hull_search, HullOutcome, MAX_UNIVERSE};
pub use maps::{
    check_isometric_subgraph, embed_by_name, extend_map, is_isometric_embedding, retraction_search,
    Extender, VertexMap,
};
pub use selftest::{theorem_consistency, SelftestReport};
pub use verdict::{
    is_absolute_retract, obstruction_check, ArReport, NonClosedPair, ObstructionReport,
    TransitivityViolation,
};
