//! The word algebra and the quantale of final segments of `{+,-}*`.

mod residual;
mod upset;
mod word;

pub use residual::{quantale_distance, quantale_graph_arc, residual};
pub use upset::{
    cancellation_witness, canonical_upset, involute_upset, join, lower_cone, macneille_closure,
    meet, oplus, upset_leq, upset_member, LowerCone, UpSet,
};
pub(crate) use word::minimal_antichain;
pub use word::{involute_word, mcs, subword_leq, Sign, Word};
