//! Reflexive oriented graphs as generalized metric spaces over the quantale
//! of final segments of words on `{+, -}`.
//!
//! The crate is organized bottom-up:
//!
//! - [`quantale`]: words, the subword order, final segments with their
//!   lattice, monoid and involution structure, MacNeille closure and
//!   residuation;
//! - [`automata`]: automata with self-loops, whose languages are exactly the
//!   superword-closed ones, and the extraction of their minimal words;
//! - [`graph`]: zigzag distances, balls, products, and the correspondence
//!   between graphs and metrics;
//! - [`retract`]: Helly tests, map extension, retractions, embeddings into
//!   products of zigzags, absolute-retract verdicts and hull search.

pub mod automata;
pub mod error;
pub mod graph;
pub mod quantale;
pub mod retract;

pub use error::{Error, Result};
pub use graph::{DiGraph, DistanceMatrix};
pub use quantale::{Sign, UpSet, Word};
