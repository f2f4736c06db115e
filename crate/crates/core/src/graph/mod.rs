//! Reflexive directed graphs and their zigzag metric.

mod digraph;
mod metric;

pub use digraph::{
    directed_cycle, oriented_graphs, product_coords, product_graph, product_index, zigzag_of_word,
    DiGraph,
};
pub use metric::{
    ball, decomposition_check, decomposition_witness, distance, distance_matrix, graph_from_metric,
    verify_metric_axioms, zigzag_nfa, DecompositionReport, DecompositionViolation, DistanceMatrix,
    MetricReport, MetricViolation,
};
