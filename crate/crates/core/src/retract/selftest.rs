//! Exhaustive consistency run over all small oriented graphs.

use serde::Serialize;

use super::embed::embed_zigzag_product;
use super::maps::{check_isometric_subgraph, retraction_search};
use super::verdict::is_absolute_retract;
use crate::graph::{distance_matrix, oriented_graphs, verify_metric_axioms, DiGraph};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub graphs: usize,
    pub connected: usize,
    pub absolute_retracts: usize,
    /// One-vertex isometric extensions of absolute retracts retracted back.
    pub extensions_checked: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every oriented graph on at most `max_n` vertices: the metric axioms
/// hold; on connected graphs the product embedding succeeds exactly when
/// every distance is MacNeille-closed; positive verdicts meet the necessary
/// conditions; and absolute retracts retract from each of their one-vertex
/// isometric extensions.
pub fn theorem_consistency(max_n: usize) -> SelftestReport {
    let mut report = SelftestReport {
        max_n,
        ..Default::default()
    };
    for n in 1..=max_n {
        for g in oriented_graphs(n) {
            report.graphs += 1;
            check_graph(&g, &mut report);
        }
    }
    report
}

fn check_graph(g: &DiGraph, report: &mut SelftestReport) {
    let arcs = g.arcs();
    let d = distance_matrix(g);
    if !verify_metric_axioms(&d).is_ok() {
        report
            .failures
            .push(format!("{arcs:?}: metric axioms fail"));
    }
    let closed = d.all_macneille_closed();
    if g.components().iter().all(|&c| c == 0) {
        report.connected += 1;
        let embedded = embed_zigzag_product(g, 2 * g.vertex_count()).is_ok();
        if embedded != closed {
            report.failures.push(format!(
                "{arcs:?}: embedding {embedded} but closure {closed}"
            ));
        }
    }
    let verdict = is_absolute_retract(g);
    for a in &verdict.anomalies {
        report.failures.push(format!("{arcs:?}: {a}"));
    }
    if !verdict.verdict {
        return;
    }
    report.absolute_retracts += 1;
    let n = g.vertex_count();
    for code in 0..3usize.pow(n as u32) {
        let mut h = g.clone();
        let v = h.add_vertex("new");
        let mut c = code;
        for u in 0..n {
            match c % 3 {
                1 => h.add_arc(u, v),
                2 => h.add_arc(v, u),
                _ => false,
            };
            c /= 3;
        }
        if check_isometric_subgraph(&h, g).is_err() {
            continue;
        }
        report.extensions_checked += 1;
        match retraction_search(&h, g) {
            Ok(Some(r)) => {
                let img = r.to_vec();
                if !h.is_homomorphism_to(g, &img) || (0..n).any(|x| img[x] != x) {
                    report
                        .failures
                        .push(format!("{arcs:?}: invalid retraction {img:?}"));
                }
            }
            _ => report.failures.push(format!(
                "{arcs:?}: no retraction from extension {:?}",
                h.arcs()
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs_are_consistent() {
        let r = theorem_consistency(3);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.graphs, 1 + 3 + 27);
        assert!(r.extensions_checked > 0);
    }
}
