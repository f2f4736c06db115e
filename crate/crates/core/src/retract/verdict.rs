//! Absolute-retract verdicts and the forbidden-subgraph obstruction check.

use serde::Serialize;

use super::helly::{balls_2helly, BallHellyReport};
use crate::graph::{distance_matrix, DiGraph};

/// A pair whose distance is not MacNeille-closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonClosedPair {
    pub x: String,
    pub y: String,
    pub distance: String,
    pub closure: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArReport {
    pub verdict: bool,
    pub oriented: bool,
    pub helly: BallHellyReport,
    pub acyclic: bool,
    pub all_closed: bool,
    pub non_closed_pairs: Vec<NonClosedPair>,
    /// Disagreements between the verdict and conditions every absolute
    /// retract satisfies. Always empty for a correct implementation.
    pub anomalies: Vec<String>,
}

/// Absolute-retract test among oriented graphs: oriented and the balls
/// have the 2-Helly property. Closure of all distances and acyclicity are
/// recorded alongside.
pub fn is_absolute_retract(g: &DiGraph) -> ArReport {
    let oriented = g.is_oriented();
    let helly = balls_2helly(g);
    let acyclic = g.is_acyclic();
    let d = distance_matrix(g);
    let non_closed_pairs: Vec<NonClosedPair> = d
        .pairs()
        .filter_map(|(x, y)| {
            let dxy = d.get(x, y);
            let closure = dxy.macneille_closure();
            (closure != *dxy).then(|| NonClosedPair {
                x: g.name(x).to_string(),
                y: g.name(y).to_string(),
                distance: dxy.to_string(),
                closure: closure.to_string(),
            })
        })
        .collect();
    let all_closed = non_closed_pairs.is_empty();
    let verdict = oriented && helly.helly;
    let mut anomalies = Vec::new();
    if verdict && !all_closed {
        anomalies.push("positive verdict with a distance that is not MacNeille-closed".to_string());
    }
    if verdict && !acyclic {
        anomalies.push("positive verdict on a graph with a directed cycle".to_string());
    }
    ArReport {
        verdict,
        oriented,
        helly,
        acyclic,
        all_closed,
        non_closed_pairs,
        anomalies,
    }
}

/// An arc `a -> b` together with a longer directed path from `a` to `b`
/// whose vertices do not induce a transitive subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityViolation {
    pub arc: (String, String),
    pub path: Vec<String>,
    /// Forward pairs along the path that are not arcs.
    pub missing: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub two_cycles: Vec<(String, String)>,
    pub directed_cycle: Option<Vec<String>>,
    pub transitivity_violations: Vec<TransitivityViolation>,
}

impl ObstructionReport {
    pub fn clean(&self) -> bool {
        self.two_cycles.is_empty()
            && self.directed_cycle.is_none()
            && self.transitivity_violations.is_empty()
    }
}

/// Structures that rule out an isometric embedding into a product of
/// oriented zigzags.
pub fn obstruction_check(g: &DiGraph) -> ObstructionReport {
    let name = |v: usize| g.name(v).to_string();
    let two_cycles = g
        .two_cycles()
        .into_iter()
        .map(|(a, b)| (name(a), name(b)))
        .collect();
    let directed_cycle = g
        .directed_cycle()
        .map(|c| c.into_iter().map(name).collect());
    let mut transitivity_violations = Vec::new();
    for (a, b) in g.arcs() {
        let mut path = vec![a];
        let mut on_path = vec![false; g.vertex_count()];
        on_path[a] = true;
        let mut found = Vec::new();
        simple_paths(g, b, &mut path, &mut on_path, &mut found);
        for p in found {
            let missing: Vec<(String, String)> = (0..p.len())
                .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.has_arc(p[i], p[j]))
                .map(|(i, j)| (name(p[i]), name(p[j])))
                .collect();
            if !missing.is_empty() {
                transitivity_violations.push(TransitivityViolation {
                    arc: (name(a), name(b)),
                    path: p.into_iter().map(name).collect(),
                    missing,
                });
            }
        }
    }
    ObstructionReport {
        two_cycles,
        directed_cycle,
        transitivity_violations,
    }
}

/// Simple directed paths from the end of `path` to `goal` with at least
/// three arcs overall.
fn simple_paths(
    g: &DiGraph,
    goal: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("nonempty path");
    for w in g.out_neighbors(last).collect::<Vec<_>>() {
        if w == goal {
            if path.len() >= 3 {
                let mut p = path.clone();
                p.push(w);
                out.push(p);
            }
        } else if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            simple_paths(g, goal, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}
