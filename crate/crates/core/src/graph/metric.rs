//! Zigzag distances: a reflexive directed graph as a metric space over the
//! final segments of `{+,-}*`.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::DiGraph;
use crate::automata::SubwordNfa;
use crate::error::Error;
use crate::quantale::{Sign, UpSet, Word};

/// The zigzag automaton of `g`: states are vertices, `+` follows an arc,
/// `-` follows an arc backwards, every state loops. Start `{x}`, accept `{y}`.
pub fn zigzag_nfa(g: &DiGraph, x: usize, y: usize) -> SubwordNfa {
    let edges = g
        .arcs()
        .into_iter()
        .flat_map(|(s, t)| [(s, Sign::Plus, t), (t, Sign::Minus, s)]);
    SubwordNfa::with_self_loops(g.vertex_count(), edges, &[x], &[y])
}

/// Set of words coding walks from `x` to `y`; `TOP` when they lie in
/// different components.
pub fn distance(g: &DiGraph, x: usize, y: usize) -> UpSet {
    zigzag_nfa(g, x, y).min_words()
}

/// Vertices reached from `x` along the word `r`: the ball of principal
/// radius `↑r`.
pub fn ball(g: &DiGraph, x: usize, r: &Word) -> FixedBitSet {
    let a = zigzag_nfa(g, x, x);
    a.subset_reach(a.starts(), r)
}

/// All pairwise distances, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    names: Vec<String>,
    d: Vec<Vec<UpSet>>,
}

impl DistanceMatrix {
    pub fn new(names: Vec<String>, d: Vec<Vec<UpSet>>) -> Result<DistanceMatrix, Error> {
        let n = names.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(Error::Matrix(format!("expected a {n}x{n} table")));
        }
        Ok(DistanceMatrix { names, d })
    }

    pub fn of_graph(g: &DiGraph) -> DistanceMatrix {
        let n = g.vertex_count();
        let mut d = vec![vec![UpSet::top(); n]; n];
        if n > 0 {
            let base = zigzag_nfa(g, 0, 0);
            for y in 0..n {
                let column = base.with_endpoints(&[], &[y]).min_words_per_state();
                for (x, dist) in column.into_iter().enumerate() {
                    d[x][y] = dist;
                }
            }
        }
        DistanceMatrix {
            names: g.names().to_vec(),
            d,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, x: usize, y: usize) -> &UpSet {
        &self.d[x][y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: UpSet) {
        self.d[x][y] = value;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    /// Longest minimal generator over all entries.
    pub fn max_generator_len(&self) -> usize {
        self.pairs()
            .map(|(x, y)| self.d[x][y].max_generator_len())
            .max()
            .unwrap_or(0)
    }

    pub fn all_macneille_closed(&self) -> bool {
        self.pairs()
            .all(|(x, y)| self.d[x][y].is_macneille_closed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<DistanceMatrix, Error> {
        #[derive(Deserialize)]
        struct Repr {
            vertices: Vec<String>,
            d: std::collections::HashMap<String, UpSet>,
        }
        let repr: Repr = serde_json::from_str(text)?;
        let n = repr.vertices.len();
        let lookup = |key: &str| -> Option<(usize, usize)> {
            // names may themselves contain commas; try every split point
            key.match_indices(',').find_map(|(i, _)| {
                let x = repr.vertices.iter().position(|v| v == &key[..i])?;
                let y = repr.vertices.iter().position(|v| v == &key[i + 1..])?;
                Some((x, y))
            })
        };
        let mut d: Vec<Vec<Option<UpSet>>> = vec![vec![None; n]; n];
        for (key, value) in repr.d {
            let (x, y) = lookup(&key)
                .ok_or_else(|| Error::Matrix(format!("key {key:?} does not name a vertex pair")))?;
            d[x][y] = Some(value);
        }
        let mut full = Vec::with_capacity(n);
        for (x, row) in d.into_iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (y, cell) in row.into_iter().enumerate() {
                r.push(cell.ok_or_else(|| {
                    Error::Matrix(format!(
                        "missing entry for {},{}",
                        repr.vertices[x], repr.vertices[y]
                    ))
                })?);
            }
            full.push(r);
        }
        DistanceMatrix::new(repr.vertices, full)
    }
}

impl Serialize for DistanceMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a DistanceMatrix);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let m = self.0;
                let mut map = s.serialize_map(Some(m.len() * m.len()))?;
                for (x, y) in m.pairs() {
                    map.serialize_entry(&format!("{},{}", m.names[x], m.names[y]), &m.d[x][y])?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("vertices", &self.names)?;
        map.serialize_entry("d", &Entries(self))?;
        map.end()
    }
}

impl fmt::Display for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.pairs() {
            writeln!(
                f,
                "d({}, {}) = {}",
                self.names[x], self.names[y], self.d[x][y]
            )?;
        }
        Ok(())
    }
}

pub fn distance_matrix(g: &DiGraph) -> DistanceMatrix {
    DistanceMatrix::of_graph(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum MetricViolation {
    /// `d(x,y) = 0` must hold exactly when `x = y`.
    Separation { x: String, y: String },
    /// `d(x,y)` must be the involution of `d(y,x)`.
    Involution { x: String, y: String },
    /// `d(x,y) <= d(x,z) ⊕ d(z,y)` fails.
    Triangle { x: String, z: String, y: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_metric_axioms(m: &DistanceMatrix) -> MetricReport {
    let name = |i: usize| m.names[i].clone();
    let mut violations = Vec::new();
    for (x, y) in m.pairs() {
        if (x == y) != m.get(x, y).is_zero() {
            violations.push(MetricViolation::Separation {
                x: name(x),
                y: name(y),
            });
        }
        if x < y && *m.get(x, y) != m.get(y, x).involute() {
            violations.push(MetricViolation::Involution {
                x: name(x),
                y: name(y),
            });
        }
    }
    for (x, y) in m.pairs() {
        for z in 0..m.len() {
            if !m.get(x, y).leq(&m.get(x, z).oplus(m.get(z, y))) {
                violations.push(MetricViolation::Triangle {
                    x: name(x),
                    z: name(z),
                    y: name(y),
                });
            }
        }
    }
    MetricReport { violations }
}

/// A word of `d(x,y)` split as `u·v` with no midpoint `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionViolation {
    pub x: String,
    pub y: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub bound: usize,
    /// Number of `(x, y, u, v)` splits examined.
    pub checked: usize,
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A vertex `z` with `u ∈ d(x,z)` and `v ∈ d(z,y)`, if one exists.
pub fn decomposition_witness(
    m: &DistanceMatrix,
    x: usize,
    y: usize,
    u: &Word,
    v: &Word,
) -> Option<usize> {
    (0..m.len()).find(|&z| m.get(x, z).contains(u) && m.get(z, y).contains(v))
}

/// Checks the midpoint property for every member of every distance up to
/// length `bound` and every split of it.
pub fn decomposition_check(m: &DistanceMatrix, bound: usize) -> DecompositionReport {
    let words: Vec<Word> = Word::all_up_to(bound).collect();
    let mut report = DecompositionReport {
        bound,
        ..Default::default()
    };
    for (x, y) in m.pairs() {
        for w in words.iter().filter(|w| m.get(x, y).contains(w)) {
            for cut in 0..=w.len() {
                let (u, v) = (w.slice(0, cut), w.slice(cut, w.len()));
                report.checked += 1;
                if decomposition_witness(m, x, y, &u, &v).is_none() {
                    report.violations.push(DecompositionViolation {
                        x: m.names[x].clone(),
                        y: m.names[y].clone(),
                        u: u.to_string(),
                        v: v.to_string(),
                    });
                }
            }
        }
    }
    report
}

/// Arcs exactly where `+` belongs to the distance.
pub fn graph_from_metric(m: &DistanceMatrix) -> DiGraph {
    let mut g = DiGraph::new();
    for name in &m.names {
        g.add_vertex(name.clone());
    }
    let plus = Word::letter(Sign::Plus);
    for (x, y) in m.pairs() {
        if x != y && m.get(x, y).contains(&plus) {
            g.add_arc(x, y);
        }
    }
    g
}
