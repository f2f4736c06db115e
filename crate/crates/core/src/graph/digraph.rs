use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::quantale::{Sign, Word};

/// A finite reflexive directed graph.
///
/// Loops are implicit at every vertex and never stored. Vertices are
/// indexed `0..n` in insertion order and carry a display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<FixedBitSet>,
    inc: Vec<FixedBitSet>,
}

/// Serialized form: `{"vertices": [...], "arcs": [["x","y"], ...]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    arcs: Vec<(String, String)>,
}

impl DiGraph {
    pub fn new() -> DiGraph {
        DiGraph {
            names: Vec::new(),
            index: HashMap::new(),
            out: Vec::new(),
            inc: Vec::new(),
        }
    }

    /// Vertices named `0..n`.
    pub fn with_vertices(n: usize) -> DiGraph {
        let mut g = DiGraph::new();
        for i in 0..n {
            g.add_vertex(i.to_string());
        }
        g
    }

    /// Vertices `0..n` and the given arcs; loops are dropped.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        let mut g = DiGraph::with_vertices(n);
        for &(x, y) in arcs {
            g.add_arc(x, y);
        }
        g
    }

    /// Returns the index of `name`, adding it if new.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        for row in self.out.iter_mut().chain(self.inc.iter_mut()) {
            row.grow(i + 1);
        }
        self.out.push(FixedBitSet::with_capacity(i + 1));
        self.inc.push(FixedBitSet::with_capacity(i + 1));
        i
    }

    /// Adds the arc `x -> y`. Returns `false` for a loop, which is implicit
    /// and not stored.
    pub fn add_arc(&mut self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        self.out[x].insert(y);
        self.inc[y].insert(x);
        true
    }

    pub fn remove_arc(&mut self, x: usize, y: usize) {
        self.out[x].set(y, false);
        self.inc[y].set(x, false);
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, Error> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.out[x].contains(y)
    }

    /// Arc or equal: the reflexive adjacency.
    pub fn adjacent_or_equal(&self, x: usize, y: usize) -> bool {
        x == y || self.has_arc(x, y)
    }

    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[x].ones()
    }

    pub fn in_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[x].ones()
    }

    /// All arcs, ordered by tail then head index.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|x| self.out[x].ones().map(move |y| (x, y)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones(..)).sum()
    }

    /// No pair of vertices carries arcs in both directions.
    pub fn is_oriented(&self) -> bool {
        self.two_cycles().is_empty()
    }

    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        self.arcs()
            .into_iter()
            .filter(|&(x, y)| x < y && self.has_arc(y, x))
            .collect()
    }

    /// No directed cycle through two or more distinct vertices.
    pub fn is_acyclic(&self) -> bool {
        self.directed_cycle().is_none()
    }

    /// Some directed cycle as a vertex sequence (first vertex not repeated).
    pub fn directed_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertex_count();
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> =
                vec![(root, self.out_neighbors(root).collect())];
            state[root] = 1;
            while let Some((v, pending)) = stack.last_mut() {
                let v = *v;
                match pending.pop() {
                    Some(w) if state[w] == 1 => {
                        let mut cycle = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            cycle.push(cur);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    Some(w) if state[w] == 0 => {
                        state[w] = 1;
                        parent[w] = v;
                        let next = self.out_neighbors(w).collect();
                        stack.push((w, next));
                    }
                    Some(_) => {}
                    None => {
                        state[v] = 2;
                        stack.pop();
                    }
                }
            }
        }
        None
    }

    /// Subgraph induced on `keep`, preserving the given order and names.
    pub fn induced(&self, keep: &[usize]) -> DiGraph {
        let mut g = DiGraph::new();
        for &v in keep {
            g.add_vertex(self.names[v].clone());
        }
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.has_arc(x, y) {
                    g.add_arc(i, j);
                }
            }
        }
        g
    }

    /// Components of the underlying undirected graph, as a label per vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![root];
            label[root] = next;
            while let Some(v) = stack.pop() {
                for w in self.out_neighbors(v).chain(self.in_neighbors(v)) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// `map` (indexed by vertices of `self`) sends arcs to arcs or loops.
    pub fn is_homomorphism_to(&self, target: &DiGraph, map: &[usize]) -> bool {
        self.arcs()
            .into_iter()
            .all(|(x, y)| target.adjacent_or_equal(map[x], map[y]))
    }

    /// Parse the `.dg` text format. Returns the graph and warnings
    /// (ignored loops).
    ///
    /// One arc `x y` per line, `#` starts a comment, and a
    /// `vertices: a b c` line declares vertices (including isolated ones).
    pub fn parse_dg(text: &str) -> Result<(DiGraph, Vec<String>), Error> {
        let mut g = DiGraph::new();
        let mut warnings = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                for name in rest.split_whitespace() {
                    g.add_vertex(name);
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [x, y] = toks[..] else {
                return Err(Error::GraphSyntax {
                    line: lineno + 1,
                    message: format!("expected \"x y\" or \"vertices: ...\", found {line:?}"),
                });
            };
            let (xi, yi) = (g.add_vertex(x), g.add_vertex(y));
            if !g.add_arc(xi, yi) {
                warnings.push(format!(
                    "line {}: loop at {x} ignored (loops are implicit)",
                    lineno + 1
                ));
            }
        }
        Ok((g, warnings))
    }

    /// Text in the `.dg` format; parses back to an equal graph.
    pub fn to_dg(&self) -> String {
        let mut s = String::from("vertices:");
        for name in &self.names {
            s.push(' ');
            s.push_str(name);
        }
        s.push('\n');
        for (x, y) in self.arcs() {
            let _ = writeln!(s, "{} {}", self.names[x], self.names[y]);
        }
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphRepr {
            vertices: self.names.clone(),
            arcs: self
                .arcs()
                .into_iter()
                .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
                .collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<DiGraph, Error> {
        let repr: GraphRepr = serde_json::from_value(v)?;
        let mut g = DiGraph::new();
        for name in repr.vertices {
            if g.index_of(&name).is_some() {
                return Err(Error::DuplicateVertex(name));
            }
            g.add_vertex(name);
        }
        for (x, y) in repr.arcs {
            let (xi, yi) = (g.vertex(&x)?, g.vertex(&y)?);
            g.add_arc(xi, yi);
        }
        Ok(g)
    }
}

impl Default for DiGraph {
    fn default() -> Self {
        DiGraph::new()
    }
}

/// The zigzag coded by `u`: vertices `0..=|u|`, with `i -> i+1` for `+` and
/// `i+1 -> i` for `-`.
pub fn zigzag_of_word(u: &Word) -> DiGraph {
    let mut g = DiGraph::with_vertices(u.len() + 1);
    for (i, &a) in u.letters().iter().enumerate() {
        match a {
            Sign::Plus => g.add_arc(i, i + 1),
            Sign::Minus => g.add_arc(i + 1, i),
        };
    }
    g
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> DiGraph {
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    DiGraph::from_arcs(n, &arcs)
}

/// Every oriented graph on the vertices `0..n`: each unordered pair carries
/// no arc or exactly one of its two arcs.
pub fn oriented_graphs(n: usize) -> impl Iterator<Item = DiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut g = DiGraph::with_vertices(n);
        for &(a, b) in &pairs {
            match code % 3 {
                1 => g.add_arc(a, b),
                2 => g.add_arc(b, a),
                _ => false,
            };
            code /= 3;
        }
        g
    })
}

/// Mixed-radix coordinates of a product vertex index.
pub fn product_coords(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        coords[k] = idx % sizes[k];
        idx /= sizes[k];
    }
    coords
}

pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Direct product of reflexive graphs: distinct tuples are joined by an
/// arc iff every coordinate pair is an arc or equal. Vertex names are
/// parenthesized coordinate tuples.
pub fn product_graph(gs: &[DiGraph]) -> DiGraph {
    assert!(!gs.is_empty(), "product of an empty family");
    let sizes: Vec<usize> = gs.iter().map(DiGraph::vertex_count).collect();
    let total: usize = sizes.iter().product();
    let mut p = DiGraph::new();
    let coords: Vec<Vec<usize>> = (0..total).map(|i| product_coords(&sizes, i)).collect();
    for c in &coords {
        let parts: Vec<&str> = c.iter().zip(gs).map(|(&ci, g)| g.name(ci)).collect();
        p.add_vertex(format!("({})", parts.join(",")));
    }
    for (i, ci) in coords.iter().enumerate() {
        for (j, cj) in coords.iter().enumerate() {
            if i != j
                && gs
                    .iter()
                    .zip(ci.iter().zip(cj))
                    .all(|(g, (&a, &b))| g.adjacent_or_equal(a, b))
            {
                p.add_arc(i, j);
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn oriented_graph_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| oriented_graphs(n).count()).collect();
        assert_eq!(counts, [1, 1, 3, 27, 729]);
        assert!(oriented_graphs(3).all(|g| g.is_oriented()));
    }

    #[test]
    fn zigzag_examples() {
        assert_eq!(zigzag_of_word(&w("+")).arcs(), vec![(0, 1)]);
        let single = zigzag_of_word(&Word::empty());
        assert_eq!((single.vertex_count(), single.arc_count()), (1, 0));
        let fig = zigzag_of_word(&w("+++--+--"));
        assert_eq!(fig.vertex_count(), 9);
        assert_eq!(
            fig.arcs(),
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (4, 3),
                (5, 4),
                (5, 6),
                (7, 6),
                (8, 7)
            ]
        );
    }

    #[test]
    fn orientation_and_cycles() {
        for u in Word::all_up_to(4) {
            let z = zigzag_of_word(&u);
            assert!(z.is_oriented() && z.is_acyclic());
        }
        assert!(!DiGraph::from_arcs(2, &[(0, 1), (1, 0)]).is_oriented());
        let c3 = directed_cycle(3);
        assert!(c3.is_oriented());
        assert!(!c3.is_acyclic());
        assert_eq!(c3.directed_cycle().map(|c| c.len()), Some(3));
        let alt = DiGraph::from_arcs(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]);
        assert!(alt.is_acyclic());
    }

    #[test]
    fn product_of_two_arcs() {
        let a = zigzag_of_word(&w("+"));
        let p = product_graph(&[a.clone(), a]);
        assert_eq!(p.vertex_count(), 4);
        let named: Vec<(String, String)> = p
            .arcs()
            .into_iter()
            .map(|(x, y)| (p.name(x).to_string(), p.name(y).to_string()))
            .collect();
        let expect = [
            ("(0,0)", "(0,1)"),
            ("(0,0)", "(1,0)"),
            ("(0,0)", "(1,1)"),
            ("(0,1)", "(1,1)"),
            ("(1,0)", "(1,1)"),
        ];
        assert_eq!(named.len(), expect.len());
        for (x, y) in expect {
            assert!(named.contains(&(x.to_string(), y.to_string())), "{x}->{y}");
        }
    }

    #[test]
    fn product_with_point_is_copy() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (2, 1)]);
        let p = product_graph(&[g.clone(), DiGraph::with_vertices(1)]);
        assert_eq!(p.arcs(), g.arcs());
    }

    #[test]
    fn parse_dg_format() {
        let text = "# a path\nvertices: a b c z\na b\nb c  # second arc\n\nc c\n";
        let (g, warnings) = DiGraph::parse_dg(text).unwrap();
        assert_eq!(g.names(), ["a", "b", "c", "z"]);
        assert_eq!(g.arcs(), vec![(0, 1), (1, 2)]);
        assert_eq!(warnings.len(), 1);
        let (back, _) = DiGraph::parse_dg(&g.to_dg()).unwrap();
        assert_eq!(back, g);
        let err = DiGraph::parse_dg("a b\na b c\n").unwrap_err();
        assert!(matches!(err, Error::GraphSyntax { line: 2, .. }));
    }

    #[test]
    fn json_round_trip() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (2, 1)]);
        let back = DiGraph::from_json_value(g.to_json_value()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn components_and_homomorphisms() {
        let g = DiGraph::from_arcs(4, &[(0, 1), (3, 2)]);
        let c = g.components();
        assert_eq!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
        let path = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let arc = DiGraph::from_arcs(2, &[(0, 1)]);
        assert!(path.is_homomorphism_to(&arc, &[0, 0, 1]));
        assert!(!path.is_homomorphism_to(&arc, &[1, 0, 0]));
    }
}
