//! Non-expansive maps: extension one vertex at a time, retraction search
//! and isometry checks.

use std::borrow::Cow;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde_json::{Map, Value};

use crate::automata::SubwordNfa;
use crate::error::Error;
use crate::graph::{distance_matrix, zigzag_nfa, DiGraph, DistanceMatrix};

/// A possibly partial map from the vertices of one graph to another.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    images: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn empty(domain_size: usize) -> VertexMap {
        VertexMap {
            images: vec![None; domain_size],
        }
    }

    pub fn total(images: Vec<usize>) -> VertexMap {
        VertexMap {
            images: images.into_iter().map(Some).collect(),
        }
    }

    pub fn identity(n: usize) -> VertexMap {
        VertexMap::total((0..n).collect())
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.images[x]
    }

    pub fn set(&mut self, x: usize, y: usize) {
        self.images[x] = Some(y);
    }

    pub fn unset(&mut self, x: usize) {
        self.images[x] = None;
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|y| seen.insert(*y))
    }

    /// Mapped `(x, f(x))` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    /// Images as a vector; panics on a partial map.
    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|y| y.expect("total map")).collect()
    }

    /// `{"x": "f(x)", ...}` using vertex names.
    pub fn to_json(&self, domain: &DiGraph, codomain: &DiGraph) -> Value {
        let mut m = Map::new();
        for (x, y) in self.pairs() {
            m.insert(
                domain.name(x).to_string(),
                Value::String(codomain.name(y).to_string()),
            );
        }
        Value::Object(m)
    }

    /// `d_H(f(x), f(y)) <= d_G(x, y)` on every mapped pair.
    pub fn is_non_expansive(&self, source: &DistanceMatrix, target: &DistanceMatrix) -> bool {
        let mapped: Vec<(usize, usize)> = self.pairs().collect();
        mapped.iter().all(|&(x, fx)| {
            mapped
                .iter()
                .all(|&(y, fy)| target.get(fx, fy).leq(source.get(x, y)))
        })
    }
}

/// Extension of non-expansive maps from a source graph into a target graph.
///
/// Holds the source distances and the target's zigzag automaton so balls
/// can be evaluated repeatedly.
pub struct Extender<'a> {
    source: &'a DiGraph,
    target: &'a DiGraph,
    source_d: Cow<'a, DistanceMatrix>,
    target_nfa: Option<SubwordNfa>,
}

impl<'a> Extender<'a> {
    pub fn new(source: &'a DiGraph, target: &'a DiGraph) -> Extender<'a> {
        Extender::with_distances(source, target, Cow::Owned(distance_matrix(source)))
    }

    pub fn with_distances(
        source: &'a DiGraph,
        target: &'a DiGraph,
        source_d: Cow<'a, DistanceMatrix>,
    ) -> Extender<'a> {
        let target_nfa = (target.vertex_count() > 0).then(|| zigzag_nfa(target, 0, 0));
        Extender {
            source,
            target,
            source_d,
            target_nfa,
        }
    }

    pub fn source_distances(&self) -> &DistanceMatrix {
        &self.source_d
    }

    /// Target vertices `z` such that `f ∪ {x ↦ z}` stays non-expansive: the
    /// intersection of the balls `B(f(y), ↑r)` over mapped `y` and minimal
    /// generators `r` of `d(y, x)`. Radius monotonicity makes generators
    /// enough.
    pub fn candidates(&self, f: &VertexMap, x: usize) -> FixedBitSet {
        let n = self.target.vertex_count();
        let mut acc = FixedBitSet::with_capacity(n);
        acc.insert_range(..);
        let Some(nfa) = &self.target_nfa else {
            return acc;
        };
        let mut center = FixedBitSet::with_capacity(n);
        for (y, fy) in f.pairs() {
            for r in self.source_d.get(y, x).generators() {
                center.clear();
                center.insert(fy);
                acc.intersect_with(&nfa.subset_reach(&center, r));
                if acc.is_clear() {
                    return acc;
                }
            }
        }
        acc
    }

    /// First candidate in vertex order, if any.
    pub fn extend(&self, f: &VertexMap, x: usize) -> Option<usize> {
        self.candidates(f, x).ones().next()
    }

    /// Greedy extension of `f` to every source vertex, in `order` and then
    /// in index order for anything left. `None` when some step is stuck.
    pub fn extend_greedily(&self, mut f: VertexMap, order: &[usize]) -> Option<VertexMap> {
        let rest = 0..self.source.vertex_count();
        for x in order.iter().copied().chain(rest) {
            if f.get(x).is_none() {
                let z = self.extend(&f, x)?;
                f.set(x, z);
            }
        }
        Some(f)
    }

    /// Complete `f` by chronological backtracking over the candidate sets.
    pub fn complete(&self, f: VertexMap, order: &[usize]) -> Option<VertexMap> {
        let free: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&x| f.get(x).is_none())
            .collect();
        let mut f = f;
        if self.backtrack(&mut f, &free, 0) {
            Some(f)
        } else {
            None
        }
    }

    fn backtrack(&self, f: &mut VertexMap, free: &[usize], depth: usize) -> bool {
        let Some(&x) = free.get(depth) else {
            return true;
        };
        for z in self.candidates(f, x).ones() {
            f.set(x, z);
            if self.backtrack(f, free, depth + 1) {
                return true;
            }
        }
        f.unset(x);
        false
    }
}

/// Extend the partial map `f: H ⇀ G` to the vertex `x` of `h`.
pub fn extend_map(h: &DiGraph, g: &DiGraph, f: &VertexMap, x: usize) -> Option<usize> {
    Extender::new(h, g).extend(f, x)
}

/// `f` preserves every zigzag distance.
pub fn is_isometric_embedding(f: &VertexMap, g: &DiGraph, h: &DiGraph) -> bool {
    if f.domain_size() != g.vertex_count() || !f.is_total() {
        return false;
    }
    let (dg, dh) = (distance_matrix(g), distance_matrix(h));
    let img = f.to_vec();
    dg.pairs()
        .all(|(x, y)| dg.get(x, y) == dh.get(img[x], img[y]))
}

/// Positions in `host` of the vertices of `sub`, matched by name.
pub fn embed_by_name(sub: &DiGraph, host: &DiGraph) -> Result<Vec<usize>, Error> {
    sub.names().iter().map(|n| host.vertex(n)).collect()
}

/// Checks that `sub` sits isometrically inside `host` (vertices matched by
/// name) and returns the positions.
pub fn check_isometric_subgraph(host: &DiGraph, sub: &DiGraph) -> Result<Vec<usize>, Error> {
    let pos = embed_by_name(sub, host)?;
    let (ds, dh) = (distance_matrix(sub), distance_matrix(host));
    for (x, y) in ds.pairs() {
        if ds.get(x, y) != dh.get(pos[x], pos[y]) {
            return Err(Error::NotIsometric {
                x: sub.name(x).to_string(),
                y: sub.name(y).to_string(),
                sub: ds.get(x, y).to_string(),
                host: dh.get(pos[x], pos[y]).to_string(),
            });
        }
    }
    Ok(pos)
}

/// Homomorphism `host -> sub` fixing every vertex of `sub`, which must be an
/// isometric subgraph (vertices matched by name). The result is indexed by
/// host vertices with values in `sub`.
pub fn retraction_search(host: &DiGraph, sub: &DiGraph) -> Result<Option<VertexMap>, Error> {
    let pos = check_isometric_subgraph(host, sub)?;
    let mut f = VertexMap::empty(host.vertex_count());
    for (i, &p) in pos.iter().enumerate() {
        f.set(p, i);
    }
    let order = bfs_order(host, &pos);
    let ext = Extender::new(host, sub);
    Ok(ext.complete(f, &order))
}

/// Vertices by increasing undirected distance from `roots`, then the rest.
pub(crate) fn bfs_order(g: &DiGraph, roots: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    let drain = |queue: &mut VecDeque<usize>, seen: &mut Vec<bool>, order: &mut Vec<usize>| {
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = g.out_neighbors(v).chain(g.in_neighbors(v)).collect();
            next.sort_unstable();
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    };
    drain(&mut queue, &mut seen, &mut order);
    for v in 0..n {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
            drain(&mut queue, &mut seen, &mut order);
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directed_cycle;

    #[test]
    fn identity_is_isometric() {
        let g = DiGraph::from_arcs(4, &[(0, 1), (2, 1), (2, 3)]);
        assert!(is_isometric_embedding(&VertexMap::identity(4), &g, &g));
    }

    #[test]
    fn path_into_three_cycle_is_not_isometric() {
        let path = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        assert!(!is_isometric_embedding(
            &VertexMap::identity(3),
            &path,
            &directed_cycle(3)
        ));
    }

    #[test]
    fn extending_identity_recovers_vertex() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let mut f = VertexMap::empty(3);
        f.set(0, 0);
        f.set(2, 2);
        assert_eq!(extend_map(&g, &g, &f, 1), Some(1));
    }

    #[test]
    fn retraction_of_graph_onto_itself() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let r = retraction_search(&g, &g).unwrap().unwrap();
        assert_eq!(r.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn retraction_requires_isometric_subgraph() {
        let host = directed_cycle(3);
        let sub = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            retraction_search(&host, &sub),
            Err(Error::NotIsometric { .. })
        ));
        let mut stranger = DiGraph::new();
        stranger.add_vertex("q");
        assert!(matches!(
            retraction_search(&host, &stranger),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn bfs_order_covers_everything() {
        let g = DiGraph::from_arcs(5, &[(0, 1), (2, 1), (3, 4)]);
        assert_eq!(bfs_order(&g, &[2]), vec![2, 1, 0, 3, 4]);
    }
}
