//! Isometric embeddings into products of oriented zigzags.

use std::borrow::Cow;
use std::collections::HashSet;

use serde::Serialize;

use super::maps::{bfs_order, Extender, VertexMap};
use crate::graph::{distance_matrix, zigzag_of_word, DiGraph, DistanceMatrix};
use crate::quantale::{LowerCone, Sign, UpSet, Word};

/// A homomorphism from the source graph onto the zigzag `Z_word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZigzagFactor {
    pub word: Word,
    /// Position in `0..=|word|` of each source vertex.
    pub coords: Vec<usize>,
}

impl ZigzagFactor {
    /// Generator of the distance between two positions of the zigzag.
    pub fn segment(&self, x: usize, y: usize) -> Word {
        zigzag_segment(&self.word, self.coords[x], self.coords[y])
    }

    pub fn graph(&self) -> DiGraph {
        zigzag_of_word(&self.word)
    }
}

/// In `Z_u` the distance from `i` to `j` is generated by the factor of `u`
/// between them, read backwards and involuted when `j < i`.
pub fn zigzag_segment(u: &Word, i: usize, j: usize) -> Word {
    if i <= j {
        u.slice(i, j)
    } else {
        u.slice(j, i).involute()
    }
}

/// A product-of-zigzags embedding with its verification status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCertificate {
    pub factors: Vec<Word>,
    pub vertices: Vec<String>,
    /// `coordinates[v][i]` is the position of vertex `v` in factor `i`.
    pub coordinates: Vec<Vec<usize>>,
    pub isometric: bool,
    /// Set when some pairs are disconnected: for those pairs isometry was
    /// checked only against words up to this length.
    pub disconnected_bound: Option<usize>,
}

impl EmbeddingCertificate {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> ZigzagFactor {
        ZigzagFactor {
            word: self.factors[i].clone(),
            coords: self.coordinates.iter().map(|c| c[i]).collect(),
        }
    }

    /// Join over the factors of the coordinate distances of `(x, y)`.
    pub fn product_distance(&self, x: usize, y: usize) -> UpSet {
        let mut segs: Vec<Word> = (0..self.factor_count())
            .map(|i| self.factor(i).segment(x, y))
            .collect();
        segs.sort();
        segs.dedup();
        segs.into_iter()
            .fold(UpSet::zero(), |acc, s| acc.join(&UpSet::principal(s)))
    }
}

/// The pair whose distance the product fails to reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingFailure {
    pub x: String,
    pub y: String,
    pub expected: UpSet,
    pub realized: UpSet,
    pub reason: String,
}

/// Default word-length bound for disconnected pairs.
pub fn default_embedding_bound(g: &DiGraph) -> usize {
    2 * g.vertex_count()
}

/// Embed `g` into a product of zigzags.
///
/// For every ordered pair `(x, y)` at finite distance and every maximal
/// word `u` of the lower cone of `d(x, y)`, the map `x ↦ 0, y ↦ |u|` into
/// `Z_u` is non-expansive and extends to all of `g`. Disconnected pairs get
/// the factors `Z_{+^bound}` and `Z_{-^bound}`, which separate them from
/// every word of length at most `bound`. The product map is then checked
/// pair by pair.
pub fn embed_zigzag_product(
    g: &DiGraph,
    bound: usize,
) -> Result<EmbeddingCertificate, EmbeddingFailure> {
    let d = distance_matrix(g);
    let mut factors: Vec<ZigzagFactor> = Vec::new();
    let mut seen: HashSet<ZigzagFactor> = HashSet::new();
    let mut disconnected = false;
    for (x, y) in d.pairs() {
        if x == y {
            continue;
        }
        let dxy = d.get(x, y);
        let words: Vec<Word> = if dxy.is_top() {
            disconnected = true;
            if x > y || bound == 0 {
                continue;
            }
            vec![
                Word::repeat(Sign::Plus, bound),
                Word::repeat(Sign::Minus, bound),
            ]
        } else {
            match dxy.lower_cone() {
                LowerCone::Finite(maxes) => maxes.into_iter().filter(|m| !m.is_empty()).collect(),
                LowerCone::All => unreachable!("only TOP has the full lower cone"),
            }
        };
        for u in words {
            let factor = factor_through(g, &d, x, y, &u).ok_or_else(|| EmbeddingFailure {
                x: g.name(x).to_string(),
                y: g.name(y).to_string(),
                expected: dxy.clone(),
                realized: UpSet::principal(u.clone()),
                reason: format!("no homomorphism onto Z_{u} sends the pair to its ends"),
            })?;
            if seen.insert(factor.clone()) {
                factors.push(factor);
            }
        }
    }
    let cert = certificate(g, &factors, disconnected.then_some(bound));
    verify(g, &d, &cert)
}

/// Map `g` onto `Z_u` with `x ↦ 0` and `y ↦ |u|`.
fn factor_through(
    g: &DiGraph,
    d: &DistanceMatrix,
    x: usize,
    y: usize,
    u: &Word,
) -> Option<ZigzagFactor> {
    let z = zigzag_of_word(u);
    let ext = Extender::with_distances(g, &z, Cow::Borrowed(d));
    let mut f = VertexMap::empty(g.vertex_count());
    f.set(x, 0);
    f.set(y, u.len());
    let order = bfs_order(g, &[x, y]);
    let full = ext
        .extend_greedily(f.clone(), &order)
        .or_else(|| ext.complete(f, &order))?;
    Some(ZigzagFactor {
        word: u.clone(),
        coords: full.to_vec(),
    })
}

fn certificate(
    g: &DiGraph,
    factors: &[ZigzagFactor],
    disconnected_bound: Option<usize>,
) -> EmbeddingCertificate {
    EmbeddingCertificate {
        factors: factors.iter().map(|f| f.word.clone()).collect(),
        vertices: g.names().to_vec(),
        coordinates: (0..g.vertex_count())
            .map(|v| factors.iter().map(|f| f.coords[v]).collect())
            .collect(),
        isometric: false,
        disconnected_bound,
    }
}

fn verify(
    g: &DiGraph,
    d: &DistanceMatrix,
    cert: &EmbeddingCertificate,
) -> Result<EmbeddingCertificate, EmbeddingFailure> {
    for (x, y) in d.pairs() {
        if x == y {
            continue;
        }
        let expected = d.get(x, y);
        let fail = |realized: UpSet, reason: &str| EmbeddingFailure {
            x: g.name(x).to_string(),
            y: g.name(y).to_string(),
            expected: expected.clone(),
            realized,
            reason: reason.to_string(),
        };
        if expected.is_top() {
            let bound = cert.disconnected_bound.unwrap_or(0);
            let leaked = Word::all_up_to(bound).find(|v| {
                (0..cert.factor_count()).all(|i| cert.factor(i).segment(x, y).is_subword_of(v))
            });
            if let Some(v) = leaked {
                return Err(fail(
                    UpSet::principal(v),
                    "disconnected pair is joined by a short word in the product",
                ));
            }
        } else {
            let realized = cert.product_distance(x, y);
            if realized != *expected {
                let reason = if expected.is_macneille_closed() {
                    "product distance differs"
                } else {
                    "distance is not MacNeille-closed"
                };
                return Err(fail(realized, reason));
            }
        }
    }
    Ok(EmbeddingCertificate {
        isometric: true,
        ..cert.clone()
    })
}

/// Every homomorphism of `g` onto a zigzag `Z_u` with `1 <= |u| <= max_len`.
pub fn zigzag_homomorphisms(g: &DiGraph, max_len: usize) -> Vec<ZigzagFactor> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in Word::all_up_to(max_len).filter(|u| !u.is_empty()) {
        let z = zigzag_of_word(&u);
        let mut coords = vec![0usize; n];
        search_homs(g, &z, 0, &mut coords, &mut |c| {
            let mut hit = vec![false; u.len() + 1];
            for &p in c {
                hit[p] = true;
            }
            if hit.iter().all(|&h| h) {
                out.push(ZigzagFactor {
                    word: u.clone(),
                    coords: c.to_vec(),
                });
            }
        });
    }
    out
}

fn search_homs(
    g: &DiGraph,
    z: &DiGraph,
    v: usize,
    coords: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if v == g.vertex_count() {
        emit(coords);
        return;
    }
    for p in 0..z.vertex_count() {
        coords[v] = p;
        let ok = (0..v).all(|w| {
            (!g.has_arc(v, w) || z.adjacent_or_equal(p, coords[w]))
                && (!g.has_arc(w, v) || z.adjacent_or_equal(coords[w], p))
        });
        if ok {
            search_homs(g, z, v + 1, coords, emit);
        }
    }
}

/// An isometric embedding of a connected graph with the fewest zigzag
/// factors, searching factors of length at most `|V| - 1` and at most
/// `max_factors` of them.
///
/// A family of factors is isometric exactly when every maximal word `m`
/// of every lower cone `d(x, y)^∇` appears as the segment of `(x, y)` in
/// some factor (the join of principal segments is the upper cone of their
/// union), so the search is an exact set cover over those requirements.
/// The returned certificate is verified independently by joins.
pub fn minimum_factor_embedding(g: &DiGraph, max_factors: usize) -> Option<EmbeddingCertificate> {
    let n = g.vertex_count();
    let comps = g.components();
    if n == 0 || comps.iter().any(|&c| c != 0) {
        return None;
    }
    let d = distance_matrix(g);
    if !d.all_macneille_closed() {
        return None;
    }
    let mut requirements: Vec<(usize, usize, Word)> = Vec::new();
    for (x, y) in d.pairs() {
        if x != y {
            if let LowerCone::Finite(maxes) = d.get(x, y).lower_cone() {
                requirements.extend(maxes.into_iter().map(|m| (x, y, m)));
            }
        }
    }
    let mut candidates: Vec<(ZigzagFactor, Vec<usize>)> = Vec::new();
    let mut seen_cover: HashSet<Vec<usize>> = HashSet::new();
    for f in zigzag_homomorphisms(g, n.saturating_sub(1)) {
        let cover: Vec<usize> = requirements
            .iter()
            .enumerate()
            .filter(|(_, (x, y, m))| f.segment(*x, *y) == *m)
            .map(|(i, _)| i)
            .collect();
        if !cover.is_empty() && seen_cover.insert(cover.clone()) {
            candidates.push((f, cover));
        }
    }
    for k in 0..=max_factors {
        let mut chosen = Vec::new();
        let mut covered = vec![0u32; requirements.len()];
        if cover_search(&candidates, &mut covered, &mut chosen, k) {
            let factors: Vec<ZigzagFactor> =
                chosen.iter().map(|&i| candidates[i].0.clone()).collect();
            let cert = certificate(g, &factors, None);
            return verify(g, &d, &cert).ok();
        }
    }
    None
}

fn cover_search(
    cands: &[(ZigzagFactor, Vec<usize>)],
    covered: &mut [u32],
    chosen: &mut Vec<usize>,
    budget: usize,
) -> bool {
    let Some(open) = covered.iter().position(|&c| c == 0) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for (i, (_, cover)) in cands.iter().enumerate() {
        if !cover.contains(&open) {
            continue;
        }
        for &r in cover {
            covered[r] += 1;
        }
        chosen.push(i);
        if cover_search(cands, covered, chosen, budget - 1) {
            return true;
        }
        chosen.pop();
        for &r in cover {
            covered[r] -= 1;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directed_cycle;

    fn alternating_square() -> DiGraph {
        DiGraph::from_arcs(4, &[(0, 1), (2, 1), (2, 3), (0, 3)])
    }

    #[test]
    fn segments() {
        let u: Word = "+-+".parse().unwrap();
        assert_eq!(zigzag_segment(&u, 0, 3), u);
        assert_eq!(zigzag_segment(&u, 3, 1), "-+".parse().unwrap());
        assert_eq!(zigzag_segment(&u, 2, 2), Word::empty());
    }

    #[test]
    fn zigzag_embeds_into_itself() {
        let u: Word = "++-+".parse().unwrap();
        let cert = embed_zigzag_product(&zigzag_of_word(&u), 8).unwrap();
        assert!(cert.isometric);
        assert!(cert.factors.contains(&u));
    }

    #[test]
    fn alternating_square_embeds() {
        let cert = embed_zigzag_product(&alternating_square(), 8).unwrap();
        assert!(cert.isometric);
        let min = minimum_factor_embedding(&alternating_square(), 4).unwrap();
        assert_eq!(min.factor_count(), 2);
    }

    #[test]
    fn three_cycle_fails() {
        let err = embed_zigzag_product(&directed_cycle(3), 6).unwrap_err();
        assert_eq!(err.expected, "{+,--}".parse().unwrap());
        assert_eq!(err.realized, UpSet::zero());
        assert!(minimum_factor_embedding(&directed_cycle(3), 4).is_none());
    }

    #[test]
    fn disconnected_pairs_use_bound() {
        let g = DiGraph::from_arcs(3, &[(0, 1)]);
        let cert = embed_zigzag_product(&g, 4).unwrap();
        assert!(cert.isometric);
        assert_eq!(cert.disconnected_bound, Some(4));
    }
}
