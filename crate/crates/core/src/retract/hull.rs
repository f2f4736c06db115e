//! Search for small absolute-retract extensions inside a product of zigzags.

use super::embed::{
    default_embedding_bound, embed_zigzag_product, minimum_factor_embedding, EmbeddingCertificate,
    EmbeddingFailure,
};
use super::gadgets::fresh_name;
use super::verdict::is_absolute_retract;
use crate::graph::{distance_matrix, product_coords, zigzag_of_word, DiGraph};

/// Largest product considered as a vertex universe.
pub const MAX_UNIVERSE: usize = 4096;

#[derive(Clone, Debug)]
pub enum HullOutcome {
    /// An isometric extension that is an absolute retract. The original
    /// vertices come first, in their original order.
    Found { hull: DiGraph, added: Vec<String> },
    /// No extension with at most `max_add` new vertices from the universe.
    Exhausted { universe: usize, max_add: usize },
    /// The product embedding fails, so no universe is available.
    NotEmbeddable(EmbeddingFailure),
    /// The product is larger than [`MAX_UNIVERSE`].
    UniverseTooLarge { size: usize },
}

impl HullOutcome {
    pub fn hull(&self) -> Option<&DiGraph> {
        match self {
            HullOutcome::Found { hull, .. } => Some(hull),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            HullOutcome::Found { hull, added } => json!({
                "status": "found",
                "added": added,
                "hull": hull.to_json_value(),
            }),
            HullOutcome::Exhausted { universe, max_add } => json!({
                "status": "exhausted",
                "universe": universe,
                "max_add": max_add,
            }),
            HullOutcome::NotEmbeddable(f) => json!({
                "status": "not_embeddable",
                "failure": f,
            }),
            HullOutcome::UniverseTooLarge { size } => json!({
                "status": "universe_too_large",
                "size": size,
                "limit": MAX_UNIVERSE,
            }),
        }
    }
}

/// Smallest isometric extension of `g` that is an absolute retract, with
/// new vertices drawn from the product of a zigzag embedding of `g`.
///
/// Components are treated separately. For each one the factors come from
/// a minimum-size embedding when one is found, so the product stays small.
/// Subsets of new vertices are tried by increasing size and then
/// lexicographically, so the result is minimal within that universe.
pub fn injective_hull_search(g: &DiGraph, max_add: usize) -> HullOutcome {
    let labels = g.components();
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    if count <= 1 {
        return connected_hull(g, max_add);
    }
    let mut parts = Vec::new();
    let mut budget = max_add;
    for c in 0..count {
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| labels[v] == c).collect();
        match connected_hull(&g.induced(&keep), budget) {
            HullOutcome::Found { hull, added } => {
                budget -= added.len();
                parts.push((keep, hull));
            }
            HullOutcome::Exhausted { universe, .. } => {
                return HullOutcome::Exhausted { universe, max_add };
            }
            other => return other,
        }
    }
    let mut hull = g.clone();
    let mut added = Vec::new();
    for (keep, part) in parts {
        let mut index: Vec<usize> = keep;
        for v in index.len()..part.vertex_count() {
            let name = fresh_name(&hull, part.name(v));
            added.push(name.clone());
            index.push(hull.add_vertex(name));
        }
        for (a, b) in part.arcs() {
            hull.add_arc(index[a], index[b]);
        }
    }
    HullOutcome::Found { hull, added }
}

fn connected_hull(g: &DiGraph, max_add: usize) -> HullOutcome {
    if is_absolute_retract(g).verdict {
        return HullOutcome::Found {
            hull: g.clone(),
            added: Vec::new(),
        };
    }
    let cert = match minimum_factor_embedding(g, 6) {
        Some(c) => c,
        None => match embed_zigzag_product(g, default_embedding_bound(g)) {
            Ok(c) => c,
            Err(f) => return HullOutcome::NotEmbeddable(f),
        },
    };
    let sizes: Vec<usize> = cert.factors.iter().map(|u| u.len() + 1).collect();
    let size = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    let Some(size) = size.filter(|&s| s <= MAX_UNIVERSE) else {
        return HullOutcome::UniverseTooLarge {
            size: size.unwrap_or(usize::MAX),
        };
    };
    let image: Vec<&Vec<usize>> = cert.coordinates.iter().collect();
    let universe: Vec<Vec<usize>> = (0..size)
        .map(|i| product_coords(&sizes, i))
        .filter(|c| !image.contains(&c))
        .collect();
    let d = distance_matrix(g);
    for k in 1..=max_add.min(universe.len()) {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let h = extension(g, &cert, &universe, &pick);
            let dh = distance_matrix(&h);
            let isometric = d.pairs().all(|(x, y)| d.get(x, y) == dh.get(x, y));
            if isometric && is_absolute_retract(&h).verdict {
                let added = h.names()[g.vertex_count()..].to_vec();
                return HullOutcome::Found { hull: h, added };
            }
            if !next_combination(&mut pick, universe.len()) {
                break;
            }
        }
    }
    HullOutcome::Exhausted {
        universe: universe.len(),
        max_add,
    }
}

/// `g` plus the chosen product vertices, with arcs induced by the product.
fn extension(
    g: &DiGraph,
    cert: &EmbeddingCertificate,
    universe: &[Vec<usize>],
    pick: &[usize],
) -> DiGraph {
    let zigzags: Vec<DiGraph> = cert.factors.iter().map(zigzag_of_word).collect();
    let mut h = g.clone();
    let mut coords: Vec<Vec<usize>> = cert.coordinates.clone();
    for &p in pick {
        let c = &universe[p];
        let label: Vec<String> = c.iter().map(usize::to_string).collect();
        let name = fresh_name(&h, &format!("({})", label.join(",")));
        h.add_vertex(name);
        coords.push(c.clone());
    }
    let adjacent = |a: &[usize], b: &[usize]| {
        zigzags
            .iter()
            .zip(a.iter().zip(b))
            .all(|(z, (&i, &j))| z.adjacent_or_equal(i, j))
    };
    for a in 0..h.vertex_count() {
        for b in g.vertex_count().max(a + 1)..h.vertex_count() {
            if adjacent(&coords[a], &coords[b]) {
                h.add_arc(a, b);
            }
            if adjacent(&coords[b], &coords[a]) {
                h.add_arc(b, a);
            }
        }
    }
    h
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
