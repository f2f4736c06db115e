//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here calls the algorithms under test.

#![allow(dead_code)]

use rand::Rng;
use zigzag_core::{DiGraph, Sign, UpSet, Word};

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn up(s: &str) -> UpSet {
    s.parse().unwrap()
}

/// Subsequence test written from scratch.
pub fn is_sub(small: &Word, big: &Word) -> bool {
    let (a, b) = (small.letters(), big.letters());
    let mut i = 0;
    for &c in b {
        if i < a.len() && a[i] == c {
            i += 1;
        }
    }
    i == a.len()
}

/// Membership in the up-closure of a list of words.
pub fn member(gens: &[Word], x: &Word) -> bool {
    gens.iter().any(|g| is_sub(g, x))
}

pub fn words_up_to(n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for u in &layer {
            for s in [Sign::Plus, Sign::Minus] {
                let mut v = u.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Subword-minimal elements of a finite set of words.
pub fn minimal(ws: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = ws
        .iter()
        .filter(|x| !ws.iter().any(|y| y != *x && is_sub(y, x)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn reverse_flip(x: &Word) -> Word {
    Word::new(
        x.letters()
            .iter()
            .rev()
            .map(|s| match s {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            })
            .collect(),
    )
}

/// `x` splits as `x1 x2` with `x1` in the first and `x2` in the second set.
pub fn member_concat(a: &[Word], b: &[Word], x: &Word) -> bool {
    (0..=x.len()).any(|k| member(a, &x.slice(0, k)) && member(b, &x.slice(k, x.len())))
}

/// Words common to all generators, then their maxima.
pub fn lower_cone_maxima(gens: &[Word]) -> Option<Vec<Word>> {
    let first = gens.first()?;
    let common: Vec<Word> = words_up_to(first.len())
        .into_iter()
        .filter(|u| gens.iter().all(|g| is_sub(u, g)))
        .collect();
    let maxima: Vec<Word> = common
        .iter()
        .filter(|u| !common.iter().any(|v| v != *u && is_sub(u, v)))
        .cloned()
        .collect();
    Some(maxima)
}

/// Membership in the MacNeille closure: `x` lies above every common
/// subword of the generators.
pub fn closure_member(gens: &[Word], x: &Word) -> bool {
    match lower_cone_maxima(gens) {
        None => false,
        Some(maxima) => maxima.iter().all(|m| is_sub(m, x)),
    }
}

/// Cancellation rule checked directly: `u+v`, `u-v` in X force `uv` in X,
/// for `|uv| < bound`.
pub fn cancellation_fails(gens: &[Word], bound: usize) -> bool {
    words_up_to(bound.saturating_sub(1)).iter().any(|uv| {
        !member(gens, uv)
            && (0..=uv.len()).any(|k| {
                let (u, v) = (uv.slice(0, k), uv.slice(k, uv.len()));
                [Sign::Plus, Sign::Minus]
                    .iter()
                    .all(|&s| member(gens, &u.concat(&Word::letter(s)).concat(&v)))
            })
    })
}

/// Vertices reachable from `x` along the zigzag walk spelled by `word`.
pub fn walk(g: &DiGraph, x: usize, word: &Word) -> Vec<bool> {
    let n = g.vertex_count();
    let mut cur = vec![false; n];
    cur[x] = true;
    for &s in word.letters() {
        let mut next = cur.clone();
        for a in 0..n {
            if !cur[a] {
                continue;
            }
            for b in 0..n {
                let step = match s {
                    Sign::Plus => g.has_arc(a, b),
                    Sign::Minus => g.has_arc(b, a),
                };
                if step {
                    next[b] = true;
                }
            }
        }
        cur = next;
    }
    cur
}

/// Minimal words of the distance `x -> y`, by walking every word of length
/// at most `|V| - 1`.
pub fn brute_distance(g: &DiGraph, x: usize, y: usize) -> Vec<Word> {
    let n = g.vertex_count();
    let hits: Vec<Word> = words_up_to(n.saturating_sub(1))
        .into_iter()
        .filter(|u| walk(g, x, u)[y])
        .collect();
    minimal(&hits)
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

/// A random final segment given by up to four generators of length at
/// most `max_len`. Zero generators gives TOP.
pub fn random_upset<R: Rng>(rng: &mut R, max_len: usize) -> UpSet {
    let k = rng.gen_range(0..=4);
    UpSet::from_words((0..k).map(|_| random_word(rng, max_len)))
}

/// A random simple digraph with each ordered pair an arc with probability
/// `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> DiGraph {
    let mut g = DiGraph::with_vertices(n);
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                g.add_arc(a, b);
            }
        }
    }
    g
}

/// A random oriented graph: each unordered pair gets no arc or one arc.
pub fn random_oriented<R: Rng>(rng: &mut R, n: usize) -> DiGraph {
    let mut g = DiGraph::with_vertices(n);
    for a in 0..n {
        for b in a + 1..n {
            match rng.gen_range(0..3) {
                1 => {
                    g.add_arc(a, b);
                }
                2 => {
                    g.add_arc(b, a);
                }
                _ => {}
            }
        }
    }
    g
}

/// Every oriented graph on `n` labeled vertices.
pub fn all_oriented(n: usize) -> Vec<DiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut g = DiGraph::with_vertices(n);
            for &(a, b) in &pairs {
                match code % 3 {
                    1 => {
                        g.add_arc(a, b);
                    }
                    2 => {
                        g.add_arc(b, a);
                    }
                    _ => {}
                }
                code /= 3;
            }
            g
        })
        .collect()
}

/// Connectedness of the underlying undirected graph.
pub fn connected(g: &DiGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && (g.has_arc(u, v) || g.has_arc(v, u)) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The undirected 4-cycle oriented `0 -> 1 <- 2 -> 3 <- 0`.
pub fn alternating_square() -> DiGraph {
    DiGraph::from_arcs(4, &[(0, 1), (2, 1), (2, 3), (0, 3)])
}

/// Two directed 2-paths `a -> b -> c` and `a -> d -> c` sharing their ends.
pub fn glued_two_paths() -> DiGraph {
    let mut g = DiGraph::new();
    for v in ["a", "b", "c", "d"] {
        g.add_vertex(v);
    }
    for (x, y) in [(0, 1), (1, 2), (0, 3), (3, 2)] {
        g.add_arc(x, y);
    }
    g
}

/// `0 -> 1 -> 2 -> 3` together with the arc `0 -> 3`.
pub fn reverted_four_cycle() -> DiGraph {
    DiGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}
