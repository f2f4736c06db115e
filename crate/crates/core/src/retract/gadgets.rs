//! Isometric extensions that no retraction can fold back when the base
//! graph has a 3-cycle or breaks the cancellation rule.

use super::maps::check_isometric_subgraph;
use crate::error::Error;
use crate::graph::{distance_matrix, DiGraph};
use crate::quantale::{Sign, Word};

pub(crate) fn fresh_name(g: &DiGraph, base: &str) -> String {
    let mut name = base.to_string();
    while g.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

fn add_fresh(g: &mut DiGraph, base: &str) -> usize {
    let name = fresh_name(g, base);
    g.add_vertex(name)
}

fn add_signed_arc(g: &mut DiGraph, from: usize, to: usize, s: Sign) {
    match s {
        Sign::Plus => g.add_arc(from, to),
        Sign::Minus => g.add_arc(to, from),
    };
}

/// Default size of the `Y` and `Z` sets.
pub fn default_gadget_size(g: &DiGraph) -> usize {
    g.vertex_count() + 1
}

/// Extend `g`, which contains the directed 3-cycle `c0 -> c1 -> c2 -> c0`,
/// by sets `Y = {y_i}` and `Z = {z_i}` of size `k` with arcs `z_i -> y_i`,
/// `y_j -> z_i` for `i != j`, `c -> y` and `z -> c` for every cycle vertex.
pub fn gadget_cycle_extension(g: &DiGraph, cycle: [usize; 3], k: usize) -> Result<DiGraph, Error> {
    let [c0, c1, c2] = cycle;
    if !(g.has_arc(c0, c1) && g.has_arc(c1, c2) && g.has_arc(c2, c0)) {
        return Err(Error::Precondition(format!(
            "{} -> {} -> {} -> {} is not a directed 3-cycle",
            g.name(c0),
            g.name(c1),
            g.name(c2),
            g.name(c0)
        )));
    }
    if k <= g.vertex_count() {
        return Err(Error::Precondition(format!(
            "gadget size {k} must exceed the vertex count {}",
            g.vertex_count()
        )));
    }
    let mut h = g.clone();
    let ys: Vec<usize> = (0..k)
        .map(|i| add_fresh(&mut h, &format!("y{i}")))
        .collect();
    let zs: Vec<usize> = (0..k)
        .map(|i| add_fresh(&mut h, &format!("z{i}")))
        .collect();
    for (i, &z) in zs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            if i == j {
                h.add_arc(z, y);
            } else {
                h.add_arc(y, z);
            }
        }
    }
    for &c in &cycle {
        for (&y, &z) in ys.iter().zip(&zs) {
            h.add_arc(c, y);
            h.add_arc(z, c);
        }
    }
    check_isometric_subgraph(&h, g)?;
    Ok(h)
}

/// Extend `g` with a zigzag `L_u` from `x` to `x'`, a 3-cycle
/// `x' -> z' -> z'' -> x'`, arcs between `z', z''` and `y'` oriented by the
/// first letter of `v`, and a zigzag `L_{v'}` from `y'` to `y`, where
/// `v = a v'`. Requires `u+v` and `u-v` in `d(x, y)`.
pub fn gadget_cancellation_extension(
    g: &DiGraph,
    x: usize,
    y: usize,
    u: &Word,
    v: &Word,
) -> Result<DiGraph, Error> {
    let Some((&alpha, rest)) = v.letters().split_first() else {
        return Err(Error::Precondition("v must be a nonempty word".into()));
    };
    let d = distance_matrix(g);
    let dxy = d.get(x, y);
    for s in Sign::ALL {
        let w = u.concat(&Word::letter(s)).concat(v);
        if !dxy.contains(&w) {
            return Err(Error::Precondition(format!(
                "{w} is not in d({}, {}) = {dxy}",
                g.name(x),
                g.name(y)
            )));
        }
    }
    if u.is_empty() && rest.is_empty() && x == y {
        return Err(Error::Precondition(
            "x' and y' coincide, so the 3-cycle would meet y' in a 2-cycle".into(),
        ));
    }
    let mut h = g.clone();
    let mut prev = x;
    for (i, &s) in u.letters().iter().enumerate() {
        let next = add_fresh(&mut h, &format!("u{}", i + 1));
        add_signed_arc(&mut h, prev, next, s);
        prev = next;
    }
    let x1 = prev;
    let z1 = add_fresh(&mut h, "z'");
    let z2 = add_fresh(&mut h, "z''");
    h.add_arc(x1, z1);
    h.add_arc(z1, z2);
    h.add_arc(z2, x1);
    let y1 = if rest.is_empty() {
        y
    } else {
        add_fresh(&mut h, "v0")
    };
    add_signed_arc(&mut h, z1, y1, alpha);
    add_signed_arc(&mut h, z2, y1, alpha);
    let mut prev = y1;
    for (i, &s) in rest.iter().enumerate() {
        let next = if i + 1 == rest.len() {
            y
        } else {
            add_fresh(&mut h, &format!("v{}", i + 1))
        };
        add_signed_arc(&mut h, prev, next, s);
        prev = next;
    }
    check_isometric_subgraph(&h, g)?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directed_cycle;
    use crate::retract::{is_absolute_retract, retraction_search};

    #[test]
    fn cycle_gadget_on_three_cycle() {
        let g = directed_cycle(3);
        let h = gadget_cycle_extension(&g, [0, 1, 2], 4).unwrap();
        assert_eq!(h.vertex_count(), 11);
        assert!(h.is_oriented());
        assert!(retraction_search(&h, &g).unwrap().is_none());
    }

    #[test]
    fn cycle_gadget_rejects_bad_input() {
        let g = directed_cycle(3);
        assert!(gadget_cycle_extension(&g, [0, 2, 1], 4).is_err());
        assert!(gadget_cycle_extension(&g, [0, 1, 2], 3).is_err());
    }

    #[test]
    fn cancellation_gadget_on_two_path() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let u: Word = "+".parse().unwrap();
        let v: Word = "+".parse().unwrap();
        let h = gadget_cancellation_extension(&g, 0, 2, &u, &v).unwrap();
        assert!(h.is_oriented());
        assert_eq!(h.vertex_count(), 6);
        assert!(is_absolute_retract(&g).verdict);
        let r = retraction_search(&h, &g).unwrap().unwrap();
        let z = r.get(h.vertex("z'").unwrap()).unwrap();
        assert_eq!(r.get(h.vertex("z''").unwrap()), Some(z));
        let d = distance_matrix(&g);
        assert!(d.get(0, z).contains(&u));
        assert!(d.get(z, 2).contains(&v));
    }

    #[test]
    fn cancellation_gadget_with_empty_prefix() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let h = gadget_cancellation_extension(&g, 0, 2, &Word::empty(), &"++".parse().unwrap())
            .unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert!(retraction_search(&h, &g).unwrap().is_some());
    }

    #[test]
    fn cancellation_gadget_checks_premise() {
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let err = gadget_cancellation_extension(&g, 2, 0, &Word::empty(), &"+".parse().unwrap());
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = gadget_cancellation_extension(&g, 0, 2, &Word::empty(), &Word::empty());
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = gadget_cancellation_extension(&g, 1, 1, &Word::empty(), &"+".parse().unwrap());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
