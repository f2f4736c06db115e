//! The Helly property for set families and for the balls of a graph.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{zigzag_nfa, DiGraph};

/// Outcome of a Helly test on an explicit family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HellyOutcome {
    Helly,
    /// Indices into the family: a pairwise-intersecting subfamily with empty
    /// intersection.
    Violated(Vec<usize>),
}

impl HellyOutcome {
    pub fn is_helly(&self) -> bool {
        matches!(self, HellyOutcome::Helly)
    }
}

/// Berge's criterion: the family is Helly iff for all distinct `a, b, c`
/// the members containing at least two of them have a common element.
///
/// Those members always intersect pairwise, so a failing triple yields the
/// witness directly; it is then pruned to an inclusion-minimal subfamily.
pub fn berge_helly(family: &[FixedBitSet], universe: usize) -> HellyOutcome {
    for a in 0..universe {
        for b in a + 1..universe {
            for c in b + 1..universe {
                let touching: Vec<usize> = family
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| [a, b, c].iter().filter(|&&v| s.contains(v)).count() >= 2)
                    .map(|(i, _)| i)
                    .collect();
                if intersection_is_empty(family, &touching, universe) {
                    return HellyOutcome::Violated(prune_witness(family, touching, universe));
                }
            }
        }
    }
    HellyOutcome::Helly
}

fn intersection_is_empty(family: &[FixedBitSet], members: &[usize], universe: usize) -> bool {
    let mut acc = FixedBitSet::with_capacity(universe);
    acc.insert_range(..);
    for &i in members {
        acc.intersect_with(&family[i]);
    }
    acc.is_clear()
}

fn prune_witness(family: &[FixedBitSet], mut members: Vec<usize>, universe: usize) -> Vec<usize> {
    let mut i = 0;
    while i < members.len() {
        let mut without = members.clone();
        without.remove(i);
        if intersection_is_empty(family, &without, universe) {
            members = without;
        } else {
            i += 1;
        }
    }
    members
}

/// A ball `B(center, ↑radius)` as a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallRecord {
    pub members: Vec<String>,
    /// Every center realizing this set, with its shortest radius.
    pub realizations: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallHellyReport {
    pub helly: bool,
    /// Number of distinct balls.
    pub ball_count: usize,
    pub witness: Option<Vec<BallRecord>>,
}

/// Every distinct ball of principal radius, with its realizations.
///
/// The balls centered at `x` are exactly the subsets reachable from `{x}`
/// in the subset construction of the zigzag automaton.
pub fn all_balls(g: &DiGraph) -> Vec<(FixedBitSet, Vec<(usize, crate::Word)>)> {
    let n = g.vertex_count();
    let mut order: Vec<(FixedBitSet, Vec<(usize, crate::Word)>)> = Vec::new();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    if n == 0 {
        return order;
    }
    let nfa = zigzag_nfa(g, 0, 0);
    for x in 0..n {
        let mut start = FixedBitSet::with_capacity(n);
        start.insert(x);
        for (set, radius) in nfa.all_reachable_sets(&start) {
            match seen.get(&set) {
                Some(&i) => order[i].1.push((x, radius)),
                None => {
                    seen.insert(set.clone(), order.len());
                    order.push((set, vec![(x, radius)]));
                }
            }
        }
    }
    order
}

/// 2-Helly test over all balls with principal radius.
pub fn balls_2helly(g: &DiGraph) -> BallHellyReport {
    let balls = all_balls(g);
    let family: Vec<FixedBitSet> = balls.iter().map(|(s, _)| s.clone()).collect();
    let outcome = berge_helly(&family, g.vertex_count());
    let witness = match outcome {
        HellyOutcome::Helly => None,
        HellyOutcome::Violated(idx) => Some(
            idx.into_iter()
                .map(|i| BallRecord {
                    members: balls[i].0.ones().map(|v| g.name(v).to_string()).collect(),
                    realizations: balls[i]
                        .1
                        .iter()
                        .map(|(c, r)| (g.name(*c).to_string(), r.to_string()))
                        .collect(),
                })
                .collect(),
        ),
    };
    BallHellyReport {
        helly: witness.is_none(),
        ball_count: family.len(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{directed_cycle, zigzag_of_word};
    use crate::Word;

    fn set(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in xs {
            b.insert(x);
        }
        b
    }

    #[test]
    fn intervals_of_a_path_are_helly() {
        let n = 6;
        let family: Vec<FixedBitSet> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| set(n, &(i..=j).collect::<Vec<_>>()))
            .collect();
        assert!(berge_helly(&family, n).is_helly());
    }

    #[test]
    fn classic_triangle_is_not_helly() {
        let family = vec![set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 2])];
        assert_eq!(
            berge_helly(&family, 3),
            HellyOutcome::Violated(vec![0, 1, 2])
        );
    }

    #[test]
    fn common_element_gives_helly() {
        let family = vec![set(4, &[0, 1]), set(4, &[0, 2, 3]), set(4, &[0, 3])];
        assert!(berge_helly(&family, 4).is_helly());
    }

    #[test]
    fn zigzag_balls_are_helly() {
        for u in Word::all_up_to(5) {
            assert!(balls_2helly(&zigzag_of_word(&u)).helly, "{u}");
        }
        assert!(balls_2helly(&DiGraph::with_vertices(1)).helly);
    }

    #[test]
    fn three_cycle_witness() {
        let r = balls_2helly(&directed_cycle(3));
        assert!(!r.helly);
        let w = r.witness.unwrap();
        let members: Vec<Vec<String>> = w.iter().map(|b| b.members.clone()).collect();
        assert_eq!(members, [vec!["0", "1"], vec!["0", "2"], vec!["1", "2"]]);
        let has = |set: usize, c: &str, r: &str| {
            w[set]
                .realizations
                .contains(&(c.to_string(), r.to_string()))
        };
        assert!(has(0, "0", "+") && has(2, "1", "+") && has(1, "2", "+"));
    }
}
