//! Automata with a self-loop on every state and letter.
//!
//! The self-loop law makes every accepted language closed under taking
//! superwords, so a language is described exactly by its finite antichain
//! of minimal words. Zigzag distances, balls and residuals are all computed
//! through this type.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::quantale::{minimal_antichain, Sign, UpSet, Word};

/// Which side of the unknown word the fixed words sit on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordNfa {
    n: usize,
    /// `delta[letter][state]` is the successor set.
    delta: [Vec<FixedBitSet>; 2],
    starts: FixedBitSet,
    accepts: FixedBitSet,
}

impl SubwordNfa {
    /// Build an automaton, adding the mandatory self-loops.
    pub fn with_self_loops<I>(n: usize, edges: I, starts: &[usize], accepts: &[usize]) -> SubwordNfa
    where
        I: IntoIterator<Item = (usize, Sign, usize)>,
    {
        let mut delta = [
            vec![FixedBitSet::with_capacity(n); n],
            vec![FixedBitSet::with_capacity(n); n],
        ];
        for s in 0..n {
            delta[0][s].insert(s);
            delta[1][s].insert(s);
        }
        for (s, a, t) in edges {
            delta[a.index()][s].insert(t);
        }
        SubwordNfa {
            n,
            delta,
            starts: bitset(n, starts),
            accepts: bitset(n, accepts),
        }
    }

    /// Build an automaton from an explicit transition relation, rejecting
    /// it unless every state carries both self-loops.
    pub fn new<I>(
        n: usize,
        edges: I,
        starts: &[usize],
        accepts: &[usize],
    ) -> Result<SubwordNfa, Error>
    where
        I: IntoIterator<Item = (usize, Sign, usize)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        for s in 0..n {
            for a in Sign::ALL {
                if !edges.contains(&(s, a, s)) {
                    return Err(Error::SelfLoopLaw {
                        state: s,
                        letter: a.as_char(),
                    });
                }
            }
        }
        Ok(SubwordNfa::with_self_loops(n, edges, starts, accepts))
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn starts(&self) -> &FixedBitSet {
        &self.starts
    }

    pub fn accepts(&self) -> &FixedBitSet {
        &self.accepts
    }

    pub fn successors(&self, s: usize, a: Sign) -> &FixedBitSet {
        &self.delta[a.index()][s]
    }

    /// Same transitions with different start and accept sets.
    pub fn with_endpoints(&self, starts: &[usize], accepts: &[usize]) -> SubwordNfa {
        SubwordNfa {
            n: self.n,
            delta: self.delta.clone(),
            starts: bitset(self.n, starts),
            accepts: bitset(self.n, accepts),
        }
    }

    pub fn accepts_word(&self, w: &Word) -> bool {
        let reached = self.subset_reach(&self.starts, w);
        !reached.is_disjoint(&self.accepts)
    }

    /// Image of a state set under a single letter.
    pub fn step(&self, set: &FixedBitSet, a: Sign) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for s in set.ones() {
            out.union_with(&self.delta[a.index()][s]);
        }
        out
    }

    pub fn subset_reach(&self, set: &FixedBitSet, w: &Word) -> FixedBitSet {
        w.letters()
            .iter()
            .fold(set.clone(), |cur, &a| self.step(&cur, a))
    }

    /// Breadth-first subset construction from `from`. Every reachable subset
    /// appears once, paired with its shortest witness (canonical order).
    pub fn all_reachable_sets(&self, from: &FixedBitSet) -> Vec<(FixedBitSet, Word)> {
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut out = vec![(from.clone(), Word::empty())];
        seen.insert(from.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for a in Sign::ALL {
                let next = self.step(&out[i].0, a);
                if !seen.contains_key(&next) {
                    let mut witness = out[i].1.clone();
                    witness.push(a);
                    seen.insert(next.clone(), out.len());
                    queue.push_back(out.len());
                    out.push((next, witness));
                }
            }
        }
        out
    }

    /// Minimal accepted words from each state (start set ignored).
    ///
    /// Least fixpoint of `L(q) = [q accepting]·e ∪ a·L(q')` over moves
    /// `q -a-> q'` with `q' != q`. Round `k` holds the minimal words with an
    /// accepting run of at most `k` moves, so the iteration is stable after
    /// at most `n - 1` rounds.
    pub fn min_words_per_state(&self) -> Vec<UpSet> {
        let mut cur: Vec<Vec<Word>> = (0..self.n)
            .map(|q| {
                if self.accepts.contains(q) {
                    vec![Word::empty()]
                } else {
                    Vec::new()
                }
            })
            .collect();
        loop {
            let next: Vec<Vec<Word>> = (0..self.n)
                .map(|q| {
                    if self.accepts.contains(q) {
                        return cur[q].clone();
                    }
                    let mut cands = cur[q].clone();
                    for a in Sign::ALL {
                        for t in self.delta[a.index()][q].ones() {
                            if t != q {
                                cands.extend(cur[t].iter().map(|w| w.prepend(a)));
                            }
                        }
                    }
                    minimal_antichain(cands)
                })
                .collect();
            if next == cur {
                break;
            }
            cur = next;
        }
        cur.into_iter().map(UpSet::from_words).collect()
    }

    /// Antichain of minimal accepted words; `TOP` for the empty language.
    pub fn min_words(&self) -> UpSet {
        let per_state = self.min_words_per_state();
        self.starts
            .ones()
            .fold(UpSet::top(), |acc, s| acc.meet(&per_state[s]))
    }
}

fn bitset(n: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &m in members {
        b.insert(m);
    }
    b
}

/// A subsequence tracker for one generator: positions `0..=len`, staying on
/// any letter and advancing on a matching letter.
struct Tracker {
    word: Word,
    starts: Vec<usize>,
    accepts: Vec<bool>,
}

impl Tracker {
    fn len(&self) -> usize {
        self.word.len() + 1
    }

    fn moves(&self, pos: usize, a: Sign) -> impl Iterator<Item = usize> {
        let advance = self.word.letters().get(pos) == Some(&a);
        std::iter::once(pos).chain(advance.then_some(pos + 1))
    }
}

/// Automaton for `{w : p·w ∈ target for every p}` (`Side::Left`) or
/// `{w : w·p ∈ target for every p}` (`Side::Right`).
///
/// For each fixed word `p` the condition is a disjunction over generators
/// `g` of the target of `g ≤ p·w` (resp. `g ≤ w·p`); each disjunct is a
/// tracker for `g` whose start (resp. accept) states absorb the part of
/// `g` matched inside `p`. The result is the product over all `p` of the
/// disjoint unions of trackers.
pub fn constraint_nfa(prefixes: &[Word], target: &UpSet, side: Side) -> SubwordNfa {
    let components: Vec<Vec<Tracker>> = prefixes
        .iter()
        .map(|p| {
            target
                .generators()
                .iter()
                .map(|g| tracker_for(g, p, side))
                .collect()
        })
        .collect();

    // local state of one component: (tracker index, position)
    let local: Vec<Vec<(usize, usize)>> = components
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .flat_map(|(j, t)| (0..t.len()).map(move |pos| (j, pos)))
                .collect()
        })
        .collect();
    let radix: Vec<usize> = local.iter().map(Vec::len).collect();
    let n: usize = radix.iter().product();

    let decode = |mut code: usize| -> Vec<usize> {
        radix
            .iter()
            .map(|&r| {
                let d = code % r;
                code /= r;
                d
            })
            .collect()
    };
    let encode = |digits: &[usize]| -> usize {
        digits
            .iter()
            .zip(&radix)
            .rev()
            .fold(0, |acc, (&d, &r)| acc * r + d)
    };

    let mut edges = Vec::new();
    let mut starts = Vec::new();
    let mut accepts = Vec::new();
    for code in 0..n {
        let digits = decode(code);
        let locals: Vec<(usize, usize)> = digits
            .iter()
            .enumerate()
            .map(|(c, &d)| local[c][d])
            .collect();
        if locals
            .iter()
            .enumerate()
            .all(|(c, &(j, pos))| components[c][j].starts.contains(&pos))
        {
            starts.push(code);
        }
        if locals
            .iter()
            .enumerate()
            .all(|(c, &(j, pos))| components[c][j].accepts[pos])
        {
            accepts.push(code);
        }
        for a in Sign::ALL {
            // product of per-component move sets
            let mut targets: Vec<Vec<usize>> = vec![Vec::new()];
            for (c, &(j, pos)) in locals.iter().enumerate() {
                let base = local[c]
                    .iter()
                    .position(|&(jj, pp)| jj == j && pp == 0)
                    .expect("tracker offset");
                let mut grown = Vec::new();
                for t in &targets {
                    for np in components[c][j].moves(pos, a) {
                        let mut t2 = t.clone();
                        t2.push(base + np);
                        grown.push(t2);
                    }
                }
                targets = grown;
            }
            for t in targets {
                edges.push((code, a, encode(&t)));
            }
        }
    }
    SubwordNfa::with_self_loops(n, edges, &starts, &accepts)
}

fn tracker_for(g: &Word, p: &Word, side: Side) -> Tracker {
    let len = g.len();
    match side {
        Side::Left => {
            // positions reachable after feeding p
            let mut reach = vec![false; len + 1];
            reach[0] = true;
            for &a in p.letters() {
                for pos in (0..len).rev() {
                    if reach[pos] && g.letters()[pos] == a {
                        reach[pos + 1] = true;
                    }
                }
            }
            Tracker {
                word: g.clone(),
                starts: (0..=len).filter(|&i| reach[i]).collect(),
                accepts: (0..=len).map(|i| i == len).collect(),
            }
        }
        Side::Right => Tracker {
            word: g.clone(),
            starts: vec![0],
            accepts: (0..=len)
                .map(|i| g.slice(i, len).is_subword_of(p))
                .collect(),
        },
    }
}

pub fn nfa_accepts(a: &SubwordNfa, w: &Word) -> bool {
    a.accepts_word(w)
}

pub fn min_words(a: &SubwordNfa) -> UpSet {
    a.min_words()
}

pub fn subset_reach(a: &SubwordNfa, set: &FixedBitSet, w: &Word) -> FixedBitSet {
    a.subset_reach(set, w)
}

pub fn all_reachable_sets(a: &SubwordNfa, from: &FixedBitSet) -> Vec<(FixedBitSet, Word)> {
    a.all_reachable_sets(from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Zigzag automaton of a graph given by arcs: `+` follows an arc,
    /// `-` follows one backwards.
    fn graph_nfa(n: usize, arcs: &[(usize, usize)], from: usize, to: usize) -> SubwordNfa {
        let edges = arcs
            .iter()
            .flat_map(|&(x, y)| [(x, Plus, y), (y, Minus, x)]);
        SubwordNfa::with_self_loops(n, edges, &[from], &[to])
    }

    fn set(n: usize, xs: &[usize]) -> FixedBitSet {
        bitset(n, xs)
    }

    const C3: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 0)];

    #[test]
    fn acceptance_examples() {
        let a = graph_nfa(2, &[(0, 1)], 0, 1);
        assert!(a.accepts_word(&w("+")));
        assert!(!a.accepts_word(&w("-")));
        assert!(a.accepts_word(&w("-+")));
    }

    #[test]
    fn min_words_examples() {
        let z = graph_nfa(3, &[(0, 1), (2, 1)], 0, 2);
        assert_eq!(z.min_words(), "{+-}".parse().unwrap());
        let c = graph_nfa(3, C3, 0, 1);
        assert_eq!(c.min_words(), "{+,--}".parse().unwrap());
        let split = graph_nfa(3, &[(0, 1)], 0, 2);
        assert_eq!(split.min_words(), UpSet::top());
    }

    #[test]
    fn subset_reach_examples() {
        let a = graph_nfa(2, &[(0, 1)], 0, 1);
        assert_eq!(a.subset_reach(&set(2, &[0]), &w("+")), set(2, &[0, 1]));
        assert_eq!(a.subset_reach(&set(2, &[1]), &Word::empty()), set(2, &[1]));
        let c = graph_nfa(3, C3, 0, 0);
        assert_eq!(c.subset_reach(&set(3, &[0]), &w("-")), set(3, &[0, 2]));
    }

    #[test]
    fn reachable_sets_examples() {
        let a = graph_nfa(2, &[(0, 1)], 0, 1);
        let got = a.all_reachable_sets(&set(2, &[0]));
        assert_eq!(
            got,
            vec![(set(2, &[0]), Word::empty()), (set(2, &[0, 1]), w("+"))]
        );

        let single = graph_nfa(1, &[], 0, 0);
        assert_eq!(
            single.all_reachable_sets(&set(1, &[0])),
            vec![(set(1, &[0]), Word::empty())]
        );

        let c = graph_nfa(3, C3, 0, 0);
        let got = c.all_reachable_sets(&set(3, &[0]));
        assert!(got.contains(&(set(3, &[0, 1]), w("+"))));
        assert!(got.contains(&(set(3, &[0, 2]), w("-"))));
        assert!(got.contains(&(set(3, &[0, 1, 2]), w("++"))));
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn constraint_examples() {
        let a = constraint_nfa(&[w("+")], &"{++}".parse().unwrap(), Side::Left);
        assert_eq!(a.min_words(), "{+}".parse().unwrap());
        let x: UpSet = "{+-,--+}".parse().unwrap();
        assert_eq!(
            constraint_nfa(&[Word::empty()], &x, Side::Left).min_words(),
            x
        );
        assert_eq!(
            constraint_nfa(&[w("+")], &UpSet::top(), Side::Left).min_words(),
            UpSet::top()
        );
        // no constraints at all: every word qualifies
        assert_eq!(
            constraint_nfa(&[], &x, Side::Right).min_words(),
            UpSet::zero()
        );
    }

    #[test]
    fn constraint_right_side() {
        // w·+ contains "-+" iff w contains "-"
        let a = constraint_nfa(&[w("+")], &"{-+}".parse().unwrap(), Side::Right);
        assert_eq!(a.min_words(), "{-}".parse().unwrap());
        // w·+ contains "+-" iff w contains "+-"
        let b = constraint_nfa(&[w("+")], &"{+-}".parse().unwrap(), Side::Right);
        assert_eq!(b.min_words(), "{+-}".parse().unwrap());
    }

    #[test]
    fn explicit_constructor_checks_loops() {
        let err = SubwordNfa::new(1, [(0, Plus, 0)], &[0], &[0]).unwrap_err();
        assert!(matches!(
            err,
            Error::SelfLoopLaw {
                state: 0,
                letter: '-'
            }
        ));
        assert!(SubwordNfa::new(1, [(0, Plus, 0), (0, Minus, 0)], &[0], &[0]).is_ok());
    }
}
