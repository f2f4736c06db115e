//! Final segments of `{+,-}*` under the subword order, stored by their
//! finite antichain of minimal words.
//!
//! Values are ordered by *reverse* inclusion: [`UpSet::zero`] (all words)
//! is the least element and [`UpSet::top`] (the empty set) the greatest.
//! Meet is set union, join is set intersection and `oplus` is set
//! concatenation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{mcs, minimal_antichain, Sign, Word};
use crate::error::Error;

/// A final segment represented by its canonical antichain of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpSet {
    gens: Vec<Word>,
}

/// A subword-closed set: either everything, or the down-closure of a finite
/// antichain of maximal words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LowerCone {
    All,
    Finite(Vec<Word>),
}

impl LowerCone {
    pub fn contains(&self, w: &Word) -> bool {
        match self {
            LowerCone::All => true,
            LowerCone::Finite(maxes) => maxes.iter().any(|m| w.is_subword_of(m)),
        }
    }
}

impl UpSet {
    /// The empty final segment; greatest element.
    pub fn top() -> UpSet {
        UpSet { gens: Vec::new() }
    }

    /// All of `{+,-}*`; least element and neutral for [`UpSet::oplus`].
    pub fn zero() -> UpSet {
        UpSet {
            gens: vec![Word::empty()],
        }
    }

    pub fn principal(w: Word) -> UpSet {
        UpSet { gens: vec![w] }
    }

    /// Canonical form of the final segment generated by `ws`.
    pub fn from_words<I: IntoIterator<Item = Word>>(ws: I) -> UpSet {
        UpSet {
            gens: minimal_antichain(ws.into_iter().collect()),
        }
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    pub fn is_top(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_empty()
    }

    pub fn max_generator_len(&self) -> usize {
        self.gens.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.gens.iter().any(|g| g.is_subword_of(w))
    }

    /// `self <= other` in reverse inclusion, i.e. `self ⊇ other`.
    pub fn leq(&self, other: &UpSet) -> bool {
        other.gens.iter().all(|h| self.contains(h))
    }

    /// Greatest lower bound: set union.
    pub fn meet(&self, other: &UpSet) -> UpSet {
        UpSet::from_words(self.gens.iter().chain(&other.gens).cloned())
    }

    /// Least upper bound: set intersection.
    pub fn join(&self, other: &UpSet) -> UpSet {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut cands = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                if g.is_subword_of(h) {
                    cands.push(h.clone());
                } else if h.is_subword_of(g) {
                    cands.push(g.clone());
                } else {
                    cands.extend(mcs(g, h));
                }
            }
        }
        UpSet::from_words(cands)
    }

    /// Concatenation of final segments.
    pub fn oplus(&self, other: &UpSet) -> UpSet {
        UpSet::from_words(
            self.gens
                .iter()
                .flat_map(|g| other.gens.iter().map(move |h| g.concat(h))),
        )
    }

    pub fn involute(&self) -> UpSet {
        UpSet::from_words(self.gens.iter().map(Word::involute))
    }

    /// The set of words lying below every member.
    pub fn lower_cone(&self) -> LowerCone {
        let Some(shortest) = self.gens.first() else {
            return LowerCone::All;
        };
        let common: Vec<Word> = shortest
            .subwords()
            .into_iter()
            .filter(|c| self.gens[1..].iter().all(|g| c.is_subword_of(g)))
            .collect();
        LowerCone::Finite(maximal_antichain(common))
    }

    /// Upper cone of the lower cone: the smallest MacNeille-closed final
    /// segment containing `self`.
    pub fn macneille_closure(&self) -> UpSet {
        match self.lower_cone() {
            LowerCone::All => UpSet::top(),
            LowerCone::Finite(maxes) => maxes
                .into_iter()
                .map(UpSet::principal)
                .fold(UpSet::zero(), |acc, p| acc.join(&p)),
        }
    }

    pub fn is_macneille_closed(&self) -> bool {
        self.macneille_closure() == *self
    }

    /// Default search bound for [`UpSet::cancellation_witness`].
    pub fn default_cancellation_bound(&self) -> usize {
        2 * self.max_generator_len() + 2
    }

    /// Search for `(u, v)` with `u+v` and `u-v` members but `uv` not,
    /// `|u| + |v| <= bound`. Pairs are tried by `uv` in canonical order and
    /// then by increasing `|u|`.
    pub fn cancellation_witness(&self, bound: usize) -> Option<(Word, Word)> {
        for uv in Word::all_up_to(bound) {
            if self.contains(&uv) {
                continue;
            }
            for cut in 0..=uv.len() {
                let (u, v) = (uv.slice(0, cut), uv.slice(cut, uv.len()));
                let with = |s: Sign| u.concat(&Word::letter(s)).concat(&v);
                if self.contains(&with(Sign::Plus)) && self.contains(&with(Sign::Minus)) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

/// Keep the subword-maximal elements, canonically sorted.
pub(crate) fn maximal_antichain(mut ws: Vec<Word>) -> Vec<Word> {
    ws.sort();
    ws.dedup();
    let mut kept: Vec<Word> = Vec::with_capacity(ws.len());
    for w in ws.into_iter().rev() {
        if !kept.iter().any(|k| w.is_subword_of(k)) {
            kept.push(w);
        }
    }
    kept.reverse();
    kept
}

pub fn canonical_upset<I: IntoIterator<Item = Word>>(ws: I) -> UpSet {
    UpSet::from_words(ws)
}

pub fn upset_member(w: &Word, x: &UpSet) -> bool {
    x.contains(w)
}

pub fn upset_leq(x: &UpSet, y: &UpSet) -> bool {
    x.leq(y)
}

pub fn meet(x: &UpSet, y: &UpSet) -> UpSet {
    x.meet(y)
}

pub fn join(x: &UpSet, y: &UpSet) -> UpSet {
    x.join(y)
}

pub fn oplus(x: &UpSet, y: &UpSet) -> UpSet {
    x.oplus(y)
}

pub fn involute_upset(x: &UpSet) -> UpSet {
    x.involute()
}

pub fn lower_cone(x: &UpSet) -> LowerCone {
    x.lower_cone()
}

pub fn macneille_closure(x: &UpSet) -> UpSet {
    x.macneille_closure()
}

pub fn cancellation_witness(x: &UpSet, bound: usize) -> Option<(Word, Word)> {
    x.cancellation_witness(bound)
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for UpSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<UpSet, Error> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::WordSyntax(format!("up-set literal must be braced: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(UpSet::top());
        }
        inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Word>, _>>()
            .map(UpSet::from_words)
    }
}

impl Serialize for UpSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}

impl<'de> Deserialize<'de> for UpSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<UpSet, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<Word>())
            .collect::<Result<Vec<_>, _>>()
            .map(UpSet::from_words)
            .map_err(serde::de::Error::custom)
    }
}
