//! Words over the two-letter alphabet `{+, -}` and the subword order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A letter: `+` codes a forward arc, `-` a backward arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// A finite word over `{+, -}`.
///
/// Words are ordered canonically by length first, then lexicographically
/// with `+` before `-`. This is a total order used for deterministic
/// output; the subword order is [`Word::is_subword_of`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Sign>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Sign>) -> Word {
        Word(letters)
    }

    pub fn letter(s: Sign) -> Word {
        Word(vec![s])
    }

    pub fn repeat(s: Sign, n: usize) -> Word {
        Word(vec![s; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Sign] {
        &self.0
    }

    pub fn push(&mut self, s: Sign) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a` prepended to `self`.
    pub fn prepend(&self, a: Sign) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Reverse the word and swap `+` with `-`.
    pub fn involute(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.flip()).collect())
    }

    /// `self` is obtained from `other` by deleting letters.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        is_subsequence(&self.0, &other.0)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// All words of length exactly `n`, in canonical order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(
            n < usize::BITS as usize,
            "word length too large to enumerate"
        );
        (0u64..(1u64 << n)).map(move |bits| {
            Word(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    /// All words of length at most `n`, in canonical order.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_length)
    }

    /// Every distinct subword of `self` (including `self` and the empty word).
    pub fn subwords(&self) -> Vec<Word> {
        let n = self.len();
        assert!(
            n < 32,
            "subword enumeration limited to words shorter than 32"
        );
        let mut out: Vec<Word> = (0u32..(1u32 << n))
            .map(|mask| {
                Word(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

pub(crate) fn is_subsequence(small: &[Sign], big: &[Sign]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    small.iter().all(|a| it.any(|b| b == a))
}

pub fn subword_leq(u: &Word, v: &Word) -> bool {
    u.is_subword_of(v)
}

pub fn involute_word(u: &Word) -> Word {
    u.involute()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `e` for the empty word, otherwise a nonempty string of `+`
    /// and `-` (the Unicode minus sign is also accepted).
    fn from_str(s: &str) -> Result<Word, Error> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::WordSyntax(
                "empty literal; use \"e\" for the empty word".into(),
            ));
        }
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::WordSyntax(format!(
                    "unexpected character {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Subword-minimal common supersequences of `u` and `v`.
///
/// Every minimal common supersequence is a merge of `u` and `v` in which
/// each position is used by one of them; the table below keeps, for each
/// pair of suffixes, only the minimal merges.
pub fn mcs(u: &Word, v: &Word) -> Vec<Word> {
    let (a, b) = (u.letters(), v.letters());
    let (n, m) = (a.len(), b.len());
    // table[i][j] = minimal merges of a[i..] and b[j..]
    let mut table: Vec<Vec<Vec<Word>>> = vec![vec![Vec::new(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let cell = if i == n {
                vec![Word(b[j..].to_vec())]
            } else if j == m {
                vec![Word(a[i..].to_vec())]
            } else {
                let mut cands = Vec::new();
                if a[i] == b[j] {
                    cands.extend(table[i + 1][j + 1].iter().map(|w| w.prepend(a[i])));
                }
                cands.extend(table[i + 1][j].iter().map(|w| w.prepend(a[i])));
                cands.extend(table[i][j + 1].iter().map(|w| w.prepend(b[j])));
                minimal_antichain(cands)
            };
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Sort canonically, dedupe, and keep only subword-minimal elements.
pub(crate) fn minimal_antichain(mut ws: Vec<Word>) -> Vec<Word> {
    ws.sort();
    ws.dedup();
    let mut kept: Vec<Word> = Vec::with_capacity(ws.len());
    for w in ws {
        // a proper subword is strictly shorter, so it was already seen
        if !kept.iter().any(|k| k.is_subword_of(&w)) {
            kept.push(w);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn subword_examples() {
        assert!(subword_leq(&Word::empty(), &w("+-")));
        assert!(subword_leq(&w("+-"), &w("++-")));
        assert!(!subword_leq(&w("+-"), &w("-+")));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involute_word(&w("+++--+--")), w("++-++---"));
        assert_eq!(involute_word(&Word::empty()), Word::empty());
        assert_eq!(involute_word(&w("+")), w("-"));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("e"), Word::empty());
        assert_eq!(w("+\u{2212}").to_string(), "+-");
        assert_eq!(Word::empty().to_string(), "e");
        assert!("".parse::<Word>().is_err());
        assert!("+x".parse::<Word>().is_err());
    }

    #[test]
    fn canonical_order_is_shortlex() {
        let all: Vec<Word> = Word::all_up_to(2).collect();
        let shown: Vec<String> = all.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["e", "+", "-", "++", "+-", "-+", "--"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    fn brute_mcs(u: &Word, v: &Word) -> Vec<Word> {
        let bound = u.len() + v.len();
        let common: Vec<Word> = Word::all_up_to(bound)
            .filter(|x| u.is_subword_of(x) && v.is_subword_of(x))
            .collect();
        minimal_antichain(common)
    }

    #[test]
    fn mcs_examples() {
        assert_eq!(mcs(&w("+"), &w("-")), vec![w("+-"), w("-+")]);
        assert_eq!(mcs(&w("+--"), &Word::empty()), vec![w("+--")]);
        assert_eq!(mcs(&w("+-"), &w("-+")), vec![w("+-+"), w("-+-")]);
    }

    #[test]
    fn mcs_matches_brute_force_up_to_three() {
        for u in Word::all_up_to(3) {
            for v in Word::all_up_to(3) {
                assert_eq!(mcs(&u, &v), brute_mcs(&u, &v), "{u} {v}");
            }
        }
    }
}
