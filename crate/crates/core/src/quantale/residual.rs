//! Residuation and the distance between quantale values.

use super::{Sign, UpSet, Word};
use crate::automata::{constraint_nfa, Side};
use crate::error::Error;

/// Least `r` with `v <= r ⊕ g` (`Side::Left`) or `v <= g ⊕ r`
/// (`Side::Right`).
///
/// In set terms this is the largest final segment `r` with `r·g ⊆ v`
/// (resp. `g·r ⊆ v`); by up-closure it is enough to constrain `r` against
/// the generators of `g`.
pub fn residual(v: &UpSet, g: &UpSet, side: Side) -> UpSet {
    // the fixed words sit on the opposite side of r
    let fixed_side = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    constrained(g, v, fixed_side)
}

/// `{w : p·w ∈ target}` (or `w·p`) for every generator `p` of `fixed`. Each
/// generator gives an up-set of its own and the result is their join.
fn constrained(fixed: &UpSet, target: &UpSet, side: Side) -> UpSet {
    fixed.generators().iter().fold(UpSet::zero(), |acc, p| {
        if acc.is_top() {
            return acc;
        }
        acc.join(&constraint_nfa(std::slice::from_ref(p), target, side).min_words())
    })
}

/// Least element of `{r : p <= q ⊕ r̄ and q <= p ⊕ r}`, i.e. the set of
/// words `w` with `p·w ⊆ q` and `q·w̄ ⊆ p`.
pub fn quantale_distance(p: &UpSet, q: &UpSet) -> UpSet {
    let forward = constrained(p, q, Side::Left);
    let backward = constrained(q, p, Side::Left);
    forward.join(&backward.involute())
}

/// Arc relation of the graph carried by MacNeille-closed values: `p -> q`
/// iff `+` lies in their distance.
pub fn quantale_graph_arc(p: &UpSet, q: &UpSet) -> Result<bool, Error> {
    for x in [p, q] {
        if !x.is_macneille_closed() {
            return Err(Error::NotClosed {
                value: x.to_string(),
                closure: x.macneille_closure().to_string(),
            });
        }
    }
    Ok(quantale_distance(p, q).contains(&Word::letter(Sign::Plus)))
}
