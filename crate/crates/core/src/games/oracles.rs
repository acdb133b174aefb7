//! Uncovered-point constructions used by P1 and by the witness commands.

use std::collections::BTreeSet;

use crate::groundset::EpSet;
use crate::sequence::{QSeq, Word};
use crate::vtop::WordBasic;

use super::GameError;

/// For selected cylinder indices `F`, the indicator of `{m}` with
/// `m = 1 + max F` (`m = 0` for empty `F`).
pub fn cantor_witness(indices: &BTreeSet<u64>) -> QSeq {
    let m = indices.last().map_or(0, |&n| n + 1);
    QSeq::indicator(m)
}

/// The diagonal point against prefix covers: `history[k]` are the words
/// selected in round `k`. With `A_k` the values used by all words selected
/// up to round `k`, `x_k` is the least number outside `A_k` not used as an
/// earlier `x_j`; the point is `⟨x_0, …, x_{R-1}⟩` followed by
/// `x_{R-1} + 1, x_{R-1} + 2, …`.
pub fn prefix_diagonal(history: &[Vec<Word>]) -> QSeq {
    let mut used = BTreeSet::new();
    let mut xs = Vec::with_capacity(history.len());
    for round in history {
        used.extend(round.iter().flatten().copied());
        let x = (0..).find(|v| !used.contains(v)).expect("finitely many used");
        used.insert(x);
        xs.push(x);
    }
    let next = xs.last().map_or(0, |&x| x + 1);
    QSeq::new(xs, vec![next], 1).expect("cycle is nonempty")
}

/// `const x` for the least `x` outside every selected range; `None` only if
/// the ranges cover ω.
pub fn tube_cover_witness(ranges: &[EpSet]) -> Option<QSeq> {
    let union = ranges.iter().fold(EpSet::empty(), |acc, r| acc.union(r));
    union.first_absent().map(QSeq::constant)
}

/// A point of `B^ω` outside every listed `[s_α, A_α]` with `A_α ⊆ B`.
///
/// For each such basic `x_α = min(B ∖ A_α)`; the point cycles through the
/// `x_α`, or is `const min(B)` if no basic has `A_α ⊆ B`. `None` iff `B` is
/// empty.
pub fn tube_weight_witness(b: &EpSet, basics: &[WordBasic]) -> Result<Option<QSeq>, GameError> {
    let mut xs = BTreeSet::new();
    for (index, basic) in basics.iter().enumerate() {
        if !basic.range.is_subset(b) {
            continue;
        }
        match b.difference(&basic.range).first() {
            Some(x) => xs.insert(x),
            None => return Err(GameError::HypothesisViolated { index }),
        };
    }
    if xs.is_empty() {
        return Ok(b.first().map(QSeq::constant));
    }
    let values: Vec<u64> = xs.into_iter().collect();
    Ok(Some(QSeq::cycling(&values)))
}

/// The residue classes `r + kℕ` for `r < k`, each with its enumeration
/// `r, r + k, r + 2k, …`.
pub fn spread_family(k: u64) -> Result<Vec<(EpSet, QSeq)>, GameError> {
    if k < 2 {
        return Err(GameError::BadSize(k));
    }
    Ok((0..k)
        .map(|r| {
            let f = QSeq::new(vec![], vec![r], k).expect("cycle is nonempty");
            (EpSet::progression(r, k), f)
        })
        .collect())
}
