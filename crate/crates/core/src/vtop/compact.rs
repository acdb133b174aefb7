//! Cover checking for the compact sets `[[s]]`.
//!
//! `[[s]]` is a copy of `k^ω` (Tychonoff) for `k = #img(s)`, so a family of
//! open sets covers it iff every branch of the finitely branching tree of
//! words over `img(s)` extending `s` reaches a node `w` whose basic
//! `[w, img(s)]` sits inside a single member.

use std::collections::BTreeMap;

use crate::groundset::EpSet;
use crate::sequence::{QSeq, Word};

use super::{VBasic, VTopError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverVerdict {
    /// Every branch closed; maps each leaf word to the index of a family
    /// member containing `[leaf, img(s)]`.
    Covered {
        leaves: BTreeMap<Word, usize>,
        depth: usize,
    },
    /// `point ∈ [branch, img(s)]` lies in no family member.
    Escape { branch: Word, point: QSeq },
    /// Some branch stayed open up to the depth limit without a certified
    /// uncovered point.
    DepthExceeded { branch: Word },
}

pub fn compact_cover_check(
    s: &[u64],
    family: &[VBasic],
    depth_limit: usize,
) -> Result<CoverVerdict, VTopError> {
    if family.is_empty() {
        return Err(VTopError::EmptyFamily);
    }
    if depth_limit < s.len() {
        return Err(VTopError::BadDepth {
            depth_limit,
            word_len: s.len(),
        });
    }
    let alphabet = EpSet::finite(s.iter().copied());
    let mut search = Search {
        letters: alphabet.elements().unwrap_or_default(),
        alphabet,
        family,
        depth_limit,
        leaves: BTreeMap::new(),
        stalled: None,
    };
    if search.letters.is_empty() {
        // [[⟨⟩]] is empty.
        return Ok(CoverVerdict::Covered {
            leaves: BTreeMap::new(),
            depth: 0,
        });
    }
    let mut word = s.to_vec();
    if let Some(escape) = search.visit(&mut word) {
        return Ok(escape);
    }
    if let Some(branch) = search.stalled {
        return Ok(CoverVerdict::DepthExceeded { branch });
    }
    let depth = search.leaves.keys().map(Vec::len).max().unwrap_or(0);
    Ok(CoverVerdict::Covered {
        leaves: search.leaves,
        depth,
    })
}

struct Search<'a> {
    alphabet: EpSet,
    letters: Vec<u64>,
    family: &'a [VBasic],
    depth_limit: usize,
    leaves: BTreeMap<Word, usize>,
    stalled: Option<Word>,
}

impl Search<'_> {
    fn visit(&mut self, word: &mut Word) -> Option<CoverVerdict> {
        let node = VBasic::word(word, self.alphabet.clone());
        if let Some(i) = self.family.iter().position(|b| node.is_subset(b)) {
            self.leaves.insert(word.clone(), i);
            return None;
        }
        if self.family.iter().all(|b| node.intersect(b).is_empty()) {
            let point = node.witness().expect("node basics are nonempty");
            return Some(CoverVerdict::Escape {
                branch: word.clone(),
                point,
            });
        }
        if word.len() >= self.depth_limit {
            return match self.uncovered_extension(word) {
                Some(point) => Some(CoverVerdict::Escape {
                    branch: word.clone(),
                    point,
                }),
                None => {
                    self.stalled.get_or_insert_with(|| word.clone());
                    None
                }
            };
        }
        for i in 0..self.letters.len() {
            word.push(self.letters[i]);
            let verdict = self.visit(word);
            word.pop();
            if verdict.is_some() {
                return verdict;
            }
        }
        None
    }

    fn uncovered_extension(&self, word: &[u64]) -> Option<QSeq> {
        let tails = self
            .letters
            .iter()
            .map(|&a| QSeq::constant(a))
            .chain([QSeq::cycling(&self.letters)]);
        tails
            .map(|t| QSeq::prepend(word, &t))
            .find(|p| self.family.iter().all(|b| !b.contains(p)))
    }
}
