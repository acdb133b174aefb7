use std::collections::BTreeSet;
use std::rc::Rc;

use rand::Rng;

use crate::groundset::EpSet;
use crate::hyper::{h_member, FiniteK, HBasic};
use crate::sampling::{self, SampleRng};
use crate::sequence::{QSeq, Word};
use crate::vtop::{decode_tuple, encode_tuple, VBasic};

use super::oracles::{cantor_witness, prefix_diagonal, tube_cover_witness};
use super::{Challenger, Cover, GameError, HSpace, Mode, Selector, Space, VSpace};

/// Named P1 strategies for games on `V(ω^ω)`.
pub const CHALLENGERS: [&str; 4] = ["cantor", "prefix", "tube", "whole"];

pub fn challenger_by_name(name: &str) -> Result<Box<dyn Challenger<VSpace>>, GameError> {
    Ok(match name {
        "cantor" => Box::new(SameCover::new(Rc::new(CantorCover))),
        "prefix" => Box::new(PrefixChallenger),
        "tube" => Box::new(SameCover::new(Rc::new(TubeCover))),
        "whole" => Box::new(SameCover::new(Rc::new(WholeCover))),
        other => return Err(GameError::UnknownChallenger(other.to_string())),
    })
}

/// `{0}^ω` together with the cylinders `V_n = {f ∈ 2^ω : f(n) = 1}`, a cover
/// of `V(2^ω)` with no finite subcover. Element 0 is the tube, element
/// `n + 1` is `V_n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CantorCover;

impl CantorCover {
    pub fn tube() -> VBasic {
        VBasic::tube(EpSet::singleton(0))
    }

    pub fn cylinder(n: u64) -> VBasic {
        VBasic::new(
            EpSet::finite([0, 1]),
            [(n, EpSet::singleton(1))].into_iter().collect(),
        )
    }

    /// `Some(n)` if `b` is `V_n`.
    pub fn cylinder_index(b: &VBasic) -> Option<u64> {
        let (&n, v) = b.constraints().iter().next()?;
        let shape = b.constraints().len() == 1
            && *b.range() == EpSet::finite([0, 1])
            && *v == EpSet::singleton(1);
        shape.then_some(n)
    }
}

impl Cover<VSpace> for CantorCover {
    fn id(&self) -> String {
        "cantor".into()
    }

    fn element(&self, index: usize) -> Option<VBasic> {
        Some(match index {
            0 => Self::tube(),
            n => Self::cylinder(n as u64 - 1),
        })
    }

    fn len(&self) -> Option<usize> {
        None
    }

    fn is_element(&self, b: &VBasic) -> bool {
        *b == Self::tube() || Self::cylinder_index(b).is_some()
    }

    fn covering(&self, f: &QSeq) -> Option<usize> {
        if Self::tube().contains(f) {
            return Some(0);
        }
        if !f.image().is_subset(&EpSet::finite([0, 1])) {
            return None;
        }
        let span = (f.prefix().len() + f.cycle().len()) as u64;
        (0..span).find(|&n| f.eval(n) == 1).map(|n| n as usize + 1)
    }

    fn uncovered_witness(&self, selections: &[VBasic]) -> Option<QSeq> {
        let indices: BTreeSet<u64> = selections.iter().filter_map(Self::cylinder_index).collect();
        Some(cantor_witness(&indices))
    }
}

/// `{[s, ω] : s ∈ ω^{n+1}}`, element `i` being the word with tuple code `i`.
#[derive(Debug, Clone, Copy)]
pub struct PrefixCover {
    n: usize,
}

impl PrefixCover {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    fn word_of(&self, b: &VBasic) -> Option<Word> {
        let w = b.as_word()?;
        (w.word.len() == self.n + 1 && w.range == EpSet::all()).then_some(w.word)
    }
}

impl Cover<VSpace> for PrefixCover {
    fn id(&self) -> String {
        format!("prefix[{}]", self.n)
    }

    fn element(&self, index: usize) -> Option<VBasic> {
        Some(VBasic::word(
            &decode_tuple(index as u64, self.n + 1),
            EpSet::all(),
        ))
    }

    fn len(&self) -> Option<usize> {
        None
    }

    fn is_element(&self, b: &VBasic) -> bool {
        self.word_of(b).is_some()
    }

    fn covering(&self, f: &QSeq) -> Option<usize> {
        usize::try_from(encode_tuple(&f.restrict(self.n as u64 + 1))).ok()
    }

    fn uncovered_witness(&self, selections: &[VBasic]) -> Option<QSeq> {
        let taken: BTreeSet<Word> = selections.iter().filter_map(|b| self.word_of(b)).collect();
        let free = (0..)
            .map(|i| decode_tuple(i, self.n + 1))
            .find(|w| !taken.contains(w))
            .expect("finitely many words are taken");
        Some(QSeq::prepend(&free, &QSeq::constant(0)))
    }
}

/// Tubes over nonempty finite sets, a cover of 𝕂(ω, ord). Element `i` is
/// the tube over the set whose characteristic bits spell `i + 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TubeCover;

impl Cover<VSpace> for TubeCover {
    fn id(&self) -> String {
        "tube".into()
    }

    fn element(&self, index: usize) -> Option<VBasic> {
        let code = index as u64 + 1;
        Some(VBasic::tube(EpSet::finite(
            (0..64).filter(|i| code >> i & 1 == 1),
        )))
    }

    fn len(&self) -> Option<usize> {
        None
    }

    fn is_element(&self, b: &VBasic) -> bool {
        b.is_tube() && b.range().is_finite() && !b.range().is_empty()
    }

    fn covering(&self, f: &QSeq) -> Option<usize> {
        let values = f.image().elements()?;
        if values.iter().any(|&v| v >= 63) {
            return None;
        }
        let code: u64 = values.iter().map(|&v| 1u64 << v).sum();
        Some(code as usize - 1)
    }

    fn uncovered_witness(&self, selections: &[VBasic]) -> Option<QSeq> {
        let ranges: Vec<EpSet> = selections.iter().map(|b| b.range().clone()).collect();
        tube_cover_witness(&ranges)
    }
}

/// The one-element cover `{ω^ω}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct WholeCover;

impl Cover<VSpace> for WholeCover {
    fn id(&self) -> String {
        "whole".into()
    }

    fn element(&self, index: usize) -> Option<VBasic> {
        (index == 0).then(VBasic::whole)
    }

    fn len(&self) -> Option<usize> {
        Some(1)
    }

    fn is_element(&self, b: &VBasic) -> bool {
        *b == VBasic::whole()
    }

    fn covering(&self, _: &QSeq) -> Option<usize> {
        Some(0)
    }

    fn uncovered_witness(&self, selections: &[VBasic]) -> Option<QSeq> {
        selections
            .is_empty()
            .then(|| QSeq::constant(0))
    }
}

/// A finite list of hyperspace basics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCoverList {
    id: String,
    sets: Vec<HBasic>,
}

impl HCoverList {
    pub fn new(id: impl Into<String>, sets: Vec<HBasic>) -> Self {
        Self { id: id.into(), sets }
    }

    pub fn sets(&self) -> &[HBasic] {
        &self.sets
    }

    /// For a partition `parts` of ω, the basics `[P_i : i ∈ I]` for every
    /// nonempty `I`; each finite set meets exactly the parts of one `I`.
    pub fn from_partition(id: impl Into<String>, parts: &[EpSet]) -> Self {
        let sets = (1u64..1 << parts.len())
            .map(|mask| {
                let chosen = parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p.clone())
                    .collect();
                HBasic::new(chosen).expect("mask is nonzero")
            })
            .collect();
        Self::new(id, sets)
    }
}

impl Cover<HSpace> for HCoverList {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn element(&self, index: usize) -> Option<HBasic> {
        self.sets.get(index).cloned()
    }

    fn len(&self) -> Option<usize> {
        Some(self.sets.len())
    }

    fn is_element(&self, b: &HBasic) -> bool {
        self.sets.contains(b)
    }

    fn covering(&self, k: &FiniteK) -> Option<usize> {
        self.sets.iter().position(|h| h_member(k, h))
    }

    /// Searches the nonempty subsets of `[0, 8)`.
    fn uncovered_witness(&self, selections: &[HBasic]) -> Option<FiniteK> {
        (1u64..256)
            .map(|mask| FiniteK::new((0..8).filter(|i| mask >> i & 1 == 1)).unwrap())
            .find(|k| selections.iter().all(|h| !h_member(k, h)))
    }
}

/// Plays the same cover every round.
pub struct SameCover<S: Space> {
    cover: Rc<dyn Cover<S>>,
}

impl<S: Space> SameCover<S> {
    pub fn new(cover: Rc<dyn Cover<S>>) -> Self {
        Self { cover }
    }
}

impl<S: Space> Challenger<S> for SameCover<S> {
    fn name(&self) -> String {
        self.cover.id()
    }

    fn cover(&mut self, _: usize, _: &[Vec<S::Basic>]) -> Rc<dyn Cover<S>> {
        Rc::clone(&self.cover)
    }

    fn uncovered_witness(&self, history: &[Vec<S::Basic>]) -> Option<S::Point> {
        let all: Vec<S::Basic> = history.iter().flatten().cloned().collect();
        self.cover.uncovered_witness(&all)
    }
}

/// Plays `prefix[n]` in round `n` and answers with the diagonal point.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrefixChallenger;

impl Challenger<VSpace> for PrefixChallenger {
    fn name(&self) -> String {
        "prefix".into()
    }

    fn cover(&mut self, round: usize, _: &[Vec<VBasic>]) -> Rc<dyn Cover<VSpace>> {
        Rc::new(PrefixCover::new(round))
    }

    fn uncovered_witness(&self, history: &[Vec<VBasic>]) -> Option<QSeq> {
        let words: Vec<Vec<Word>> = history
            .iter()
            .map(|round| {
                round
                    .iter()
                    .filter_map(|b| b.as_word().map(|w| w.word))
                    .collect()
            })
            .collect();
        Some(prefix_diagonal(&words))
    }
}

/// Takes the first `take` elements (the first one in single mode).
#[derive(Debug, Clone, Copy)]
pub struct GreedySelector {
    take: usize,
}

impl GreedySelector {
    pub fn new(take: usize) -> Self {
        Self { take }
    }
}

impl<S: Space> Selector<S> for GreedySelector {
    fn select(
        &mut self,
        _: usize,
        cover: &dyn Cover<S>,
        mode: Mode,
    ) -> Result<Vec<S::Basic>, GameError> {
        let take = match mode {
            Mode::Single => 1,
            Mode::Finite => self.take,
        };
        Ok((0..take).map_while(|i| cover.element(i)).collect())
    }
}

/// Picks uniformly among the first `window` elements: one in single mode,
/// between one and `max_pick` distinct ones in finite mode.
#[derive(Debug, Clone)]
pub struct RandomSelector {
    rng: SampleRng,
    window: usize,
    max_pick: usize,
}

impl RandomSelector {
    pub fn new(seed: u64, window: usize, max_pick: usize) -> Self {
        Self {
            rng: sampling::seeded(seed),
            window: window.max(1),
            max_pick: max_pick.max(1),
        }
    }
}

impl<S: Space> Selector<S> for RandomSelector {
    fn select(
        &mut self,
        _: usize,
        cover: &dyn Cover<S>,
        mode: Mode,
    ) -> Result<Vec<S::Basic>, GameError> {
        let window = cover.len().map_or(self.window, |n| n.min(self.window));
        if window == 0 {
            return Ok(Vec::new());
        }
        let picks = match mode {
            Mode::Single => 1,
            Mode::Finite => self.rng.gen_range(1..=self.max_pick),
        };
        let indices: BTreeSet<usize> = (0..picks)
            .map(|_| self.rng.gen_range(0..window))
            .collect();
        Ok(indices.into_iter().filter_map(|i| cover.element(i)).collect())
    }
}

/// Replays fixed selections.
#[derive(Debug, Clone)]
pub struct ScriptedSelector<B> {
    rounds: Vec<Vec<B>>,
}

impl<B> ScriptedSelector<B> {
    pub fn new(rounds: Vec<Vec<B>>) -> Self {
        Self { rounds }
    }
}

impl<S: Space> Selector<S> for ScriptedSelector<S::Basic> {
    fn select(
        &mut self,
        round: usize,
        _: &dyn Cover<S>,
        _: Mode,
    ) -> Result<Vec<S::Basic>, GameError> {
        self.rounds
            .get(round)
            .cloned()
            .ok_or_else(|| GameError::Aborted(format!("no recorded selections for round {round}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_contain_their_covering_element() {
        let points = [
            QSeq::constant(0),
            QSeq::indicator(4),
            QSeq::cycling(&[0, 1]),
            QSeq::new(vec![3, 1], vec![2], 0).unwrap(),
        ];
        let covers: [&dyn Cover<VSpace>; 4] =
            [&CantorCover, &PrefixCover::new(2), &TubeCover, &WholeCover];
        for cover in covers {
            for f in &points {
                if let Some(i) = cover.covering(f) {
                    let b = cover.element(i).unwrap();
                    assert!(cover.is_element(&b));
                    assert!(b.contains(f), "{} element {i} misses {f}", cover.id());
                }
            }
        }
        assert_eq!(CantorCover.covering(&QSeq::indicator(4)), Some(5));
        assert_eq!(PrefixCover::new(0).covering(&QSeq::identity()), Some(0));
    }

    #[test]
    fn enumerations_are_elements() {
        for i in 0..50 {
            assert!(CantorCover.is_element(&CantorCover.element(i).unwrap()));
            assert!(TubeCover.is_element(&TubeCover.element(i).unwrap()));
            let p = PrefixCover::new(2);
            assert!(p.is_element(&p.element(i).unwrap()));
            assert!(!PrefixCover::new(1).is_element(&p.element(i).unwrap()));
        }
        assert_eq!(TubeCover.element(4).unwrap(), VBasic::tube(EpSet::finite([0, 2])));
    }

    #[test]
    fn partition_cover_covers() {
        let parts = [EpSet::evens(), EpSet::progression(1, 4), EpSet::progression(3, 4)];
        let cover = HCoverList::from_partition("parts", &parts);
        assert_eq!(cover.len(), Some(7));
        for mask in 1u64..512 {
            let k = FiniteK::new((0..9).filter(|i| mask >> i & 1 == 1)).unwrap();
            assert!(cover.covering(&k).is_some());
        }
        let first = cover.element(0).unwrap();
        let w = cover.uncovered_witness(std::slice::from_ref(&first)).unwrap();
        assert!(!h_member(&w, &first));
    }
}
