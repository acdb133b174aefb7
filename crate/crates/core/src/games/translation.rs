//! Strategy translation between games: `tI` turns a target cover into a
//! source cover and `tII` maps each source selection back to an element of
//! the target cover.

use std::marker::PhantomData;

use crate::groundset::EpSet;
use crate::hyper::{h_member, img_point, HBasic};
use crate::sequence::QSeq;
use crate::vtop::{decode_tuple, encode_tuple, VBasic};

use super::{Cover, GameError, HSpace, Mode, Player, Selector, Space, VSpace};

pub trait Translation<S: Space, T: Space> {
    fn t1<'a>(&self, target: &'a dyn Cover<T>) -> Result<Box<dyn Cover<S> + 'a>, GameError>;
    fn t2(&self, x: &S::Basic, target: &dyn Cover<T>) -> Option<T::Basic>;
}

/// `tI = id`, `tII(x, B) = x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityTranslation;

struct Forward<'a, S: Space>(&'a dyn Cover<S>);

impl<S: Space> Cover<S> for Forward<'_, S> {
    fn id(&self) -> String {
        self.0.id()
    }
    fn element(&self, index: usize) -> Option<S::Basic> {
        self.0.element(index)
    }
    fn len(&self) -> Option<usize> {
        self.0.len()
    }
    fn is_element(&self, basic: &S::Basic) -> bool {
        self.0.is_element(basic)
    }
    fn covering(&self, point: &S::Point) -> Option<usize> {
        self.0.covering(point)
    }
    fn uncovered_witness(&self, selections: &[S::Basic]) -> Option<S::Point> {
        self.0.uncovered_witness(selections)
    }
}

impl<S: Space> Translation<S, S> for IdentityTranslation {
    fn t1<'a>(&self, target: &'a dyn Cover<S>) -> Result<Box<dyn Cover<S> + 'a>, GameError> {
        Ok(Box::new(Forward(target)))
    }

    fn t2(&self, x: &S::Basic, _: &dyn Cover<S>) -> Option<S::Basic> {
        Some(x.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImgVariant {
    Faithful,
    /// Pulls `[U₁, …, Uₙ]` back to the tube over `⋃Uⱼ` only.
    DropConstraints,
    /// Answers with a basic that is not in the target cover.
    Misroute,
}

/// The translation induced by `img: 𝕂(ω, ord) → 𝕂(ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImgTranslation {
    pub variant: ImgVariant,
}

impl ImgTranslation {
    pub fn faithful() -> Self {
        Self {
            variant: ImgVariant::Faithful,
        }
    }

    fn pullback(&self, target: &dyn Cover<HSpace>) -> Result<PullbackCover, GameError> {
        let n = target
            .len()
            .ok_or_else(|| GameError::Untranslatable(target.id()))?;
        let targets = (0..n).filter_map(|i| target.element(i)).collect();
        Ok(PullbackCover::new(
            format!("img⁻¹({})", target.id()),
            targets,
            self.variant == ImgVariant::DropConstraints,
        ))
    }
}

impl Translation<VSpace, HSpace> for ImgTranslation {
    fn t1<'a>(
        &self,
        target: &'a dyn Cover<HSpace>,
    ) -> Result<Box<dyn Cover<VSpace> + 'a>, GameError> {
        Ok(Box::new(self.pullback(target)?))
    }

    fn t2(&self, x: &VBasic, target: &dyn Cover<HSpace>) -> Option<HBasic> {
        let pullback = self.pullback(target).ok()?;
        let origin = pullback.targets[pullback.origin(x)?].clone();
        match self.variant {
            ImgVariant::Misroute => {
                let mut sets = origin.sets().to_vec();
                sets.push(EpSet::empty());
                HBasic::new(sets).ok()
            }
            _ => Some(origin),
        }
    }
}

/// `img⁻¹[H]` for each `H` of a finite hyperspace cover, split into basics.
///
/// For `H = [U₁, …, Uₙ]` the pieces are `[⋃U; α₁ ↦ U₁, …]` over all
/// coordinate tuples; sets `Uⱼ ⊇ ⋃U` need no coordinate. Element `i` is the
/// piece of `H_{i mod L}` whose tuple has code `i div L`.
#[derive(Debug, Clone)]
pub struct PullbackCover {
    id: String,
    targets: Vec<HBasic>,
    unions: Vec<EpSet>,
    needed: Vec<Vec<EpSet>>,
}

impl PullbackCover {
    pub fn new(id: String, targets: Vec<HBasic>, drop_constraints: bool) -> Self {
        let unions: Vec<EpSet> = targets.iter().map(HBasic::union).collect();
        let needed = targets
            .iter()
            .zip(&unions)
            .map(|(h, union)| {
                if drop_constraints {
                    return Vec::new();
                }
                h.sets()
                    .iter()
                    .filter(|u| !union.is_subset(u))
                    .cloned()
                    .collect()
            })
            .collect();
        Self {
            id,
            targets,
            unions,
            needed,
        }
    }

    pub fn piece(&self, j: usize, tuple: &[u64]) -> VBasic {
        let mut constraints = std::collections::BTreeMap::new();
        for (u, &alpha) in self.needed[j].iter().zip(tuple) {
            constraints
                .entry(alpha)
                .and_modify(|v: &mut EpSet| *v = v.intersect(u))
                .or_insert_with(|| u.clone());
        }
        VBasic::new(self.unions[j].clone(), constraints)
    }

    /// Index of the target basic `x` was pulled back from.
    pub fn origin(&self, x: &VBasic) -> Option<usize> {
        (0..self.targets.len()).find(|&j| {
            *x.range() == self.unions[j] && {
                let coords: Vec<(&u64, &EpSet)> = x.constraints().iter().collect();
                let mut assigned = vec![None; coords.len()];
                assigns(&self.needed[j], &coords, &mut assigned, 0)
            }
        })
    }
}

/// Whether the sets of `needed` can be spread over `coords` so that every
/// coordinate gets at least one and their intersection is its constraint.
fn assigns(
    needed: &[EpSet],
    coords: &[(&u64, &EpSet)],
    acc: &mut Vec<Option<EpSet>>,
    k: usize,
) -> bool {
    if k == needed.len() {
        return coords
            .iter()
            .zip(acc.iter())
            .all(|((_, v), got)| got.as_ref() == Some(*v));
    }
    for c in 0..coords.len() {
        if !coords[c].1.is_subset(&needed[k]) {
            continue;
        }
        let saved = acc[c].clone();
        acc[c] = Some(match &saved {
            Some(v) => v.intersect(&needed[k]),
            None => needed[k].clone(),
        });
        if assigns(needed, coords, acc, k + 1) {
            return true;
        }
        acc[c] = saved;
    }
    false
}

impl Cover<VSpace> for PullbackCover {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn element(&self, index: usize) -> Option<VBasic> {
        let l = self.targets.len();
        if l == 0 {
            return None;
        }
        let (j, code) = (index % l, (index / l) as u64);
        let n = self.needed[j].len();
        let tuple = if n == 0 { vec![] } else { decode_tuple(code, n) };
        Some(self.piece(j, &tuple))
    }

    fn len(&self) -> Option<usize> {
        (self.targets.is_empty()).then_some(0)
    }

    fn is_element(&self, b: &VBasic) -> bool {
        self.origin(b).is_some()
    }

    fn covering(&self, f: &QSeq) -> Option<usize> {
        let k = img_point(f).ok()?;
        let j = self.targets.iter().position(|h| h_member(&k, h))?;
        let tuple: Vec<u64> = self.needed[j]
            .iter()
            .map(|u| (0..).find(|&n| u.contains(f.eval(n))).unwrap())
            .collect();
        let code = if tuple.is_empty() { 0 } else { encode_tuple(&tuple) };
        usize::try_from(code)
            .ok()?
            .checked_mul(self.targets.len())?
            .checked_add(j)
    }

    /// Searches points cycling through a nonempty subset of `[0, 6)`.
    fn uncovered_witness(&self, selections: &[VBasic]) -> Option<QSeq> {
        (1u64..64)
            .map(|mask| {
                let values: Vec<u64> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
                QSeq::cycling(&values)
            })
            .find(|f| selections.iter().all(|b| !b.contains(f)))
    }
}

/// A target-game P2 built from a source-game P2: each target cover is
/// translated with `tI`, the source strategy answers, and every answer is
/// mapped back with `tII` and checked to lie in the target cover (T1).
pub struct LiftedSelector<'t, S: Space, T: Space> {
    translation: &'t dyn Translation<S, T>,
    inner: Box<dyn Selector<S> + 't>,
    _target: PhantomData<T>,
}

pub fn lift_strategy<'t, S: Space, T: Space>(
    translation: &'t dyn Translation<S, T>,
    inner: Box<dyn Selector<S> + 't>,
) -> LiftedSelector<'t, S, T> {
    LiftedSelector {
        translation,
        inner,
        _target: PhantomData,
    }
}

impl<S: Space, T: Space> Selector<T> for LiftedSelector<'_, S, T> {
    fn select(
        &mut self,
        round: usize,
        cover: &dyn Cover<T>,
        mode: Mode,
    ) -> Result<Vec<T::Basic>, GameError> {
        let source = self.translation.t1(cover)?;
        let picks = self.inner.select(round, &*source, mode)?;
        let mut out = Vec::with_capacity(picks.len());
        for x in &picks {
            if !source.is_element(x) {
                return Err(GameError::IllegalMove {
                    player: Player::P2,
                    round,
                    detail: format!("{x} is not an element of {}", source.id()),
                });
            }
            match self.translation.t2(x, cover) {
                Some(y) if cover.is_element(&y) => {
                    if !out.contains(&y) {
                        out.push(y);
                    }
                }
                _ => {
                    return Err(GameError::T1Violation {
                        round,
                        selection: x.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// T2 on samples: every sample lying in a source selection `x` must have
/// its image in `tII(x, target)`. Returns the first sample that fails.
pub fn t2_sample_check(
    translation: &dyn Translation<VSpace, HSpace>,
    target: &dyn Cover<HSpace>,
    selections: &[VBasic],
    samples: &[QSeq],
) -> Result<(), QSeq> {
    for f in samples {
        let Ok(k) = img_point(f) else { continue };
        for x in selections.iter().filter(|x| x.contains(f)) {
            let ok = translation
                .t2(x, target)
                .is_some_and(|y| h_member(&k, &y));
            if !ok {
                return Err(f.clone());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{play, GreedySelector, HCoverList, RandomSelector, SameCover};
    use std::rc::Rc;

    fn small(v: &[u64]) -> EpSet {
        EpSet::finite(v.iter().copied())
    }

    fn two_piece() -> HCoverList {
        HCoverList::new(
            "two",
            vec![
                HBasic::new(vec![small(&[0, 1])]).unwrap(),
                HBasic::new(vec![small(&[2])]).unwrap(),
            ],
        )
    }

    #[test]
    fn whole_target() {
        let target = HCoverList::new("whole", vec![HBasic::new(vec![EpSet::all()]).unwrap()]);
        let t = ImgTranslation::faithful();
        let source = t.t1(&target).unwrap();
        let x = source.element(0).unwrap();
        assert_eq!(x, VBasic::whole());
        assert_eq!(source.element(5).unwrap(), VBasic::whole());
        assert_eq!(t.t2(&x, &target), Some(HBasic::new(vec![EpSet::all()]).unwrap()));
    }

    #[test]
    fn pieces_are_recognized() {
        let target = HCoverList::from_partition(
            "p",
            &[EpSet::evens(), EpSet::progression(1, 4), EpSet::progression(3, 4)],
        );
        let t = ImgTranslation::faithful();
        let source = t.pullback(&target).unwrap();
        for i in 0..200 {
            let x = source.element(i).unwrap();
            let j = source.origin(&x).expect("piece has an origin");
            assert_eq!(j, i % 7, "{x}");
        }
        let f = QSeq::new(vec![4, 1], vec![8], 0).unwrap();
        let i = source.covering(&f).unwrap();
        assert!(source.element(i).unwrap().contains(&f));
    }

    #[test]
    fn t2_samples_on_two_piece_cover() {
        let target = two_piece();
        let samples = [QSeq::constant(0), QSeq::constant(1), QSeq::constant(2)];
        let t = ImgTranslation::faithful();
        let source = t.t1(&target).unwrap();
        let selections: Vec<VBasic> = (0..2).map(|i| source.element(i).unwrap()).collect();
        assert_eq!(t2_sample_check(&t, &target, &selections, &samples), Ok(()));

        let broken = ImgTranslation {
            variant: ImgVariant::DropConstraints,
        };
        let hb = HCoverList::new(
            "pair",
            vec![HBasic::new(vec![small(&[0]), small(&[1])]).unwrap()],
        );
        let source = broken.t1(&hb).unwrap();
        let selections = vec![source.element(0).unwrap()];
        assert_eq!(
            t2_sample_check(&broken, &hb, &selections, &samples),
            Err(QSeq::constant(0))
        );
    }

    #[test]
    fn identity_lift_is_transparent() {
        let cover = Rc::new(two_piece());
        let mut p1 = SameCover::<HSpace>::new(cover.clone());
        let mut plain = RandomSelector::new(3, 4, 2);
        let direct = play(Mode::Finite, &mut p1, &mut plain, 4).unwrap();
        let t = IdentityTranslation;
        let mut lifted = lift_strategy::<HSpace, HSpace>(&t, Box::new(RandomSelector::new(3, 4, 2)));
        let via = play(Mode::Finite, &mut p1, &mut lifted, 4).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn misrouted_t2_is_a_t1_violation() {
        let cover = Rc::new(two_piece());
        let t = ImgTranslation {
            variant: ImgVariant::Misroute,
        };
        let mut p1 = SameCover::<HSpace>::new(cover);
        let mut p2 = lift_strategy(&t, Box::new(GreedySelector::new(1)));
        assert!(matches!(
            play(Mode::Single, &mut p1, &mut p2, 3),
            Err(GameError::T1Violation { round: 0, .. })
        ));
    }
}
