//! The Vietoris hyperspace 𝕂(ω) of nonempty finite subsets of ω and the
//! image map `f ↦ img(f)` from 𝕂(ω, ord).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groundset::EpSet;
use crate::sequence::QSeq;
use crate::vtop::VBasic;

/// Largest enumeration bound accepted by [`verify_image_formula`].
pub const MAX_FORMULA_BOUND: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("point has infinite range")]
    NotFiniteRange,
    #[error("basic set is empty")]
    EmptyBasic,
    #[error("enumeration bound must be in 1..={MAX_FORMULA_BOUND}, got {0}")]
    BadBound(u64),
    #[error("hyperspace basics need at least one set")]
    NoSets,
    #[error("finite sets in the hyperspace are nonempty")]
    EmptyK,
    #[error("image of the point is not in the hyperspace basic")]
    NotInBasic,
}

/// A point of 𝕂(ω): a nonempty finite set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BTreeSet<u64>", into = "BTreeSet<u64>")]
pub struct FiniteK(BTreeSet<u64>);

impl FiniteK {
    pub fn new<I: IntoIterator<Item = u64>>(members: I) -> Result<Self, HyperError> {
        let set: BTreeSet<u64> = members.into_iter().collect();
        if set.is_empty() {
            return Err(HyperError::EmptyK);
        }
        Ok(Self(set))
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn to_epset(&self) -> EpSet {
        EpSet::finite(self.0.iter().copied())
    }
}

impl TryFrom<BTreeSet<u64>> for FiniteK {
    type Error = HyperError;

    fn try_from(set: BTreeSet<u64>) -> Result<Self, HyperError> {
        Self::new(set)
    }
}

impl From<FiniteK> for BTreeSet<u64> {
    fn from(k: FiniteK) -> Self {
        k.0
    }
}

impl fmt::Display for FiniteK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Hyperspace basic `[U₁, …, Uₙ]`: sets inside `⋃Uⱼ` meeting every `Uⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<EpSet>", into = "Vec<EpSet>")]
pub struct HBasic(Vec<EpSet>);

impl HBasic {
    pub fn new(sets: Vec<EpSet>) -> Result<Self, HyperError> {
        if sets.is_empty() {
            return Err(HyperError::NoSets);
        }
        Ok(Self(sets))
    }

    pub fn sets(&self) -> &[EpSet] {
        &self.0
    }

    pub fn union(&self) -> EpSet {
        self.0.iter().fold(EpSet::empty(), |acc, u| acc.union(u))
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().any(EpSet::is_empty)
    }

    /// Decides `[self] ⊆ [other]`.
    ///
    /// For nonempty `[W]`, every `K ∈ [W]` lies in `[U]` iff `⋃W ⊆ ⋃U` and
    /// each `Uᵢ` contains some `Wⱼ`; otherwise picking one point of each
    /// `Wⱼ` outside `Uᵢ` (or adding a point of `⋃W ∖ ⋃U`) gives a member of
    /// `[W]` outside `[U]`.
    pub fn is_subset(&self, other: &HBasic) -> bool {
        if self.is_empty() {
            return true;
        }
        self.union().is_subset(&other.union())
            && other
                .0
                .iter()
                .all(|u| self.0.iter().any(|w| w.is_subset(u)))
    }
}

impl TryFrom<Vec<EpSet>> for HBasic {
    type Error = HyperError;

    fn try_from(sets: Vec<EpSet>) -> Result<Self, HyperError> {
        Self::new(sets)
    }
}

impl From<HBasic> for Vec<EpSet> {
    fn from(h: HBasic) -> Self {
        h.0
    }
}

impl fmt::Display for HBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(EpSet::to_string).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

pub fn h_member(k: &FiniteK, h: &HBasic) -> bool {
    let k = k.to_epset();
    k.is_subset(&h.union()) && h.0.iter().all(|u| !k.is_disjoint(u))
}

pub fn img_point(f: &QSeq) -> Result<FiniteK, HyperError> {
    if !f.has_finite_range() {
        return Err(HyperError::NotFiniteRange);
    }
    FiniteK::new(f.image().elements().expect("finite range"))
}

/// Image of a basic of 𝕂(ω, ord) under `img`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageDescription {
    /// `[U, U ∩ V_α₁, …, U ∩ V_αₙ]`.
    pub hbasic: HBasic,
    /// For `[s, A]`: the bounds of `{K : img(s) ⊆ K ⊆ A}`.
    pub interval: Option<(EpSet, EpSet)>,
}

impl ImageDescription {
    /// Members of the interval form, when `A` is finite.
    pub fn interval_members(&self) -> Option<Vec<FiniteK>> {
        let (lower, upper) = self.interval.as_ref()?;
        let lower = lower.elements()?;
        let optional: Vec<u64> = upper
            .elements()?
            .into_iter()
            .filter(|v| !lower.contains(v))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << optional.len() {
            let extra = optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v);
            if let Ok(k) = FiniteK::new(lower.iter().copied().chain(extra)) {
                out.push(k);
            }
        }
        out.sort();
        Some(out)
    }
}

pub fn image_of_basic(b: &VBasic) -> Result<ImageDescription, HyperError> {
    if b.is_empty() {
        return Err(HyperError::EmptyBasic);
    }
    let u = b.range();
    let sets = std::iter::once(u.clone())
        .chain(b.constraints().values().map(|v| u.intersect(v)))
        .collect();
    let interval = b.as_word().map(|w| {
        let lower = EpSet::finite(w.word.iter().copied());
        (lower, w.range)
    });
    Ok(ImageDescription {
        hbasic: HBasic(sets),
        interval,
    })
}

/// The first `K ⊆ U ∩ [0, bound)` on which the two sides of the image
/// formula disagree, if any.
///
/// The left side is membership in the hyperspace basic from
/// [`image_of_basic`]. The right side searches for an assignment of values
/// of `K` to the constrained coordinates, completes it to a drift-0 point
/// that enumerates `K` on the free coordinates, and checks that point
/// against `b` directly.
pub fn image_formula_mismatch(b: &VBasic, bound: u64) -> Result<Option<FiniteK>, HyperError> {
    if bound == 0 || bound > MAX_FORMULA_BOUND {
        return Err(HyperError::BadBound(bound));
    }
    let description = image_of_basic(b)?;
    let values: Vec<u64> = b.range().members_below(bound).collect();
    for mask in 1u64..1 << values.len() {
        let k = FiniteK::new(
            values
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        )
        .expect("mask is nonzero");
        let lhs = h_member(&k, &description.hbasic);
        let rhs = realize(b, &k).is_some();
        if lhs != rhs {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

pub fn verify_image_formula(b: &VBasic, bound: u64) -> Result<bool, HyperError> {
    Ok(image_formula_mismatch(b, bound)?.is_none())
}

/// A drift-0 member of `b` with image exactly `k`, if one exists.
pub fn realize(b: &VBasic, k: &FiniteK) -> Option<QSeq> {
    let coords: Vec<u64> = b.constraints().keys().copied().collect();
    let mut chosen = Vec::with_capacity(coords.len());
    assign(b, k, &coords, &mut chosen)
}

fn assign(b: &VBasic, k: &FiniteK, coords: &[u64], chosen: &mut Vec<u64>) -> Option<QSeq> {
    let Some(&alpha) = coords.get(chosen.len()) else {
        return complete(b, k, coords, chosen);
    };
    let allowed = b.constraint(alpha).expect("constrained coordinate");
    for &v in k.members() {
        if !allowed.contains(v) {
            continue;
        }
        chosen.push(v);
        let found = assign(b, k, coords, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Fixed values at the constrained coordinates, the least element of `k`
/// at the other coordinates below them, then a cycle through `k`.
fn complete(b: &VBasic, k: &FiniteK, coords: &[u64], chosen: &[u64]) -> Option<QSeq> {
    let span = coords.last().map_or(0, |&a| a + 1);
    let least = *k.members().first().expect("nonempty");
    let mut prefix = vec![least; span as usize];
    for (&alpha, &v) in coords.iter().zip(chosen) {
        prefix[alpha as usize] = v;
    }
    let cycle: Vec<u64> = k.members().iter().copied().collect();
    let f = QSeq::new(prefix, cycle, 0).expect("cycle is nonempty");
    (b.contains(&f) && f.image() == k.to_epset()).then_some(f)
}

/// A basic neighborhood of `f` mapped by `img` into `h`: range `⋃Uⱼ`,
/// and for each `j` the least coordinate where `f` hits `Uⱼ` constrained to
/// `Uⱼ`.
pub fn continuity_neighborhood(f: &QSeq, h: &HBasic) -> Result<VBasic, HyperError> {
    if !h_member(&img_point(f)?, h) {
        return Err(HyperError::NotInBasic);
    }
    let mut constraints = std::collections::BTreeMap::new();
    for u in h.sets() {
        let alpha = (0..)
            .find(|&n| u.contains(f.eval(n)))
            .expect("image meets every set");
        constraints
            .entry(alpha)
            .and_modify(|v: &mut EpSet| *v = v.intersect(u))
            .or_insert_with(|| u.clone());
    }
    Ok(VBasic::new(h.union(), constraints))
}
