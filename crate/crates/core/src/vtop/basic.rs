use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groundset::EpSet;
use crate::sequence::{QSeq, Word};

use super::VTopError;

/// Basic open set `[U; Λ, V]` of `V(ω^ω)`: a range bound `U` together with
/// finitely many coordinate constraints `α ↦ V_α`.
///
/// `f` is a member iff `f(α) ∈ V_α` for every constrained `α` and
/// `img(f) ⊆ U`. Tubes have no constraints; Tychonoff cylinders have
/// `U = ω`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VBasic {
    #[serde(rename = "U")]
    range: EpSet,
    #[serde(rename = "C", default)]
    constraints: BTreeMap<u64, EpSet>,
}

/// Why a point fails to be in a basic set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "camelCase")]
pub enum Exclusion {
    /// `f(coordinate) = value ∉ V_coordinate`.
    Constraint { coordinate: u64, value: u64 },
    /// `value ∈ img(f) ∖ U`.
    ImageEscape { value: u64 },
}

impl VBasic {
    pub fn new(range: EpSet, constraints: BTreeMap<u64, EpSet>) -> Self {
        Self { range, constraints }
    }

    /// The tube `U^ω`.
    pub fn tube(range: EpSet) -> Self {
        Self::new(range, BTreeMap::new())
    }

    /// The whole space, `ω^ω`.
    pub fn whole() -> Self {
        Self::tube(EpSet::all())
    }

    /// Tychonoff cylinder: constraints only, range ω.
    pub fn cylinder(constraints: BTreeMap<u64, EpSet>) -> Self {
        Self::new(EpSet::all(), constraints)
    }

    /// `[s, A]`: prefix `s` forced exactly, all values in `A`.
    pub fn word(s: &[u64], range: EpSet) -> Self {
        let constraints = s
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u64, EpSet::singleton(v)))
            .collect();
        Self::new(range, constraints)
    }

    /// `[[s]] = [s, img(s)]`.
    pub fn compact(s: &[u64]) -> Self {
        Self::word(s, EpSet::finite(s.iter().copied()))
    }

    pub fn range(&self) -> &EpSet {
        &self.range
    }

    pub fn constraints(&self) -> &BTreeMap<u64, EpSet> {
        &self.constraints
    }

    pub fn constraint(&self, coordinate: u64) -> Option<&EpSet> {
        self.constraints.get(&coordinate)
    }

    pub fn is_tube(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, f: &QSeq) -> bool {
        self.constraints
            .iter()
            .all(|(&alpha, v)| v.contains(f.eval(alpha)))
            && f.image().is_subset(&self.range)
    }

    /// First clause violated by `f`, or `None` when `f` is a member.
    pub fn exclusion(&self, f: &QSeq) -> Option<Exclusion> {
        for (&coordinate, v) in &self.constraints {
            let value = f.eval(coordinate);
            if !v.contains(value) {
                return Some(Exclusion::Constraint { coordinate, value });
            }
        }
        f.image()
            .difference(&self.range)
            .first()
            .map(|value| Exclusion::ImageEscape { value })
    }

    /// Exact intersection: ranges intersect, constraint maps merge with
    /// `V₁(α) ∩ V₂(α)` on shared coordinates.
    pub fn intersect(&self, other: &VBasic) -> VBasic {
        let mut constraints = self.constraints.clone();
        for (&alpha, v) in &other.constraints {
            constraints
                .entry(alpha)
                .and_modify(|mine| *mine = mine.intersect(v))
                .or_insert_with(|| v.clone());
        }
        VBasic::new(self.range.intersect(&other.range), constraints)
    }

    /// A drift-0 member, or `None` when the set is empty.
    ///
    /// Each constrained coordinate takes the least value of `V_α ∩ U` and
    /// every other coordinate the least value of `U`.
    pub fn witness(&self) -> Option<QSeq> {
        let fill = self.range.first()?;
        let mut prefix = vec![fill; self.constraints.keys().last().map_or(0, |&a| a as usize + 1)];
        for (&alpha, v) in &self.constraints {
            prefix[alpha as usize] = v.intersect(&self.range).first()?;
        }
        Some(QSeq::eventually_constant(prefix, fill))
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
            || self
                .constraints
                .values()
                .any(|v| v.is_disjoint(&self.range))
    }

    /// Containment `self ⊆ other`, decided structurally.
    ///
    /// A nonempty basic set attains every value of its range at infinitely
    /// many unconstrained coordinates, so containment reduces to range
    /// inclusion plus inclusion of the effective constraint at every
    /// coordinate `other` constrains.
    pub fn is_subset(&self, other: &VBasic) -> bool {
        if self.is_empty() {
            return true;
        }
        if !self.range.is_subset(&other.range) {
            return false;
        }
        other.constraints.iter().all(|(alpha, target)| {
            match self.constraints.get(alpha) {
                Some(v) => v.intersect(&self.range).is_subset(target),
                None => self.range.is_subset(target),
            }
        })
    }

    /// An eventually constant member.
    pub fn dense_witness(&self) -> Result<QSeq, VTopError> {
        self.witness().ok_or(VTopError::EmptyBasic)
    }

    /// Recognizes the `[s, A]` normal form.
    pub fn as_word(&self) -> Option<WordBasic> {
        let len = self.constraints.len() as u64;
        let mut word = Vec::with_capacity(len as usize);
        for (i, (&alpha, v)) in self.constraints.iter().enumerate() {
            if alpha != i as u64 || v.cardinality() != Ok(1) {
                return None;
            }
            word.push(v.first()?);
        }
        Some(WordBasic::new(word, self.range.clone()))
    }
}

impl fmt::Debug for VBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}", self.range)?;
        for (alpha, v) in &self.constraints {
            write!(f, "; {alpha}↦{v:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for VBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = self.as_word() {
            return write!(f, "{w}");
        }
        write!(f, "[{}", self.range)?;
        for (alpha, v) in &self.constraints {
            write!(f, "; f({alpha}) ∈ {v}")?;
        }
        write!(f, "]")
    }
}

/// The discrete-ground basic `[s, A]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordBasic {
    #[serde(rename = "s")]
    pub word: Word,
    #[serde(rename = "A")]
    pub range: EpSet,
}

impl WordBasic {
    pub fn new(word: Word, range: EpSet) -> Self {
        Self { word, range }
    }

    pub fn to_vbasic(&self) -> VBasic {
        VBasic::word(&self.word, self.range.clone())
    }

    pub fn contains(&self, f: &QSeq) -> bool {
        f.restrict(self.word.len() as u64) == self.word && f.image().is_subset(&self.range)
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty() || self.word.iter().any(|&v| !self.range.contains(v))
    }
}

impl fmt::Display for WordBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        write!(f, "[⟨{}⟩, {}]", word.join(","), self.range)
    }
}

/// Tail behaviour of a [`BoxBasic`] past its explicit coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoxTail {
    /// `f(n) ∈ T` for every `n ≥ N`.
    Uniform(EpSet),
    /// `f(n) = g(n)` for every `n ≥ N`.
    Pointwise(QSeq),
}

/// Decidable fragment of the box topology: independent per-coordinate sets
/// on `[0, N)` and a tail rule for `n ≥ N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxBasic {
    pub per_coord: Vec<EpSet>,
    pub tail: BoxTail,
}

impl BoxBasic {
    pub fn uniform(per_coord: Vec<EpSet>, tail: EpSet) -> Self {
        Self {
            per_coord,
            tail: BoxTail::Uniform(tail),
        }
    }

    /// The box-open singleton `{g}`.
    pub fn singleton(g: QSeq) -> Self {
        Self {
            per_coord: Vec::new(),
            tail: BoxTail::Pointwise(g),
        }
    }

    fn start(&self) -> u64 {
        self.per_coord.len() as u64
    }

    pub fn contains(&self, f: &QSeq) -> bool {
        let head_ok = self
            .per_coord
            .iter()
            .enumerate()
            .all(|(n, v)| v.contains(f.eval(n as u64)));
        head_ok
            && match &self.tail {
                BoxTail::Uniform(t) => f.drop_first(self.start()).image().is_subset(t),
                BoxTail::Pointwise(g) => f.drop_first(self.start()) == g.drop_first(self.start()),
            }
    }

    /// Whether coordinate `n` may take `value`.
    pub fn allows(&self, n: u64, value: u64) -> bool {
        match self.per_coord.get(n as usize) {
            Some(v) => v.contains(value),
            None => match &self.tail {
                BoxTail::Uniform(t) => t.contains(value),
                BoxTail::Pointwise(g) => g.eval(n) == value,
            },
        }
    }

    /// Coordinatewise least member, when one exists.
    pub fn least_member(&self) -> Option<QSeq> {
        let head: Option<Vec<u64>> = self.per_coord.iter().map(EpSet::first).collect();
        let head = head?;
        match &self.tail {
            BoxTail::Uniform(t) => Some(QSeq::eventually_constant(head, t.first()?)),
            BoxTail::Pointwise(g) => Some(QSeq::prepend(&head, &g.drop_first(self.start()))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawBox {
    per_coord: Vec<EpSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<EpSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail_point: Option<QSeq>,
}

impl Serialize for BoxBasic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (tail, tail_point) = match &self.tail {
            BoxTail::Uniform(t) => (Some(t.clone()), None),
            BoxTail::Pointwise(g) => (None, Some(g.clone())),
        };
        RawBox {
            per_coord: self.per_coord.clone(),
            tail,
            tail_point,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoxBasic {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawBox::deserialize(deserializer)?;
        let tail = match (raw.tail, raw.tail_point) {
            (Some(t), None) => BoxTail::Uniform(t),
            (None, Some(g)) => BoxTail::Pointwise(g),
            _ => {
                return Err(serde::de::Error::custom(
                    "box basic needs exactly one of `tail` and `tailPoint`",
                ))
            }
        };
        Ok(BoxBasic {
            per_coord: raw.per_coord,
            tail,
        })
    }
}

/// Either kind of basic set, for topology comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Region {
    Vietoris(VBasic),
    Box(BoxBasic),
}

impl Region {
    pub fn contains(&self, f: &QSeq) -> bool {
        match self {
            Region::Vietoris(b) => b.contains(f),
            Region::Box(b) => b.contains(f),
        }
    }

    /// Whether some member may have `value` at coordinate `n`; exact for
    /// boxes, a necessary condition for Vietoris basics.
    pub fn allows(&self, n: u64, value: u64) -> bool {
        match self {
            Region::Vietoris(b) => {
                b.range.contains(value) && b.constraint(n).is_none_or(|v| v.contains(value))
            }
            Region::Box(b) => b.allows(n, value),
        }
    }
}

impl From<VBasic> for Region {
    fn from(b: VBasic) -> Self {
        Region::Vietoris(b)
    }
}

impl From<BoxBasic> for Region {
    fn from(b: BoxBasic) -> Self {
        Region::Box(b)
    }
}
