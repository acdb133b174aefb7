//! Eventually periodic subsets of ω.
//!
//! An [`EpSet`] is a finite explicit bit string over `[0, N)` followed by a
//! repeating bit pattern of length `p` applied at every `n ≥ N`. The class is
//! closed under the boolean operations and contains every finite and every
//! cofinite set, so all the set predicates used by the basic open sets of the
//! Vietoris power are decidable on it.
//!
//! Values are always kept in canonical form: `N` is minimal and the pattern
//! is primitive. Two sets are equal as subsets of ω exactly when their
//! canonical forms are structurally equal, so the derived `Eq` and `Hash` are
//! set equality.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpSetError {
    #[error("periodic pattern must be nonempty")]
    EmptyPattern,
    #[error("bit lists may only contain 0 and 1, found {0}")]
    BadBit(u8),
    #[error("minimum of the empty set")]
    MinOfEmpty,
    #[error("cardinality requested for an infinite set")]
    CardOfInfinite,
}

/// Boolean combinations supported by [`EpSet::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

/// Predicates and measurements supported by [`EpSet::query`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetQuery {
    IsEmpty,
    IsFinite,
    Min,
    CardIfFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryAnswer {
    Bool(bool),
    Natural(u64),
}

/// Eventually periodic subset of ω in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSet {
    explicit: Vec<bool>,
    pattern: Vec<bool>,
}

impl EpSet {
    /// Builds a set from its explicit prefix over `[0, explicit.len())` and
    /// the pattern repeated from `explicit.len()` on.
    pub fn new(explicit: Vec<bool>, pattern: Vec<bool>) -> Result<Self, EpSetError> {
        if pattern.is_empty() {
            return Err(EpSetError::EmptyPattern);
        }
        Ok(Self::canonical(explicit, pattern))
    }

    pub fn empty() -> Self {
        Self {
            explicit: Vec::new(),
            pattern: vec![false],
        }
    }

    /// All of ω.
    pub fn all() -> Self {
        Self {
            explicit: Vec::new(),
            pattern: vec![true],
        }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        let members: Vec<u64> = members.into_iter().collect();
        let len = members.iter().max().map_or(0, |&m| m as usize + 1);
        let mut explicit = vec![false; len];
        for m in members {
            explicit[m as usize] = true;
        }
        Self::canonical(explicit, vec![false])
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Self {
        Self::finite(excluded).complement()
    }

    pub fn singleton(n: u64) -> Self {
        Self::finite([n])
    }

    /// `[0, n)`.
    pub fn below(n: u64) -> Self {
        Self::canonical(vec![true; n as usize], vec![false])
    }

    /// `{n, n + 1, ...}`.
    pub fn at_least(n: u64) -> Self {
        Self::canonical(vec![false; n as usize], vec![true])
    }

    /// The arithmetic progression `{start + step·i : i ∈ ω}`; `step == 0`
    /// gives `{start}`.
    pub fn progression(start: u64, step: u64) -> Self {
        if step == 0 {
            return Self::singleton(start);
        }
        let mut pattern = vec![false; step as usize];
        pattern[0] = true;
        Self::canonical(vec![false; start as usize], pattern)
    }

    pub fn evens() -> Self {
        Self::progression(0, 2)
    }

    pub fn odds() -> Self {
        Self::progression(1, 2)
    }

    pub fn explicit(&self) -> &[bool] {
        &self.explicit
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    /// Start `N` of the periodic part.
    pub fn threshold(&self) -> u64 {
        self.explicit.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.pattern.len() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        let start = self.threshold();
        if n < start {
            self.explicit[n as usize]
        } else {
            self.pattern[((n - start) % self.period()) as usize]
        }
    }

    pub fn combine(&self, op: SetOp, other: &EpSet) -> EpSet {
        let apply = |a: bool, b: bool| match op {
            SetOp::Union => a || b,
            SetOp::Intersect => a && b,
            SetOp::Difference => a && !b,
            SetOp::Complement => !a,
        };
        if op == SetOp::Complement {
            return Self::canonical(
                self.explicit.iter().map(|&b| !b).collect(),
                self.pattern.iter().map(|&b| !b).collect(),
            );
        }
        let start = self.explicit.len().max(other.explicit.len());
        let period = lcm(self.pattern.len(), other.pattern.len());
        let bit = |n: usize| apply(self.contains(n as u64), other.contains(n as u64));
        let explicit = (0..start).map(bit).collect();
        let pattern = (start..start + period).map(bit).collect();
        Self::canonical(explicit, pattern)
    }

    pub fn union(&self, other: &EpSet) -> EpSet {
        self.combine(SetOp::Union, other)
    }

    pub fn intersect(&self, other: &EpSet) -> EpSet {
        self.combine(SetOp::Intersect, other)
    }

    pub fn difference(&self, other: &EpSet) -> EpSet {
        self.combine(SetOp::Difference, other)
    }

    pub fn complement(&self) -> EpSet {
        self.combine(SetOp::Complement, self)
    }

    pub fn is_empty(&self) -> bool {
        self.pattern == [false] && self.explicit.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.pattern == [false]
    }

    pub fn min_element(&self) -> Result<u64, EpSetError> {
        self.first().ok_or(EpSetError::MinOfEmpty)
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<u64> {
        if let Some(i) = self.explicit.iter().position(|&b| b) {
            return Some(i as u64);
        }
        self.pattern
            .iter()
            .position(|&b| b)
            .map(|i| self.threshold() + i as u64)
    }

    /// Least member that is `>= from`.
    pub fn first_from(&self, from: u64) -> Option<u64> {
        let start = self.threshold();
        let scan_end = from.max(start) + self.period();
        (from..scan_end).find(|&n| self.contains(n))
    }

    /// Least natural outside the set.
    pub fn first_absent(&self) -> Option<u64> {
        self.complement().first()
    }

    pub fn cardinality(&self) -> Result<u64, EpSetError> {
        if !self.is_finite() {
            return Err(EpSetError::CardOfInfinite);
        }
        Ok(self.explicit.iter().filter(|&&b| b).count() as u64)
    }

    /// Largest member of a finite nonempty set.
    pub fn max_element(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.explicit.iter().rposition(|&b| b).map(|i| i as u64)
    }

    pub fn query(&self, what: SetQuery) -> Result<QueryAnswer, EpSetError> {
        Ok(match what {
            SetQuery::IsEmpty => QueryAnswer::Bool(self.is_empty()),
            SetQuery::IsFinite => QueryAnswer::Bool(self.is_finite()),
            SetQuery::Min => QueryAnswer::Natural(self.min_element()?),
            SetQuery::CardIfFinite => QueryAnswer::Natural(self.cardinality()?),
        })
    }

    pub fn is_subset(&self, other: &EpSet) -> bool {
        // Canonical forms let us skip the allocation of the difference.
        let start = self.explicit.len().max(other.explicit.len());
        let period = lcm(self.pattern.len(), other.pattern.len());
        (0..(start + period) as u64).all(|n| !self.contains(n) || other.contains(n))
    }

    pub fn is_disjoint(&self, other: &EpSet) -> bool {
        let start = self.explicit.len().max(other.explicit.len());
        let period = lcm(self.pattern.len(), other.pattern.len());
        (0..(start + period) as u64).all(|n| !(self.contains(n) && other.contains(n)))
    }

    /// Members below `bound`, ascending.
    pub fn members_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..bound).filter(move |&n| self.contains(n))
    }

    /// All members of a finite set, ascending; `None` for infinite sets.
    pub fn elements(&self) -> Option<Vec<u64>> {
        self.is_finite()
            .then(|| self.members_below(self.threshold()).collect())
    }

    fn canonical(mut explicit: Vec<bool>, mut pattern: Vec<bool>) -> Self {
        let p = pattern.len();
        if let Some(d) = (1..p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| pattern[i] == pattern[i - d])) {
            pattern.truncate(d);
        }
        // Absorb trailing explicit bits by rotating the pattern backwards.
        let mut shift = 0;
        let p = pattern.len();
        while let Some(&last) = explicit.last() {
            if last != pattern[(2 * p - 1 - shift % p) % p] {
                break;
            }
            explicit.pop();
            shift += 1;
        }
        if shift % p != 0 {
            pattern.rotate_right(shift % p);
        }
        Self { explicit, pattern }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "EpSet({}|{})", bits(&self.explicit), bits(&self.pattern))
    }
}

impl fmt::Display for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let explicit: Vec<String> = self
            .members_below(self.threshold())
            .map(|n| n.to_string())
            .collect();
        if self.is_finite() {
            return write!(f, "{{{}}}", explicit.join(", "));
        }
        if self.pattern == [true] && self.explicit.is_empty() {
            return write!(f, "ω");
        }
        let residues: Vec<String> = self
            .pattern
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i.to_string())
            .collect();
        let tail = format!(
            "{{n ≥ {} : (n − {}) mod {} ∈ {{{}}}}}",
            self.threshold(),
            self.threshold(),
            self.period(),
            residues.join(", ")
        );
        if explicit.is_empty() {
            write!(f, "{tail}")
        } else {
            write!(f, "{{{}}} ∪ {tail}", explicit.join(", "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawEpSet {
    explicit: Vec<u8>,
    pattern: Vec<u8>,
}

impl Serialize for EpSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let bits = |v: &[bool]| v.iter().map(|&b| b as u8).collect();
        RawEpSet {
            explicit: bits(&self.explicit),
            pattern: bits(&self.pattern),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EpSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawEpSet::deserialize(deserializer)?;
        let bits = |v: Vec<u8>| {
            v.into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(EpSetError::BadBit(other)),
                })
                .collect::<Result<Vec<bool>, _>>()
        };
        let explicit = bits(raw.explicit).map_err(serde::de::Error::custom)?;
        let pattern = bits(raw.pattern).map_err(serde::de::Error::custom)?;
        EpSet::new(explicit, pattern).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    // Naive oracle: membership straight from an uncanonicalized description.
    fn raw_member(explicit: &[bool], pattern: &[bool], n: u64) -> bool {
        if (n as usize) < explicit.len() {
            explicit[n as usize]
        } else {
            pattern[(n as usize - explicit.len()) % pattern.len()]
        }
    }

    #[test]
    fn member_examples() {
        assert!(EpSet::evens().contains(4));
        assert!(!EpSet::empty().contains(17));
        // {0,1} ∪ {n ≥ 5 : n odd}
        let explicit = bits("11000");
        let pattern = bits("10");
        let a = EpSet::new(explicit.clone(), pattern.clone()).unwrap();
        for n in 0..16 {
            assert_eq!(a.contains(n), raw_member(&explicit, &pattern, n), "n = {n}");
        }
        assert!(a.contains(7));
    }

    #[test]
    fn combine_examples() {
        let a = EpSet::evens().intersect(&EpSet::finite([0, 1, 2, 3]));
        assert_eq!(a, EpSet::finite([0, 2]));
        for n in 0..64 {
            assert_eq!(a.contains(n), n % 2 == 0 && n < 4);
        }
        assert_eq!(EpSet::empty().complement(), EpSet::all());
    }

    #[test]
    fn query_examples() {
        assert_eq!(
            EpSet::evens().query(SetQuery::IsFinite).unwrap(),
            QueryAnswer::Bool(false)
        );
        let a = EpSet::finite([3, 5]);
        assert_eq!(a.min_element().unwrap(), 3);
        assert_eq!(a.cardinality().unwrap(), 2);
        assert!(EpSet::empty().is_empty());
        assert_eq!(EpSet::empty().min_element(), Err(EpSetError::MinOfEmpty));
        assert_eq!(EpSet::odds().cardinality(), Err(EpSetError::CardOfInfinite));
    }

    #[test]
    fn subset_examples() {
        assert!(EpSet::empty().is_subset(&EpSet::odds()));
        assert!(EpSet::finite([0, 2]).is_subset(&EpSet::evens()));
        assert!(!EpSet::evens().is_subset(&EpSet::finite([0, 2])));
    }

    #[test]
    fn canonical_forms() {
        // Pattern 1010 with explicit 10 is just the evens.
        let a = EpSet::new(bits("10"), bits("1010")).unwrap();
        assert_eq!(a, EpSet::evens());
        assert_eq!(a.threshold(), 0);
        assert_eq!(a.period(), 2);
        // Explicit 0 then pattern 01 rotates to odds from 0.
        let b = EpSet::new(bits("0"), bits("10")).unwrap();
        assert_eq!(b, EpSet::odds());
        assert_eq!(b.pattern(), bits("01").as_slice());
        let c = EpSet::new(bits("111"), bits("1")).unwrap();
        assert_eq!(c, EpSet::all());
    }

    #[test]
    fn constructors() {
        assert_eq!(EpSet::below(3), EpSet::finite([0, 1, 2]));
        assert_eq!(EpSet::at_least(2), EpSet::cofinite([0, 1]));
        assert_eq!(EpSet::progression(2, 3).members_below(12).collect::<Vec<_>>(), [2, 5, 8, 11]);
        assert_eq!(EpSet::finite([4, 9]).max_element(), Some(9));
        assert_eq!(EpSet::finite([0, 1, 3]).first_absent(), Some(2));
        assert_eq!(EpSet::all().first_absent(), None);
        assert_eq!(EpSet::odds().first_from(4), Some(5));
        assert_eq!(EpSet::finite([1]).first_from(2), None);
    }

    #[test]
    fn display() {
        assert_eq!(EpSet::finite([0, 2]).to_string(), "{0, 2}");
        assert_eq!(EpSet::all().to_string(), "ω");
        assert_eq!(EpSet::empty().to_string(), "{}");
    }

    #[test]
    fn json_decoder_canonicalizes() {
        let a: EpSet = serde_json::from_str(r#"{"explicit":[1,0],"pattern":[1,0,1,0]}"#).unwrap();
        assert_eq!(a, EpSet::evens());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"explicit":[],"pattern":[1,0]}"#
        );
        assert!(serde_json::from_str::<EpSet>(r#"{"explicit":[],"pattern":[]}"#).is_err());
        assert!(serde_json::from_str::<EpSet>(r#"{"explicit":[2],"pattern":[0]}"#).is_err());
    }
}
