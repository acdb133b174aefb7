use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::groundset::EpSet;
use crate::sequence::QSeq;

use super::{Region, VBasic, VTopError};

/// Bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchBounds {
    pub max_prefix: usize,
    pub max_value: u64,
    pub depth_limit: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_prefix: 8,
            max_value: 8,
            depth_limit: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolation {
    Isolated,
    NotIsolated(Escape),
}

/// Produces, for any basic neighborhood of a non-constant point, a
/// different point of that neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escape {
    point: QSeq,
}

impl Escape {
    pub fn point(&self) -> &QSeq {
        &self.point
    }

    /// A member of `neighborhood` different from the point.
    ///
    /// Two unconstrained coordinates `α₁ ≠ α₂` are reassigned to
    /// `p ∈ img(f) ∖ {f(α₁)}` and `q ∈ img(f) ∖ {p}`; the image can only
    /// shrink, so the range bound still holds.
    pub fn escape(&self, neighborhood: &VBasic) -> Result<QSeq, VTopError> {
        let f = &self.point;
        if !neighborhood.contains(f) {
            return Err(VTopError::PointNotInBasic);
        }
        let mut free = (0..).filter(|alpha| neighborhood.constraint(*alpha).is_none());
        let (a1, a2) = (free.next().unwrap(), free.next().unwrap());
        let image = f.image();
        let p = image
            .difference(&EpSet::singleton(f.eval(a1)))
            .first()
            .expect("non-constant point has two values");
        let q = image
            .difference(&EpSet::singleton(p))
            .first()
            .expect("non-constant point has two values");
        Ok(f.with_values(&[(a1, p), (a2, q)]))
    }
}

/// Constant points are isolated; every other point is not.
pub fn isolation_witness(f: &QSeq) -> Isolation {
    if f.is_constant() {
        Isolation::Isolated
    } else {
        Isolation::NotIsolated(Escape { point: f.clone() })
    }
}

/// Basic neighborhood of `f` disjoint from the closed set `[E; Λ, F]`.
///
/// If some value of `f` escapes `E` the first such coordinate is
/// constrained to `ω ∖ E`; otherwise the first violated `α` is constrained
/// to `ω ∖ F_α`.
pub fn closed_separator(
    f: &QSeq,
    range: &EpSet,
    constraints: &BTreeMap<u64, EpSet>,
) -> Result<VBasic, VTopError> {
    let closed = VBasic::new(range.clone(), constraints.clone());
    if closed.contains(f) {
        return Err(VTopError::PointInsideClosedSet);
    }
    if !f.image().is_subset(range) {
        // Some coordinate attains a value outside E, so this terminates.
        let beta = (0..).find(|&n| !range.contains(f.eval(n))).unwrap();
        return Ok(VBasic::cylinder(BTreeMap::from([(beta, range.complement())])));
    }
    let (&alpha, v) = constraints
        .iter()
        .find(|(&alpha, v)| !v.contains(f.eval(alpha)))
        .expect("a non-member violates a clause");
    Ok(VBasic::cylinder(BTreeMap::from([(alpha, v.complement())])))
}

/// A point of `s1 ∖ s2`, if one is found.
///
/// Two Vietoris basics are compared structurally first, so `None` is exact
/// in that case. Otherwise a few guided candidates are tried, then every
/// eventually constant sequence with prefix length `≤ max_prefix` and
/// values `≤ max_value`, then the same prefixes followed by a drift-1 tail.
/// `None` then only means nothing was found within the bounds.
pub fn separating_witness(s1: &Region, s2: &Region, bounds: &SearchBounds) -> Option<QSeq> {
    if s1 == s2 {
        return None;
    }
    if let (Region::Vietoris(b1), Region::Vietoris(b2)) = (s1, s2) {
        if b1.is_subset(b2) {
            return None;
        }
    }
    let separates = |f: &QSeq| s1.contains(f) && !s2.contains(f);
    if let Some(f) = guided_candidates(s1, s2).into_iter().find(|f| separates(f)) {
        return Some(f);
    }
    let mut prefix = Vec::with_capacity(bounds.max_prefix);
    for drift in [0, 1] {
        if let Some(f) = enumerate(s1, bounds, drift, &mut prefix, &separates) {
            return Some(f);
        }
    }
    None
}

fn guided_candidates(s1: &Region, s2: &Region) -> Vec<QSeq> {
    let mut out = Vec::new();
    match s1 {
        Region::Vietoris(b1) => {
            let Some(base) = b1.witness() else {
                return out;
            };
            let free = b1.constraints().keys().last().map_or(0, |&a| a + 1);
            if let Region::Vietoris(b2) = s2 {
                // Mirror the containment check: a range value outside U₂ at
                // a free coordinate, or a bad value at a coordinate that b2
                // constrains.
                if let Some(x) = b1.range().difference(b2.range()).first() {
                    out.push(base.with_values(&[(free, x)]));
                }
                for (&alpha, target) in b2.constraints() {
                    let allowed = match b1.constraint(alpha) {
                        Some(v) => v.intersect(b1.range()),
                        None => b1.range().clone(),
                    };
                    if let Some(x) = allowed.difference(target).first() {
                        out.push(base.with_values(&[(alpha, x)]));
                    }
                }
            }
            out.push(base);
        }
        Region::Box(b1) => out.extend(b1.least_member()),
    }
    out
}

fn enumerate(
    s1: &Region,
    bounds: &SearchBounds,
    drift: u64,
    prefix: &mut Vec<u64>,
    separates: &dyn Fn(&QSeq) -> bool,
) -> Option<QSeq> {
    for tail in 0..=bounds.max_value {
        let candidate = if drift == 0 {
            QSeq::eventually_constant(prefix.clone(), tail)
        } else {
            QSeq::prepend(prefix, &QSeq::new(vec![], vec![tail], drift).unwrap())
        };
        if separates(&candidate) {
            return Some(candidate);
        }
    }
    if prefix.len() == bounds.max_prefix {
        return None;
    }
    let n = prefix.len() as u64;
    for v in 0..=bounds.max_value {
        if !s1.allows(n, v) {
            continue;
        }
        prefix.push(v);
        let found = enumerate(s1, bounds, drift, prefix, separates);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
