//! Quasi-affine-periodic sequences ω → ω, the points of `V(ω^ω)` this crate
//! can reason about exactly.
//!
//! A [`QSeq`] has a finite prefix, then a cycle whose values are shifted by a
//! constant drift every period:
//!
//! ```text
//! f(n) = prefix[n]                              n < L
//! f(n) = cycle[(n − L) mod c] + D·⌊(n − L)/c⌋   n ≥ L
//! ```
//!
//! Drift zero is exactly finite range, i.e. membership in 𝕂(ω, ord).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::groundset::{lcm, EpSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeqError {
    #[error("cycle must be nonempty")]
    EmptyCycle,
}

/// Finite word over ω, used for prefixes `s` in `[s, A]`.
pub type Word = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSeq {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
    drift: u64,
}

impl QSeq {
    pub fn new(prefix: Vec<u64>, cycle: Vec<u64>, drift: u64) -> Result<Self, QSeqError> {
        if cycle.is_empty() {
            return Err(QSeqError::EmptyCycle);
        }
        Ok(Self::canonical(prefix, cycle, drift))
    }

    pub fn constant(value: u64) -> Self {
        Self::canonical(Vec::new(), vec![value], 0)
    }

    /// `n ↦ n`.
    pub fn identity() -> Self {
        Self::canonical(Vec::new(), vec![0], 1)
    }

    /// `prefix` followed by the constant `tail`.
    pub fn eventually_constant(prefix: Vec<u64>, tail: u64) -> Self {
        Self::canonical(prefix, vec![tail], 0)
    }

    /// Periodic sequence repeating `values` forever; panics on an empty slice.
    pub fn cycling(values: &[u64]) -> Self {
        Self::canonical(Vec::new(), values.to_vec(), 0)
    }

    /// Indicator sequence of the singleton `{m}`.
    pub fn indicator(m: u64) -> Self {
        let mut prefix = vec![0; m as usize];
        prefix.push(1);
        Self::canonical(prefix, vec![0], 0)
    }

    /// Concatenation `word ⌢ f`.
    pub fn prepend(word: &[u64], f: &QSeq) -> Self {
        let mut prefix = word.to_vec();
        prefix.extend_from_slice(&f.prefix);
        Self::canonical(prefix, f.cycle.clone(), f.drift)
    }

    /// `f` with the values at the listed coordinates replaced.
    pub fn with_values(&self, changes: &[(u64, u64)]) -> Self {
        let Some(top) = changes.iter().map(|&(i, _)| i).max() else {
            return self.clone();
        };
        let (mut prefix, cycle) = self.unrolled_to(top + 1);
        for &(i, v) in changes {
            prefix[i as usize] = v;
        }
        Self::canonical(prefix, cycle, self.drift)
    }

    /// The tail `n ↦ f(n + k)`.
    pub fn drop_first(&self, k: u64) -> Self {
        let (prefix, cycle) = self.unrolled_to(k);
        Self::canonical(prefix[k as usize..].to_vec(), cycle, self.drift)
    }

    // Equivalent (uncanonicalized) description whose prefix has length >= len.
    fn unrolled_to(&self, len: u64) -> (Vec<u64>, Vec<u64>) {
        let start = (self.prefix.len() as u64).max(len);
        let prefix: Vec<u64> = (0..start).map(|n| self.eval(n)).collect();
        let cycle = (start..start + self.cycle.len() as u64)
            .map(|n| self.eval(n))
            .collect();
        (prefix, cycle)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    pub fn drift(&self) -> u64 {
        self.drift
    }

    pub fn has_finite_range(&self) -> bool {
        self.drift == 0
    }

    pub fn is_constant(&self) -> bool {
        self.prefix.is_empty() && self.cycle.len() == 1 && self.drift == 0
    }

    pub fn eval(&self, n: u64) -> u64 {
        let start = self.prefix.len() as u64;
        if n < start {
            return self.prefix[n as usize];
        }
        let k = n - start;
        let c = self.cycle.len() as u64;
        self.cycle[(k % c) as usize] + self.drift * (k / c)
    }

    /// `f|_n`.
    pub fn restrict(&self, n: u64) -> Word {
        (0..n).map(|i| self.eval(i)).collect()
    }

    /// `img(f)` as an exact eventually periodic set.
    pub fn image(&self) -> EpSet {
        if self.drift == 0 {
            return EpSet::finite(self.prefix.iter().chain(&self.cycle).copied());
        }
        // Past the least cycle value in each residue class mod D, every
        // larger value of that class is attained.
        let d = self.drift;
        let mut least = vec![None::<u64>; d as usize];
        for &v in &self.cycle {
            let slot = &mut least[(v % d) as usize];
            *slot = Some(slot.map_or(v, |m| m.min(v)));
        }
        let bound = self
            .prefix
            .iter()
            .map(|&v| v + 1)
            .chain(least.iter().flatten().copied())
            .max()
            .unwrap_or(0);
        let in_tail = |x: u64| least[(x % d) as usize].is_some_and(|m| x >= m);
        let explicit = (0..bound)
            .map(|x| in_tail(x) || self.prefix.contains(&x))
            .collect();
        let pattern = (bound..bound + d).map(in_tail).collect();
        EpSet::new(explicit, pattern).expect("drift is positive")
    }

    /// Least `n` with `f(n) ≠ g(n)`, or `None` when `f = g`.
    pub fn first_difference(&self, other: &QSeq) -> Option<u64> {
        if self == other {
            return None;
        }
        // Past max(L_f, L_g) the difference f − g shifts by a constant every
        // lcm(c_f, c_g) steps, so it is either zero on a whole window (and
        // then nonzero one window later) or nonzero somewhere in it.
        let start = self.prefix.len().max(other.prefix.len()) as u64;
        let period = lcm(self.cycle.len(), other.cycle.len()) as u64;
        let end = start + 2 * period;
        let found = (0..end).find(|&n| self.eval(n) != other.eval(n));
        debug_assert!(found.is_some(), "distinct canonical forms must differ by {end}");
        found
    }

    fn canonical(mut prefix: Vec<u64>, mut cycle: Vec<u64>, mut drift: u64) -> Self {
        let c = cycle.len();
        // Shortest d | c with cycle[i] = cycle[i − d] + D·d/c.
        for d in (1..c).filter(|d| c.is_multiple_of(*d)) {
            let blocks = (c / d) as u64;
            if !drift.is_multiple_of(blocks) {
                continue;
            }
            let step = drift / blocks;
            if (d..c).all(|i| cycle[i] == cycle[i - d] + step) {
                cycle.truncate(d);
                drift = step;
                break;
            }
        }
        // Absorb prefix values that continue the quasi-periodic pattern
        // backwards.
        while let Some(&last) = prefix.last() {
            let wrapped = cycle[cycle.len() - 1];
            if wrapped < drift || wrapped - drift != last {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
            cycle[0] = last;
        }
        Self {
            prefix,
            cycle,
            drift,
        }
    }
}

impl fmt::Debug for QSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeq({:?} {:?}", self.prefix, self.cycle)?;
        if self.drift != 0 {
            write!(f, " +{}", self.drift)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for QSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = (0..8).map(|n| self.eval(n).to_string()).collect();
        write!(f, "⟨{}, …⟩", head.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct RawQSeq {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
    drift: u64,
}

impl Serialize for QSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawQSeq {
            prefix: self.prefix.clone(),
            cycle: self.cycle.clone(),
            drift: self.drift,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawQSeq::deserialize(deserializer)?;
        QSeq::new(raw.prefix, raw.cycle, raw.drift).map_err(serde::de::Error::custom)
    }
}
