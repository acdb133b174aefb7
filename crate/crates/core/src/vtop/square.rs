//! The continuous bijection `Φ: V(ω^ω) → V(ω^ω)²` induced by a pairing of
//! ω with ω × ω, restricted to finite-range points.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::groundset::{lcm, EpSet};
use crate::sampling;
use crate::sequence::QSeq;

use super::{VBasic, VTopError, WordBasic};

/// A computable bijection `β: ω → ω × ω`.
pub trait Pairing {
    fn unpair(&self, n: u64) -> (u64, u64);
    fn pair(&self, a: u64, b: u64) -> u64;
}

/// Cantor's diagonal enumeration: `pair(a, b) = (a+b)(a+b+1)/2 + b`, so
/// `β(0) = (0,0)`, `β(1) = (1,0)`, `β(2) = (0,1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CantorPairing;

impl Pairing for CantorPairing {
    fn unpair(&self, n: u64) -> (u64, u64) {
        let n = n as u128;
        // Largest w with w(w+1)/2 ≤ n.
        let mut w = ((((8 * n + 1) as f64).sqrt() - 1.0) / 2.0) as u128;
        while w * (w + 1) / 2 > n {
            w -= 1;
        }
        while (w + 1) * (w + 2) / 2 <= n {
            w += 1;
        }
        let b = n - w * (w + 1) / 2;
        ((w - b) as u64, b as u64)
    }

    /// Panics if the code does not fit in a `u64`.
    fn pair(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        u64::try_from(s * (s + 1) / 2 + b as u128).expect("pair code overflows u64")
    }
}

/// `ω → ω^k` by iterated unpairing; a bijection for every `k ≥ 1`.
pub fn decode_tuple(n: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut rest = n;
    for _ in 1..k {
        let (a, b) = CantorPairing.unpair(rest);
        out.push(a);
        rest = b;
    }
    if k > 0 {
        out.push(rest);
    }
    out
}

pub fn encode_tuple(tuple: &[u64]) -> u64 {
    match tuple.split_last() {
        None => 0,
        Some((&last, init)) => init
            .iter()
            .rev()
            .fold(last, |acc, &a| CantorPairing.pair(a, acc)),
    }
}

fn split_values(values: &[u64]) -> (Vec<u64>, Vec<u64>) {
    values.iter().map(|&v| CantorPairing.unpair(v)).unzip()
}

/// `(φ₁(f), φ₂(f))` with `φ_j(f)(n) = β(f(n))_j`.
pub fn phi_split(f: &QSeq) -> Result<(QSeq, QSeq), VTopError> {
    if !f.has_finite_range() {
        return Err(VTopError::InfiniteRangeUnsupported);
    }
    let (p1, p2) = split_values(f.prefix());
    let (c1, c2) = split_values(f.cycle());
    let make = |p, c| QSeq::new(p, c, 0).expect("cycle is nonempty");
    Ok((make(p1, c1), make(p2, c2)))
}

/// Inverse of [`phi_split`]: `n ↦ β⁻¹(f₁(n), f₂(n))`.
pub fn phi_join(f1: &QSeq, f2: &QSeq) -> Result<QSeq, VTopError> {
    if !f1.has_finite_range() || !f2.has_finite_range() {
        return Err(VTopError::InfiniteRangeUnsupported);
    }
    let start = f1.prefix().len().max(f2.prefix().len()) as u64;
    let period = lcm(f1.cycle().len(), f2.cycle().len()) as u64;
    let at = |n| CantorPairing.pair(f1.eval(n), f2.eval(n));
    let prefix = (0..start).map(at).collect();
    let cycle = (start..start + period).map(at).collect();
    Ok(QSeq::new(prefix, cycle, 0).expect("cycle is nonempty"))
}

/// A neighborhood of `point` that `Φ` maps into `targets[0] × targets[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityCert {
    pub point: QSeq,
    pub targets: [WordBasic; 2],
    pub neighborhood: VBasic,
}

impl ContinuityCert {
    /// Samples `samples` drift-0 members of the neighborhood and returns the
    /// first whose image under `Φ` leaves the target product.
    pub fn validate(&self, rng: &mut impl Rng, samples: usize) -> Result<(), QSeq> {
        let word = self.neighborhood.as_word().expect("certificates are in [s, A] form");
        let range = word.range.elements().expect("certificate ranges are finite");
        for _ in 0..samples {
            let g = sampling::member_of_word_basic(rng, &word.word, &range);
            let (g1, g2) = phi_split(&g).expect("samples have finite range");
            if !self.targets[0].contains(&g1) || !self.targets[1].contains(&g2) {
                return Err(g);
            }
        }
        Ok(())
    }
}

/// `[f|_m, β⁻¹[A₁ × A₂]]` with `m = max(|s₁|, |s₂|)` for targets
/// `b1 = [s₁, A₁]`, `b2 = [s₂, A₂]`.
pub fn phi_continuity_cert(
    f: &QSeq,
    b1: &VBasic,
    b2: &VBasic,
) -> Result<ContinuityCert, VTopError> {
    let (f1, f2) = phi_split(f)?;
    let w1 = b1.as_word().ok_or(VTopError::NotWordForm)?;
    let w2 = b2.as_word().ok_or(VTopError::NotWordForm)?;
    let (Some(a1), Some(a2)) = (w1.range.elements(), w2.range.elements()) else {
        return Err(VTopError::PreimageNotFinite);
    };
    if !w1.contains(&f1) || !w2.contains(&f2) {
        return Err(VTopError::PointNotInTarget);
    }
    let preimage = a1
        .iter()
        .flat_map(|&a| a2.iter().map(move |&b| CantorPairing.pair(a, b)));
    let m = w1.word.len().max(w2.word.len()) as u64;
    let neighborhood = VBasic::word(&f.restrict(m), EpSet::finite(preimage));
    Ok(ContinuityCert {
        point: f.clone(),
        targets: [w1, w2],
        neighborhood,
    })
}
