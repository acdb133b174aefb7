//! Seeded random generators for sets, sequences and basic sets, used by the
//! property suites and by certificate validation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::groundset::EpSet;
use crate::sequence::QSeq;
use crate::vtop::VBasic;

pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn bits(rng: &mut impl Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(0.5)).collect()
}

/// Explicit part of length `< max_explicit`, pattern of length `1..=max_period`.
pub fn random_epset(rng: &mut impl Rng, max_explicit: usize, max_period: usize) -> EpSet {
    let n = rng.gen_range(0..max_explicit.max(1));
    let p = rng.gen_range(1..=max_period.max(1));
    EpSet::new(bits(rng, n), bits(rng, p)).expect("pattern is nonempty")
}

/// A finite subset of `[0, bound)`.
pub fn random_finite(rng: &mut impl Rng, bound: u64) -> EpSet {
    EpSet::finite((0..bound).filter(|_| rng.gen_bool(0.5)))
}

/// Values below `max_value`; drift is 0 with probability 3/4.
pub fn random_qseq(rng: &mut impl Rng, max_prefix: usize, max_value: u64) -> QSeq {
    let drift = if rng.gen_ratio(3, 4) {
        0
    } else {
        rng.gen_range(1..=3)
    };
    random_qseq_with_drift(rng, max_prefix, max_value, drift)
}

pub fn random_qseq_with_drift(
    rng: &mut impl Rng,
    max_prefix: usize,
    max_value: u64,
    drift: u64,
) -> QSeq {
    let len = rng.gen_range(0..=max_prefix);
    let c = rng.gen_range(1..=4);
    let prefix = (0..len).map(|_| rng.gen_range(0..max_value)).collect();
    let cycle = (0..c).map(|_| rng.gen_range(0..max_value)).collect();
    QSeq::new(prefix, cycle, drift).expect("cycle is nonempty")
}

/// A basic with up to `max_constraints` constraints on coordinates
/// `< max_coordinate`; sets are drawn from subsets of `[0, bound)` or
/// small eventually periodic sets.
pub fn random_vbasic<R: Rng>(
    rng: &mut R,
    max_constraints: usize,
    max_coordinate: u64,
    bound: u64,
) -> VBasic {
    let set = |rng: &mut R| match rng.gen_range(0..4) {
        0 => EpSet::all(),
        1 => random_epset(rng, bound as usize, 3),
        _ => random_finite(rng, bound),
    };
    let range = set(rng);
    let k = rng.gen_range(0..=max_constraints);
    let constraints: BTreeMap<u64, EpSet> = (0..k)
        .map(|_| (rng.gen_range(0..max_coordinate), set(rng)))
        .collect();
    VBasic::new(range, constraints)
}

/// A drift-0 member of `[word, range]` for finite nonempty `range`, with a
/// random extension of length `< 4` and a random cycle.
pub fn member_of_word_basic(rng: &mut impl Rng, word: &[u64], range: &[u64]) -> QSeq {
    let pick = |rng: &mut _| *range.choose(rng).expect("range is nonempty");
    let mut prefix = word.to_vec();
    for _ in 0..rng.gen_range(0..4) {
        prefix.push(pick(rng));
    }
    let cycle = (0..rng.gen_range(1..=4)).map(|_| pick(rng)).collect();
    QSeq::new(prefix, cycle, 0).expect("cycle is nonempty")
}

/// A drift-0 member of `b`, or `None` if `b` is empty. Values are drawn
/// from `U ∩ [0, bound)` (or the least value of `U` if that is empty) and
/// from `V_α ∩ U` at constrained coordinates.
pub fn member_of_vbasic(rng: &mut impl Rng, b: &VBasic, bound: u64) -> Option<QSeq> {
    let base = b.witness()?;
    let mut pool: Vec<u64> = b.range().members_below(bound).collect();
    if pool.is_empty() {
        pool.push(b.range().first()?);
    }
    let span = b.constraints().keys().last().map_or(0, |&a| a + 1) + rng.gen_range(0..4);
    let mut prefix = Vec::with_capacity(span as usize);
    for n in 0..span {
        let v = match b.constraint(n) {
            Some(v) => {
                let allowed: Vec<u64> = v.intersect(b.range()).members_below(bound).collect();
                allowed.choose(rng).copied().unwrap_or(base.eval(n))
            }
            None => *pool.choose(rng).unwrap(),
        };
        prefix.push(v);
    }
    let cycle = (0..rng.gen_range(1..=3)).map(|_| *pool.choose(rng).unwrap()).collect();
    let f = QSeq::new(prefix, cycle, 0).expect("cycle is nonempty");
    debug_assert!(b.contains(&f));
    Some(f)
}
