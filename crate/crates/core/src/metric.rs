//! The complete metric on 𝕂(ω, ord):
//! `d(f, g) = 0` if `f = g`, `2` if `img(f) ≠ img(g)`, and `2^{-m(f,g)}`
//! otherwise, where `m(f, g)` is the first coordinate where they differ.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::groundset::EpSet;
use crate::sequence::QSeq;
use crate::vtop::{VBasic, WordBasic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("point has infinite range")]
    NotFiniteRange,
    #[error("point is not in the basic set")]
    PointOutsideBasic,
    #[error("distance {0} is not below the radius")]
    TooFar(Dist),
    #[error("radius must be positive")]
    EpsOutOfRange,
}

/// An exact distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dist {
    Zero,
    /// `2^{-k}`.
    Dyadic(u64),
    Two,
}

impl Dist {
    pub fn to_rational(self) -> BigRational {
        match self {
            Dist::Zero => BigRational::zero(),
            Dist::Two => BigRational::from_integer(BigInt::from(2)),
            Dist::Dyadic(k) => BigRational::new(BigInt::one(), BigInt::one() << k),
        }
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |d: &Dist| match d {
            Dist::Zero => 0,
            Dist::Dyadic(_) => 1,
            Dist::Two => 2,
        };
        match (self, other) {
            (Dist::Dyadic(a), Dist::Dyadic(b)) => b.cmp(a),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Zero => write!(f, "0"),
            Dist::Two => write!(f, "2"),
            Dist::Dyadic(0) => write!(f, "1"),
            Dist::Dyadic(k) => write!(f, "2^-{k}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Fraction {
    num: u64,
    den: u64,
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = match *self {
            Dist::Zero => (0, 1),
            Dist::Two => (2, 1),
            Dist::Dyadic(k) if k < 64 => (1, 1u64 << k),
            Dist::Dyadic(k) => {
                return Err(serde::ser::Error::custom(format!(
                    "denominator 2^{k} does not fit in 64 bits"
                )))
            }
        };
        Fraction { num, den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let Fraction { num, den } = Fraction::deserialize(d)?;
        match (num, den) {
            (0, den) if den > 0 => Ok(Dist::Zero),
            (2, 1) => Ok(Dist::Two),
            (1, den) if den.is_power_of_two() => Ok(Dist::Dyadic(den.trailing_zeros() as u64)),
            _ => Err(serde::de::Error::custom(format!(
                "{num}/{den} is not a distance value"
            ))),
        }
    }
}

pub fn dist(f: &QSeq, g: &QSeq) -> Result<Dist, MetricError> {
    if !f.has_finite_range() || !g.has_finite_range() {
        return Err(MetricError::NotFiniteRange);
    }
    if f.image() != g.image() {
        return Ok(Dist::Two);
    }
    Ok(f.first_difference(g).map_or(Dist::Zero, Dist::Dyadic))
}

/// Asserts `B_d(center; 2^{-n-1}) ⊆ [s, A]` where `n = |s|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCert {
    pub center: QSeq,
    pub basic: WordBasic,
    pub radius: Dist,
}

impl BallCert {
    /// Draws `samples` points of the ball (the center's first `n + 2`
    /// values followed by a tail over its image that still attains every
    /// image value) and returns the first one outside the basic.
    pub fn validate(&self, rng: &mut impl Rng, samples: usize) -> Result<(), QSeq> {
        let keep = self.basic.word.len() as u64 + 2;
        let head = self.center.restrict(keep);
        let values = self.center.image().elements().expect("center has finite range");
        for _ in 0..samples {
            let mut tail = values.clone();
            tail.shuffle(rng);
            for _ in 0..rng.gen_range(0..4) {
                tail.push(*values.choose(rng).unwrap());
            }
            let extra: Vec<u64> = (0..rng.gen_range(0..4))
                .map(|_| *values.choose(rng).unwrap())
                .collect();
            let g = QSeq::prepend(&head, &QSeq::prepend(&extra, &QSeq::cycling(&tail)));
            let inside = dist(&self.center, &g).is_ok_and(|d| d < self.radius);
            debug_assert!(inside, "sampler left the ball");
            if inside && !self.basic.contains(&g) {
                return Err(g);
            }
        }
        Ok(())
    }
}

pub fn ball_in_basic(f: &QSeq, s: &[u64], range: &EpSet) -> Result<BallCert, MetricError> {
    if !f.has_finite_range() {
        return Err(MetricError::NotFiniteRange);
    }
    let basic = WordBasic::new(s.to_vec(), range.clone());
    if !basic.contains(f) {
        return Err(MetricError::PointOutsideBasic);
    }
    Ok(BallCert {
        center: f.clone(),
        radius: Dist::Dyadic(s.len() as u64 + 1),
        basic,
    })
}

/// `[g|_n, img(f)] ∋ g` inside `B_d(f; eps)`, with `n` least such that
/// `g|_n` attains every value of `g` and `2^{-n} < eps - d(f, g)`.
pub fn basic_in_ball(f: &QSeq, g: &QSeq, eps: &BigRational) -> Result<VBasic, MetricError> {
    if !eps.is_positive() {
        return Err(MetricError::EpsOutOfRange);
    }
    let d = dist(f, g)?;
    if *eps > Dist::Two.to_rational() {
        return Ok(VBasic::whole());
    }
    if d.to_rational() >= *eps {
        return Err(MetricError::TooFar(d));
    }
    let slack = eps - d.to_rational();
    let image = g.image();
    let mut n = 0u64;
    loop {
        let covers = EpSet::finite(g.restrict(n)) == image;
        if covers && Dist::Dyadic(n).to_rational() < slack {
            return Ok(VBasic::word(&g.restrict(n), f.image()));
        }
        n += 1;
    }
}
