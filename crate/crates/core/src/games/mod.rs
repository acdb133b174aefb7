//! Finite-horizon selection games `G₁(𝒜, 𝒞)` and `G_fin(𝒜, 𝒞)`.
//!
//! Each round P1 plays a cover and P2 answers with one element of it
//! (`single`) or finitely many (`finite`). After the last round P1 may
//! produce a point that avoids every selection; the referee re-checks that
//! point against each selection before awarding the round to P1.

mod covers;
mod oracles;
mod translation;

use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyper::{h_member, FiniteK, HBasic};
use crate::sequence::QSeq;
use crate::vtop::VBasic;

pub use covers::{
    challenger_by_name, CantorCover, GreedySelector, HCoverList, PrefixChallenger, PrefixCover,
    RandomSelector, SameCover, ScriptedSelector, TubeCover, WholeCover, CHALLENGERS,
};
pub use oracles::{
    cantor_witness, prefix_diagonal, spread_family, tube_cover_witness, tube_weight_witness,
};
pub use translation::{
    lift_strategy, t2_sample_check, IdentityTranslation, ImgTranslation, ImgVariant,
    LiftedSelector, PullbackCover, Translation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one round")]
    BadRounds,
    #[error("{player} made an illegal move in round {round}: {detail}")]
    IllegalMove {
        player: Player,
        round: usize,
        detail: String,
    },
    #[error("round {round}: translated selection {selection} is not in the target cover")]
    T1Violation { round: usize, selection: String },
    #[error("P1 witness {witness} lies in selection {selection}")]
    UnsoundWitness { witness: String, selection: String },
    #[error("unknown challenger {0:?}")]
    UnknownChallenger(String),
    #[error("cover {0} cannot be translated")]
    Untranslatable(String),
    #[error("the game was aborted: {0}")]
    Aborted(String),
    #[error("size must be at least 2, got {0}")]
    BadSize(u64),
    #[error("listed basic {index} has range equal to B")]
    HypothesisViolated { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Single,
    Finite,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single" => Ok(Mode::Single),
            "finite" => Ok(Mode::Finite),
            other => Err(format!("unknown mode {other:?}, expected single or finite")),
        }
    }
}

/// A space the game is played on: points and the basic open sets covers
/// are made of.
pub trait Space {
    type Point: Clone + fmt::Debug + fmt::Display + PartialEq;
    type Basic: Clone + fmt::Debug + fmt::Display + PartialEq;

    fn member(basic: &Self::Basic, point: &Self::Point) -> bool;
}

/// `V(ω^ω)`, points restricted to quasi-affine-periodic sequences.
#[derive(Debug, Clone, Copy)]
pub struct VSpace;

impl Space for VSpace {
    type Point = QSeq;
    type Basic = VBasic;

    fn member(basic: &VBasic, point: &QSeq) -> bool {
        basic.contains(point)
    }
}

/// The hyperspace 𝕂(ω).
#[derive(Debug, Clone, Copy)]
pub struct HSpace;

impl Space for HSpace {
    type Point = FiniteK;
    type Basic = HBasic;

    fn member(basic: &HBasic, point: &FiniteK) -> bool {
        h_member(point, basic)
    }
}

/// A cover by basic sets, enumerated lazily.
pub trait Cover<S: Space> {
    fn id(&self) -> String;
    /// The element at `index`, or `None` past the end of a finite cover.
    fn element(&self, index: usize) -> Option<S::Basic>;
    /// `None` for infinite covers.
    fn len(&self) -> Option<usize>;
    fn is_element(&self, basic: &S::Basic) -> bool;
    /// Index of some element containing `point`.
    fn covering(&self, point: &S::Point) -> Option<usize>;
    /// A point in none of `selections`.
    fn uncovered_witness(&self, selections: &[S::Basic]) -> Option<S::Point>;
}

/// P1: plays a cover each round and, at the horizon, tries to exhibit a
/// point missed by every selection so far.
pub trait Challenger<S: Space> {
    fn name(&self) -> String;
    fn cover(&mut self, round: usize, history: &[Vec<S::Basic>]) -> Rc<dyn Cover<S>>;
    fn uncovered_witness(&self, history: &[Vec<S::Basic>]) -> Option<S::Point>;
}

/// P2: answers each cover with elements of it.
pub trait Selector<S: Space> {
    fn select(
        &mut self,
        round: usize,
        cover: &dyn Cover<S>,
        mode: Mode,
    ) -> Result<Vec<S::Basic>, GameError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round<B> {
    pub cover: String,
    pub selections: Vec<B>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict<P> {
    P1WitnessFound { witness: P },
    P2SurvivesToHorizon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript<B, P> {
    pub mode: Mode,
    pub challenger: String,
    pub horizon: usize,
    pub rounds: Vec<Round<B>>,
    pub verdict: Verdict<P>,
}

pub type VTranscript = Transcript<VBasic, QSeq>;

impl<B, P> Transcript<B, P> {
    pub fn witness(&self) -> Option<&P> {
        match &self.verdict {
            Verdict::P1WitnessFound { witness } => Some(witness),
            Verdict::P2SurvivesToHorizon => None,
        }
    }
}

pub fn play<S: Space>(
    mode: Mode,
    p1: &mut dyn Challenger<S>,
    p2: &mut dyn Selector<S>,
    rounds: usize,
) -> Result<Transcript<S::Basic, S::Point>, GameError> {
    if rounds == 0 {
        return Err(GameError::BadRounds);
    }
    let mut history: Vec<Vec<S::Basic>> = Vec::with_capacity(rounds);
    let mut log = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let cover = p1.cover(round, &history);
        let selections = p2.select(round, &*cover, mode)?;
        check_legal::<S>(round, &*cover, &selections, mode)?;
        log.push(Round {
            cover: cover.id(),
            selections: selections.clone(),
        });
        history.push(selections);
    }
    let verdict = match p1.uncovered_witness(&history) {
        Some(witness) => {
            referee_check::<S>(&witness, history.iter().flatten())?;
            Verdict::P1WitnessFound { witness }
        }
        None => Verdict::P2SurvivesToHorizon,
    };
    Ok(Transcript {
        mode,
        challenger: p1.name(),
        horizon: rounds,
        rounds: log,
        verdict,
    })
}

fn check_legal<S: Space>(
    round: usize,
    cover: &dyn Cover<S>,
    selections: &[S::Basic],
    mode: Mode,
) -> Result<(), GameError> {
    let illegal = |detail: String| GameError::IllegalMove {
        player: Player::P2,
        round,
        detail,
    };
    if mode == Mode::Single && selections.len() != 1 {
        return Err(illegal(format!(
            "expected one selection, got {}",
            selections.len()
        )));
    }
    match selections.iter().find(|b| !cover.is_element(b)) {
        Some(b) => Err(illegal(format!("{b} is not an element of {}", cover.id()))),
        None => Ok(()),
    }
}

/// Independent re-check of a P1 witness against every selection.
pub fn referee_check<'a, S: Space>(
    witness: &S::Point,
    selections: impl IntoIterator<Item = &'a S::Basic>,
) -> Result<(), GameError>
where
    S::Basic: 'a,
{
    for b in selections {
        if S::member(b, witness) {
            return Err(GameError::UnsoundWitness {
                witness: witness.to_string(),
                selection: b.to_string(),
            });
        }
    }
    Ok(())
}

/// Replays a saved transcript against a fresh challenger and the recorded
/// selections, re-running legality checks and the witness oracle.
pub fn replay(saved: &VTranscript) -> Result<VTranscript, GameError> {
    let mut p1 = challenger_by_name(&saved.challenger)?;
    let mut p2 = ScriptedSelector::new(
        saved
            .rounds
            .iter()
            .map(|r| r.selections.clone())
            .collect(),
    );
    play(saved.mode, &mut *p1, &mut p2, saved.horizon)
}
