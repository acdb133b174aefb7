use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use vietoris_core::games::{self, CantorCover, Cover, PrefixCover};
use vietoris_core::vtop::{Exclusion, VBasic, WordBasic};
use vietoris_core::{EpSet, QSeq, Word};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CantorInput {
    #[serde(rename = "F")]
    indices: BTreeSet<u64>,
    #[serde(default = "yes")]
    tube: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrefixInput {
    rounds: Vec<Vec<Word>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TubeInput {
    sets: Vec<EpSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightInput {
    #[serde(rename = "B")]
    b: EpSet,
    basics: Vec<WordBasic>,
}

#[derive(Serialize)]
struct Avoidance {
    selection: VBasic,
    #[serde(skip_serializing_if = "Option::is_none")]
    exclusion: Option<Exclusion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct WitnessOutput {
    kind: String,
    witness: Option<QSeq>,
    avoids: Vec<Avoidance>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, kind: &str) -> Result<T> {
    serde_json::from_str(text).with_context(|| format!("parse error in {kind} input"))
}

fn avoid(selections: Vec<VBasic>, witness: &Option<QSeq>) -> Vec<Avoidance> {
    selections
        .into_iter()
        .map(|selection| Avoidance {
            exclusion: witness.as_ref().and_then(|w| selection.exclusion(w)),
            note: None,
            selection,
        })
        .collect()
}

pub fn run(kind: &str, input: &Path) -> Result<ExitCode> {
    let text =
        fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let (witness, avoids) = match kind {
        "cantor" => {
            let CantorInput { indices, tube } = parse(&text, kind)?;
            let mut selections: Vec<VBasic> =
                indices.iter().map(|&n| CantorCover::cylinder(n)).collect();
            if tube {
                selections.push(CantorCover::tube());
            }
            let w = CantorCover.uncovered_witness(&selections);
            let avoids = avoid(selections, &w);
            (w, avoids)
        }
        "prefix" => {
            let PrefixInput { rounds } = parse(&text, kind)?;
            for (k, words) in rounds.iter().enumerate() {
                if let Some(w) = words.iter().find(|w| w.len() != k + 1) {
                    bail!("round {k} selects {w:?}, expected words of length {}", k + 1);
                }
            }
            let w = Some(games::prefix_diagonal(&rounds));
            let selections = rounds
                .iter()
                .enumerate()
                .flat_map(|(k, words)| {
                    let cover = PrefixCover::new(k);
                    words
                        .iter()
                        .map(move |s| VBasic::word(s, EpSet::all()))
                        .inspect(move |b| debug_assert!(cover.is_element(b)))
                })
                .collect();
            let avoids = avoid(selections, &w);
            (w, avoids)
        }
        "tube" => {
            let TubeInput { sets } = parse(&text, kind)?;
            if let Some(s) = sets.iter().find(|s| !s.is_finite()) {
                bail!("tube ranges must be finite, got {s}");
            }
            let w = games::tube_cover_witness(&sets);
            let selections = sets.into_iter().map(VBasic::tube).collect();
            let avoids = avoid(selections, &w);
            (w, avoids)
        }
        "weight" => {
            let WeightInput { b, basics } = parse(&text, kind)?;
            let w = games::tube_weight_witness(&b, &basics)?;
            let avoids = basics
                .iter()
                .map(|basic| {
                    let selection = basic.to_vbasic();
                    if basic.range.is_subset(&b) {
                        Avoidance {
                            exclusion: w.as_ref().and_then(|w| selection.exclusion(w)),
                            note: None,
                            selection,
                        }
                    } else {
                        Avoidance {
                            exclusion: None,
                            note: Some("range not inside B, not diagonalized"),
                            selection,
                        }
                    }
                })
                .collect();
            (w, avoids)
        }
        other => bail!("unknown witness kind {other:?}; expected cantor, prefix, tube or weight"),
    };
    let out = WitnessOutput {
        kind: kind.to_string(),
        witness,
        avoids,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
