use std::io::{BufRead, Write};

use vietoris_core::games::{Cover, GameError, Mode, Selector, VSpace, VTranscript, Verdict};
use vietoris_core::vtop::{Exclusion, VBasic};

/// P2 played from a terminal: shows the cover one page at a time and reads
/// element indices.
pub struct HumanSelector<R, W> {
    input: R,
    output: W,
    page_size: usize,
}

impl<R: BufRead, W: Write> HumanSelector<R, W> {
    pub fn new(input: R, output: W, page_size: usize) -> Self {
        Self {
            input,
            output,
            page_size: page_size.max(1),
        }
    }

    fn show_page(&mut self, cover: &dyn Cover<VSpace>, page: usize) -> std::io::Result<()> {
        let start = page * self.page_size;
        for i in start..start + self.page_size {
            match cover.element(i) {
                Some(b) => writeln!(self.output, "  [{i}] {b}")?,
                None => break,
            }
        }
        Ok(())
    }
}

fn io_abort(e: std::io::Error) -> GameError {
    GameError::Aborted(e.to_string())
}

impl<R: BufRead, W: Write> Selector<VSpace> for HumanSelector<R, W> {
    fn select(
        &mut self,
        round: usize,
        cover: &dyn Cover<VSpace>,
        mode: Mode,
    ) -> Result<Vec<VBasic>, GameError> {
        let how = match mode {
            Mode::Single => "one index",
            Mode::Finite => "indices separated by spaces",
        };
        writeln!(self.output, "round {round}: P1 plays {}", cover.id()).map_err(io_abort)?;
        let mut page = 0;
        self.show_page(cover, page).map_err(io_abort)?;
        loop {
            write!(self.output, "select {how} (n/p to page)> ").map_err(io_abort)?;
            self.output.flush().map_err(io_abort)?;
            let mut line = String::new();
            if self.input.read_line(&mut line).map_err(io_abort)? == 0 {
                return Err(GameError::Aborted("end of input".into()));
            }
            match line.trim() {
                "n" => {
                    page += 1;
                    self.show_page(cover, page).map_err(io_abort)?;
                    continue;
                }
                "p" => {
                    page = page.saturating_sub(1);
                    self.show_page(cover, page).map_err(io_abort)?;
                    continue;
                }
                _ => {}
            }
            match parse_selection(&line, cover, mode) {
                Ok(picks) => return Ok(picks),
                Err(msg) => writeln!(self.output, "illegal selection: {msg}").map_err(io_abort)?,
            }
        }
    }
}

fn parse_selection(
    line: &str,
    cover: &dyn Cover<VSpace>,
    mode: Mode,
) -> Result<Vec<VBasic>, String> {
    let indices = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("{t:?} is not an index")))
        .collect::<Result<Vec<_>, _>>()?;
    if mode == Mode::Single && indices.len() != 1 {
        return Err(format!("pick exactly one element, got {}", indices.len()));
    }
    let mut picks: Vec<VBasic> = Vec::new();
    for i in indices {
        let b = cover
            .element(i)
            .ok_or_else(|| format!("{} has no element {i}", cover.id()))?;
        if !picks.contains(&b) {
            picks.push(b);
        }
    }
    Ok(picks)
}

pub fn describe_exclusion(e: &Exclusion) -> String {
    match e {
        Exclusion::Constraint { coordinate, value } => {
            format!("value {value} at coordinate {coordinate} is not allowed")
        }
        Exclusion::ImageEscape { value } => format!("takes value {value} outside the range"),
    }
}

pub fn print_outcome(t: &VTranscript, mut out: impl Write) -> std::io::Result<()> {
    match &t.verdict {
        Verdict::P1WitnessFound { witness } => {
            writeln!(out, "P1 wins at horizon {}: witness {witness}", t.horizon)?;
            for (k, round) in t.rounds.iter().enumerate() {
                for b in &round.selections {
                    let why = b
                        .exclusion(witness)
                        .map_or_else(|| "NOT avoided".to_string(), |e| describe_exclusion(&e));
                    writeln!(out, "  round {k}: avoids {b}: {why}")?;
                }
            }
        }
        Verdict::P2SurvivesToHorizon => {
            writeln!(out, "P2 survives to horizon {}", t.horizon)?;
        }
    }
    Ok(())
}
