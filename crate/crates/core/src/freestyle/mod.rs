//! The negotiated-rules game. A [`RuleSet`] is a closed menu of placement
//! laws, effects, visibility modes, termination predicates and scoring
//! functions, rich enough to express both published example games:
//!
//! * the flip game: marks anywhere, each placement flips the 4-connected
//!   neighbors, majority count wins on a full board;
//! * hidden numbers: integers 0–15 on columns 1 and 5 under a sum budget,
//!   values concealed until the end, one point per row won.
//!
//! Two agents converge on a `RuleSet` through [`negotiation`], and the
//! interpreter in [`engine`] plays any validated rule set on a 5×5 board.

pub(crate) mod engine;
pub mod grammar;
pub mod negotiation;

pub use engine::EngineBoard;
pub use negotiation::{
    negotiate, NegotiationFailure, NegotiationMessage, NegotiationTranscript, NegotiationTurn,
};

use serde::{Deserialize, Serialize};

use crate::kernel::{GameState, Outcome};

pub const BOARD_SIZE: usize = 5;

/// What the players place: plain colored marks, or owned integers drawn from
/// an inclusive range, optionally limited by a placement-sum budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceDomain {
    Marks,
    Integers {
        min: u8,
        max: u8,
        budget: Option<Budget>,
    },
}

/// Sum cap on placed values; per player unless `shared`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub limit: u32,
    pub shared: bool,
}

/// Where a piece may be placed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlacementLaw {
    AnyEmptyCell,
    /// 1-based column numbers, left to right.
    ColumnRestricted { columns: Vec<u8> },
    /// Any empty cell 4-adjacent to an occupied one; anywhere on an empty board.
    AdjacencyRestricted,
}

/// Post-placement effect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Effect {
    None,
    /// Occupied 4-connected neighbors change owner.
    FlipNeighbors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Visibility {
    Open,
    /// Placed values are concealed from the opponent until the game ends.
    HiddenUntilEnd,
}

/// When the game stops (a double pass always stops it as a safety valve).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// No empty cell remains in the placeable region.
    BoardFull,
    FixedRounds { rounds: u32 },
    /// No player can afford any further value.
    BudgetExhausted,
}

/// How the final position is scored. `LineOfK` also ends the game on the spot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WinCondition {
    MajorityCount,
    LineOfK { k: u8 },
    /// One point per row whose value sum beats the opponent's.
    RowPoints,
}

/// A complete, machine-checkable rule description for one free-style game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    pub pieces: PieceDomain,
    pub placement: PlacementLaw,
    pub effect: Effect,
    pub visibility: Visibility,
    pub termination: Termination,
    pub win: WinCondition,
}

/// A rule set whose fields cannot work together, naming the offending pair.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rule set: `{field}` conflicts with `{conflicts_with}`: {reason}")]
pub struct RuleSetError {
    pub field: &'static str,
    pub conflicts_with: &'static str,
    pub reason: String,
}

fn conflict(field: &'static str, conflicts_with: &'static str, reason: &str) -> RuleSetError {
    RuleSetError {
        field,
        conflicts_with,
        reason: reason.to_string(),
    }
}

impl RuleSet {
    /// The flip game (example A).
    pub fn flip_game() -> RuleSet {
        RuleSet {
            pieces: PieceDomain::Marks,
            placement: PlacementLaw::AnyEmptyCell,
            effect: Effect::FlipNeighbors,
            visibility: Visibility::Open,
            termination: Termination::BoardFull,
            win: WinCondition::MajorityCount,
        }
    }

    /// Hidden numbers (example B).
    pub fn hidden_numbers() -> RuleSet {
        RuleSet {
            pieces: PieceDomain::Integers {
                min: 0,
                max: 15,
                budget: Some(Budget {
                    limit: 15,
                    shared: false,
                }),
            },
            placement: PlacementLaw::ColumnRestricted { columns: vec![1, 5] },
            effect: Effect::None,
            visibility: Visibility::HiddenUntilEnd,
            termination: Termination::BoardFull,
            win: WinCondition::RowPoints,
        }
    }

    pub fn validate(&self) -> Result<(), RuleSetError> {
        if let PieceDomain::Integers { min, max, budget } = &self.pieces {
            if min > max {
                return Err(conflict("pieces.min", "pieces.max", "empty value range"));
            }
            if let Some(b) = budget {
                if b.limit < *min as u32 {
                    return Err(conflict(
                        "pieces.budget",
                        "pieces.min",
                        "budget cannot afford even the smallest value",
                    ));
                }
            }
        }
        match &self.placement {
            PlacementLaw::ColumnRestricted { columns } => {
                if columns.is_empty() {
                    return Err(conflict("placement", "board", "no columns allowed"));
                }
                if columns.iter().any(|&c| c < 1 || c as usize > BOARD_SIZE) {
                    return Err(conflict(
                        "placement",
                        "board",
                        "column outside the 5-wide board",
                    ));
                }
            }
            PlacementLaw::AnyEmptyCell | PlacementLaw::AdjacencyRestricted => {}
        }
        if self.effect == Effect::FlipNeighbors && !matches!(self.pieces, PieceDomain::Marks) {
            return Err(conflict(
                "effect",
                "pieces",
                "flip-neighbors needs plain marks",
            ));
        }
        if self.visibility == Visibility::HiddenUntilEnd
            && !matches!(self.pieces, PieceDomain::Integers { .. })
        {
            return Err(conflict(
                "visibility",
                "pieces",
                "only integer values can be hidden",
            ));
        }
        if let WinCondition::LineOfK { k } = self.win {
            if k < 2 || k as usize > BOARD_SIZE {
                return Err(conflict(
                    "win",
                    "board",
                    "line length must be between 2 and 5 on a 5-wide board",
                ));
            }
        }
        if self.win == WinCondition::RowPoints && !matches!(self.pieces, PieceDomain::Integers { .. })
        {
            return Err(conflict(
                "win",
                "pieces",
                "row points compare integer values",
            ));
        }
        if self.termination == Termination::BudgetExhausted {
            match &self.pieces {
                PieceDomain::Integers { min, budget: Some(_), .. } if *min > 0 => {}
                PieceDomain::Integers { budget: Some(_), .. } => {
                    return Err(conflict(
                        "termination",
                        "pieces.min",
                        "a zero-value placement never exhausts the budget",
                    ));
                }
                _ => {
                    return Err(conflict(
                        "termination",
                        "pieces",
                        "budget-exhausted needs an integer budget",
                    ));
                }
            }
        }
        if let Termination::FixedRounds { rounds } = self.termination {
            if rounds == 0 {
                return Err(conflict("termination", "termination", "zero rounds"));
            }
        }
        Ok(())
    }
}

/// Errors from the scoring entry point.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("game is still running; scores exist only at termination")]
    NotTerminal,
    #[error("not a free-style state")]
    WrongGame,
}

/// Score a finished free-style game under its own rule set.
pub fn score(state: &GameState) -> Result<Outcome, ScoreError> {
    if state.rule_set().is_none() {
        return Err(ScoreError::WrongGame);
    }
    let outcome = state.status();
    if !outcome.is_terminal() {
        return Err(ScoreError::NotTerminal);
    }
    Ok(outcome)
}

/// Row-by-row value sums `(first, second)` of a free-style integer game.
pub fn row_sums(state: &GameState) -> Option<Vec<(u32, u32)>> {
    state.rule_set()?;
    match state_board(state) {
        Some(board) => Some(board.row_sums()),
        None => None,
    }
}

/// Points each side earned under row-points scoring.
pub fn row_points(state: &GameState) -> Option<(u32, u32)> {
    let sums = row_sums(state)?;
    let mut first = 0;
    let mut second = 0;
    for (a, b) in sums {
        if a > b {
            first += 1;
        } else if b > a {
            second += 1;
        }
    }
    Some((first, second))
}

fn state_board(state: &GameState) -> Option<&EngineBoard> {
    state.freestyle_board()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_example_games_validate() {
        assert!(RuleSet::flip_game().validate().is_ok());
        assert!(RuleSet::hidden_numbers().validate().is_ok());
    }

    #[test]
    fn line_of_six_on_a_five_board_is_invalid() {
        let mut rules = RuleSet::flip_game();
        rules.effect = Effect::None;
        rules.win = WinCondition::LineOfK { k: 6 };
        let err = rules.validate().unwrap_err();
        assert_eq!((err.field, err.conflicts_with), ("win", "board"));
    }

    #[test]
    fn flip_effect_requires_marks() {
        let mut rules = RuleSet::hidden_numbers();
        rules.effect = Effect::FlipNeighbors;
        let err = rules.validate().unwrap_err();
        assert_eq!((err.field, err.conflicts_with), ("effect", "pieces"));
    }

    #[test]
    fn hidden_marks_are_invalid() {
        let mut rules = RuleSet::flip_game();
        rules.visibility = Visibility::HiddenUntilEnd;
        let err = rules.validate().unwrap_err();
        assert_eq!((err.field, err.conflicts_with), ("visibility", "pieces"));
    }

    #[test]
    fn budget_termination_with_zero_min_is_invalid() {
        let mut rules = RuleSet::hidden_numbers();
        rules.termination = Termination::BudgetExhausted;
        let err = rules.validate().unwrap_err();
        assert_eq!(err.conflicts_with, "pieces.min");
    }
}
