//! Line-oriented text form of a [`RuleSet`], used on the negotiation wire and
//! stored verbatim in game records:
//!
//! ```text
//! PIECES: integers 0..15
//! BUDGET: 15
//! PLACEMENT: columns 1,5
//! EFFECT: none
//! VISIBILITY: hidden
//! TERMINATION: board-full
//! WIN: row-points
//! ```
//!
//! All six keyed fields are required (`BUDGET` only alongside integer pieces);
//! a proposal missing any of them is rejected as incomplete.

use super::{Budget, Effect, PieceDomain, PlacementLaw, RuleSet, Termination, Visibility, WinCondition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rule text: {0}")]
pub struct GrammarError(pub String);

/// Canonical text form; `parse` accepts exactly what this prints (modulo
/// case, surrounding blanks and line order).
pub fn print(rules: &RuleSet) -> String {
    let mut out = String::new();
    match &rules.pieces {
        PieceDomain::Marks => out.push_str("PIECES: marks\n"),
        PieceDomain::Integers { min, max, budget } => {
            out.push_str(&format!("PIECES: integers {min}..{max}\n"));
            if let Some(b) = budget {
                if b.shared {
                    out.push_str(&format!("BUDGET: {} shared\n", b.limit));
                } else {
                    out.push_str(&format!("BUDGET: {}\n", b.limit));
                }
            }
        }
    }
    match &rules.placement {
        PlacementLaw::AnyEmptyCell => out.push_str("PLACEMENT: any\n"),
        PlacementLaw::ColumnRestricted { columns } => {
            let cols: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("PLACEMENT: columns {}\n", cols.join(",")));
        }
        PlacementLaw::AdjacencyRestricted => out.push_str("PLACEMENT: adjacent\n"),
    }
    match rules.effect {
        Effect::None => out.push_str("EFFECT: none\n"),
        Effect::FlipNeighbors => out.push_str("EFFECT: flip-neighbors\n"),
    }
    match rules.visibility {
        Visibility::Open => out.push_str("VISIBILITY: open\n"),
        Visibility::HiddenUntilEnd => out.push_str("VISIBILITY: hidden\n"),
    }
    match rules.termination {
        Termination::BoardFull => out.push_str("TERMINATION: board-full\n"),
        Termination::FixedRounds { rounds } => {
            out.push_str(&format!("TERMINATION: rounds {rounds}\n"))
        }
        Termination::BudgetExhausted => out.push_str("TERMINATION: budget-exhausted\n"),
    }
    match rules.win {
        WinCondition::MajorityCount => out.push_str("WIN: majority\n"),
        WinCondition::LineOfK { k } => out.push_str(&format!("WIN: line {k}\n")),
        WinCondition::RowPoints => out.push_str("WIN: row-points\n"),
    }
    out
}

pub fn parse(text: &str) -> Result<RuleSet, GrammarError> {
    let mut pieces: Option<PieceDomain> = None;
    let mut budget: Option<Budget> = None;
    let mut placement: Option<PlacementLaw> = None;
    let mut effect: Option<Effect> = None;
    let mut visibility: Option<Visibility> = None;
    let mut termination: Option<Termination> = None;
    let mut win: Option<WinCondition> = None;

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| GrammarError(format!("line `{line}` is not `FIELD: value`")))?;
        let key = key.trim().to_ascii_uppercase();
        let value = value.trim().to_ascii_lowercase();
        let dup = |name: &str| GrammarError(format!("duplicate field `{name}`"));
        match key.as_str() {
            "PIECES" => {
                if pieces.is_some() {
                    return Err(dup("PIECES"));
                }
                pieces = Some(parse_pieces(&value)?);
            }
            "BUDGET" => {
                if budget.is_some() {
                    return Err(dup("BUDGET"));
                }
                budget = Some(parse_budget(&value)?);
            }
            "PLACEMENT" => {
                if placement.is_some() {
                    return Err(dup("PLACEMENT"));
                }
                placement = Some(parse_placement(&value)?);
            }
            "EFFECT" => {
                if effect.is_some() {
                    return Err(dup("EFFECT"));
                }
                effect = Some(match value.as_str() {
                    "none" => Effect::None,
                    "flip-neighbors" => Effect::FlipNeighbors,
                    other => return Err(GrammarError(format!("unknown effect `{other}`"))),
                });
            }
            "VISIBILITY" => {
                if visibility.is_some() {
                    return Err(dup("VISIBILITY"));
                }
                visibility = Some(match value.as_str() {
                    "open" => Visibility::Open,
                    "hidden" => Visibility::HiddenUntilEnd,
                    other => return Err(GrammarError(format!("unknown visibility `{other}`"))),
                });
            }
            "TERMINATION" => {
                if termination.is_some() {
                    return Err(dup("TERMINATION"));
                }
                termination = Some(parse_termination(&value)?);
            }
            "WIN" => {
                if win.is_some() {
                    return Err(dup("WIN"));
                }
                win = Some(parse_win(&value)?);
            }
            other => return Err(GrammarError(format!("unknown field `{other}`"))),
        }
    }

    let mut pieces =
        pieces.ok_or_else(|| GrammarError("missing field `PIECES`".into()))?;
    if let Some(b) = budget {
        match &mut pieces {
            PieceDomain::Integers { budget, .. } => *budget = Some(b),
            PieceDomain::Marks => {
                return Err(GrammarError("BUDGET applies to integer pieces only".into()))
            }
        }
    }
    Ok(RuleSet {
        pieces,
        placement: placement.ok_or_else(|| GrammarError("missing field `PLACEMENT`".into()))?,
        effect: effect.ok_or_else(|| GrammarError("missing field `EFFECT`".into()))?,
        visibility: visibility
            .ok_or_else(|| GrammarError("missing field `VISIBILITY`".into()))?,
        termination: termination
            .ok_or_else(|| GrammarError("missing field `TERMINATION`".into()))?,
        win: win.ok_or_else(|| GrammarError("missing field `WIN`".into()))?,
    })
}

fn parse_pieces(value: &str) -> Result<PieceDomain, GrammarError> {
    if value == "marks" {
        return Ok(PieceDomain::Marks);
    }
    if let Some(range) = value.strip_prefix("integers") {
        let range = range.trim();
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| GrammarError(format!("integer range `{range}` needs `min..max`")))?;
        let min: u8 = lo
            .trim()
            .parse()
            .map_err(|_| GrammarError(format!("bad minimum `{lo}`")))?;
        let max: u8 = hi
            .trim()
            .parse()
            .map_err(|_| GrammarError(format!("bad maximum `{hi}`")))?;
        return Ok(PieceDomain::Integers {
            min,
            max,
            budget: None,
        });
    }
    Err(GrammarError(format!("unknown piece domain `{value}`")))
}

fn parse_budget(value: &str) -> Result<Budget, GrammarError> {
    let (num, shared) = match value.strip_suffix("shared") {
        Some(rest) => (rest.trim(), true),
        None => (value, false),
    };
    let limit: u32 = num
        .trim()
        .parse()
        .map_err(|_| GrammarError(format!("bad budget `{value}`")))?;
    Ok(Budget { limit, shared })
}

fn parse_placement(value: &str) -> Result<PlacementLaw, GrammarError> {
    match value {
        "any" => Ok(PlacementLaw::AnyEmptyCell),
        "adjacent" => Ok(PlacementLaw::AdjacencyRestricted),
        other => {
            let cols = other
                .strip_prefix("columns")
                .ok_or_else(|| GrammarError(format!("unknown placement `{other}`")))?;
            let columns: Result<Vec<u8>, _> = cols
                .trim()
                .split(',')
                .map(|c| c.trim().parse::<u8>())
                .collect();
            let columns =
                columns.map_err(|_| GrammarError(format!("bad column list `{cols}`")))?;
            Ok(PlacementLaw::ColumnRestricted { columns })
        }
    }
}

fn parse_termination(value: &str) -> Result<Termination, GrammarError> {
    match value {
        "board-full" => Ok(Termination::BoardFull),
        "budget-exhausted" => Ok(Termination::BudgetExhausted),
        other => {
            let n = other
                .strip_prefix("rounds")
                .ok_or_else(|| GrammarError(format!("unknown termination `{other}`")))?;
            let rounds: u32 = n
                .trim()
                .parse()
                .map_err(|_| GrammarError(format!("bad round count `{n}`")))?;
            Ok(Termination::FixedRounds { rounds })
        }
    }
}

fn parse_win(value: &str) -> Result<WinCondition, GrammarError> {
    match value {
        "majority" => Ok(WinCondition::MajorityCount),
        "row-points" => Ok(WinCondition::RowPoints),
        other => {
            let k = other
                .strip_prefix("line")
                .ok_or_else(|| GrammarError(format!("unknown win condition `{other}`")))?;
            let k: u8 = k
                .trim()
                .parse()
                .map_err(|_| GrammarError(format!("bad line length `{k}`")))?;
            Ok(WinCondition::LineOfK { k })
        }
    }
}
