//! Per-round prompt construction. The prompt is a pure function of the game
//! state and the viewing side: same position, byte-identical text.

use crate::freestyle::grammar;
use crate::kernel::{GameKind, GameState, Perspective, PlayerSide};

use super::Emotion;

fn rules_summary(kind: GameKind) -> &'static str {
    match kind {
        GameKind::TicTacToe => {
            "3x3 grid; mark empty cells; three of your marks in a row, column or diagonal wins; full board draws"
        }
        GameKind::Gomoku => {
            "15x15 grid; place stones on empty intersections; exactly five consecutive stones of your color wins (six or more in a row does not count); full board draws"
        }
        GameKind::Reversi => {
            "8x8 grid; each placement must flank opponent discs in a straight line, flipping them; play `pass` only when you have no placement; most discs when the board fills or both players pass wins"
        }
        GameKind::Chess => {
            "standard chess including castling, en passant, promotion, threefold repetition, the fifty-move rule and insufficient material; moves in from-square/to-square form such as e2e4 or e7e8q"
        }
        GameKind::FreeStyle => {
            "5x5 board played under the negotiated rules shown below; play `pass` only when you have no placement"
        }
    }
}

/// Deterministic gameplay prompt for the side to move: rules summary, board
/// as the viewer may see it, move history, legal moves, and the exact
/// response format including all five emotion options.
pub fn build_prompt(state: &GameState, viewer: PlayerSide) -> String {
    let mut out = String::new();
    let kind = state.kind();
    out.push_str(&format!("GAME: {}\n", kind.name()));
    out.push_str(&format!("RULES: {}\n", rules_summary(kind)));
    if let Some(rules) = state.rule_set() {
        out.push_str("NEGOTIATED RULES:\n");
        out.push_str(&grammar::print(rules));
    }
    out.push_str(&format!("ROUND: {}\n", state.round_index()));
    out.push_str(&format!(
        "YOU ARE: {}\n",
        match viewer {
            PlayerSide::First => "the first player",
            PlayerSide::Second => "the second player",
        }
    ));
    out.push_str("BOARD:\n");
    out.push_str(&state.encode_board_for(Perspective::Player(viewer)));
    if let Some(fen) = state.fen() {
        out.push_str(&format!("FEN: {fen}\n"));
    }
    let history: Vec<String> = state
        .history()
        .iter()
        .map(|mv| state.masked_token(mv, viewer))
        .collect();
    out.push_str(&format!(
        "HISTORY: {}\n",
        if history.is_empty() {
            "(none)".to_string()
        } else {
            history.join(" ")
        }
    ));
    let legal: Vec<String> = state
        .legal_moves()
        .map(|moves| moves.iter().map(|m| m.token().to_string()).collect())
        .unwrap_or_default();
    out.push_str(&format!("LEGAL MOVES: {}\n", legal.join(" ")));
    out.push_str("Respond with exactly three lines:\n");
    out.push_str("MOVE: <one legal move token>\n");
    let options: Vec<String> = Emotion::ALL
        .iter()
        .map(|e| format!("{}. {}", e.letter(), e.name()))
        .collect();
    out.push_str(&format!(
        "EMOTION: <one letter of: {}>\n",
        options.join(", ")
    ));
    out.push_str("ANALYSIS: <one short sentence>\n");
    out
}

/// Prompt for one negotiation exchange: either open with a proposal or answer
/// the proposal on the table with `ACCEPT` or a complete counter-proposal.
pub fn build_negotiation_prompt(on_table: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str("NEGOTIATION: free-style game on a 5x5 board\n");
    out.push_str("Agree on the rules before play. A rule set has these lines:\n");
    out.push_str("PIECES: marks | integers <min>..<max>\n");
    out.push_str("BUDGET: <limit> [shared]   (integers only, optional)\n");
    out.push_str("PLACEMENT: any | columns <c1,c2,...> | adjacent\n");
    out.push_str("EFFECT: none | flip-neighbors\n");
    out.push_str("VISIBILITY: open | hidden\n");
    out.push_str("TERMINATION: board-full | rounds <n> | budget-exhausted\n");
    out.push_str("WIN: majority | line <k> | row-points\n");
    match on_table {
        None => {
            out.push_str("No proposal is on the table. Reply with your full proposal.\n");
        }
        Some(text) => {
            out.push_str("Proposal on the table:\n");
            out.push_str(text);
            out.push_str("Reply with the single line ACCEPT, or a full counter-proposal.\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freestyle::RuleSet;

    #[test]
    fn same_state_gives_byte_identical_prompts() {
        let state = GameState::new(GameKind::Gomoku).unwrap();
        let a = build_prompt(&state, PlayerSide::First);
        let b = build_prompt(&state, PlayerSide::First);
        assert_eq!(a, b);
    }

    #[test]
    fn chess_prompt_carries_the_fen_line() {
        let state = GameState::new(GameKind::Chess).unwrap();
        let prompt = build_prompt(&state, PlayerSide::First);
        let fen = state.fen().unwrap();
        assert!(prompt.contains(&format!("FEN: {fen}")));
    }

    #[test]
    fn prompt_lists_all_five_emotion_options() {
        let state = GameState::new(GameKind::TicTacToe).unwrap();
        let prompt = build_prompt(&state, PlayerSide::First);
        for needle in ["A. Desperate", "B. Sad", "C. Peaceful", "D. Happy", "E. Excited"] {
            assert!(prompt.contains(needle), "missing {needle}");
        }
    }

    #[test]
    fn prompt_includes_history_and_legal_moves() {
        let state = GameState::new(GameKind::TicTacToe).unwrap();
        let state = state.apply(&state.parse_move("b2").unwrap()).unwrap();
        let prompt = build_prompt(&state, PlayerSide::Second);
        assert!(prompt.contains("HISTORY: b2"));
        assert!(prompt.contains("LEGAL MOVES: a1 a2 a3 b1 b3 c1 c2 c3"));
    }

    #[test]
    fn hidden_game_masks_opponent_history_tokens() {
        let state = GameState::new_freestyle(RuleSet::hidden_numbers()).unwrap();
        let state = state.apply(&state.parse_move("a1=7").unwrap()).unwrap();
        let second_view = build_prompt(&state, PlayerSide::Second);
        assert!(second_view.contains("HISTORY: a1=?"), "{second_view}");
        let first_view = build_prompt(&state, PlayerSide::First);
        assert!(first_view.contains("HISTORY: a1=7"), "{first_view}");
    }
}
