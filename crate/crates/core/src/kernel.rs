//! Game abstraction shared by every rule engine: sides, moves, outcomes,
//! the polymorphic [`GameState`] value, and the board text codec.
//!
//! States are immutable values; `apply` returns a fresh state. All operations
//! are pure, so states can be used from any number of threads without
//! synchronization.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::freestyle::{EngineBoard, RuleSet};
use crate::games::{chess, gomoku, reversi, tictactoe};

/// One of the two players. The first side always moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlayerSide {
    First,
    Second,
}

impl PlayerSide {
    #[inline]
    pub fn opponent(self) -> PlayerSide {
        match self {
            PlayerSide::First => PlayerSide::Second,
            PlayerSide::Second => PlayerSide::First,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            PlayerSide::First => 0,
            PlayerSide::Second => 1,
        }
    }
}

/// Which rule engine a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    TicTacToe,
    Gomoku,
    Reversi,
    Chess,
    FreeStyle,
}

impl GameKind {
    pub const ALL: [GameKind; 5] = [
        GameKind::TicTacToe,
        GameKind::Gomoku,
        GameKind::Reversi,
        GameKind::Chess,
        GameKind::FreeStyle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameKind::TicTacToe => "tictactoe",
            GameKind::Gomoku => "gomoku",
            GameKind::Reversi => "reversi",
            GameKind::Chess => "chess",
            GameKind::FreeStyle => "freestyle",
        }
    }

    pub fn parse(name: &str) -> Option<GameKind> {
        match name.trim().to_ascii_lowercase().as_str() {
            "tictactoe" | "tic-tac-toe" => Some(GameKind::TicTacToe),
            "gomoku" => Some(GameKind::Gomoku),
            "reversi" | "othello" => Some(GameKind::Reversi),
            "chess" => Some(GameKind::Chess),
            "freestyle" | "free-style" => Some(GameKind::FreeStyle),
            _ => None,
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of a game, or `Ongoing` while it is still running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    FirstWins,
    SecondWins,
    Draw,
    Ongoing,
}

impl Outcome {
    #[inline]
    pub fn is_terminal(self) -> bool {
        self != Outcome::Ongoing
    }

    pub fn winner(self) -> Option<PlayerSide> {
        match self {
            Outcome::FirstWins => Some(PlayerSide::First),
            Outcome::SecondWins => Some(PlayerSide::Second),
            _ => None,
        }
    }

    pub fn win_for(side: PlayerSide) -> Outcome {
        match side {
            PlayerSide::First => Outcome::FirstWins,
            PlayerSide::Second => Outcome::SecondWins,
        }
    }
}

/// Maximum encoded move length (`a1=15` and `e7e8q` both fit).
const TOKEN_CAP: usize = 6;

/// A move, held as its canonical text token plus the side that played it.
///
/// Moves cannot be constructed from arbitrary text by callers; they come out
/// of [`GameState::legal_moves`] or [`GameState::parse_move`], so a `Move`
/// always round-trips bit-exactly through its token.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    actor: PlayerSide,
    len: u8,
    token: [u8; TOKEN_CAP],
}

impl Move {
    pub(crate) fn new(actor: PlayerSide, token: &str) -> Move {
        debug_assert!(token.len() <= TOKEN_CAP && token.is_ascii());
        let mut buf = [0u8; TOKEN_CAP];
        buf[..token.len()].copy_from_slice(token.as_bytes());
        Move {
            actor,
            len: token.len() as u8,
            token: buf,
        }
    }

    pub fn actor(&self) -> PlayerSide {
        self.actor
    }

    /// Canonical text encoding of the move.
    pub fn token(&self) -> &str {
        std::str::from_utf8(&self.token[..self.len as usize]).expect("tokens are ascii")
    }

    pub fn is_pass(&self) -> bool {
        self.token() == "pass"
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Move({:?}, {})", self.actor, self.token())
    }
}

/// Errors raised by the kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("game is over; no moves available")]
    TerminalState,
    #[error("illegal move `{token}`: violates rule `{rule}`")]
    IllegalMove { token: String, rule: String },
    #[error("cannot parse move token `{token}`: {reason}")]
    BadToken { token: String, reason: String },
    #[error("cannot decode board text: {0}")]
    BadBoardText(String),
    #[error("free-style states need a rule set; use `GameState::new_freestyle`")]
    MissingRuleSet,
    #[error("invalid rule set: {0}")]
    InvalidRuleSet(String),
    #[error("invalid FEN `{fen}`: {reason}")]
    BadFen { fen: String, reason: String },
}

impl KernelError {
    pub(crate) fn illegal(token: &str, rule: &str) -> KernelError {
        KernelError::IllegalMove {
            token: token.to_string(),
            rule: rule.to_string(),
        }
    }

    pub(crate) fn bad_token(token: &str, reason: &str) -> KernelError {
        KernelError::BadToken {
            token: token.to_string(),
            reason: reason.to_string(),
        }
    }
}

/// Interface every concrete rule engine implements over its own board type.
///
/// `apply_in_place` must fully validate the move and report the violated rule
/// on rejection; the kernel only clones the board and keeps the bookkeeping
/// (side to move, round counter, history) uniform across games.
pub(crate) trait BoardOps: Clone {
    /// All legal moves for `to_move`, in any order; the kernel sorts them.
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move>;
    fn apply_in_place(&mut self, mv: &Move) -> Result<(), KernelError>;
    fn status(&self, to_move: PlayerSide) -> Outcome;
    /// Board rows only, top rank first; the kernel appends the side-to-move line.
    fn encode_rows(&self, perspective: Perspective) -> String;
    /// Validate token syntax and board bounds, producing a canonical `Move`.
    fn parse_token(&self, actor: PlayerSide, token: &str) -> Result<Move, KernelError>;
    /// Signed positional balance from `side`'s point of view (line potential,
    /// discs, material — whatever the game's search evaluates).
    fn heuristic(&self, side: PlayerSide) -> i32;
    /// Plain material/disc/score difference, with no positional terms.
    fn material(&self, side: PlayerSide) -> i32;
}

/// Who a board rendering is for. Only hidden-information free-style games
/// distinguish viewers; everywhere else all perspectives are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perspective {
    /// Full contents, used for records and replay.
    Omniscient,
    /// What the given side is allowed to see.
    Player(PlayerSide),
}

#[derive(Debug, Clone)]
pub(crate) enum Board {
    TicTacToe(tictactoe::Board),
    Gomoku(gomoku::Board),
    Reversi(reversi::Board),
    Chess(chess::Board),
    FreeStyle(EngineBoard),
}

macro_rules! dispatch {
    ($board:expr, $inner:ident => $body:expr) => {
        match $board {
            Board::TicTacToe($inner) => $body,
            Board::Gomoku($inner) => $body,
            Board::Reversi($inner) => $body,
            Board::Chess($inner) => $body,
            Board::FreeStyle($inner) => $body,
        }
    };
}

/// A position in one of the five games: board contents, side to move, and the
/// full move history that produced it.
#[derive(Debug, Clone)]
pub struct GameState {
    kind: GameKind,
    board: Board,
    to_move: PlayerSide,
    round_index: u32,
    history: Vec<Move>,
}

impl GameState {
    /// Initial position of a fixed-rule game.
    pub fn new(kind: GameKind) -> Result<GameState, KernelError> {
        let board = match kind {
            GameKind::TicTacToe => Board::TicTacToe(tictactoe::Board::new()),
            GameKind::Gomoku => Board::Gomoku(gomoku::Board::new()),
            GameKind::Reversi => Board::Reversi(reversi::Board::new()),
            GameKind::Chess => Board::Chess(chess::Board::new()),
            GameKind::FreeStyle => return Err(KernelError::MissingRuleSet),
        };
        Ok(GameState::from_board(kind, board))
    }

    /// Initial position of a free-style game played under `rules`.
    pub fn new_freestyle(rules: RuleSet) -> Result<GameState, KernelError> {
        let board = EngineBoard::new(rules).map_err(|e| KernelError::InvalidRuleSet(e.to_string()))?;
        Ok(GameState::from_board(GameKind::FreeStyle, Board::FreeStyle(board)))
    }

    /// Chess position imported from FEN. History is relative to this position.
    pub fn from_fen(fen: &str) -> Result<GameState, KernelError> {
        Self::wrap_chess(chess::Board::from_fen(fen)?)
    }

    /// FEN import with non-default draw rules.
    pub fn from_fen_with(fen: &str, config: chess::ChessConfig) -> Result<GameState, KernelError> {
        Self::wrap_chess(chess::Board::from_fen_with(fen, config)?)
    }

    /// Chess start position with non-default draw rules.
    pub fn new_chess_with(config: chess::ChessConfig) -> GameState {
        Self::wrap_chess(chess::Board::with_config(config)).expect("start position is valid")
    }

    fn wrap_chess(board: chess::Board) -> Result<GameState, KernelError> {
        let to_move = board.side_to_move();
        Ok(GameState {
            kind: GameKind::Chess,
            board: Board::Chess(board),
            to_move,
            round_index: 1,
            history: Vec::new(),
        })
    }

    fn from_board(kind: GameKind, board: Board) -> GameState {
        GameState {
            kind,
            board,
            to_move: PlayerSide::First,
            round_index: 1,
            history: Vec::new(),
        }
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn to_move(&self) -> PlayerSide {
        self.to_move
    }

    /// 1-based round counter; always `1 + history.len()`.
    pub fn round_index(&self) -> u32 {
        self.round_index
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    /// The negotiated rule set, for free-style states.
    pub fn rule_set(&self) -> Option<&RuleSet> {
        match &self.board {
            Board::FreeStyle(b) => Some(b.rules()),
            _ => None,
        }
    }

    pub(crate) fn freestyle_board(&self) -> Option<&EngineBoard> {
        match &self.board {
            Board::FreeStyle(b) => Some(b),
            _ => None,
        }
    }

    /// Probe value with the turn handed to the opponent; used by bot policies
    /// to ask "what could they do from here". Never stored or recorded.
    pub(crate) fn mirror_for_opponent(&self) -> GameState {
        let mut probe = self.clone();
        probe.to_move = self.to_move.opponent();
        probe
    }

    /// Current position as FEN, for chess states.
    pub fn fen(&self) -> Option<String> {
        match &self.board {
            Board::Chess(b) => Some(b.to_fen()),
            _ => None,
        }
    }

    /// All legal moves for the side to move, sorted by encoded token.
    pub fn legal_moves(&self) -> Result<Vec<Move>, KernelError> {
        if self.status().is_terminal() {
            return Err(KernelError::TerminalState);
        }
        let mut moves = dispatch!(&self.board, b => b.legal_moves(self.to_move));
        moves.sort_by(|a, b| a.token().cmp(b.token()));
        Ok(moves)
    }

    /// Apply a legal move, producing the successor state.
    pub fn apply(&self, mv: &Move) -> Result<GameState, KernelError> {
        if self.status().is_terminal() {
            return Err(KernelError::TerminalState);
        }
        if mv.actor() != self.to_move {
            return Err(KernelError::illegal(mv.token(), "not-your-turn"));
        }
        let mut next = self.clone();
        dispatch!(&mut next.board, b => b.apply_in_place(mv))?;
        next.to_move = self.to_move.opponent();
        next.round_index += 1;
        next.history.push(*mv);
        Ok(next)
    }

    /// Win/draw detection; `Ongoing` for non-terminal positions.
    pub fn status(&self) -> Outcome {
        dispatch!(&self.board, b => b.status(self.to_move))
    }

    /// Canonical text rendering: one row per line, top rank first, then a
    /// side-to-move line. `decode_board` recovers the grid and side from it.
    pub fn encode_board(&self) -> String {
        self.encode_board_for(Perspective::Omniscient)
    }

    /// Rendering as seen by one player; hidden-information games mask cells
    /// the viewer may not see until the game is over.
    pub fn encode_board_for(&self, perspective: Perspective) -> String {
        let rows = dispatch!(&self.board, b => b.encode_rows(perspective));
        let side = match (self.kind, self.to_move) {
            (GameKind::TicTacToe, PlayerSide::First) => 'x',
            (GameKind::TicTacToe, PlayerSide::Second) => 'o',
            (GameKind::Chess, PlayerSide::First) => 'w',
            (GameKind::Chess, PlayerSide::Second) => 'b',
            (_, PlayerSide::First) => 'b',
            (_, PlayerSide::Second) => 'w',
        };
        format!("{rows}{side} to move\n")
    }

    /// Parse a move token for the side to move, validating syntax and bounds.
    /// Legality beyond that is checked by [`GameState::apply`].
    pub fn parse_move(&self, token: &str) -> Result<Move, KernelError> {
        let token = token.trim();
        if token.is_empty() || token.len() > TOKEN_CAP || !token.is_ascii() {
            return Err(KernelError::bad_token(token, "empty, non-ascii or too long"));
        }
        dispatch!(&self.board, b => b.parse_token(self.to_move, token))
    }

    /// Free-style move tokens as shown to `viewer`; hidden placements by the
    /// other player render as `<cell>=?` until the game ends.
    pub fn masked_token(&self, mv: &Move, viewer: PlayerSide) -> String {
        match &self.board {
            Board::FreeStyle(b) => b.masked_token(mv, viewer, self.status().is_terminal()),
            _ => mv.token().to_string(),
        }
    }

    /// Positional balance from `side`'s point of view; what the search bot
    /// evaluates at its depth limit.
    pub fn heuristic_score(&self, side: PlayerSide) -> i32 {
        dispatch!(&self.board, b => b.heuristic(side))
    }

    /// Raw material/disc/score difference from `side`'s point of view; the
    /// greedy bot's 1-ply tiebreaker. Constant for mark-placement games.
    pub fn material_balance(&self, side: PlayerSide) -> i32 {
        dispatch!(&self.board, b => b.material(side))
    }
}

/// Grid contents and side-to-move recovered from a board text encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedBoard {
    pub kind: GameKind,
    /// Rows exactly as encoded, top rank first.
    pub rows: Vec<String>,
    pub to_move: PlayerSide,
}

/// Decode the canonical board text produced by [`GameState::encode_board`].
pub fn decode_board(kind: GameKind, text: &str) -> Result<DecodedBoard, KernelError> {
    let mut rows: Vec<String> = text.lines().map(|l| l.to_string()).collect();
    let side_line = rows
        .pop()
        .ok_or_else(|| KernelError::BadBoardText("empty text".into()))?;
    let side_char = side_line
        .strip_suffix(" to move")
        .and_then(|s| s.chars().next())
        .ok_or_else(|| KernelError::BadBoardText("missing side-to-move line".into()))?;
    let to_move = match (kind, side_char) {
        (GameKind::TicTacToe, 'x') => PlayerSide::First,
        (GameKind::TicTacToe, 'o') => PlayerSide::Second,
        (GameKind::Chess, 'w') => PlayerSide::First,
        (GameKind::Chess, 'b') => PlayerSide::Second,
        (GameKind::Gomoku | GameKind::Reversi | GameKind::FreeStyle, 'b') => PlayerSide::First,
        (GameKind::Gomoku | GameKind::Reversi | GameKind::FreeStyle, 'w') => PlayerSide::Second,
        _ => {
            return Err(KernelError::BadBoardText(format!(
                "side `{side_char}` is not valid for {kind}"
            )))
        }
    };
    let expected_rows = match kind {
        GameKind::TicTacToe => 3,
        GameKind::Gomoku => 15,
        GameKind::Reversi | GameKind::Chess => 8,
        GameKind::FreeStyle => 5,
    };
    if rows.len() != expected_rows {
        return Err(KernelError::BadBoardText(format!(
            "expected {expected_rows} rows, found {}",
            rows.len()
        )));
    }
    Ok(DecodedBoard { kind, rows, to_move })
}

/// Re-encode a decoded board; `decode -> encode` is a fixpoint of the codec.
pub fn encode_decoded(decoded: &DecodedBoard) -> String {
    let side = match (decoded.kind, decoded.to_move) {
        (GameKind::TicTacToe, PlayerSide::First) => 'x',
        (GameKind::TicTacToe, PlayerSide::Second) => 'o',
        (GameKind::Chess, PlayerSide::First) => 'w',
        (GameKind::Chess, PlayerSide::Second) => 'b',
        (_, PlayerSide::First) => 'b',
        (_, PlayerSide::Second) => 'w',
    };
    let mut out = String::new();
    for row in &decoded.rows {
        out.push_str(row);
        out.push('\n');
    }
    out.push_str(&format!("{side} to move\n"));
    out
}

/// Shared coordinate grammar: files `a`..`o` left to right, ranks `1`..`15`
/// bottom to top. Each game uses the top-left `size × size` corner.
pub(crate) fn parse_cell(token: &str, size: usize) -> Result<(usize, usize), String> {
    let bytes = token.as_bytes();
    if bytes.len() < 2 {
        return Err("cell needs a file letter and a rank number".into());
    }
    let file = bytes[0].wrapping_sub(b'a') as usize;
    if file >= size {
        return Err(format!("file `{}` out of range", bytes[0] as char));
    }
    let rank: usize = token[1..]
        .parse()
        .map_err(|_| format!("rank `{}` is not a number", &token[1..]))?;
    if rank < 1 || rank > size {
        return Err(format!("rank {rank} out of range"));
    }
    Ok((file, rank - 1))
}

pub(crate) fn cell_token(file: usize, rank: usize) -> String {
    format!("{}{}", (b'a' + file as u8) as char, rank + 1)
}
