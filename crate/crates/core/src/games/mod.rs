//! Fixed-rule engines: tic-tac-toe, gomoku, reversi, and chess.

pub(crate) mod chess;
pub(crate) mod gomoku;
pub(crate) mod reversi;
pub(crate) mod tictactoe;

pub use chess::ChessConfig;
