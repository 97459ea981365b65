//! Adversarial board-game tournament engine.
//!
//! Pluggable agents play five games — tic-tac-toe, gomoku, reversi, chess and
//! a negotiated free-style game — in seeded round-robin tournaments, and the
//! results are scored three ways: Elo ratings, performance loop graphs, and
//! positive sentiment scores computed from per-round self-reported emotions.
//!
//! The commonly used types are re-exported at the crate root; subsystems live
//! in their modules:
//!
//! * [`kernel`] — the game abstraction: states, moves, outcomes, board codec
//! * [`games`] — the four fixed-rule engines
//! * [`freestyle`] — rule schema, negotiation protocol, 5×5 interpreter
//! * [`agents`] — prompt/response protocol, scripted bots, external adapter
//! * [`rating`] — Elo expected scores and replayable tables
//! * [`plg`] — win/loss digraphs and loop analysis
//! * [`sentiment`] — PSS and emotion heatmaps
//! * [`tournament`] — scheduling, match execution, persistent records
//! * [`report`] — table and graph exports derived from records

pub mod agents;
pub mod freestyle;
pub mod games;
pub mod kernel;
pub mod plg;
pub mod rating;
pub mod report;
pub mod sentiment;
pub mod tournament;

pub use agents::{Agent, AgentKind, AgentSpec, ElicitLimits, Emotion};
pub use freestyle::{RuleSet, RuleSetError};
pub use games::ChessConfig;
pub use kernel::{
    decode_board, GameKind, GameState, KernelError, Move, Outcome, PlayerSide,
};
pub use plg::{LoopStats, PlgGraph, SeriesResult};
pub use rating::{EloParams, EloTable, MatchResult, PlayerId};
pub use sentiment::{EmotionSample, HeatmapGrid};
pub use tournament::{GameRecord, Schedule, TournamentConfig};
