//! Test-only oracles and helpers shared by the integration suites. Each
//! oracle is deliberately independent of the code path it validates.

// Each suite pulls in only the oracles it needs; the rest look dead to that
// target's lint pass.
#![allow(dead_code)]

pub mod chess_oracle;
pub mod loop_oracle;
pub mod ttt_solver;
