//! Bot policies against independent oracles: the full-depth search bot must
//! stay inside the exhaustive solver's optimal move set, and reversi flips
//! must match a flanking re-scan that reads only the board text.

mod common;

use arena_core::agents::bots::{minimax_policy, random_policy};
use arena_core::{GameKind, GameState, PlayerSide};
use common::ttt_solver;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Engine state → solver cells. Token `<file><rank>` maps to `rank*3+file`.
fn solver_cells(state: &GameState) -> ttt_solver::Cells {
    let mut cells = [0u8; 9];
    for mv in state.history() {
        let bytes = mv.token().as_bytes();
        let file = (bytes[0] - b'a') as usize;
        let rank = (bytes[1] - b'1') as usize;
        cells[rank * 3 + file] = match mv.actor() {
            PlayerSide::First => 1,
            PlayerSide::Second => 2,
        };
    }
    cells
}

fn token_index(token: &str) -> usize {
    let bytes = token.as_bytes();
    ((bytes[1] - b'1') as usize) * 3 + (bytes[0] - b'a') as usize
}

#[test]
fn full_depth_search_always_picks_a_solver_optimal_move() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0B07);
    let mut checked = 0;
    for _ in 0..200 {
        let mut state = GameState::new(GameKind::TicTacToe).unwrap();
        // wander into a random mid-game position
        while !state.status().is_terminal() {
            let cells = solver_cells(&state);
            let to_move = if state.to_move() == PlayerSide::First { 1 } else { 2 };
            let optimal = ttt_solver::best_moves(&cells, to_move);
            let chosen = minimax_policy(&state, None);
            assert!(
                optimal.contains(&token_index(chosen.token())),
                "{} not among optimal {:?} at\n{}",
                chosen,
                optimal,
                state.encode_board()
            );
            checked += 1;
            // step with a random move to diversify positions
            let mv = random_policy(&state, &mut rng);
            state = state.apply(&mv).unwrap();
        }
    }
    assert!(checked > 500, "only {checked} positions checked");
}

#[test]
fn winning_fork_followup_matches_the_solver() {
    // x on a1 and b2 versus o on a2 and b1: the solver says c3 wins now
    let mut state = GameState::new(GameKind::TicTacToe).unwrap();
    for tok in ["a1", "a2", "b2", "b1"] {
        let mv = state.parse_move(tok).unwrap();
        state = state.apply(&mv).unwrap();
    }
    let cells = solver_cells(&state);
    assert_eq!(ttt_solver::solve(&cells, 1), 1, "position is won");
    let optimal = ttt_solver::best_moves(&cells, 1);
    let chosen = minimax_policy(&state, None);
    assert!(optimal.contains(&token_index(chosen.token())));
    let after = state.apply(&chosen).unwrap();
    assert_eq!(after.status(), arena_core::Outcome::FirstWins);
}

/// Flanking oracle: recompute the post-placement reversi board from the
/// previous board's text alone and compare with the engine.
mod reversi_flanking {
    use super::*;

    fn parse_grid(text: &str) -> [[char; 8]; 8] {
        let mut grid = [['.'; 8]; 8];
        // rows print top rank first
        for (i, line) in text.lines().take(8).enumerate() {
            for (f, c) in line.chars().enumerate() {
                grid[7 - i][f] = c;
            }
        }
        grid
    }

    fn grid_to_rows(grid: &[[char; 8]; 8]) -> Vec<String> {
        (0..8)
            .rev()
            .map(|r| (0..8).map(|f| grid[r][f]).collect())
            .collect()
    }

    /// Scan all eight compass lines from the placement and flip every
    /// maximal run of opposing discs closed off by an own disc.
    fn apply_by_scan(grid: &mut [[char; 8]; 8], file: usize, rank: usize, own: char) {
        let foe = if own == 'b' { 'w' } else { 'b' };
        grid[rank][file] = own;
        for (df, dr) in [
            (-1i32, -1i32),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ] {
            let mut run = Vec::new();
            let (mut f, mut r) = (file as i32 + df, rank as i32 + dr);
            while (0..8).contains(&f) && (0..8).contains(&r) {
                let c = grid[r as usize][f as usize];
                if c == foe {
                    run.push((f as usize, r as usize));
                } else if c == own {
                    for (ff, rr) in &run {
                        grid[*rr][*ff] = own;
                    }
                    break;
                } else {
                    break;
                }
                f += df;
                r += dr;
            }
        }
    }

    #[test]
    fn every_placement_flips_exactly_what_the_scan_says() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF1A4);
        for _ in 0..50 {
            let mut state = GameState::new(GameKind::Reversi).unwrap();
            while !state.status().is_terminal() {
                let before_text = state.encode_board();
                let mv = random_policy(&state, &mut rng);
                let own = match state.to_move() {
                    PlayerSide::First => 'b',
                    PlayerSide::Second => 'w',
                };
                state = state.apply(&mv).unwrap();
                if mv.is_pass() {
                    continue;
                }
                let mut grid = parse_grid(&before_text);
                let bytes = mv.token().as_bytes();
                let file = (bytes[0] - b'a') as usize;
                let rank = (bytes[1] - b'1') as usize;
                // disc conservation: exactly one new disc per placement
                let before_discs: usize = before_text
                    .lines()
                    .take(8)
                    .map(|l| l.chars().filter(|c| *c != '.').count())
                    .sum();
                apply_by_scan(&mut grid, file, rank, own);
                let engine_rows: Vec<String> =
                    state.encode_board().lines().take(8).map(String::from).collect();
                assert_eq!(grid_to_rows(&grid), engine_rows, "after {}", mv);
                let after_discs: usize = engine_rows
                    .iter()
                    .map(|l| l.chars().filter(|c| *c != '.').count())
                    .sum();
                assert_eq!(after_discs, before_discs + 1);
            }
        }
    }

    #[test]
    fn all_four_openings_flip_exactly_one_disc() {
        let state = GameState::new(GameKind::Reversi).unwrap();
        let before = parse_grid(&state.encode_board());
        for mv in state.legal_moves().unwrap() {
            let mut grid = before;
            let bytes = mv.token().as_bytes();
            apply_by_scan(
                &mut grid,
                (bytes[0] - b'a') as usize,
                (bytes[1] - b'1') as usize,
                'b',
            );
            let changed = (0..8)
                .flat_map(|r| (0..8).map(move |f| (f, r)))
                .filter(|&(f, r)| grid[r][f] != before[r][f])
                .count();
            // the placed disc plus exactly one flip
            assert_eq!(changed, 2, "{}", mv);
            let engine_after = state.apply(&mv).unwrap();
            assert_eq!(
                grid_to_rows(&grid),
                engine_after
                    .encode_board()
                    .lines()
                    .take(8)
                    .map(String::from)
                    .collect::<Vec<_>>()
            );
        }
    }
}
