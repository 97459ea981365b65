//! Exhaustive tic-tac-toe solver, independent of the engine: raw 9-cell
//! array, full-tree minimax, no pruning shortcuts beyond terminal detection.

/// 0 = empty, 1 = first player, 2 = second player.
pub type Cells = [u8; 9];

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

pub fn winner(cells: &Cells) -> u8 {
    for line in LINES {
        let v = cells[line[0]];
        if v != 0 && line.iter().all(|&i| cells[i] == v) {
            return v;
        }
    }
    0
}

/// Game value for the player to move: +1 win, 0 draw, -1 loss.
pub fn solve(cells: &Cells, to_move: u8) -> i8 {
    let w = winner(cells);
    if w != 0 {
        return if w == to_move { 1 } else { -1 };
    }
    if cells.iter().all(|&c| c != 0) {
        return 0;
    }
    let mut best = -2i8;
    for i in 0..9 {
        if cells[i] == 0 {
            let mut next = *cells;
            next[i] = to_move;
            let v = -solve(&next, 3 - to_move);
            if v > best {
                best = v;
            }
        }
    }
    best
}

/// Cell indices of the moves achieving the game value (the perfect moves).
pub fn best_moves(cells: &Cells, to_move: u8) -> Vec<usize> {
    let target = solve(cells, to_move);
    let mut out = Vec::new();
    for i in 0..9 {
        if cells[i] == 0 {
            let mut next = *cells;
            next[i] = to_move;
            if -solve(&next, 3 - to_move) == target {
                out.push(i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_board_is_a_draw_under_perfect_play() {
        assert_eq!(solve(&[0; 9], 1), 0);
    }

    #[test]
    fn immediate_win_is_found() {
        // first player holds cells 0 and 1; cell 2 completes the row
        let cells = [1, 1, 0, 2, 2, 0, 0, 0, 0];
        assert_eq!(solve(&cells, 1), 1);
        assert_eq!(best_moves(&cells, 1), vec![2]);
    }

    #[test]
    fn double_threat_is_losing_for_the_defender() {
        // first player holds 0, 2 and the center: both diagonals are open
        // threats (cells 8 and 6); the defender can only block one.
        let cells = [1, 2, 1, 0, 1, 0, 0, 2, 0];
        assert_eq!(solve(&cells, 2), -1);
    }
}
