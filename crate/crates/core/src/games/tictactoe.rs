//! 3×3 tic-tac-toe. Win = three in a row, column or diagonal; draw = full board.

use crate::kernel::{cell_token, parse_cell, BoardOps, KernelError, Move, Outcome, Perspective, PlayerSide};

const SIZE: usize = 3;

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

#[derive(Debug, Clone)]
pub(crate) struct Board {
    // index = rank * 3 + file
    cells: [Option<PlayerSide>; 9],
}

impl Board {
    pub(crate) fn new() -> Board {
        Board { cells: [None; 9] }
    }

    fn winner(&self) -> Option<PlayerSide> {
        for line in LINES {
            if let Some(side) = self.cells[line[0]] {
                if line.iter().all(|&i| self.cells[i] == Some(side)) {
                    return Some(side);
                }
            }
        }
        None
    }

    fn full(&self) -> bool {
        self.cells.iter().all(|c| c.is_some())
    }
}

impl BoardOps for Board {
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move> {
        let mut moves = Vec::new();
        for rank in 0..SIZE {
            for file in 0..SIZE {
                if self.cells[rank * SIZE + file].is_none() {
                    moves.push(Move::new(to_move, &cell_token(file, rank)));
                }
            }
        }
        moves
    }

    fn apply_in_place(&mut self, mv: &Move) -> Result<(), KernelError> {
        let (file, rank) =
            parse_cell(mv.token(), SIZE).map_err(|r| KernelError::bad_token(mv.token(), &r))?;
        let idx = rank * SIZE + file;
        if self.cells[idx].is_some() {
            return Err(KernelError::illegal(mv.token(), "cell-occupied"));
        }
        self.cells[idx] = Some(mv.actor());
        Ok(())
    }

    fn status(&self, _to_move: PlayerSide) -> Outcome {
        match self.winner() {
            Some(PlayerSide::First) => Outcome::FirstWins,
            Some(PlayerSide::Second) => Outcome::SecondWins,
            None if self.full() => Outcome::Draw,
            None => Outcome::Ongoing,
        }
    }

    fn encode_rows(&self, _perspective: Perspective) -> String {
        let mut out = String::with_capacity(12);
        for rank in (0..SIZE).rev() {
            for file in 0..SIZE {
                out.push(match self.cells[rank * SIZE + file] {
                    Some(PlayerSide::First) => 'x',
                    Some(PlayerSide::Second) => 'o',
                    None => '.',
                });
            }
            out.push('\n');
        }
        out
    }

    fn parse_token(&self, actor: PlayerSide, token: &str) -> Result<Move, KernelError> {
        let (file, rank) = parse_cell(token, SIZE).map_err(|r| KernelError::bad_token(token, &r))?;
        Ok(Move::new(actor, &cell_token(file, rank)))
    }

    fn heuristic(&self, side: PlayerSide) -> i32 {
        // Count lines still open for each side, weighting by stones already placed.
        let mut score = 0i32;
        for line in LINES {
            let mine = line.iter().filter(|&&i| self.cells[i] == Some(side)).count() as i32;
            let theirs = line
                .iter()
                .filter(|&&i| self.cells[i] == Some(side.opponent()))
                .count() as i32;
            if theirs == 0 {
                score += mine * mine;
            }
            if mine == 0 {
                score -= theirs * theirs;
            }
        }
        score
    }

    fn material(&self, side: PlayerSide) -> i32 {
        let mine = self.cells.iter().filter(|c| **c == Some(side)).count() as i32;
        let theirs = self
            .cells
            .iter()
            .filter(|c| **c == Some(side.opponent()))
            .count() as i32;
        mine - theirs
    }
}
