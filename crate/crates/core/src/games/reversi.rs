//! 8×8 reversi. A placement must flank at least one opposing disc; a player
//! with no placement must play the explicit `pass` token. The game ends when
//! the board is full or both players pass in succession; majority of discs
//! wins, equal counts draw.

use crate::kernel::{cell_token, parse_cell, BoardOps, KernelError, Move, Outcome, Perspective, PlayerSide};

const SIZE: usize = 8;

const DIRECTIONS: [(i32, i32); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

#[derive(Debug, Clone)]
pub(crate) struct Board {
    cells: [Option<PlayerSide>; SIZE * SIZE],
    consecutive_passes: u8,
}

impl Board {
    pub(crate) fn new() -> Board {
        let mut cells = [None; SIZE * SIZE];
        // Center diagonal setup: d5/e4 white, d4/e5 black; black (First) opens.
        cells[idx(3, 4)] = Some(PlayerSide::Second); // d5
        cells[idx(4, 3)] = Some(PlayerSide::Second); // e4
        cells[idx(3, 3)] = Some(PlayerSide::First); // d4
        cells[idx(4, 4)] = Some(PlayerSide::First); // e5
        Board {
            cells,
            consecutive_passes: 0,
        }
    }

    #[inline]
    fn at(&self, file: i32, rank: i32) -> Option<Option<PlayerSide>> {
        if (0..SIZE as i32).contains(&file) && (0..SIZE as i32).contains(&rank) {
            Some(self.cells[idx(file as usize, rank as usize)])
        } else {
            None
        }
    }

    /// Discs flipped by `side` placing at (file, rank); empty if not a flank.
    fn flips(&self, side: PlayerSide, file: usize, rank: usize) -> Vec<usize> {
        let mut flipped = Vec::new();
        if self.cells[idx(file, rank)].is_some() {
            return flipped;
        }
        for (df, dr) in DIRECTIONS {
            let mut line = Vec::new();
            let (mut f, mut r) = (file as i32 + df, rank as i32 + dr);
            loop {
                match self.at(f, r) {
                    Some(Some(owner)) if owner == side.opponent() => {
                        line.push(idx(f as usize, r as usize));
                        f += df;
                        r += dr;
                    }
                    Some(Some(_)) => {
                        flipped.extend_from_slice(&line);
                        break;
                    }
                    _ => break,
                }
            }
        }
        flipped
    }

    fn placements(&self, side: PlayerSide) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for rank in 0..SIZE {
            for file in 0..SIZE {
                if !self.flips(side, file, rank).is_empty() {
                    out.push((file, rank));
                }
            }
        }
        out
    }

    fn counts(&self) -> (u32, u32) {
        let mut first = 0;
        let mut second = 0;
        for cell in &self.cells {
            match cell {
                Some(PlayerSide::First) => first += 1,
                Some(PlayerSide::Second) => second += 1,
                None => {}
            }
        }
        (first, second)
    }

    fn full(&self) -> bool {
        self.cells.iter().all(|c| c.is_some())
    }
}

#[inline]
fn idx(file: usize, rank: usize) -> usize {
    rank * SIZE + file
}

impl BoardOps for Board {
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move> {
        let placements = self.placements(to_move);
        if placements.is_empty() {
            vec![Move::new(to_move, "pass")]
        } else {
            placements
                .into_iter()
                .map(|(f, r)| Move::new(to_move, &cell_token(f, r)))
                .collect()
        }
    }

    fn apply_in_place(&mut self, mv: &Move) -> Result<(), KernelError> {
        if mv.is_pass() {
            if !self.placements(mv.actor()).is_empty() {
                return Err(KernelError::illegal(mv.token(), "must-place-when-able"));
            }
            self.consecutive_passes += 1;
            return Ok(());
        }
        let (file, rank) =
            parse_cell(mv.token(), SIZE).map_err(|r| KernelError::bad_token(mv.token(), &r))?;
        if self.cells[idx(file, rank)].is_some() {
            return Err(KernelError::illegal(mv.token(), "cell-occupied"));
        }
        let flipped = self.flips(mv.actor(), file, rank);
        if flipped.is_empty() {
            return Err(KernelError::illegal(mv.token(), "must-flank-opponent"));
        }
        self.cells[idx(file, rank)] = Some(mv.actor());
        for i in flipped {
            self.cells[i] = Some(mv.actor());
        }
        self.consecutive_passes = 0;
        Ok(())
    }

    fn status(&self, _to_move: PlayerSide) -> Outcome {
        if !self.full() && self.consecutive_passes < 2 {
            return Outcome::Ongoing;
        }
        let (first, second) = self.counts();
        match first.cmp(&second) {
            std::cmp::Ordering::Greater => Outcome::FirstWins,
            std::cmp::Ordering::Less => Outcome::SecondWins,
            std::cmp::Ordering::Equal => Outcome::Draw,
        }
    }

    fn encode_rows(&self, _perspective: Perspective) -> String {
        let mut out = String::with_capacity(SIZE * (SIZE + 1));
        for rank in (0..SIZE).rev() {
            for file in 0..SIZE {
                out.push(match self.cells[idx(file, rank)] {
                    Some(PlayerSide::First) => 'b',
                    Some(PlayerSide::Second) => 'w',
                    None => '.',
                });
            }
            out.push('\n');
        }
        out
    }

    fn parse_token(&self, actor: PlayerSide, token: &str) -> Result<Move, KernelError> {
        if token == "pass" {
            return Ok(Move::new(actor, "pass"));
        }
        let (file, rank) = parse_cell(token, SIZE).map_err(|r| KernelError::bad_token(token, &r))?;
        Ok(Move::new(actor, &cell_token(file, rank)))
    }

    fn heuristic(&self, side: PlayerSide) -> i32 {
        self.material(side)
    }

    fn material(&self, side: PlayerSide) -> i32 {
        let (first, second) = self.counts();
        let diff = first as i32 - second as i32;
        match side {
            PlayerSide::First => diff,
            PlayerSide::Second => -diff,
        }
    }
}
