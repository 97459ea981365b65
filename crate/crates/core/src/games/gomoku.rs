//! 15×15 gomoku with the exact-five rule: a row of precisely five stones wins,
//! overlines of six or more do not count. Free opening, no forbidden moves.
//! Draw when all 225 intersections are filled.

use crate::kernel::{cell_token, parse_cell, BoardOps, KernelError, Move, Outcome, Perspective, PlayerSide};

pub(crate) const SIZE: usize = 15;

const DIRECTIONS: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

#[derive(Debug, Clone)]
pub(crate) struct Board {
    cells: [Option<PlayerSide>; SIZE * SIZE],
    stones: u16,
}

impl Board {
    pub(crate) fn new() -> Board {
        Board {
            cells: [None; SIZE * SIZE],
            stones: 0,
        }
    }

    #[inline]
    fn at(&self, file: i32, rank: i32) -> Option<PlayerSide> {
        if (0..SIZE as i32).contains(&file) && (0..SIZE as i32).contains(&rank) {
            self.cells[rank as usize * SIZE + file as usize]
        } else {
            None
        }
    }

    /// Length of the maximal same-color run through (file, rank) along (df, dr).
    fn run_through(&self, side: PlayerSide, file: i32, rank: i32, df: i32, dr: i32) -> u32 {
        let mut len = 1;
        let (mut f, mut r) = (file + df, rank + dr);
        while self.at(f, r) == Some(side) {
            len += 1;
            f += df;
            r += dr;
        }
        let (mut f, mut r) = (file - df, rank - dr);
        while self.at(f, r) == Some(side) {
            len += 1;
            f -= df;
            r -= dr;
        }
        len
    }

    /// Exact-five test for one side: a maximal run of exactly 5 in any direction.
    fn has_exact_five(&self, side: PlayerSide) -> bool {
        for rank in 0..SIZE as i32 {
            for file in 0..SIZE as i32 {
                if self.at(file, rank) != Some(side) {
                    continue;
                }
                for (df, dr) in DIRECTIONS {
                    // Only measure each run once, from its starting stone.
                    if self.at(file - df, rank - dr) == Some(side) {
                        continue;
                    }
                    let mut len = 1;
                    let (mut f, mut r) = (file + df, rank + dr);
                    while self.at(f, r) == Some(side) {
                        len += 1;
                        f += df;
                        r += dr;
                    }
                    if len == 5 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl BoardOps for Board {
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move> {
        let mut moves = Vec::with_capacity(SIZE * SIZE - self.stones as usize);
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
        self.stones += 1;
        Ok(())
    }

    fn status(&self, to_move: PlayerSide) -> Outcome {
        // Only the side that just moved can have completed a five.
        let last_mover = to_move.opponent();
        if self.has_exact_five(last_mover) {
            return Outcome::win_for(last_mover);
        }
        if self.has_exact_five(to_move) {
            return Outcome::win_for(to_move);
        }
        if self.stones as usize == SIZE * SIZE {
            Outcome::Draw
        } else {
            Outcome::Ongoing
        }
    }

    fn encode_rows(&self, _perspective: Perspective) -> String {
        let mut out = String::with_capacity(SIZE * (SIZE + 1));
        for rank in (0..SIZE).rev() {
            for file in 0..SIZE {
                out.push(match self.cells[rank * SIZE + file] {
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
        let (file, rank) = parse_cell(token, SIZE).map_err(|r| KernelError::bad_token(token, &r))?;
        Ok(Move::new(actor, &cell_token(file, rank)))
    }

    fn heuristic(&self, side: PlayerSide) -> i32 {
        // Sum of squared run lengths through every stone; crude but directional.
        let mut score = 0i32;
        for rank in 0..SIZE as i32 {
            for file in 0..SIZE as i32 {
                let Some(owner) = self.at(file, rank) else { continue };
                let mut best = 0;
                for (df, dr) in DIRECTIONS {
                    if self.at(file - df, rank - dr) == Some(owner) {
                        continue;
                    }
                    let run = self.run_through(owner, file, rank, df, dr).min(5);
                    best = best.max(run * run);
                }
                if owner == side {
                    score += best as i32;
                } else {
                    score -= best as i32;
                }
            }
        }
        score
    }

    fn material(&self, side: PlayerSide) -> i32 {
        let mut mine = 0;
        let mut theirs = 0;
        for cell in self.cells.iter().flatten() {
            if *cell == side {
                mine += 1;
            } else {
                theirs += 1;
            }
        }
        mine - theirs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{GameKind, GameState};

    fn apply_all(state: GameState, tokens: &[&str]) -> GameState {
        tokens.iter().fold(state, |s, tok| {
            let mv = s.parse_move(tok).unwrap();
            s.apply(&mv).unwrap()
        })
    }

    fn initial() -> GameState {
        GameState::new(GameKind::Gomoku).unwrap()
    }

    #[test]
    fn five_in_a_row_wins_on_ninth_ply() {
        // Black builds a1..e1 while white scatters on rank 15.
        let state = apply_all(
            initial(),
            &["a1", "a15", "b1", "b15", "c1", "c15", "d1", "d15", "e1"],
        );
        assert_eq!(state.round_index(), 10);
        assert_eq!(state.history().len(), 9);
        assert_eq!(state.status(), Outcome::FirstWins);
    }

    #[test]
    fn four_in_a_row_is_ongoing() {
        let state = apply_all(initial(), &["a1", "a15", "b1", "b15", "c1", "c15", "d1", "d15"]);
        assert_eq!(state.status(), Outcome::Ongoing);
    }

    #[test]
    fn overline_of_six_is_not_a_win() {
        // Black lays a1,b1,c1,d1,f1,g1 then fills e1 creating a six-run;
        // white's replies stay scattered so white never lines up.
        let state = apply_all(
            initial(),
            &[
                "a1", "a15", "b1", "c15", "c1", "e15", "d1", "g15", "f1", "i15", "g1", "k15",
            ],
        );
        assert_eq!(state.status(), Outcome::Ongoing);
        let state = apply_all(state, &["e1"]);
        // a1..g1 holds seven black stones minus none: run of 7 -> no win.
        assert_eq!(state.status(), Outcome::Ongoing);
    }

    #[test]
    fn filling_a_gap_to_exactly_five_wins() {
        // b1,c1 + e1,f1 then d1 bridges to exactly five (a1 stays empty, g1 empty).
        let state = apply_all(
            initial(),
            &["b1", "a15", "c1", "b15", "e1", "c15", "f1", "d15", "d1"],
        );
        assert_eq!(state.status(), Outcome::FirstWins);
    }

    #[test]
    fn diagonal_five_wins() {
        let state = apply_all(
            initial(),
            &["c3", "a15", "d4", "b15", "e5", "c15", "f6", "d15", "g7"],
        );
        assert_eq!(state.status(), Outcome::FirstWins);
    }

    #[test]
    fn vertical_five_for_white_wins() {
        let state = apply_all(
            initial(),
            &[
                "a1", "h4", "b1", "h5", "c1", "h6", "d1", "h7", "o15", "h8",
            ],
        );
        assert_eq!(state.status(), Outcome::SecondWins);
    }
}
