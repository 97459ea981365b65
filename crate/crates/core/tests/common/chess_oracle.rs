//! Brute-force chess move enumerator used as an oracle for the engine.
//!
//! Written straight from the rulebook with no shared code: its own FEN
//! parser, its own board array, pseudo-legal generation plus a make-and-scan
//! legality filter. Slow and simple on purpose; any disagreement with the
//! engine is an engine bug until proven otherwise.

use std::collections::BTreeSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Color {
    White,
    Black,
}

impl Color {
    fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Piece {
    Pawn,
    Knight,
    Bishop,
    Rook,
    Queen,
    King,
}

#[derive(Clone)]
pub struct OracleBoard {
    // squares[rank][file], rank 0 = rank 1
    squares: [[Option<(Color, Piece)>; 8]; 8],
    side: Color,
    castle_wk: bool,
    castle_wq: bool,
    castle_bk: bool,
    castle_bq: bool,
    ep_target: Option<(usize, usize)>, // (file, rank)
}

fn sq_name(file: usize, rank: usize) -> String {
    format!("{}{}", (b'a' + file as u8) as char, rank + 1)
}

fn parse_sq(s: &str) -> (usize, usize) {
    let b = s.as_bytes();
    ((b[0] - b'a') as usize, (b[1] - b'1') as usize)
}

impl OracleBoard {
    pub fn from_fen(fen: &str) -> OracleBoard {
        let parts: Vec<&str> = fen.split_whitespace().collect();
        let mut squares = [[None; 8]; 8];
        for (i, row) in parts[0].split('/').enumerate() {
            let rank = 7 - i;
            let mut file = 0usize;
            for ch in row.chars() {
                if let Some(d) = ch.to_digit(10) {
                    file += d as usize;
                } else {
                    let color = if ch.is_ascii_uppercase() { Color::White } else { Color::Black };
                    let piece = match ch.to_ascii_lowercase() {
                        'p' => Piece::Pawn,
                        'n' => Piece::Knight,
                        'b' => Piece::Bishop,
                        'r' => Piece::Rook,
                        'q' => Piece::Queen,
                        'k' => Piece::King,
                        other => panic!("bad fen piece {other}"),
                    };
                    squares[rank][file] = Some((color, piece));
                    file += 1;
                }
            }
        }
        let side = if parts[1] == "w" { Color::White } else { Color::Black };
        let castling = parts.get(2).copied().unwrap_or("-");
        let ep = parts.get(3).copied().unwrap_or("-");
        OracleBoard {
            squares,
            side,
            castle_wk: castling.contains('K'),
            castle_wq: castling.contains('Q'),
            castle_bk: castling.contains('k'),
            castle_bq: castling.contains('q'),
            ep_target: if ep == "-" { None } else { Some(parse_sq(ep)) },
        }
    }

    fn at(&self, file: i32, rank: i32) -> Option<(Color, Piece)> {
        if (0..8).contains(&file) && (0..8).contains(&rank) {
            self.squares[rank as usize][file as usize]
        } else {
            None
        }
    }

    fn on_board(file: i32, rank: i32) -> bool {
        (0..8).contains(&file) && (0..8).contains(&rank)
    }

    fn king_square(&self, color: Color) -> (usize, usize) {
        for rank in 0..8 {
            for file in 0..8 {
                if self.squares[rank][file] == Some((color, Piece::King)) {
                    return (file, rank);
                }
            }
        }
        panic!("no king for {color:?}");
    }

    /// Is (file, rank) attacked by any piece of `by`?
    pub fn attacked(&self, file: usize, rank: usize, by: Color) -> bool {
        let (f, r) = (file as i32, rank as i32);
        // pawn attacks
        let dir: i32 = if by == Color::White { 1 } else { -1 };
        for df in [-1, 1] {
            if self.at(f + df, r - dir) == Some((by, Piece::Pawn)) {
                return true;
            }
        }
        // knights
        for (df, dr) in [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)] {
            if self.at(f + df, r + dr) == Some((by, Piece::Knight)) {
                return true;
            }
        }
        // king
        for df in -1..=1 {
            for dr in -1..=1 {
                if (df, dr) != (0, 0) && self.at(f + df, r + dr) == Some((by, Piece::King)) {
                    return true;
                }
            }
        }
        // sliders
        for (df, dr) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (mut cf, mut cr) = (f + df, r + dr);
            while Self::on_board(cf, cr) {
                if let Some((c, p)) = self.at(cf, cr) {
                    if c == by && (p == Piece::Rook || p == Piece::Queen) {
                        return true;
                    }
                    break;
                }
                cf += df;
                cr += dr;
            }
        }
        for (df, dr) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let (mut cf, mut cr) = (f + df, r + dr);
            while Self::on_board(cf, cr) {
                if let Some((c, p)) = self.at(cf, cr) {
                    if c == by && (p == Piece::Bishop || p == Piece::Queen) {
                        return true;
                    }
                    break;
                }
                cf += df;
                cr += dr;
            }
        }
        false
    }

    pub fn in_check(&self, color: Color) -> bool {
        let (kf, kr) = self.king_square(color);
        self.attacked(kf, kr, color.flip())
    }

    fn pseudo_moves(&self) -> Vec<String> {
        let mut out = Vec::new();
        let us = self.side;
        for rank in 0..8usize {
            for file in 0..8usize {
                let Some((color, piece)) = self.squares[rank][file] else { continue };
                if color != us {
                    continue;
                }
                let (f, r) = (file as i32, rank as i32);
                match piece {
                    Piece::Pawn => {
                        let dir: i32 = if us == Color::White { 1 } else { -1 };
                        let start_rank = if us == Color::White { 1 } else { 6 };
                        let last_rank = if us == Color::White { 7 } else { 0 };
                        let push = |out: &mut Vec<String>, tf: i32, tr: i32| {
                            let from = sq_name(file, rank);
                            let to = sq_name(tf as usize, tr as usize);
                            if tr == last_rank {
                                for promo in ['q', 'r', 'b', 'n'] {
                                    out.push(format!("{from}{to}{promo}"));
                                }
                            } else {
                                out.push(format!("{from}{to}"));
                            }
                        };
                        if Self::on_board(f, r + dir) && self.at(f, r + dir).is_none() {
                            push(&mut out, f, r + dir);
                            if r == start_rank && self.at(f, r + 2 * dir).is_none() {
                                push(&mut out, f, r + 2 * dir);
                            }
                        }
                        for df in [-1, 1] {
                            let (tf, tr) = (f + df, r + dir);
                            if !Self::on_board(tf, tr) {
                                continue;
                            }
                            let target = self.at(tf, tr);
                            let is_ep = self.ep_target == Some((tf as usize, tr as usize));
                            if matches!(target, Some((c, _)) if c != us) || (target.is_none() && is_ep) {
                                push(&mut out, tf, tr);
                            }
                        }
                    }
                    Piece::Knight => {
                        for (df, dr) in
                            [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
                        {
                            let (tf, tr) = (f + df, r + dr);
                            if Self::on_board(tf, tr)
                                && !matches!(self.at(tf, tr), Some((c, _)) if c == us)
                            {
                                out.push(format!(
                                    "{}{}",
                                    sq_name(file, rank),
                                    sq_name(tf as usize, tr as usize)
                                ));
                            }
                        }
                    }
                    Piece::Bishop | Piece::Rook | Piece::Queen => {
                        let dirs: &[(i32, i32)] = match piece {
                            Piece::Bishop => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
                            Piece::Rook => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
                            _ => &[
                                (1, 1),
                                (1, -1),
                                (-1, 1),
                                (-1, -1),
                                (1, 0),
                                (-1, 0),
                                (0, 1),
                                (0, -1),
                            ],
                        };
                        for &(df, dr) in dirs {
                            let (mut tf, mut tr) = (f + df, r + dr);
                            while Self::on_board(tf, tr) {
                                match self.at(tf, tr) {
                                    None => {
                                        out.push(format!(
                                            "{}{}",
                                            sq_name(file, rank),
                                            sq_name(tf as usize, tr as usize)
                                        ));
                                    }
                                    Some((c, _)) => {
                                        if c != us {
                                            out.push(format!(
                                                "{}{}",
                                                sq_name(file, rank),
                                                sq_name(tf as usize, tr as usize)
                                            ));
                                        }
                                        break;
                                    }
                                }
                                tf += df;
                                tr += dr;
                            }
                        }
                    }
                    Piece::King => {
                        for df in -1..=1i32 {
                            for dr in -1..=1i32 {
                                if (df, dr) == (0, 0) {
                                    continue;
                                }
                                let (tf, tr) = (f + df, r + dr);
                                if Self::on_board(tf, tr)
                                    && !matches!(self.at(tf, tr), Some((c, _)) if c == us)
                                {
                                    out.push(format!(
                                        "{}{}",
                                        sq_name(file, rank),
                                        sq_name(tf as usize, tr as usize)
                                    ));
                                }
                            }
                        }
                        // castling: rights, empty lane, and no square the king
                        // touches (start, transit, landing) may be attacked
                        let home = if us == Color::White { 0usize } else { 7 };
                        let them = us.flip();
                        if (file, rank) == (4, home) && !self.attacked(4, home, them) {
                            let (ks, qs) = match us {
                                Color::White => (self.castle_wk, self.castle_wq),
                                Color::Black => (self.castle_bk, self.castle_bq),
                            };
                            if ks
                                && self.squares[home][5].is_none()
                                && self.squares[home][6].is_none()
                                && self.squares[home][7] == Some((us, Piece::Rook))
                                && !self.attacked(5, home, them)
                                && !self.attacked(6, home, them)
                            {
                                out.push(format!("{}{}", sq_name(4, home), sq_name(6, home)));
                            }
                            if qs
                                && self.squares[home][3].is_none()
                                && self.squares[home][2].is_none()
                                && self.squares[home][1].is_none()
                                && self.squares[home][0] == Some((us, Piece::Rook))
                                && !self.attacked(3, home, them)
                                && !self.attacked(2, home, them)
                            {
                                out.push(format!("{}{}", sq_name(4, home), sq_name(2, home)));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Apply a UCI token without validation (caller generates them).
    pub fn apply_token(&self, token: &str) -> OracleBoard {
        let mut next = self.clone();
        let (ff, fr) = parse_sq(&token[0..2]);
        let (tf, tr) = parse_sq(&token[2..4]);
        let promo = token.as_bytes().get(4).copied();
        let (color, piece) = self.squares[fr][ff].expect("moving from empty square");

        next.ep_target = None;
        next.squares[fr][ff] = None;

        match piece {
            Piece::Pawn => {
                // en passant capture: diagonal move to an empty square
                if ff != tf && self.squares[tr][tf].is_none() {
                    next.squares[fr][tf] = None; // captured pawn sits beside the landing square
                }
                if (fr as i32 - tr as i32).abs() == 2 {
                    next.ep_target = Some((ff, (fr + tr) / 2));
                }
                let placed = match promo {
                    Some(b'q') => Piece::Queen,
                    Some(b'r') => Piece::Rook,
                    Some(b'b') => Piece::Bishop,
                    Some(b'n') => Piece::Knight,
                    _ => Piece::Pawn,
                };
                next.squares[tr][tf] = Some((color, placed));
            }
            Piece::King => {
                next.squares[tr][tf] = Some((color, piece));
                if ff == 4 && tf == 6 {
                    next.squares[tr][7] = None;
                    next.squares[tr][5] = Some((color, Piece::Rook));
                }
                if ff == 4 && tf == 2 {
                    next.squares[tr][0] = None;
                    next.squares[tr][3] = Some((color, Piece::Rook));
                }
                match color {
                    Color::White => {
                        next.castle_wk = false;
                        next.castle_wq = false;
                    }
                    Color::Black => {
                        next.castle_bk = false;
                        next.castle_bq = false;
                    }
                }
            }
            _ => {
                next.squares[tr][tf] = Some((color, piece));
            }
        }
        // rook moves or rook captures strip castling rights on that corner
        for (sq, flag) in [
            ((0usize, 0usize), 0u8),
            ((7, 0), 1),
            ((0, 7), 2),
            ((7, 7), 3),
        ] {
            if (ff, fr) == sq || (tf, tr) == sq {
                match flag {
                    0 => next.castle_wq = false,
                    1 => next.castle_wk = false,
                    2 => next.castle_bq = false,
                    _ => next.castle_bk = false,
                }
            }
        }
        next.side = color.flip();
        next
    }

    /// All legal UCI tokens for the side to move, sorted.
    pub fn legal_tokens(&self) -> BTreeSet<String> {
        self.pseudo_moves()
            .into_iter()
            .filter(|tok| !self.apply_token(tok).in_check(self.side))
            .collect()
    }
}

/// Node count of the legal game tree to `depth`, from a FEN position.
pub fn perft(fen: &str, depth: u32) -> u64 {
    fn walk(board: &OracleBoard, depth: u32) -> u64 {
        let moves = board.legal_tokens();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves
            .iter()
            .map(|tok| walk(&board.apply_token(tok), depth - 1))
            .sum()
    }
    if depth == 0 {
        return 1;
    }
    walk(&OracleBoard::from_fen(fen), depth)
}

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
