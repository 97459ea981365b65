//! Full chess: FIDE movement with castling, en passant and promotion, plus
//! draw detection by stalemate, threefold repetition, the 50-move rule and
//! insufficient material. The last two go beyond bare repetition handling and
//! can be switched off via [`ChessConfig`].
//!
//! Move tokens are UCI style (`e2e4`, `e7e8q`); positions import and export
//! FEN for interoperability with outside validators.

use crate::kernel::{BoardOps, KernelError, Move, Outcome, Perspective, PlayerSide};

/// Optional draw rules layered over checkmate/stalemate/threefold.
#[derive(Debug, Clone, Copy)]
pub struct ChessConfig {
    pub fifty_move_rule: bool,
    pub insufficient_material_rule: bool,
}

impl Default for ChessConfig {
    fn default() -> Self {
        ChessConfig {
            fifty_move_rule: true,
            insufficient_material_rule: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PieceKind {
    Pawn,
    Knight,
    Bishop,
    Rook,
    Queen,
    King,
}

use PieceKind::*;

type Cell = Option<(PlayerSide, PieceKind)>;

const WK: u8 = 1;
const WQ: u8 = 2;
const BK: u8 = 4;
const BQ: u8 = 8;

/// Packed exact position identity: piece placement (nibble per square),
/// castling rights, en-passant file (only when a legal capture exists), and
/// the side to move. Exact comparison, no hashing.
type PositionKey = [u8; 35];

#[derive(Debug, Clone)]
pub(crate) struct Board {
    cells: [Cell; 64],
    side: PlayerSide,
    castling: u8,
    ep_target: Option<u8>,
    halfmove_clock: u32,
    fullmove_number: u32,
    key_history: Vec<PositionKey>,
    config: ChessConfig,
}

#[inline]
fn sq(file: i32, rank: i32) -> u8 {
    (rank * 8 + file) as u8
}

#[inline]
fn file_of(s: u8) -> i32 {
    (s % 8) as i32
}

#[inline]
fn rank_of(s: u8) -> i32 {
    (s / 8) as i32
}

fn sq_token(s: u8) -> String {
    format!("{}{}", (b'a' + (s % 8)) as char, s / 8 + 1)
}

fn parse_sq_token(t: &str) -> Option<u8> {
    let b = t.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let file = b[0].wrapping_sub(b'a');
    let rank = b[1].wrapping_sub(b'1');
    if file < 8 && rank < 8 {
        Some(rank * 8 + file)
    } else {
        None
    }
}

const KNIGHT_JUMPS: [(i32, i32); 8] =
    [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)];
const KING_STEPS: [(i32, i32); 8] =
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
const ROOK_RAYS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const BISHOP_RAYS: [(i32, i32); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// A move in engine form; `token` is the canonical UCI rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct EngineMove {
    from: u8,
    to: u8,
    promo: Option<PieceKind>,
}

impl EngineMove {
    fn token(&self) -> String {
        let mut t = format!("{}{}", sq_token(self.from), sq_token(self.to));
        if let Some(p) = self.promo {
            t.push(match p {
                Queen => 'q',
                Rook => 'r',
                Bishop => 'b',
                Knight => 'n',
                _ => unreachable!("pawns promote to piece kinds only"),
            });
        }
        t
    }

    fn parse(token: &str) -> Option<EngineMove> {
        if token.len() < 4 || token.len() > 5 {
            return None;
        }
        let from = parse_sq_token(&token[0..2])?;
        let to = parse_sq_token(&token[2..4])?;
        let promo = match token.as_bytes().get(4) {
            None => None,
            Some(b'q') => Some(Queen),
            Some(b'r') => Some(Rook),
            Some(b'b') => Some(Bishop),
            Some(b'n') => Some(Knight),
            Some(_) => return None,
        };
        Some(EngineMove { from, to, promo })
    }
}

impl Board {
    pub(crate) fn new() -> Board {
        Board::from_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1")
            .expect("start position FEN is valid")
    }

    pub(crate) fn with_config(config: ChessConfig) -> Board {
        let mut b = Board::new();
        b.config = config;
        b
    }

    pub(crate) fn side_to_move(&self) -> PlayerSide {
        self.side
    }

    pub(crate) fn from_fen_with(fen: &str, config: ChessConfig) -> Result<Board, KernelError> {
        let mut b = Board::from_fen(fen)?;
        b.config = config;
        Ok(b)
    }

    pub(crate) fn from_fen(fen: &str) -> Result<Board, KernelError> {
        let bad = |reason: &str| KernelError::BadFen {
            fen: fen.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = fen.split_whitespace().collect();
        if parts.len() < 4 {
            return Err(bad("need at least placement, side, castling and en-passant fields"));
        }
        let mut cells: [Cell; 64] = [None; 64];
        let rows: Vec<&str> = parts[0].split('/').collect();
        if rows.len() != 8 {
            return Err(bad("placement must have 8 ranks"));
        }
        for (i, row) in rows.iter().enumerate() {
            let rank = 7 - i as i32;
            let mut file = 0i32;
            for ch in row.chars() {
                if let Some(d) = ch.to_digit(10) {
                    file += d as i32;
                } else {
                    if file >= 8 {
                        return Err(bad("rank overflows 8 files"));
                    }
                    let side = if ch.is_ascii_uppercase() {
                        PlayerSide::First
                    } else {
                        PlayerSide::Second
                    };
                    let kind = match ch.to_ascii_lowercase() {
                        'p' => Pawn,
                        'n' => Knight,
                        'b' => Bishop,
                        'r' => Rook,
                        'q' => Queen,
                        'k' => King,
                        _ => return Err(bad("unknown piece letter")),
                    };
                    cells[sq(file, rank) as usize] = Some((side, kind));
                    file += 1;
                }
            }
            if file != 8 {
                return Err(bad("rank does not cover 8 files"));
            }
        }
        let side = match parts[1] {
            "w" => PlayerSide::First,
            "b" => PlayerSide::Second,
            _ => return Err(bad("side must be `w` or `b`")),
        };
        let mut castling = 0u8;
        if parts[2] != "-" {
            for ch in parts[2].chars() {
                castling |= match ch {
                    'K' => WK,
                    'Q' => WQ,
                    'k' => BK,
                    'q' => BQ,
                    _ => return Err(bad("bad castling field")),
                };
            }
        }
        let ep_target = match parts[3] {
            "-" => None,
            t => Some(parse_sq_token(t).ok_or_else(|| bad("bad en-passant square"))?),
        };
        let halfmove_clock = parts.get(4).and_then(|s| s.parse().ok()).unwrap_or(0);
        let fullmove_number = parts.get(5).and_then(|s| s.parse().ok()).unwrap_or(1);
        let mut board = Board {
            cells,
            side,
            castling,
            ep_target,
            halfmove_clock,
            fullmove_number,
            key_history: Vec::new(),
            config: ChessConfig::default(),
        };
        board.key_history.push(board.position_key());
        Ok(board)
    }

    pub(crate) fn to_fen(&self) -> String {
        let mut out = String::new();
        for rank in (0..8).rev() {
            let mut empties = 0;
            for file in 0..8 {
                match self.cells[sq(file, rank) as usize] {
                    None => empties += 1,
                    Some((side, kind)) => {
                        if empties > 0 {
                            out.push_str(&empties.to_string());
                            empties = 0;
                        }
                        out.push(piece_char(side, kind));
                    }
                }
            }
            if empties > 0 {
                out.push_str(&empties.to_string());
            }
            if rank > 0 {
                out.push('/');
            }
        }
        out.push(' ');
        out.push(if self.side == PlayerSide::First { 'w' } else { 'b' });
        out.push(' ');
        if self.castling == 0 {
            out.push('-');
        } else {
            if self.castling & WK != 0 {
                out.push('K');
            }
            if self.castling & WQ != 0 {
                out.push('Q');
            }
            if self.castling & BK != 0 {
                out.push('k');
            }
            if self.castling & BQ != 0 {
                out.push('q');
            }
        }
        out.push(' ');
        match self.ep_target {
            None => out.push('-'),
            Some(s) => out.push_str(&sq_token(s)),
        }
        out.push_str(&format!(" {} {}", self.halfmove_clock, self.fullmove_number));
        out
    }

    #[inline]
    fn at(&self, file: i32, rank: i32) -> Cell {
        if (0..8).contains(&file) && (0..8).contains(&rank) {
            self.cells[sq(file, rank) as usize]
        } else {
            None
        }
    }

    fn king_square(&self, side: PlayerSide) -> u8 {
        for s in 0..64u8 {
            if self.cells[s as usize] == Some((side, King)) {
                return s;
            }
        }
        unreachable!("a chess position always has both kings");
    }

    /// Attack probe from the target square outward.
    fn attacked_by(&self, target: u8, by: PlayerSide) -> bool {
        let (f, r) = (file_of(target), rank_of(target));
        let pawn_dir = if by == PlayerSide::First { 1 } else { -1 };
        for df in [-1i32, 1] {
            if self.at(f + df, r - pawn_dir) == Some((by, Pawn)) {
                return true;
            }
        }
        for (df, dr) in KNIGHT_JUMPS {
            if self.at(f + df, r + dr) == Some((by, Knight)) {
                return true;
            }
        }
        for (df, dr) in KING_STEPS {
            if self.at(f + df, r + dr) == Some((by, King)) {
                return true;
            }
        }
        for (rays, line_kind) in [(ROOK_RAYS, Rook), (BISHOP_RAYS, Bishop)] {
            for (df, dr) in rays {
                let (mut cf, mut cr) = (f + df, r + dr);
                while (0..8).contains(&cf) && (0..8).contains(&cr) {
                    if let Some((owner, kind)) = self.at(cf, cr) {
                        if owner == by && (kind == line_kind || kind == Queen) {
                            return true;
                        }
                        break;
                    }
                    cf += df;
                    cr += dr;
                }
            }
        }
        false
    }

    fn in_check(&self, side: PlayerSide) -> bool {
        self.attacked_by(self.king_square(side), side.opponent())
    }

    fn pseudo_moves_from(&self, from: u8, out: &mut Vec<EngineMove>) {
        let Some((side, kind)) = self.cells[from as usize] else { return };
        let (f, r) = (file_of(from), rank_of(from));
        let push = |out: &mut Vec<EngineMove>, to: u8, promo: Option<PieceKind>| {
            out.push(EngineMove { from, to, promo });
        };
        match kind {
            Pawn => {
                let dir: i32 = if side == PlayerSide::First { 1 } else { -1 };
                let start = if side == PlayerSide::First { 1 } else { 6 };
                let last = if side == PlayerSide::First { 7 } else { 0 };
                let forward = |out: &mut Vec<EngineMove>, tf: i32, tr: i32| {
                    let to = sq(tf, tr);
                    if tr == last {
                        for p in [Queen, Rook, Bishop, Knight] {
                            push(out, to, Some(p));
                        }
                    } else {
                        push(out, to, None);
                    }
                };
                if (0..8).contains(&(r + dir)) && self.at(f, r + dir).is_none() {
                    forward(out, f, r + dir);
                    if r == start && self.at(f, r + 2 * dir).is_none() {
                        push(out, sq(f, r + 2 * dir), None);
                    }
                }
                for df in [-1i32, 1] {
                    let (tf, tr) = (f + df, r + dir);
                    if !(0..8).contains(&tf) || !(0..8).contains(&tr) {
                        continue;
                    }
                    let dest = self.at(tf, tr);
                    let ep = self.ep_target == Some(sq(tf, tr));
                    match dest {
                        Some((owner, _)) if owner != side => forward(out, tf, tr),
                        None if ep => push(out, sq(tf, tr), None),
                        _ => {}
                    }
                }
            }
            Knight => {
                for (df, dr) in KNIGHT_JUMPS {
                    let (tf, tr) = (f + df, r + dr);
                    if (0..8).contains(&tf)
                        && (0..8).contains(&tr)
                        && !matches!(self.at(tf, tr), Some((o, _)) if o == side)
                    {
                        push(out, sq(tf, tr), None);
                    }
                }
            }
            Bishop | Rook | Queen => {
                let rays: &[(i32, i32)] = match kind {
                    Bishop => &BISHOP_RAYS,
                    Rook => &ROOK_RAYS,
                    _ => &[
                        (1, 0),
                        (-1, 0),
                        (0, 1),
                        (0, -1),
                        (1, 1),
                        (1, -1),
                        (-1, 1),
                        (-1, -1),
                    ],
                };
                for &(df, dr) in rays {
                    let (mut tf, mut tr) = (f + df, r + dr);
                    while (0..8).contains(&tf) && (0..8).contains(&tr) {
                        match self.at(tf, tr) {
                            None => push(out, sq(tf, tr), None),
                            Some((owner, _)) => {
                                if owner != side {
                                    push(out, sq(tf, tr), None);
                                }
                                break;
                            }
                        }
                        tf += df;
                        tr += dr;
                    }
                }
            }
            King => {
                for (df, dr) in KING_STEPS {
                    let (tf, tr) = (f + df, r + dr);
                    if (0..8).contains(&tf)
                        && (0..8).contains(&tr)
                        && !matches!(self.at(tf, tr), Some((o, _)) if o == side)
                    {
                        push(out, sq(tf, tr), None);
                    }
                }
                self.castle_moves(side, out);
            }
        }
    }

    fn castle_moves(&self, side: PlayerSide, out: &mut Vec<EngineMove>) {
        let home: i32 = if side == PlayerSide::First { 0 } else { 7 };
        let king_from = sq(4, home);
        if self.cells[king_from as usize] != Some((side, King)) {
            return;
        }
        let foe = side.opponent();
        if self.attacked_by(king_from, foe) {
            return;
        }
        let (ks_right, qs_right) = if side == PlayerSide::First {
            (self.castling & WK != 0, self.castling & WQ != 0)
        } else {
            (self.castling & BK != 0, self.castling & BQ != 0)
        };
        if ks_right
            && self.at(5, home).is_none()
            && self.at(6, home).is_none()
            && self.at(7, home) == Some((side, Rook))
            && !self.attacked_by(sq(5, home), foe)
            && !self.attacked_by(sq(6, home), foe)
        {
            out.push(EngineMove {
                from: king_from,
                to: sq(6, home),
                promo: None,
            });
        }
        if qs_right
            && self.at(3, home).is_none()
            && self.at(2, home).is_none()
            && self.at(1, home).is_none()
            && self.at(0, home) == Some((side, Rook))
            && !self.attacked_by(sq(3, home), foe)
            && !self.attacked_by(sq(2, home), foe)
        {
            out.push(EngineMove {
                from: king_from,
                to: sq(2, home),
                promo: None,
            });
        }
    }

    /// Piece placement and clock effects of a move, without history/key upkeep.
    fn make_raw(&mut self, mv: &EngineMove, side: PlayerSide) {
        let (_, kind) = self.cells[mv.from as usize].expect("make_raw from occupied square");
        let captured = self.cells[mv.to as usize];
        let mut reset_clock = captured.is_some();

        self.cells[mv.from as usize] = None;
        self.cells[mv.to as usize] = Some((side, mv.promo.unwrap_or(kind)));

        match kind {
            Pawn => {
                reset_clock = true;
                if Some(mv.to) == self.ep_target && captured.is_none() && file_of(mv.from) != file_of(mv.to) {
                    // the bypassed pawn sits on the origin rank, target file
                    let victim = sq(file_of(mv.to), rank_of(mv.from));
                    self.cells[victim as usize] = None;
                }
            }
            King => {
                if side == PlayerSide::First {
                    self.castling &= !(WK | WQ);
                } else {
                    self.castling &= !(BK | BQ);
                }
                let home = rank_of(mv.from);
                if file_of(mv.from) == 4 && file_of(mv.to) == 6 {
                    self.cells[sq(7, home) as usize] = None;
                    self.cells[sq(5, home) as usize] = Some((side, Rook));
                }
                if file_of(mv.from) == 4 && file_of(mv.to) == 2 {
                    self.cells[sq(0, home) as usize] = None;
                    self.cells[sq(3, home) as usize] = Some((side, Rook));
                }
            }
            _ => {}
        }
        // touching a corner square voids that castling right
        for (corner, bit) in [(sq(0, 0), WQ), (sq(7, 0), WK), (sq(0, 7), BQ), (sq(7, 7), BK)] {
            if mv.from == corner || mv.to == corner {
                self.castling &= !bit;
            }
        }
        self.ep_target = if kind == Pawn && (rank_of(mv.from) - rank_of(mv.to)).abs() == 2 {
            Some(sq(file_of(mv.from), (rank_of(mv.from) + rank_of(mv.to)) / 2))
        } else {
            None
        };
        if reset_clock {
            self.halfmove_clock = 0;
        } else {
            self.halfmove_clock += 1;
        }
        if side == PlayerSide::Second {
            self.fullmove_number += 1;
        }
        self.side = side.opponent();
    }

    /// Would `mv` by `side` leave `side`'s own king attacked?
    fn leaves_king_exposed(&self, mv: &EngineMove, side: PlayerSide) -> bool {
        let mut scratch = Board {
            cells: self.cells,
            side: self.side,
            castling: self.castling,
            ep_target: self.ep_target,
            halfmove_clock: 0,
            fullmove_number: 1,
            key_history: Vec::new(),
            config: self.config,
        };
        scratch.make_raw(mv, side);
        scratch.in_check(side)
    }

    fn legal_engine_moves(&self, side: PlayerSide) -> Vec<EngineMove> {
        let mut pseudo = Vec::with_capacity(48);
        for s in 0..64u8 {
            if matches!(self.cells[s as usize], Some((owner, _)) if owner == side) {
                self.pseudo_moves_from(s, &mut pseudo);
            }
        }
        pseudo
            .into_iter()
            .filter(|mv| !self.leaves_king_exposed(mv, side))
            .collect()
    }

    /// Exact identity of the current position for repetition detection:
    /// placement, side to move, castling rights, and the en-passant file when
    /// (and only when) an en-passant capture is actually playable.
    fn position_key(&self) -> PositionKey {
        let mut key = [0u8; 35];
        for s in 0..64usize {
            let code: u8 = match self.cells[s] {
                None => 0,
                Some((side, kind)) => {
                    let base = match kind {
                        Pawn => 1,
                        Knight => 2,
                        Bishop => 3,
                        Rook => 4,
                        Queen => 5,
                        King => 6,
                    };
                    if side == PlayerSide::First {
                        base
                    } else {
                        base + 6
                    }
                }
            };
            key[s / 2] |= code << ((s % 2) * 4);
        }
        key[32] = self.castling;
        key[33] = match self.ep_target {
            Some(t) if self.ep_capture_playable(t) => t % 8,
            _ => 0xFF,
        };
        key[34] = self.side.index() as u8;
        key
    }

    fn ep_capture_playable(&self, target: u8) -> bool {
        let side = self.side;
        let dir: i32 = if side == PlayerSide::First { 1 } else { -1 };
        let (tf, tr) = (file_of(target), rank_of(target));
        for df in [-1i32, 1] {
            let (pf, pr) = (tf + df, tr - dir);
            if self.at(pf, pr) == Some((side, Pawn)) {
                let mv = EngineMove {
                    from: sq(pf, pr),
                    to: target,
                    promo: None,
                };
                if !self.leaves_king_exposed(&mv, side) {
                    return true;
                }
            }
        }
        false
    }

    fn repetition_count(&self) -> usize {
        let current = self.key_history.last().expect("history holds current key");
        self.key_history.iter().filter(|k| *k == current).count()
    }

    fn insufficient_material(&self) -> bool {
        let mut minors = 0;
        let mut bishop_colors = [false, false];
        for s in 0..64u8 {
            match self.cells[s as usize] {
                None | Some((_, King)) => {}
                Some((_, Pawn)) | Some((_, Rook)) | Some((_, Queen)) => return false,
                Some((_, Knight)) => minors += 1,
                Some((_, Bishop)) => {
                    minors += 1;
                    bishop_colors[((file_of(s) + rank_of(s)) % 2) as usize] = true;
                }
            }
        }
        if minors <= 1 {
            return true;
        }
        // any number of bishops all on one square color, no knights
        let any_knight = (0..64u8).any(|s| matches!(self.cells[s as usize], Some((_, Knight))));
        !any_knight && !(bishop_colors[0] && bishop_colors[1])
    }
}

fn piece_char(side: PlayerSide, kind: PieceKind) -> char {
    let c = match kind {
        Pawn => 'p',
        Knight => 'n',
        Bishop => 'b',
        Rook => 'r',
        Queen => 'q',
        King => 'k',
    };
    if side == PlayerSide::First {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

impl BoardOps for Board {
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move> {
        self.legal_engine_moves(to_move)
            .into_iter()
            .map(|m| Move::new(to_move, &m.token()))
            .collect()
    }

    fn apply_in_place(&mut self, mv: &Move) -> Result<(), KernelError> {
        let side = mv.actor();
        let engine_mv = EngineMove::parse(mv.token())
            .ok_or_else(|| KernelError::bad_token(mv.token(), "not a from-to move"))?;
        match self.cells[engine_mv.from as usize] {
            None => return Err(KernelError::illegal(mv.token(), "no-piece-at-origin")),
            Some((owner, _)) if owner != side => {
                return Err(KernelError::illegal(mv.token(), "not-your-piece"))
            }
            Some((_, kind)) => {
                let mut candidates = Vec::new();
                self.pseudo_moves_from(engine_mv.from, &mut candidates);
                let reachable = candidates
                    .iter()
                    .any(|c| c.from == engine_mv.from && c.to == engine_mv.to);
                if !reachable {
                    return Err(KernelError::illegal(mv.token(), "piece-cannot-reach"));
                }
                let last_rank = if side == PlayerSide::First { 7 } else { 0 };
                if kind == Pawn && rank_of(engine_mv.to) == last_rank && engine_mv.promo.is_none() {
                    return Err(KernelError::illegal(mv.token(), "promotion-required"));
                }
                if !candidates.contains(&engine_mv) {
                    return Err(KernelError::illegal(mv.token(), "bad-promotion"));
                }
            }
        }
        if self.leaves_king_exposed(&engine_mv, side) {
            return Err(KernelError::illegal(mv.token(), "king-left-in-check"));
        }
        self.make_raw(&engine_mv, side);
        self.key_history.push(self.position_key());
        Ok(())
    }

    fn status(&self, to_move: PlayerSide) -> Outcome {
        if self.legal_engine_moves(to_move).is_empty() {
            return if self.in_check(to_move) {
                Outcome::win_for(to_move.opponent())
            } else {
                Outcome::Draw
            };
        }
        if self.repetition_count() >= 3 {
            return Outcome::Draw;
        }
        if self.config.fifty_move_rule && self.halfmove_clock >= 100 {
            return Outcome::Draw;
        }
        if self.config.insufficient_material_rule && self.insufficient_material() {
            return Outcome::Draw;
        }
        Outcome::Ongoing
    }

    fn encode_rows(&self, _perspective: Perspective) -> String {
        let mut out = String::with_capacity(72);
        for rank in (0..8).rev() {
            for file in 0..8 {
                out.push(match self.cells[sq(file, rank) as usize] {
                    None => '.',
                    Some((side, kind)) => piece_char(side, kind),
                });
            }
            out.push('\n');
        }
        out
    }

    fn parse_token(&self, actor: PlayerSide, token: &str) -> Result<Move, KernelError> {
        let engine_mv = EngineMove::parse(token)
            .ok_or_else(|| KernelError::bad_token(token, "expected <from><to>[qrbn]"))?;
        Ok(Move::new(actor, &engine_mv.token()))
    }

    fn heuristic(&self, side: PlayerSide) -> i32 {
        self.material(side)
    }

    fn material(&self, side: PlayerSide) -> i32 {
        let mut score = 0;
        for s in 0..64u8 {
            if let Some((owner, kind)) = self.cells[s as usize] {
                let value = match kind {
                    Pawn => 1,
                    Knight | Bishop => 3,
                    Rook => 5,
                    Queen => 9,
                    King => 0,
                };
                if owner == side {
                    score += value;
                } else {
                    score -= value;
                }
            }
        }
        score
    }
}
