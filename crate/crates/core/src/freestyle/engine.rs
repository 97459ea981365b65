//! Interpreter that plays any validated [`RuleSet`] on the 5×5 board.
//!
//! Move tokens are `<cell>` for marks, `<cell>=<value>` for integers, and
//! `pass` when the rules leave a player without a placement. Two consecutive
//! passes end any game regardless of its termination predicate, so every
//! rule set yields finite games.

use super::{
    Budget, Effect, PieceDomain, PlacementLaw, RuleSet, RuleSetError, Termination, Visibility,
    WinCondition, BOARD_SIZE,
};
use crate::kernel::{cell_token, parse_cell, BoardOps, KernelError, Move, Outcome, Perspective, PlayerSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Placed {
    owner: PlayerSide,
    value: Option<u8>,
}

#[derive(Debug, Clone)]
pub struct EngineBoard {
    rules: RuleSet,
    cells: [Option<Placed>; BOARD_SIZE * BOARD_SIZE],
    spent: [u32; 2],
    rounds_played: u32,
    consecutive_passes: u8,
}

#[inline]
fn idx(file: usize, rank: usize) -> usize {
    rank * BOARD_SIZE + file
}

fn neighbors(file: usize, rank: usize) -> impl Iterator<Item = (usize, usize)> {
    let (f, r) = (file as i32, rank as i32);
    [(f - 1, r), (f + 1, r), (f, r - 1), (f, r + 1)]
        .into_iter()
        .filter(|&(nf, nr)| {
            (0..BOARD_SIZE as i32).contains(&nf) && (0..BOARD_SIZE as i32).contains(&nr)
        })
        .map(|(nf, nr)| (nf as usize, nr as usize))
}

impl EngineBoard {
    pub(crate) fn new(rules: RuleSet) -> Result<EngineBoard, RuleSetError> {
        rules.validate()?;
        Ok(EngineBoard {
            rules,
            cells: [None; BOARD_SIZE * BOARD_SIZE],
            spent: [0, 0],
            rounds_played: 0,
            consecutive_passes: 0,
        })
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    fn value_range(&self) -> Option<(u8, u8, Option<Budget>)> {
        match self.rules.pieces {
            PieceDomain::Marks => None,
            PieceDomain::Integers { min, max, budget } => Some((min, max, budget)),
        }
    }

    fn remaining_budget(&self, side: PlayerSide) -> Option<u32> {
        let (_, _, budget) = self.value_range()?;
        let b = budget?;
        let used = if b.shared {
            self.spent[0] + self.spent[1]
        } else {
            self.spent[side.index()]
        };
        Some(b.limit.saturating_sub(used))
    }

    /// Empty cells the placement law allows right now.
    fn placeable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let empty_board = self.cells.iter().all(|c| c.is_none());
        for rank in 0..BOARD_SIZE {
            for file in 0..BOARD_SIZE {
                if self.cells[idx(file, rank)].is_some() {
                    continue;
                }
                let allowed = match &self.rules.placement {
                    PlacementLaw::AnyEmptyCell => true,
                    PlacementLaw::ColumnRestricted { columns } => {
                        columns.contains(&(file as u8 + 1))
                    }
                    PlacementLaw::AdjacencyRestricted => {
                        empty_board
                            || neighbors(file, rank)
                                .any(|(nf, nr)| self.cells[idx(nf, nr)].is_some())
                    }
                };
                if allowed {
                    out.push((file, rank));
                }
            }
        }
        out
    }

    /// The placeable region is exhausted (termination `board-full`).
    fn region_full(&self) -> bool {
        match &self.rules.placement {
            PlacementLaw::ColumnRestricted { columns } => columns.iter().all(|&c| {
                (0..BOARD_SIZE).all(|rank| self.cells[idx(c as usize - 1, rank)].is_some())
            }),
            _ => self.cells.iter().all(|c| c.is_some()),
        }
    }

    fn budget_exhausted(&self) -> bool {
        let Some((min, _, Some(_))) = self.value_range() else {
            return false;
        };
        [PlayerSide::First, PlayerSide::Second].iter().all(|&side| {
            self.remaining_budget(side)
                .map(|left| left < min as u32)
                .unwrap_or(false)
        })
    }

    fn line_of_k(&self, side: PlayerSide, k: u8) -> bool {
        let k = k as i32;
        for rank in 0..BOARD_SIZE as i32 {
            for file in 0..BOARD_SIZE as i32 {
                for (df, dr) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
                    let mut run = 0;
                    let (mut f, mut r) = (file, rank);
                    while (0..BOARD_SIZE as i32).contains(&f)
                        && (0..BOARD_SIZE as i32).contains(&r)
                        && matches!(
                            self.cells[idx(f as usize, r as usize)],
                            Some(p) if p.owner == side
                        )
                    {
                        run += 1;
                        if run >= k {
                            return true;
                        }
                        f += df;
                        r += dr;
                    }
                }
            }
        }
        false
    }

    fn counts(&self) -> (u32, u32) {
        let mut first = 0;
        let mut second = 0;
        for cell in self.cells.iter().flatten() {
            match cell.owner {
                PlayerSide::First => first += 1,
                PlayerSide::Second => second += 1,
            }
        }
        (first, second)
    }

    pub(crate) fn row_sums(&self) -> Vec<(u32, u32)> {
        (0..BOARD_SIZE)
            .map(|rank| {
                let mut first = 0;
                let mut second = 0;
                for file in 0..BOARD_SIZE {
                    if let Some(p) = self.cells[idx(file, rank)] {
                        let v = p.value.unwrap_or(0) as u32;
                        match p.owner {
                            PlayerSide::First => first += v,
                            PlayerSide::Second => second += v,
                        }
                    }
                }
                (first, second)
            })
            .collect()
    }

    fn is_over(&self) -> bool {
        if self.consecutive_passes >= 2 {
            return true;
        }
        if let WinCondition::LineOfK { k } = self.rules.win {
            if self.line_of_k(PlayerSide::First, k) || self.line_of_k(PlayerSide::Second, k) {
                return true;
            }
        }
        match self.rules.termination {
            Termination::BoardFull => self.region_full(),
            Termination::FixedRounds { rounds } => self.rounds_played >= rounds,
            Termination::BudgetExhausted => self.budget_exhausted(),
        }
    }

    fn final_outcome(&self, to_move: PlayerSide) -> Outcome {
        match self.rules.win {
            WinCondition::LineOfK { k } => {
                // only the last mover can have just completed a line
                let last = to_move.opponent();
                if self.line_of_k(last, k) {
                    return Outcome::win_for(last);
                }
                if self.line_of_k(to_move, k) {
                    return Outcome::win_for(to_move);
                }
                Outcome::Draw
            }
            WinCondition::MajorityCount => {
                let (first, second) = self.counts();
                match first.cmp(&second) {
                    std::cmp::Ordering::Greater => Outcome::FirstWins,
                    std::cmp::Ordering::Less => Outcome::SecondWins,
                    std::cmp::Ordering::Equal => Outcome::Draw,
                }
            }
            WinCondition::RowPoints => {
                let mut first = 0;
                let mut second = 0;
                for (a, b) in self.row_sums() {
                    if a > b {
                        first += 1;
                    } else if b > a {
                        second += 1;
                    }
                }
                match first.cmp(&second) {
                    std::cmp::Ordering::Greater => Outcome::FirstWins,
                    std::cmp::Ordering::Less => Outcome::SecondWins,
                    std::cmp::Ordering::Equal => Outcome::Draw,
                }
            }
        }
    }

    /// Token as shown to `viewer`: hidden opponent values render as `?`.
    pub(crate) fn masked_token(&self, mv: &Move, viewer: PlayerSide, game_over: bool) -> String {
        let token = mv.token();
        if self.rules.visibility == Visibility::HiddenUntilEnd
            && !game_over
            && mv.actor() != viewer
        {
            if let Some((cell, _)) = token.split_once('=') {
                return format!("{cell}=?");
            }
        }
        token.to_string()
    }

    fn parse_parts(token: &str) -> (&str, Option<&str>) {
        match token.split_once('=') {
            Some((cell, value)) => (cell, Some(value)),
            None => (token, None),
        }
    }
}

impl BoardOps for EngineBoard {
    fn legal_moves(&self, to_move: PlayerSide) -> Vec<Move> {
        let cells = self.placeable_cells();
        let mut out = Vec::new();
        match self.value_range() {
            None => {
                for (file, rank) in cells {
                    out.push(Move::new(to_move, &cell_token(file, rank)));
                }
            }
            Some((min, max, budget)) => {
                let affordable_max = match budget {
                    Some(_) => {
                        let left = self.remaining_budget(to_move).unwrap_or(0);
                        if (min as u32) > left {
                            // cannot afford any value anywhere
                            return vec![Move::new(to_move, "pass")];
                        }
                        left.min(max as u32) as u8
                    }
                    None => max,
                };
                for (file, rank) in cells {
                    for v in min..=affordable_max {
                        out.push(Move::new(
                            to_move,
                            &format!("{}={}", cell_token(file, rank), v),
                        ));
                    }
                }
            }
        }
        if out.is_empty() {
            vec![Move::new(to_move, "pass")]
        } else {
            out
        }
    }

    fn apply_in_place(&mut self, mv: &Move) -> Result<(), KernelError> {
        if mv.is_pass() {
            // pass is the forced move when nothing is placeable
            let had_moves = {
                let moves = self.legal_moves(mv.actor());
                !(moves.len() == 1 && moves[0].is_pass())
            };
            if had_moves {
                return Err(KernelError::illegal(mv.token(), "must-place-when-able"));
            }
            self.consecutive_passes += 1;
            self.rounds_played += 1;
            return Ok(());
        }
        let (cell, value_part) = Self::parse_parts(mv.token());
        let (file, rank) =
            parse_cell(cell, BOARD_SIZE).map_err(|r| KernelError::bad_token(mv.token(), &r))?;
        if self.cells[idx(file, rank)].is_some() {
            return Err(KernelError::illegal(mv.token(), "cell-occupied"));
        }
        let allowed = match &self.rules.placement {
            PlacementLaw::AnyEmptyCell => true,
            PlacementLaw::ColumnRestricted { columns } => columns.contains(&(file as u8 + 1)),
            PlacementLaw::AdjacencyRestricted => {
                self.cells.iter().all(|c| c.is_none())
                    || neighbors(file, rank).any(|(nf, nr)| self.cells[idx(nf, nr)].is_some())
            }
        };
        if !allowed {
            return Err(KernelError::illegal(mv.token(), "placement-law"));
        }
        let value = match (self.value_range(), value_part) {
            (None, None) => None,
            (None, Some(_)) => {
                return Err(KernelError::illegal(mv.token(), "marks-carry-no-value"))
            }
            (Some(_), None) => {
                return Err(KernelError::illegal(mv.token(), "value-required"))
            }
            (Some((min, max, budget)), Some(raw)) => {
                let v: u8 = raw
                    .parse()
                    .map_err(|_| KernelError::bad_token(mv.token(), "value is not a number"))?;
                if v < min || v > max {
                    return Err(KernelError::illegal(mv.token(), "value-out-of-range"));
                }
                if budget.is_some() {
                    let left = self.remaining_budget(mv.actor()).unwrap_or(0);
                    if v as u32 > left {
                        return Err(KernelError::illegal(mv.token(), "budget-exceeded"));
                    }
                }
                Some(v)
            }
        };
        self.cells[idx(file, rank)] = Some(Placed {
            owner: mv.actor(),
            value,
        });
        if let Some(v) = value {
            self.spent[mv.actor().index()] += v as u32;
        }
        if self.rules.effect == Effect::FlipNeighbors {
            for (nf, nr) in neighbors(file, rank) {
                if let Some(p) = &mut self.cells[idx(nf, nr)] {
                    p.owner = p.owner.opponent();
                }
            }
        }
        self.consecutive_passes = 0;
        self.rounds_played += 1;
        Ok(())
    }

    fn status(&self, to_move: PlayerSide) -> Outcome {
        if self.is_over() {
            self.final_outcome(to_move)
        } else {
            Outcome::Ongoing
        }
    }

    fn encode_rows(&self, perspective: Perspective) -> String {
        let game_over = self.is_over();
        let integers = matches!(self.rules.pieces, PieceDomain::Integers { .. });
        let mut out = String::new();
        for rank in (0..BOARD_SIZE).rev() {
            let mut row: Vec<String> = Vec::with_capacity(BOARD_SIZE);
            for file in 0..BOARD_SIZE {
                let text = match self.cells[idx(file, rank)] {
                    None => ".".to_string(),
                    Some(p) => {
                        let owner = match p.owner {
                            PlayerSide::First => 'b',
                            PlayerSide::Second => 'w',
                        };
                        if !integers {
                            owner.to_string()
                        } else {
                            let hide = self.rules.visibility == Visibility::HiddenUntilEnd
                                && !game_over
                                && match perspective {
                                    Perspective::Omniscient => false,
                                    Perspective::Player(viewer) => viewer != p.owner,
                                };
                            if hide {
                                format!("{owner}?")
                            } else {
                                format!("{owner}{}", p.value.unwrap_or(0))
                            }
                        }
                    }
                };
                row.push(text);
            }
            if integers {
                out.push_str(&row.join(" "));
            } else {
                out.push_str(&row.concat());
            }
            out.push('\n');
        }
        out
    }

    fn parse_token(&self, actor: PlayerSide, token: &str) -> Result<Move, KernelError> {
        if token == "pass" {
            return Ok(Move::new(actor, "pass"));
        }
        let (cell, value_part) = Self::parse_parts(token);
        let (file, rank) =
            parse_cell(cell, BOARD_SIZE).map_err(|r| KernelError::bad_token(token, &r))?;
        match (self.value_range(), value_part) {
            (None, None) => Ok(Move::new(actor, &cell_token(file, rank))),
            (Some(_), Some(raw)) => {
                let v: u8 = raw
                    .parse()
                    .map_err(|_| KernelError::bad_token(token, "value is not a number"))?;
                Ok(Move::new(actor, &format!("{}={}", cell_token(file, rank), v)))
            }
            (None, Some(_)) => Err(KernelError::bad_token(token, "this game has plain marks")),
            (Some(_), None) => Err(KernelError::bad_token(token, "expected `<cell>=<value>`")),
        }
    }

    fn heuristic(&self, side: PlayerSide) -> i32 {
        self.material(side)
    }

    fn material(&self, side: PlayerSide) -> i32 {
        match self.rules.win {
            WinCondition::RowPoints => {
                let mut score = 0;
                for (a, b) in self.row_sums() {
                    score += a as i32 - b as i32;
                }
                if side == PlayerSide::First {
                    score
                } else {
                    -score
                }
            }
            _ => {
                let (first, second) = self.counts();
                let diff = first as i32 - second as i32;
                if side == PlayerSide::First {
                    diff
                } else {
                    -diff
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::GameState;

    fn flip_state() -> GameState {
        GameState::new_freestyle(RuleSet::flip_game()).unwrap()
    }

    fn hidden_state() -> GameState {
        GameState::new_freestyle(RuleSet::hidden_numbers()).unwrap()
    }

    #[test]
    fn flip_game_opens_with_25_moves() {
        let state = flip_state();
        assert_eq!(state.legal_moves().unwrap().len(), 25);
    }

    #[test]
    fn placement_flips_adjacent_marks() {
        let state = flip_state();
        let state = state.apply(&state.parse_move("b2").unwrap()).unwrap();
        let state = state.apply(&state.parse_move("b3").unwrap()).unwrap();
        // white at b3 flips black b2 to white
        let text = state.encode_board();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[2], ".w..."); // rank 3
        assert_eq!(lines[3], ".w..."); // rank 2: flipped
    }

    #[test]
    fn hidden_numbers_restricts_columns_and_budget() {
        let state = hidden_state();
        let moves = state.legal_moves().unwrap();
        // 10 cells (columns a and e) × 16 values
        assert_eq!(moves.len(), 160);
        assert!(moves.iter().all(|m| {
            let cell = &m.token()[..1];
            cell == "a" || cell == "e"
        }));
        let err = state
            .apply(&state.parse_move("c3=5").unwrap())
            .unwrap_err();
        match err {
            KernelError::IllegalMove { rule, .. } => assert_eq!(rule, "placement-law"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_is_enforced_per_placement() {
        let state = hidden_state();
        let state = state.apply(&state.parse_move("a1=15").unwrap()).unwrap();
        let state = state.apply(&state.parse_move("e1=10").unwrap()).unwrap();
        // first player already spent the full budget of 15
        let err = state
            .apply(&state.parse_move("a2=1").unwrap())
            .unwrap_err();
        match err {
            KernelError::IllegalMove { rule, .. } => assert_eq!(rule, "budget-exceeded"),
            other => panic!("unexpected {other:?}"),
        }
        // zero placements stay legal
        assert!(state.apply(&state.parse_move("a2=0").unwrap()).is_ok());
    }

    #[test]
    fn hidden_values_mask_for_the_opponent_until_the_end() {
        let state = hidden_state();
        let state = state.apply(&state.parse_move("a1=7").unwrap()).unwrap();
        let own = state.encode_board_for(Perspective::Player(PlayerSide::First));
        let foe = state.encode_board_for(Perspective::Player(PlayerSide::Second));
        let all = state.encode_board();
        assert!(own.contains("b7"), "owner sees own value: {own}");
        assert!(foe.contains("b?"), "opponent sees a mask: {foe}");
        assert!(all.contains("b7"), "omniscient sees value: {all}");
    }

    #[test]
    fn hidden_game_runs_exactly_ten_placements() {
        let mut state = hidden_state();
        let mut rounds = 0;
        while !state.status().is_terminal() {
            let moves = state.legal_moves().unwrap();
            // deterministic playout: always choose the first sorted move
            state = state.apply(&moves[0]).unwrap();
            rounds += 1;
            assert!(rounds <= 30, "game must terminate");
        }
        assert_eq!(rounds, 10);
        // after termination the board reveals values to both players
        let foe_view = state.encode_board_for(Perspective::Player(PlayerSide::Second));
        assert!(!foe_view.contains('?'), "{foe_view}");
    }

    #[test]
    fn row_points_score_counts_row_wins() {
        let mut state = hidden_state();
        // First stacks column a with 5,4,3,2,1; second puts 0s in column e.
        for (a, e) in [("a1=5", "e1=0"), ("a2=4", "e2=0"), ("a3=3", "e3=0"), ("a4=2", "e4=0"), ("a5=1", "e5=0")] {
            state = state.apply(&state.parse_move(a).unwrap()).unwrap();
            state = state.apply(&state.parse_move(e).unwrap()).unwrap();
        }
        assert_eq!(state.status(), Outcome::FirstWins);
        assert_eq!(super::super::row_points(&state), Some((5, 0)));
    }

    #[test]
    fn line_win_ends_the_game_immediately() {
        let mut rules = RuleSet::flip_game();
        rules.effect = Effect::None;
        rules.win = WinCondition::LineOfK { k: 3 };
        let mut state = GameState::new_freestyle(rules).unwrap();
        for tok in ["a1", "a5", "b1", "b5", "c1"] {
            let mv = state.parse_move(tok).unwrap();
            state = state.apply(&mv).unwrap();
        }
        assert_eq!(state.status(), Outcome::FirstWins);
        assert!(state.legal_moves().is_err());
    }

    #[test]
    fn invalid_rule_set_is_rejected_at_construction() {
        let mut rules = RuleSet::flip_game();
        rules.win = WinCondition::LineOfK { k: 6 };
        rules.effect = Effect::None;
        assert!(GameState::new_freestyle(rules).is_err());
    }
}
