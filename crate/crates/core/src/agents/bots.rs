//! Scripted players: seeded random, 1-ply greedy, and depth-limited negamax.
//! They exist to exercise the whole tournament path at desk scale and to give
//! strength-ordering tests something with a known pecking order.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::freestyle::{grammar, RuleSet};
use crate::kernel::{GameKind, GameState, Move, Outcome, PlayerSide};

use super::{Agent, AgentError, Emotion};

/// Uniform choice over the legal moves.
pub fn random_policy(state: &GameState, rng: &mut ChaCha8Rng) -> Move {
    let legal = state.legal_moves().expect("policy needs an ongoing game");
    *legal.choose(rng).expect("ongoing game has moves")
}

/// Win now if possible, block an immediate loss where occupation can block,
/// otherwise maximize the 1-ply heuristic delta; ties break lexicographically.
pub fn greedy_policy(state: &GameState) -> Move {
    let me = state.to_move();
    let legal = state.legal_moves().expect("policy needs an ongoing game");

    // win-now
    for mv in &legal {
        if let Ok(next) = state.apply(mv) {
            if next.status() == Outcome::win_for(me) {
                return *mv;
            }
        }
    }
    // block-loss by occupying the opponent's winning cell (placement games)
    if occupancy_blocks(state.kind()) {
        if let Some(mv) = blocking_move(state, &legal) {
            return mv;
        }
    }
    // material / disc delta, first-in-sorted-order on ties
    let mut best = legal[0];
    let mut best_score = i32::MIN;
    for mv in &legal {
        if let Ok(next) = state.apply(mv) {
            let score = next.material_balance(me);
            if score > best_score {
                best_score = score;
                best = *mv;
            }
        }
    }
    best
}

fn occupancy_blocks(kind: GameKind) -> bool {
    matches!(
        kind,
        GameKind::TicTacToe | GameKind::Gomoku | GameKind::FreeStyle
    )
}

/// First legal move that lands on a cell where the opponent would win next.
fn blocking_move(state: &GameState, legal: &[Move]) -> Option<Move> {
    let me = state.to_move();
    let foe = me.opponent();
    // What could the opponent play if it were their turn? Simulate by giving
    // them each of our landing cells and checking for an immediate win.
    let mut danger_cells: Vec<&str> = Vec::new();
    for mv in legal {
        if mv.is_pass() {
            continue;
        }
        let Ok(foe_mv) = flip_actor(state, mv) else { continue };
        if let Ok(next) = apply_as(state, &foe_mv) {
            if next.status() == Outcome::win_for(foe) {
                danger_cells.push(mv.token());
            }
        }
    }
    if danger_cells.is_empty() {
        return None;
    }
    legal
        .iter()
        .find(|m| danger_cells.contains(&m.token()))
        .copied()
}

/// Parse `mv`'s token as if the opponent were to play it.
fn flip_actor(state: &GameState, mv: &Move) -> Result<Move, crate::kernel::KernelError> {
    let mirrored = state.mirror_for_opponent();
    mirrored.parse_move(mv.token())
}

fn apply_as(state: &GameState, mv: &Move) -> Result<GameState, crate::kernel::KernelError> {
    state.mirror_for_opponent().apply(mv)
}

/// Depth-limited negamax with alpha-beta; full depth for tic-tac-toe.
///
/// The exact search value is the primary key, so the bot never gives up a
/// won or drawn position. Equal-value moves tie-break by simulating the
/// continuation against a 1-ply blocker opponent (on small boards), then by
/// the positional heuristic — pure exploitation of imperfect opponents; a
/// perfect opponent still gets the game-theoretic line.
pub fn minimax_policy(state: &GameState, depth: Option<u32>) -> Move {
    let depth = depth.unwrap_or(default_depth(state.kind()));
    let me = state.to_move();
    let legal = state.legal_moves().expect("policy needs an ongoing game");
    let model_rollouts = legal.len() <= 9;
    let mut best = legal[0];
    let mut best_key = (i64::MIN, i64::MIN, i64::MIN);
    for mv in &legal {
        let Ok(next) = state.apply(mv) else { continue };
        // full window at the root: exact values keep the tie-break sound
        let value = -negamax(
            &next,
            depth.saturating_sub(1),
            -WIN_VALUE,
            WIN_VALUE,
            me.opponent(),
            1,
        );
        let rollout = if model_rollouts && value.abs() < WIN_VALUE / 2 {
            blocker_rollout(&next, me, depth)
        } else {
            0
        };
        let key = (value, rollout, next.heuristic_score(me) as i64);
        if key > best_key {
            best_key = key;
            best = *mv;
        }
    }
    best
}

/// Plain (value, heuristic) search move, used inside rollouts.
fn search_move(state: &GameState, depth: u32) -> Move {
    let me = state.to_move();
    let legal = state.legal_moves().expect("ongoing game");
    let mut best = legal[0];
    let mut best_key = (i64::MIN, i64::MIN);
    for mv in &legal {
        let Ok(next) = state.apply(mv) else { continue };
        let value = -negamax(
            &next,
            depth.saturating_sub(1),
            -WIN_VALUE,
            WIN_VALUE,
            me.opponent(),
            1,
        );
        let key = (value, next.heuristic_score(me) as i64);
        if key > best_key {
            best_key = key;
            best = *mv;
        }
    }
    best
}

/// The opponent model: take a win, block the opponent's immediate win,
/// otherwise play the first legal move.
fn blocker_move(state: &GameState) -> Move {
    let me = state.to_move();
    let legal = state.legal_moves().expect("ongoing game");
    for mv in &legal {
        if let Ok(next) = state.apply(mv) {
            if next.status() == Outcome::win_for(me) {
                return *mv;
            }
        }
    }
    if occupancy_blocks(state.kind()) {
        if let Some(mv) = blocking_move(state, &legal) {
            return mv;
        }
    }
    legal[0]
}

/// Deterministic continuation against the blocker model, from a position
/// where the opponent moves next. Positive when the line wins, larger for
/// faster wins.
fn blocker_rollout(state: &GameState, me: PlayerSide, depth: u32) -> i64 {
    let mut current = state.clone();
    for ply in 0..12 {
        match current.status() {
            Outcome::Ongoing => {}
            Outcome::Draw => return 0,
            outcome => {
                return if outcome.winner() == Some(me) {
                    1000 - ply
                } else {
                    -1000 + ply
                };
            }
        }
        let mv = if current.to_move() == me {
            search_move(&current, depth)
        } else {
            blocker_move(&current)
        };
        current = current.apply(&mv).expect("policy moves are legal");
    }
    0
}

const WIN_VALUE: i64 = 1_000_000;

fn default_depth(kind: GameKind) -> u32 {
    match kind {
        GameKind::TicTacToe => 9,
        GameKind::Gomoku => 1,
        GameKind::Reversi => 3,
        GameKind::Chess => 2,
        GameKind::FreeStyle => 2,
    }
}

fn negamax(
    state: &GameState,
    depth: u32,
    mut alpha: i64,
    beta: i64,
    perspective: PlayerSide,
    ply: i64,
) -> i64 {
    match state.status() {
        Outcome::Ongoing => {}
        Outcome::Draw => return 0,
        outcome => {
            // prefer quick wins and slow losses
            return if outcome.winner() == Some(perspective) {
                WIN_VALUE - ply
            } else {
                -WIN_VALUE + ply
            };
        }
    }
    if depth == 0 {
        return state.heuristic_score(perspective) as i64;
    }
    let legal = state.legal_moves().expect("ongoing game has moves");
    // promising-first ordering tightens the alpha-beta window early; the
    // returned value is order-independent
    let mut children: Vec<(i32, GameState)> = legal
        .iter()
        .filter_map(|mv| state.apply(mv).ok())
        .map(|next| (next.heuristic_score(perspective), next))
        .collect();
    children.sort_by_key(|(h, _)| -h);
    let mut best = i64::MIN + 1;
    for (_, next) in &children {
        let value = -negamax(next, depth - 1, -beta, -alpha, perspective.opponent(), ply + 1);
        best = best.max(value);
        alpha = alpha.max(value);
        if alpha >= beta {
            break;
        }
    }
    best
}

/// Deterministic emotion from the post-move position: winning feels Excited,
/// clear advantage Happy, clear deficit Sad, a lost-looking board Desperate.
fn emotion_for(state_after: &GameState, me: PlayerSide) -> Emotion {
    if state_after.status() == Outcome::win_for(me) {
        return Emotion::Excited;
    }
    let eval = state_after.heuristic_score(me);
    if eval <= -12 {
        Emotion::Desperate
    } else if eval <= -3 {
        Emotion::Sad
    } else if eval >= 3 {
        Emotion::Happy
    } else {
        Emotion::Peaceful
    }
}

fn wire_reply(state: &GameState, mv: Move, analysis: &str) -> String {
    let after = state.apply(&mv);
    let emotion = match &after {
        Ok(next) => emotion_for(next, state.to_move()),
        Err(_) => Emotion::Peaceful,
    };
    format!(
        "MOVE: {}\nEMOTION: {}\nANALYSIS: {}\n",
        mv.token(),
        emotion.letter(),
        analysis
    )
}

fn negotiation_reply(preferred: &RuleSet, on_table: Option<&RuleSet>) -> String {
    match on_table {
        None => grammar::print(preferred),
        Some(_) => "ACCEPT".to_string(),
    }
}

pub struct RandomBot {
    id: String,
    rng: ChaCha8Rng,
    preferred: RuleSet,
}

impl RandomBot {
    pub fn new(id: &str, seed: u64, preferred: RuleSet) -> RandomBot {
        RandomBot {
            id: id.to_string(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            preferred,
        }
    }
}

impl Agent for RandomBot {
    fn id(&self) -> &str {
        &self.id
    }

    fn play(&mut self, _prompt: &str, state: &GameState) -> Result<String, AgentError> {
        let mv = random_policy(state, &mut self.rng);
        Ok(wire_reply(state, mv, "random choice"))
    }

    fn negotiate(
        &mut self,
        _prompt: &str,
        on_table: Option<&RuleSet>,
    ) -> Result<String, AgentError> {
        Ok(negotiation_reply(&self.preferred, on_table))
    }
}

pub struct GreedyBot {
    id: String,
    preferred: RuleSet,
    // seed kept for spec parity; greedy itself is deterministic
    _rng: ChaCha8Rng,
}

impl GreedyBot {
    pub fn new(id: &str, seed: u64, preferred: RuleSet) -> GreedyBot {
        GreedyBot {
            id: id.to_string(),
            preferred,
            _rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Agent for GreedyBot {
    fn id(&self) -> &str {
        &self.id
    }

    fn play(&mut self, _prompt: &str, state: &GameState) -> Result<String, AgentError> {
        let mv = greedy_policy(state);
        Ok(wire_reply(state, mv, "one-ply lookahead"))
    }

    fn negotiate(
        &mut self,
        _prompt: &str,
        on_table: Option<&RuleSet>,
    ) -> Result<String, AgentError> {
        Ok(negotiation_reply(&self.preferred, on_table))
    }
}

pub struct MinimaxBot {
    id: String,
    depth: Option<u32>,
    preferred: RuleSet,
    _rng: ChaCha8Rng,
}

impl MinimaxBot {
    pub fn new(id: &str, seed: u64, depth: Option<u32>, preferred: RuleSet) -> MinimaxBot {
        MinimaxBot {
            id: id.to_string(),
            depth,
            preferred,
            _rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Agent for MinimaxBot {
    fn id(&self) -> &str {
        &self.id
    }

    fn play(&mut self, _prompt: &str, state: &GameState) -> Result<String, AgentError> {
        let mv = minimax_policy(state, self.depth);
        Ok(wire_reply(state, mv, "game-tree search"))
    }

    fn negotiate(
        &mut self,
        _prompt: &str,
        on_table: Option<&RuleSet>,
    ) -> Result<String, AgentError> {
        Ok(negotiation_reply(&self.preferred, on_table))
    }
}
