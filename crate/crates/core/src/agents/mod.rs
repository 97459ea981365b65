//! Players. Each round an agent receives a prompt and must answer with three
//! lines — a move, a self-reported emotion, and a short analysis:
//!
//! ```text
//! MOVE: e2e4
//! EMOTION: D
//! ANALYSIS: develops toward the center
//! ```
//!
//! Scripted bots (random / greedy / minimax) answer in the same wire format as
//! external endpoints, so the whole protocol path is exercised either way.
//! Malformed or illegal replies are retried with an appended `ERROR:` line;
//! after the retry budget the round falls back to a seeded random legal move,
//! flagged in the record. A silent agent forfeits the match.

pub mod bots;
pub mod external;
mod prompt;

pub use prompt::{build_negotiation_prompt, build_prompt};

use std::fmt;

use rand::seq::IndexedRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::freestyle::RuleSet;
use crate::kernel::{GameState, Move, PlayerSide};

/// Self-reported emotional state, one of five options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Emotion {
    Desperate,
    Sad,
    Peaceful,
    Happy,
    Excited,
}

impl Emotion {
    pub const ALL: [Emotion; 5] = [
        Emotion::Desperate,
        Emotion::Sad,
        Emotion::Peaceful,
        Emotion::Happy,
        Emotion::Excited,
    ];

    /// Option letter used on the wire (`A`–`E`).
    pub fn letter(self) -> char {
        match self {
            Emotion::Desperate => 'A',
            Emotion::Sad => 'B',
            Emotion::Peaceful => 'C',
            Emotion::Happy => 'D',
            Emotion::Excited => 'E',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Desperate => "Desperate",
            Emotion::Sad => "Sad",
            Emotion::Peaceful => "Peaceful",
            Emotion::Happy => "Happy",
            Emotion::Excited => "Excited",
        }
    }

    /// Sentiment score: Desperate −2 … Excited +2.
    pub fn score(self) -> i8 {
        match self {
            Emotion::Desperate => -2,
            Emotion::Sad => -1,
            Emotion::Peaceful => 0,
            Emotion::Happy => 1,
            Emotion::Excited => 2,
        }
    }

    /// Accepts the option letter or the spelled-out name, with or without the
    /// `D. Happy` decoration LLMs tend to echo back.
    pub fn parse(text: &str) -> Option<Emotion> {
        let t = text.trim().trim_end_matches('.');
        for e in Emotion::ALL {
            if t.eq_ignore_ascii_case(e.name()) || t.eq_ignore_ascii_case(&e.letter().to_string())
            {
                return Some(e);
            }
        }
        // forms like "D. Happy" / "d) happy"
        let mut chars = t.chars();
        let first = chars.next()?;
        let rest = chars.as_str().trim_start_matches(['.', ')', ':']).trim();
        for e in Emotion::ALL {
            if first.eq_ignore_ascii_case(&e.letter())
                && (rest.is_empty() || rest.eq_ignore_ascii_case(e.name()))
            {
                return Some(e);
            }
        }
        None
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What kind of player an [`AgentSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentKind {
    RandomBot,
    GreedyBot,
    MinimaxBot,
    External,
}

/// Declarative player description, as it appears in config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgentSpec {
    pub id: String,
    pub kind: AgentKind,
    /// URL (`http://…`) or command line; required for external agents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    /// Required for bots: makes every decision reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Minimax search depth override (defaults per game).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    /// Preferred free-style rules in grammar text; preset used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freestyle_rules: Option<String>,
}

fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("agent `{0}`: external agents need an endpoint")]
    MissingEndpoint(String),
    #[error("agent `{0}`: bots need a seed for reproducibility")]
    MissingSeed(String),
    #[error("agent `{0}`: bad freestyle_rules: {1}")]
    BadRules(String, String),
}

impl AgentSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        match self.kind {
            AgentKind::External => {
                if self.endpoint.is_none() {
                    return Err(SpecError::MissingEndpoint(self.id.clone()));
                }
            }
            _ => {
                if self.seed.is_none() {
                    return Err(SpecError::MissingSeed(self.id.clone()));
                }
            }
        }
        if let Some(text) = &self.freestyle_rules {
            let rules = crate::freestyle::grammar::parse(text)
                .map_err(|e| SpecError::BadRules(self.id.clone(), e.to_string()))?;
            rules
                .validate()
                .map_err(|e| SpecError::BadRules(self.id.clone(), e.to_string()))?;
        }
        Ok(())
    }

    /// Instantiate the described player.
    pub fn build(&self, limits: &ElicitLimits) -> Result<Box<dyn Agent>, SpecError> {
        self.build_seeded(limits, 0)
    }

    /// Instantiate with the bot seed folded together with `stream`, so each
    /// match draws from its own reproducible random sequence regardless of
    /// what ran before it.
    pub fn build_seeded(
        &self,
        limits: &ElicitLimits,
        stream: u64,
    ) -> Result<Box<dyn Agent>, SpecError> {
        self.validate()?;
        let preferred = match &self.freestyle_rules {
            Some(text) => crate::freestyle::grammar::parse(text)
                .map_err(|e| SpecError::BadRules(self.id.clone(), e.to_string()))?,
            None => RuleSet::flip_game(),
        };
        let seed = mix_seed(self.seed.unwrap_or(0), stream);
        Ok(match self.kind {
            AgentKind::RandomBot => Box::new(bots::RandomBot::new(&self.id, seed, preferred)),
            AgentKind::GreedyBot => Box::new(bots::GreedyBot::new(&self.id, seed, preferred)),
            AgentKind::MinimaxBot => Box::new(bots::MinimaxBot::new(
                &self.id,
                seed,
                self.depth,
                preferred,
            )),
            AgentKind::External => Box::new(external::ExternalAgent::new(
                &self.id,
                self.endpoint.clone().unwrap(),
                limits.timeout_secs,
                preferred,
            )),
        })
    }
}

/// Why an agent produced no usable reply at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AgentError {
    #[error("agent timed out after {0} s")]
    Timeout(u64),
    #[error("agent unreachable: {0}")]
    Unreachable(String),
}

/// A player. `play` and `negotiate` return the raw reply text; parsing and
/// validation live in the harness so every agent kind walks the same path.
pub trait Agent {
    fn id(&self) -> &str;
    fn play(&mut self, prompt: &str, state: &GameState) -> Result<String, AgentError>;
    fn negotiate(&mut self, prompt: &str, on_table: Option<&RuleSet>)
        -> Result<String, AgentError>;
}

/// Retry and timeout budgets for one elicitation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ElicitLimits {
    pub retries: u32,
    pub timeout_secs: u64,
}

impl Default for ElicitLimits {
    fn default() -> Self {
        ElicitLimits {
            retries: 3,
            timeout_secs: 60,
        }
    }
}

/// The three response fields as parsed off the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawResponse {
    pub move_token: String,
    pub emotion: Emotion,
    pub analysis: String,
}

/// Parse the three-line `MOVE:`/`EMOTION:`/`ANALYSIS:` reply.
pub fn parse_response(text: &str) -> Result<RawResponse, String> {
    let mut move_token = None;
    let mut emotion = None;
    let mut analysis = None;
    for line in text.lines() {
        let line = line.trim();
        if let Some(v) = line.strip_prefix("MOVE:") {
            move_token.get_or_insert_with(|| v.trim().to_string());
        } else if let Some(v) = line.strip_prefix("EMOTION:") {
            emotion.get_or_insert_with(|| v.trim().to_string());
        } else if let Some(v) = line.strip_prefix("ANALYSIS:") {
            analysis.get_or_insert_with(|| v.trim().to_string());
        }
    }
    let move_token = move_token.ok_or("missing MOVE line")?;
    let emotion_text = emotion.ok_or("missing EMOTION line")?;
    let analysis = analysis.ok_or("missing ANALYSIS line")?;
    let emotion = Emotion::parse(&emotion_text)
        .ok_or_else(|| format!("unknown emotion `{emotion_text}`"))?;
    if move_token.is_empty() {
        return Err("empty MOVE line".into());
    }
    Ok(RawResponse {
        move_token,
        emotion,
        analysis,
    })
}

/// A validated round contribution ready to enter the record.
#[derive(Debug, Clone)]
pub struct ElicitedRound {
    pub mv: Move,
    pub emotion: Emotion,
    pub analysis: String,
    /// True when the retry budget ran out and a random legal move was played.
    pub fallback: bool,
    pub retries_used: u32,
}

/// The silent-agent outcome: the match is forfeited by this side.
#[derive(Debug, Clone, thiserror::Error)]
#[error("agent `{agent}` forfeits: {cause}")]
pub struct Forfeit {
    pub agent: String,
    pub side: PlayerSide,
    pub cause: AgentError,
}

/// Ask `agent` for its move, enforcing the response contract.
///
/// Parse failures and illegal moves are retried with corrective feedback; once
/// `limits.retries` extra attempts are spent, a seeded random legal move is
/// substituted (emotion Peaceful, analysis "fallback") and the round flagged.
/// Timeouts and unreachable endpoints forfeit the match instead.
pub fn elicit(
    agent: &mut dyn Agent,
    prompt: &str,
    state: &GameState,
    limits: &ElicitLimits,
    rng: &mut ChaCha8Rng,
) -> Result<ElicitedRound, Forfeit> {
    let legal = state
        .legal_moves()
        .expect("elicit requires an ongoing game");
    let mut attempt_prompt = prompt.to_string();
    for attempt in 0..=limits.retries {
        let reply = match agent.play(&attempt_prompt, state) {
            Ok(r) => r,
            Err(cause) => {
                return Err(Forfeit {
                    agent: agent.id().to_string(),
                    side: state.to_move(),
                    cause,
                })
            }
        };
        let error = match parse_response(&reply) {
            Ok(raw) => match state.parse_move(&raw.move_token) {
                Ok(mv) if legal.contains(&mv) => {
                    return Ok(ElicitedRound {
                        mv,
                        emotion: raw.emotion,
                        analysis: raw.analysis,
                        fallback: false,
                        retries_used: attempt,
                    });
                }
                Ok(_) => format!("move `{}` is not legal here", raw.move_token),
                Err(e) => e.to_string(),
            },
            Err(e) => e,
        };
        attempt_prompt = format!("{prompt}ERROR: {error}\n");
    }
    let mv = *legal.choose(rng).expect("ongoing game has a legal move");
    Ok(ElicitedRound {
        mv,
        emotion: Emotion::Peaceful,
        analysis: "fallback".to_string(),
        fallback: true,
        retries_used: limits.retries,
    })
}
