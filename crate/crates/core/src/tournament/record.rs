//! Match transcripts and their persistence. Records append to one JSONL file
//! per game kind plus a manifest index; replaying a record's move list through
//! the engine must reproduce its outcome and round count, and `verify` checks
//! exactly that.

use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::agents::Emotion;
use crate::freestyle::grammar;
use crate::kernel::{GameKind, GameState, Outcome, PlayerSide};
use crate::rating::PlayerId;

/// One move with the agent response that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundEntry {
    pub round: u32,
    pub actor: PlayerSide,
    pub mv: String,
    pub emotion: Emotion,
    pub analysis: String,
    #[serde(default)]
    pub fallback: bool,
}

/// Full transcript of one match.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameRecord {
    pub match_id: String,
    pub game: GameKind,
    pub cycle: u32,
    /// Player id moving first.
    pub first: PlayerId,
    /// Player id moving second.
    pub second: PlayerId,
    /// Negotiated rules in canonical grammar text (free-style only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules_text: Option<String>,
    pub rounds: Vec<RoundEntry>,
    pub outcome: Outcome,
    pub round_count: u32,
    #[serde(default)]
    pub forfeit: bool,
    #[serde(default)]
    pub negotiation_failed: bool,
    /// Wall-clock seconds since the epoch; absent in reproducible runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("record {match_id} is corrupt at round {round}: {reason}")]
    CorruptRecord {
        match_id: String,
        round: u32,
        reason: String,
    },
    #[error("record store error: {0}")]
    Store(String),
}

impl GameRecord {
    pub fn player_on(&self, side: PlayerSide) -> &str {
        match side {
            PlayerSide::First => &self.first,
            PlayerSide::Second => &self.second,
        }
    }

    /// Winner's player id, if the match was decided.
    pub fn winner(&self) -> Option<&str> {
        self.outcome.winner().map(|side| self.player_on(side))
    }

    fn corrupt(&self, round: u32, reason: String) -> RecordError {
        RecordError::CorruptRecord {
            match_id: self.match_id.clone(),
            round,
            reason,
        }
    }

    /// Rebuild the initial state this record started from.
    pub fn initial_state(&self) -> Result<GameState, RecordError> {
        match self.game {
            GameKind::FreeStyle => {
                let text = self
                    .rules_text
                    .as_ref()
                    .ok_or_else(|| self.corrupt(0, "free-style record without rules".into()))?;
                let rules = grammar::parse(text)
                    .map_err(|e| self.corrupt(0, format!("bad rules text: {e}")))?;
                GameState::new_freestyle(rules)
                    .map_err(|e| self.corrupt(0, format!("rules rejected: {e}")))
            }
            kind => GameState::new(kind).map_err(|e| self.corrupt(0, e.to_string())),
        }
    }

    /// Replay the moves through the engine, checking legality along the way
    /// and the stored outcome and round count at the end. Returns the state
    /// after every round (initial state first) for rendering.
    pub fn replay(&self) -> Result<Vec<GameState>, RecordError> {
        if self.negotiation_failed {
            return Ok(Vec::new());
        }
        let mut state = self.initial_state()?;
        let mut frames = vec![state.clone()];
        for entry in &self.rounds {
            if entry.actor != state.to_move() {
                return Err(self.corrupt(entry.round, "actor out of turn".into()));
            }
            let mv = state
                .parse_move(&entry.mv)
                .map_err(|e| self.corrupt(entry.round, e.to_string()))?;
            state = state
                .apply(&mv)
                .map_err(|e| self.corrupt(entry.round, e.to_string()))?;
            frames.push(state.clone());
        }
        if self.round_count as usize != self.rounds.len() {
            return Err(self.corrupt(
                self.round_count,
                format!(
                    "round_count {} disagrees with {} stored rounds",
                    self.round_count,
                    self.rounds.len()
                ),
            ));
        }
        let final_status = frames.last().expect("at least the initial state").status();
        if self.forfeit {
            // a forfeited game stops mid-board; only the moves are checked
            return Ok(frames);
        }
        if final_status != self.outcome {
            return Err(self.corrupt(
                self.round_count,
                format!(
                    "replayed outcome {:?} disagrees with stored {:?}",
                    final_status, self.outcome
                ),
            ));
        }
        Ok(frames)
    }

    /// Replay invariant check without keeping the frames.
    pub fn verify(&self) -> Result<(), RecordError> {
        self.replay().map(|_| ())
    }
}

/// Append-only record persistence: one `<game>.jsonl` per game kind and a
/// `manifest.jsonl` indexing match ids. A truncated trailing line (interrupted
/// run) is ignored on load, so resume picks up exactly after the last complete
/// record.
#[derive(Debug, Clone)]
pub struct RecordStore {
    dir: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ManifestEntry {
    match_id: String,
    game: GameKind,
    cycle: u32,
    file: String,
}

impl RecordStore {
    pub fn open(dir: impl AsRef<Path>) -> Result<RecordStore, RecordError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| RecordError::Store(e.to_string()))?;
        Ok(RecordStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn game_file(&self, game: GameKind) -> PathBuf {
        self.dir.join(format!("{}.jsonl", game.name()))
    }

    fn manifest_file(&self) -> PathBuf {
        self.dir.join("manifest.jsonl")
    }

    pub fn append(&self, record: &GameRecord) -> Result<(), RecordError> {
        let line = serde_json::to_string(record).map_err(|e| RecordError::Store(e.to_string()))?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.game_file(record.game))
            .map_err(|e| RecordError::Store(e.to_string()))?;
        writeln!(file, "{line}").map_err(|e| RecordError::Store(e.to_string()))?;
        let entry = ManifestEntry {
            match_id: record.match_id.clone(),
            game: record.game,
            cycle: record.cycle,
            file: format!("{}.jsonl", record.game.name()),
        };
        let mline =
            serde_json::to_string(&entry).map_err(|e| RecordError::Store(e.to_string()))?;
        let mut manifest = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.manifest_file())
            .map_err(|e| RecordError::Store(e.to_string()))?;
        writeln!(manifest, "{mline}").map_err(|e| RecordError::Store(e.to_string()))?;
        Ok(())
    }

    /// All complete records of one game, in append order.
    pub fn load_game(&self, game: GameKind) -> Result<Vec<GameRecord>, RecordError> {
        let path = self.game_file(game);
        if !path.exists() {
            return Ok(Vec::new());
        }
        let text = fs::read_to_string(&path).map_err(|e| RecordError::Store(e.to_string()))?;
        let mut out = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<GameRecord>(line) {
                Ok(r) => out.push(r),
                // an interrupted append leaves a partial trailing line
                Err(_) => break,
            }
        }
        Ok(out)
    }

    pub fn load_all(&self) -> Result<Vec<GameRecord>, RecordError> {
        let mut out = Vec::new();
        for kind in GameKind::ALL {
            out.extend(self.load_game(kind)?);
        }
        Ok(out)
    }

    pub fn find(&self, match_id: &str) -> Result<Option<GameRecord>, RecordError> {
        Ok(self
            .load_all()?
            .into_iter()
            .find(|r| r.match_id == match_id))
    }

    pub fn existing_ids(&self) -> Result<BTreeSet<String>, RecordError> {
        Ok(self.load_all()?.into_iter().map(|r| r.match_id).collect())
    }
}
