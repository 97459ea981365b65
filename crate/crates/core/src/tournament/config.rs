//! Tournament configuration, read from TOML. Validation reports the offending
//! field by name so config errors are actionable from the command line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::agents::{AgentSpec, ElicitLimits};
use crate::kernel::GameKind;
use crate::rating::EloParams;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentConfig {
    pub seed: u64,
    /// Game names; see [`GameKind::parse`].
    pub games: Vec<String>,
    /// Round-robin cycles per game.
    #[serde(default = "default_repeats")]
    pub repeats: u32,
    #[serde(default = "default_records_dir")]
    pub records_dir: String,
    /// Record wall-clock timestamps (off by default so reruns are
    /// byte-identical).
    #[serde(default)]
    pub wall_clock_timestamps: bool,
    #[serde(default)]
    pub elo: EloConfig,
    #[serde(default)]
    pub limits: LimitsConfig,
    pub players: Vec<AgentSpec>,
}

fn default_repeats() -> u32 {
    3
}

fn default_records_dir() -> String {
    "records".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EloConfig {
    #[serde(default = "default_initial_rating")]
    pub initial_rating: f64,
    #[serde(default = "default_k_factor")]
    pub k_factor: f64,
    /// Spread of the Gaussian cross-check model (σ), not used for scoring.
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    /// Apply the same expected score to both players (not zero-sum).
    #[serde(default)]
    pub literal_update: bool,
}

fn default_initial_rating() -> f64 {
    1500.0
}

fn default_k_factor() -> f64 {
    32.0
}

fn default_sigma() -> f64 {
    2.0_f64.sqrt() * 200.0
}

impl Default for EloConfig {
    fn default() -> Self {
        EloConfig {
            initial_rating: default_initial_rating(),
            k_factor: default_k_factor(),
            sigma: default_sigma(),
            literal_update: false,
        }
    }
}

impl EloConfig {
    pub fn params(&self) -> EloParams {
        EloParams {
            initial_rating: self.initial_rating,
            k_factor: self.k_factor,
            sigma: self.sigma,
            literal_update: self.literal_update,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    /// Extra attempts after a malformed or illegal reply.
    #[serde(default = "default_retries")]
    pub retries: u32,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: u64,
    /// Max messages in a rule negotiation.
    #[serde(default = "default_negotiation_cap")]
    pub negotiation_cap: u32,
    /// Simple-cycle counting cap for loop statistics.
    #[serde(default = "default_loop_cap")]
    pub loop_cap: u64,
    /// Abort the run when this many matches were forfeited.
    #[serde(default = "default_max_forfeits")]
    pub max_forfeits: u32,
    /// Engine-invariant safety net; no legal game reaches this.
    #[serde(default = "default_max_rounds")]
    pub max_rounds_per_match: u32,
}

fn default_retries() -> u32 {
    3
}

fn default_timeout_secs() -> u64 {
    60
}

fn default_negotiation_cap() -> u32 {
    10
}

fn default_loop_cap() -> u64 {
    10_000_000
}

fn default_max_forfeits() -> u32 {
    u32::MAX
}

fn default_max_rounds() -> u32 {
    10_000
}

impl Default for LimitsConfig {
    fn default() -> Self {
        LimitsConfig {
            retries: default_retries(),
            timeout_secs: default_timeout_secs(),
            negotiation_cap: default_negotiation_cap(),
            loop_cap: default_loop_cap(),
            max_forfeits: default_max_forfeits(),
            max_rounds_per_match: default_max_rounds(),
        }
    }
}

impl LimitsConfig {
    pub fn elicit_limits(&self) -> ElicitLimits {
        ElicitLimits {
            retries: self.retries,
            timeout_secs: self.timeout_secs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(String),
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        reason: reason.into(),
    }
}

impl TournamentConfig {
    pub fn from_toml(text: &str) -> Result<TournamentConfig, ConfigError> {
        let config: TournamentConfig =
            toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<TournamentConfig, ConfigError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| ConfigError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_toml(&text)
    }

    pub fn game_kinds(&self) -> Result<Vec<GameKind>, ConfigError> {
        let mut kinds = Vec::new();
        for name in &self.games {
            let kind = GameKind::parse(name)
                .ok_or_else(|| invalid("games", format!("unknown game `{name}`")))?;
            if kinds.contains(&kind) {
                return Err(invalid("games", format!("game `{name}` listed twice")));
            }
            kinds.push(kind);
        }
        Ok(kinds)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.players.len() < 2 {
            return Err(invalid("players", "need at least 2 players"));
        }
        if self.games.is_empty() {
            return Err(invalid("games", "need at least one game"));
        }
        self.game_kinds()?;
        if self.repeats == 0 {
            return Err(invalid("repeats", "must be at least 1"));
        }
        let mut ids = std::collections::BTreeSet::new();
        for spec in &self.players {
            if spec.id.is_empty() {
                return Err(invalid("players.id", "empty player id"));
            }
            if !spec
                .id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.')
            {
                return Err(invalid(
                    "players.id",
                    format!("id `{}` may use only [A-Za-z0-9._-]", spec.id),
                ));
            }
            if !ids.insert(spec.id.clone()) {
                return Err(invalid(
                    "players.id",
                    format!("duplicate player id `{}`", spec.id),
                ));
            }
            spec.validate()
                .map_err(|e| invalid("players", e.to_string()))?;
        }
        if self.elo.k_factor <= 0.0 {
            return Err(invalid("elo.k_factor", "must be positive"));
        }
        if self.elo.sigma <= 0.0 {
            return Err(invalid("elo.sigma", "must be positive"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"
seed = 42
games = ["tictactoe", "reversi"]
repeats = 2

[[players]]
id = "mini"
kind = "minimax_bot"
seed = 1

[[players]]
id = "rando"
kind = "random_bot"
seed = 2
"#;

    #[test]
    fn demo_config_parses_with_defaults() {
        let config = TournamentConfig::from_toml(DEMO).unwrap();
        assert_eq!(config.repeats, 2);
        assert_eq!(config.limits.retries, 3);
        assert_eq!(config.elo.k_factor, 32.0);
        assert_eq!(config.game_kinds().unwrap().len(), 2);
        assert!(!config.wall_clock_timestamps);
    }

    #[test]
    fn single_player_is_rejected_naming_the_field() {
        let text = r#"
seed = 1
games = ["chess"]
[[players]]
id = "solo"
kind = "random_bot"
seed = 1
"#;
        match TournamentConfig::from_toml(text) {
            Err(ConfigError::Invalid { field, .. }) => assert_eq!(field, "players"),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn unknown_game_is_rejected() {
        let text = DEMO.replace("tictactoe", "checkers");
        match TournamentConfig::from_toml(&text) {
            Err(ConfigError::Invalid { field, .. }) => assert_eq!(field, "games"),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn bot_without_seed_is_rejected() {
        let text = DEMO.replace("seed = 2\n", "");
        assert!(TournamentConfig::from_toml(&text).is_err());
    }

    #[test]
    fn external_without_endpoint_is_rejected() {
        let text = DEMO.replace("kind = \"random_bot\"", "kind = \"external\"");
        assert!(TournamentConfig::from_toml(&text).is_err());
    }

    #[test]
    fn weird_player_ids_are_rejected() {
        let text = DEMO.replace("rando", "ran,do");
        assert!(TournamentConfig::from_toml(&text).is_err());
    }
}
