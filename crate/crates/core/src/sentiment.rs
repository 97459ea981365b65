//! Positive Sentiment Score: emotions map to scores −2…+2 (Desperate,
//! Sad, Peaceful, Happy, Excited) and the PSS of a sample set is the expected
//! value of that score under the empirical distribution. Also bins samples
//! into round × score grids for time-series heatmaps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::agents::Emotion;
use crate::kernel::GameKind;
use crate::rating::PlayerId;

/// One captured emotion: who felt it, where, and when.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmotionSample {
    pub player: PlayerId,
    pub game: GameKind,
    pub match_id: String,
    pub round_index: u32,
    pub emotion: Emotion,
    /// The round was a fallback move rather than an accepted agent reply.
    pub fallback: bool,
}

impl EmotionSample {
    pub fn score(&self) -> i8 {
        self.emotion.score()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SentimentError {
    #[error("PSS of an empty sample list is undefined")]
    EmptySamples,
}

/// Expected emotion score over the samples: `Σ pᵢ·zᵢ`, in [−2, 2].
pub fn pss(samples: &[EmotionSample]) -> Result<f64, SentimentError> {
    if samples.is_empty() {
        return Err(SentimentError::EmptySamples);
    }
    let total: i64 = samples.iter().map(|s| s.score() as i64).sum();
    Ok(total as f64 / samples.len() as f64)
}

/// Frequency grid over (round bucket, score level).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeatmapGrid {
    pub round_bucket_width: u32,
    /// Score levels on the vertical axis, low to high.
    pub score_levels: Vec<i8>,
    /// (round bucket, score) → frequency; round `r` lands in bucket
    /// `(r − 1) / width`.
    pub bins: BTreeMap<(u32, i8), u64>,
    pub sample_count: u64,
}

impl HeatmapGrid {
    pub fn count(&self, round_bucket: u32, score: i8) -> u64 {
        self.bins.get(&(round_bucket, score)).copied().unwrap_or(0)
    }
}

/// Bin samples into a heatmap grid; insertion order does not matter.
pub fn heatmap(samples: &[EmotionSample], round_bucket_width: u32) -> HeatmapGrid {
    assert!(round_bucket_width >= 1, "bucket width must be at least 1");
    let mut bins: BTreeMap<(u32, i8), u64> = BTreeMap::new();
    for s in samples {
        let bucket = (s.round_index.saturating_sub(1)) / round_bucket_width;
        *bins.entry((bucket, s.score())).or_insert(0) += 1;
    }
    HeatmapGrid {
        round_bucket_width,
        score_levels: vec![-2, -1, 0, 1, 2],
        bins,
        sample_count: samples.len() as u64,
    }
}

/// One player's PSS across games. `average` is the unweighted mean over the
/// game columns that exist; `weighted_average` weights by sample counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PssRow {
    pub player: PlayerId,
    pub per_game: BTreeMap<GameKind, f64>,
    pub average: Option<f64>,
    pub weighted_average: Option<f64>,
    /// Fraction of this player's rounds that were fallback moves.
    pub fallback_fraction: f64,
    /// True when some game columns are absent and the average spans fewer
    /// than all five games.
    pub partial: bool,
}

/// Per-player PSS table in the per-game + average layout.
pub fn pss_table(samples: &[EmotionSample]) -> Vec<PssRow> {
    let mut by_player: BTreeMap<&str, Vec<&EmotionSample>> = BTreeMap::new();
    for s in samples {
        by_player.entry(&s.player).or_default().push(s);
    }
    let mut rows = Vec::new();
    for (player, samples) in by_player {
        let mut per_game: BTreeMap<GameKind, f64> = BTreeMap::new();
        let mut counts: BTreeMap<GameKind, u64> = BTreeMap::new();
        for kind in GameKind::ALL {
            let subset: Vec<i64> = samples
                .iter()
                .filter(|s| s.game == kind)
                .map(|s| s.score() as i64)
                .collect();
            if !subset.is_empty() {
                let mean = subset.iter().sum::<i64>() as f64 / subset.len() as f64;
                per_game.insert(kind, mean);
                counts.insert(kind, subset.len() as u64);
            }
        }
        let average = if per_game.is_empty() {
            None
        } else {
            Some(per_game.values().sum::<f64>() / per_game.len() as f64)
        };
        let weighted_average = if per_game.is_empty() {
            None
        } else {
            let total: u64 = counts.values().sum();
            let weighted: f64 = per_game
                .iter()
                .map(|(kind, mean)| mean * counts[kind] as f64)
                .sum();
            Some(weighted / total as f64)
        };
        let fallback = samples.iter().filter(|s| s.fallback).count() as f64;
        rows.push(PssRow {
            player: player.to_string(),
            partial: per_game.len() < GameKind::ALL.len(),
            per_game,
            average,
            weighted_average,
            fallback_fraction: fallback / samples.len() as f64,
        });
    }
    rows
}
