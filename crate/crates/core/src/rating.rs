//! Elo machinery: the logistic expected score used in production, a Gaussian
//! expected score kept as a numerical cross-check, and replayable rating
//! tables.
//!
//! Updates follow the zero-sum convention — the second player's expected
//! score is `1 − P(D)` — so every match moves the two ratings by equal and
//! opposite amounts. The non-zero-sum variant that applies the same `P(D)`
//! to both players is available behind [`EloParams::literal_update`] for
//! fidelity experiments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub type PlayerId = String;

/// Result of one match from X's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchResult {
    XWins,
    YWins,
    Draw,
}

impl MatchResult {
    /// Actual scores (W_X, W_Y): win 1, loss 0, draw 0.5 for both.
    pub fn scores(self) -> (f64, f64) {
        match self {
            MatchResult::XWins => (1.0, 0.0),
            MatchResult::YWins => (0.0, 1.0),
            MatchResult::Draw => (0.5, 0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EloParams {
    pub initial_rating: f64,
    pub k_factor: f64,
    /// Spread of the Gaussian performance model (σ = √2·δ); only the
    /// cross-check uses it.
    pub sigma: f64,
    /// Apply the same P(D) to both players instead of the zero-sum convention.
    pub literal_update: bool,
}

impl Default for EloParams {
    fn default() -> Self {
        EloParams {
            initial_rating: 1500.0,
            k_factor: 32.0,
            sigma: 2.0_f64.sqrt() * 200.0,
            literal_update: false,
        }
    }
}

/// Logistic win probability for a rating difference `d`.
pub fn expected_score_logistic(d: f64) -> f64 {
    1.0 / (1.0 + 10.0_f64.powf(-d / 400.0))
}

/// Gaussian win probability: `1/2 + ∫₀^d N(0, σ²)`, integrated by adaptive
/// Simpson quadrature to well under 1e−9 absolute error.
pub fn expected_score_gaussian(d: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    let pdf = |x: f64| (-x * x / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    0.5 + adaptive_simpson(&pdf, 0.0, d, 1e-12, 40)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, eps / 2.0, depth - 1)
                + recurse(f, m, b, right, eps / 2.0, depth - 1)
        }
    }
    recurse(f, a, b, simpson(f, a, b), eps, depth)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatingError {
    #[error("unknown player `{0}`")]
    UnknownPlayer(PlayerId),
    #[error("player `{0}` already registered")]
    DuplicatePlayer(PlayerId),
}

/// One applied update, stored so the table can be replayed bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EloUpdate {
    pub match_id: String,
    pub x: PlayerId,
    pub y: PlayerId,
    pub result: MatchResult,
    pub pre_x: f64,
    pub pre_y: f64,
    pub post_x: f64,
    pub post_y: f64,
}

/// Ratings plus the full update history that produced them.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EloTable {
    ratings: BTreeMap<PlayerId, f64>,
    history: Vec<EloUpdate>,
}

impl EloTable {
    pub fn new() -> EloTable {
        EloTable::default()
    }

    pub fn register(&mut self, player: &str, params: &EloParams) -> Result<(), RatingError> {
        if self.ratings.contains_key(player) {
            return Err(RatingError::DuplicatePlayer(player.to_string()));
        }
        self.ratings.insert(player.to_string(), params.initial_rating);
        Ok(())
    }

    pub fn rating(&self, player: &str) -> Option<f64> {
        self.ratings.get(player).copied()
    }

    pub fn ratings(&self) -> &BTreeMap<PlayerId, f64> {
        &self.ratings
    }

    pub fn history(&self) -> &[EloUpdate] {
        &self.history
    }

    /// Apply one match result. `D` is X's rating minus Y's before the match.
    pub fn update(
        &mut self,
        match_id: &str,
        x: &str,
        y: &str,
        result: MatchResult,
        params: &EloParams,
    ) -> Result<(), RatingError> {
        let pre_x = self
            .rating(x)
            .ok_or_else(|| RatingError::UnknownPlayer(x.to_string()))?;
        let pre_y = self
            .rating(y)
            .ok_or_else(|| RatingError::UnknownPlayer(y.to_string()))?;
        let (w_x, w_y) = result.scores();
        let p = expected_score_logistic(pre_x - pre_y);
        let expected_y = if params.literal_update { p } else { 1.0 - p };
        let post_x = pre_x + params.k_factor * (w_x - p);
        let post_y = pre_y + params.k_factor * (w_y - expected_y);
        self.ratings.insert(x.to_string(), post_x);
        self.ratings.insert(y.to_string(), post_y);
        self.history.push(EloUpdate {
            match_id: match_id.to_string(),
            x: x.to_string(),
            y: y.to_string(),
            result,
            pre_x,
            pre_y,
            post_x,
            post_y,
        });
        Ok(())
    }

    /// Rebuild a table from this table's history; bit-identical to the live
    /// ratings when nothing was tampered with.
    pub fn replay(&self, params: &EloParams) -> Result<EloTable, RatingError> {
        let mut fresh = EloTable::new();
        for player in self.ratings.keys() {
            fresh.register(player, params)?;
        }
        for update in &self.history {
            fresh.update(&update.match_id, &update.x, &update.y, update.result, params)?;
        }
        Ok(fresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_anchors() {
        assert_eq!(expected_score_logistic(0.0), 0.5);
        assert!((expected_score_logistic(400.0) - 10.0 / 11.0).abs() < 1e-12);
        assert!((expected_score_logistic(-400.0) - 1.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn logistic_complement_symmetry() {
        for d in [-750.0, -33.0, 0.0, 1.0, 123.45, 999.0] {
            let sum = expected_score_logistic(d) + expected_score_logistic(-d);
            assert!((sum - 1.0).abs() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn gaussian_anchors() {
        let sigma = 2.0_f64.sqrt() * 200.0;
        assert_eq!(expected_score_gaussian(0.0, sigma), 0.5);
        // ten sigmas out the CDF is 1 within any reasonable tolerance
        assert!((expected_score_gaussian(10.0 * sigma, sigma) - 1.0).abs() < 1e-9);
        // symmetry mirrors the logistic
        let p = expected_score_gaussian(123.0, sigma) + expected_score_gaussian(-123.0, sigma);
        assert!((p - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_matches_erf_identity() {
        // spot-check quadrature against Φ values known to many digits
        let sigma = 1.0;
        // Φ(1) − 1/2 = 0.3413447460685429
        let p = expected_score_gaussian(1.0, sigma);
        assert!((p - 0.8413447460685429).abs() < 1e-9, "{p}");
        // Φ(2) = 0.9772498680518208
        let p = expected_score_gaussian(2.0, sigma);
        assert!((p - 0.9772498680518208).abs() < 1e-9, "{p}");
    }

    fn table_with(players: &[&str], params: &EloParams) -> EloTable {
        let mut t = EloTable::new();
        for p in players {
            t.register(p, params).unwrap();
        }
        t
    }

    #[test]
    fn equal_ratings_win_moves_sixteen_points() {
        let params = EloParams::default();
        let mut t = table_with(&["x", "y"], &params);
        t.update("m1", "x", "y", MatchResult::XWins, &params).unwrap();
        assert_eq!(t.rating("x"), Some(1516.0));
        assert_eq!(t.rating("y"), Some(1484.0));
    }

    #[test]
    fn equal_ratings_draw_changes_nothing() {
        let params = EloParams::default();
        let mut t = table_with(&["x", "y"], &params);
        t.update("m1", "x", "y", MatchResult::Draw, &params).unwrap();
        assert_eq!(t.rating("x"), Some(1500.0));
        assert_eq!(t.rating("y"), Some(1500.0));
    }

    #[test]
    fn updates_are_zero_sum() {
        let params = EloParams::default();
        let mut t = table_with(&["x", "y", "z"], &params);
        let script = [
            ("m1", "x", "y", MatchResult::XWins),
            ("m2", "y", "z", MatchResult::Draw),
            ("m3", "z", "x", MatchResult::YWins),
            ("m4", "x", "y", MatchResult::YWins),
        ];
        for (id, x, y, r) in script {
            let before: f64 = t.ratings().values().sum();
            t.update(id, x, y, r, &params).unwrap();
            let after: f64 = t.ratings().values().sum();
            assert!((before - after).abs() < 1e-12);
        }
    }

    #[test]
    fn literal_update_is_not_zero_sum() {
        let params = EloParams {
            literal_update: true,
            ..EloParams::default()
        };
        let mut t = table_with(&["x", "y"], &params);
        // unequal ratings make the literal rule visibly non-zero-sum
        t.update("m1", "x", "y", MatchResult::XWins, &params).unwrap();
        t.update("m2", "x", "y", MatchResult::XWins, &params).unwrap();
        let drift = (t.rating("x").unwrap() - 1500.0) + (t.rating("y").unwrap() - 1500.0);
        assert!(drift.abs() > 1e-9, "literal rule should drift, got {drift}");
    }

    #[test]
    fn unknown_player_is_an_error() {
        let params = EloParams::default();
        let mut t = table_with(&["x"], &params);
        assert_eq!(
            t.update("m1", "x", "ghost", MatchResult::Draw, &params),
            Err(RatingError::UnknownPlayer("ghost".to_string()))
        );
    }

    #[test]
    fn replay_reproduces_ratings_bit_exactly() {
        let params = EloParams::default();
        let mut t = table_with(&["a", "b", "c", "d"], &params);
        let results = [
            MatchResult::XWins,
            MatchResult::Draw,
            MatchResult::YWins,
            MatchResult::XWins,
            MatchResult::XWins,
            MatchResult::Draw,
        ];
        let pairs = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")];
        for (i, ((x, y), r)) in pairs.iter().zip(results.iter()).enumerate() {
            t.update(&format!("m{i}"), x, y, *r, &params).unwrap();
        }
        let replayed = t.replay(&params).unwrap();
        for (player, rating) in t.ratings() {
            let r = replayed.rating(player).unwrap();
            assert_eq!(r.to_bits(), rating.to_bits(), "{player}");
        }
    }

    #[test]
    fn win_never_hurts_loss_never_helps() {
        let params = EloParams::default();
        for opp in [1200.0, 1500.0, 1900.0] {
            let mut t = EloTable::new();
            t.register("x", &params).unwrap();
            t.register("y", &EloParams { initial_rating: opp, ..params }).unwrap();
            let base = t.rating("x").unwrap();
            let mut won = t.clone();
            won.update("m", "x", "y", MatchResult::XWins, &params).unwrap();
            assert!(won.rating("x").unwrap() >= base);
            let mut lost = t.clone();
            lost.update("m", "x", "y", MatchResult::YWins, &params).unwrap();
            assert!(lost.rating("x").unwrap() <= base);
        }
    }
}
