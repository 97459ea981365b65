//! Report bundle generation. Every file derives solely from persisted game
//! records, so regenerating over the same records is byte-identical:
//!
//! * `elo.csv` — per-player rating/win/loss/draw table with rounded averages
//! * `elo_cycles.csv` — raw per-cycle ratings and tallies
//! * `pss.csv` — per-player sentiment scores per game plus averages
//! * `rounds.csv` — per-game round-count statistics
//! * `loops.json` — loop statistics of each game's win/loss graph
//! * `plg_<game>.dot` — the graphs themselves
//! * `heatmap_<game>.json` — emotion frequency grids over time
//!
//! Numbers round only at serialization; players label A, B, C… in sorted id
//! order.

use std::collections::{BTreeMap, BTreeSet};
use std::io;
use std::path::Path;

use serde_json::json;

use crate::kernel::{GameKind, Outcome};
use crate::plg::{PlgGraph, SeriesResult};
use crate::rating::{EloParams, EloTable, MatchResult, PlayerId};
use crate::sentiment::{heatmap, pss_table};
use crate::tournament::{records_to_samples, GameRecord, Tally};

#[derive(Debug, Clone)]
pub struct ReportParams {
    pub elo: EloParams,
    pub loop_cap: u64,
    pub heatmap_bucket_width: u32,
}

impl Default for ReportParams {
    fn default() -> Self {
        ReportParams {
            elo: EloParams::default(),
            loop_cap: 10_000_000,
            heatmap_bucket_width: 5,
        }
    }
}

/// Named files plus any incompleteness warnings.
#[derive(Debug, Clone, Default)]
pub struct ReportBundle {
    pub files: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

impl ReportBundle {
    pub fn write_to(&self, dir: impl AsRef<Path>) -> io::Result<()> {
        std::fs::create_dir_all(dir.as_ref())?;
        for (name, content) in &self.files {
            std::fs::write(dir.as_ref().join(name), content)?;
        }
        Ok(())
    }
}

/// Short display label: A…Z, then AA, AB…
pub fn label_for(index: usize) -> String {
    if index < 26 {
        ((b'A' + index as u8) as char).to_string()
    } else {
        let hi = (index / 26 - 1) % 26;
        let lo = index % 26;
        format!("{}{}", (b'A' + hi as u8) as char, (b'A' + lo as u8) as char)
    }
}

fn sorted_players(records: &[GameRecord]) -> Vec<PlayerId> {
    let mut set: BTreeSet<&str> = BTreeSet::new();
    for r in records {
        set.insert(&r.first);
        set.insert(&r.second);
    }
    set.into_iter().map(String::from).collect()
}

fn games_present(records: &[GameRecord]) -> Vec<GameKind> {
    GameKind::ALL
        .into_iter()
        .filter(|k| records.iter().any(|r| r.game == *k))
        .collect()
}

/// Rebuild per-(game, cycle) Elo tables from records alone, in stored order.
fn rebuild_tables(
    records: &[GameRecord],
    players: &[PlayerId],
    params: &EloParams,
) -> BTreeMap<(GameKind, u32), EloTable> {
    let mut tables: BTreeMap<(GameKind, u32), EloTable> = BTreeMap::new();
    for record in records {
        let table = tables
            .entry((record.game, record.cycle))
            .or_insert_with(|| {
                let mut t = EloTable::new();
                for p in players {
                    t.register(p, params).expect("fresh table");
                }
                t
            });
        let result = match record.outcome {
            Outcome::FirstWins => MatchResult::XWins,
            Outcome::SecondWins => MatchResult::YWins,
            _ => MatchResult::Draw,
        };
        table
            .update(&record.match_id, &record.first, &record.second, result, params)
            .expect("players registered");
    }
    tables
}

fn tallies_by_cycle(
    records: &[GameRecord],
) -> BTreeMap<(GameKind, u32, PlayerId), Tally> {
    let mut out: BTreeMap<(GameKind, u32, PlayerId), Tally> = BTreeMap::new();
    for r in records {
        let first = out
            .entry((r.game, r.cycle, r.first.clone()))
            .or_default();
        match r.outcome {
            Outcome::FirstWins => first.wins += 1,
            Outcome::SecondWins => first.losses += 1,
            _ => first.draws += 1,
        }
        let second = out
            .entry((r.game, r.cycle, r.second.clone()))
            .or_default();
        match r.outcome {
            Outcome::FirstWins => second.losses += 1,
            Outcome::SecondWins => second.wins += 1,
            _ => second.draws += 1,
        }
    }
    out
}

/// Best-of-N series per unordered pair per game.
fn series_by_game(records: &[GameRecord]) -> BTreeMap<GameKind, Vec<SeriesResult>> {
    let mut acc: BTreeMap<(GameKind, PlayerId, PlayerId), (u32, u32, u32)> = BTreeMap::new();
    for r in records {
        let (x, y, flipped) = if r.first <= r.second {
            (r.first.clone(), r.second.clone(), false)
        } else {
            (r.second.clone(), r.first.clone(), true)
        };
        let entry = acc.entry((r.game, x, y)).or_insert((0, 0, 0));
        match (r.outcome, flipped) {
            (Outcome::FirstWins, false) | (Outcome::SecondWins, true) => entry.0 += 1,
            (Outcome::FirstWins, true) | (Outcome::SecondWins, false) => entry.1 += 1,
            _ => entry.2 += 1,
        }
    }
    let mut out: BTreeMap<GameKind, Vec<SeriesResult>> = BTreeMap::new();
    for ((game, x, y), (wx, wy, d)) in acc {
        out.entry(game).or_default().push(SeriesResult {
            x,
            y,
            wins_x: wx,
            wins_y: wy,
            draws: d,
        });
    }
    out
}

pub fn generate(records: &[GameRecord], params: &ReportParams) -> ReportBundle {
    let mut bundle = ReportBundle::default();
    if records.is_empty() {
        bundle.warnings.push("no records; nothing to report".into());
        return bundle;
    }
    let players = sorted_players(records);
    let games = games_present(records);
    let labels: BTreeMap<PlayerId, String> = players
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), label_for(i)))
        .collect();

    // completeness: every unordered pair should meet once per cycle
    let cycles: BTreeSet<u32> = records.iter().map(|r| r.cycle).collect();
    let expected_per_cycle = players.len() * (players.len() - 1) / 2;
    for &game in &games {
        for &cycle in &cycles {
            let got = records
                .iter()
                .filter(|r| r.game == game && r.cycle == cycle)
                .count();
            if got < expected_per_cycle {
                bundle.warnings.push(format!(
                    "incomplete cycle: {game} cycle {cycle} has {got} of {expected_per_cycle} matches"
                ));
            }
        }
    }

    let tables = rebuild_tables(records, &players, &params.elo);
    let tallies = tallies_by_cycle(records);
    let cycle_count = cycles.len().max(1) as f64;

    // averaged ratings and tallies per (game, player)
    let mut avg_elo: BTreeMap<(GameKind, PlayerId), f64> = BTreeMap::new();
    for ((game, _cycle), table) in &tables {
        for (player, rating) in table.ratings() {
            *avg_elo.entry((*game, player.clone())).or_insert(0.0) += rating / cycle_count;
        }
    }
    let mut avg_tally: BTreeMap<(GameKind, PlayerId), (f64, f64, f64)> = BTreeMap::new();
    for ((game, _cycle, player), tally) in &tallies {
        let entry = avg_tally.entry((*game, player.clone())).or_insert((0.0, 0.0, 0.0));
        entry.0 += tally.wins as f64 / cycle_count;
        entry.1 += tally.losses as f64 / cycle_count;
        entry.2 += tally.draws as f64 / cycle_count;
    }

    // elo.csv: rounded averages in the per-game + average layout
    {
        let mut csv = String::from("player,label");
        for game in &games {
            csv.push_str(&format!(
                ",{g}_elo,{g}_win,{g}_loss,{g}_draw",
                g = game.name()
            ));
        }
        csv.push_str(",average_elo,average_win,average_loss,average_draw\n");
        for player in &players {
            csv.push_str(&format!("{player},{}", labels[player]));
            let mut elo_sum = 0.0;
            let mut w_sum = 0.0;
            let mut l_sum = 0.0;
            let mut d_sum = 0.0;
            for game in &games {
                let elo = avg_elo.get(&(*game, player.clone())).copied().unwrap_or(0.0);
                let (w, l, d) = avg_tally
                    .get(&(*game, player.clone()))
                    .copied()
                    .unwrap_or((0.0, 0.0, 0.0));
                elo_sum += elo;
                w_sum += w;
                l_sum += l;
                d_sum += d;
                csv.push_str(&format!(
                    ",{},{},{},{}",
                    elo.round() as i64,
                    w.floor() as i64,
                    l.floor() as i64,
                    d.floor() as i64
                ));
            }
            let n = games.len() as f64;
            csv.push_str(&format!(
                ",{},{},{},{}\n",
                (elo_sum / n).round() as i64,
                (w_sum / n).floor() as i64,
                (l_sum / n).floor() as i64,
                (d_sum / n).floor() as i64
            ));
        }
        bundle.files.insert("elo.csv".into(), csv);
    }

    // elo_cycles.csv: raw per-cycle values
    {
        let mut csv = String::from("game,cycle,player,elo,wins,losses,draws\n");
        for ((game, cycle), table) in &tables {
            for player in &players {
                let rating = table.rating(player).unwrap_or(params.elo.initial_rating);
                let tally = tallies
                    .get(&(*game, *cycle, player.clone()))
                    .copied()
                    .unwrap_or_default();
                csv.push_str(&format!(
                    "{},{},{},{:.6},{},{},{}\n",
                    game.name(),
                    cycle,
                    player,
                    rating,
                    tally.wins,
                    tally.losses,
                    tally.draws
                ));
            }
        }
        bundle.files.insert("elo_cycles.csv".into(), csv);
    }

    // pss.csv
    {
        let samples = records_to_samples(records);
        let rows = pss_table(&samples);
        let mut csv = String::from("player,label");
        for game in &games {
            csv.push_str(&format!(",{}", game.name()));
        }
        csv.push_str(",average,weighted_average,fallback_fraction,partial\n");
        for row in &rows {
            csv.push_str(&format!("{},{}", row.player, labels[&row.player]));
            for game in &games {
                match row.per_game.get(game) {
                    Some(v) => csv.push_str(&format!(",{v:.4}")),
                    None => csv.push(','),
                }
            }
            let fmt_opt = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
            csv.push_str(&format!(
                ",{},{},{:.4},{}\n",
                fmt_opt(row.average),
                fmt_opt(row.weighted_average),
                row.fallback_fraction,
                row.partial
            ));
        }
        bundle.files.insert("pss.csv".into(), csv);
    }

    // rounds.csv: mean total rounds per cycle and per-match min–max
    {
        let mut csv = String::from("game,total_rounds_mean,rounds_min,rounds_max\n");
        for &game in &games {
            let per_cycle: Vec<u64> = cycles
                .iter()
                .map(|&c| {
                    records
                        .iter()
                        .filter(|r| r.game == game && r.cycle == c)
                        .map(|r| r.round_count as u64)
                        .sum()
                })
                .collect();
            let mean = per_cycle.iter().sum::<u64>() as f64 / per_cycle.len() as f64;
            let counts: Vec<u32> = records
                .iter()
                .filter(|r| r.game == game)
                .map(|r| r.round_count)
                .collect();
            csv.push_str(&format!(
                "{},{:.1},{},{}\n",
                game.name(),
                mean,
                counts.iter().min().unwrap_or(&0),
                counts.iter().max().unwrap_or(&0)
            ));
        }
        bundle.files.insert("rounds.csv".into(), csv);
    }

    // loop stats and DOT graphs
    {
        let by_game = series_by_game(records);
        let mut loop_objects = Vec::new();
        for &game in &games {
            let Some(series) = by_game.get(&game) else { continue };
            let complete_best_of_three = series
                .iter()
                .all(|s| s.wins_x + s.wins_y + s.draws == 3);
            let graph = if complete_best_of_three {
                PlgGraph::build(series)
            } else {
                PlgGraph::build_lenient(series)
            };
            let graph = match graph {
                Ok(g) => g,
                Err(e) => {
                    bundle
                        .warnings
                        .push(format!("cannot build graph for {game}: {e}"));
                    continue;
                }
            };
            let stats = graph.enumerate_loops(params.loop_cap);
            loop_objects.push(json!({
                "game": game.name(),
                "loop_count": stats.loop_count,
                "count_is_lower_bound": stats.count_is_lower_bound,
                "max_loop_length": stats.max_loop_length,
                "max_loop_witness": stats.max_loop_witness,
                "max_is_best_effort": stats.max_is_best_effort,
                "per_length": stats.per_length,
                "edges": graph.edge_count(),
                "draw_pairs": graph.draw_pair_count(),
                "best_of_three": complete_best_of_three,
            }));
            bundle.files.insert(
                format!("plg_{}.dot", game.name()),
                graph.to_dot(&format!("plg_{}", game.name()), &labels),
            );
        }
        let loops = serde_json::to_string_pretty(&loop_objects).expect("valid json");
        bundle.files.insert("loops.json".into(), loops + "\n");
    }

    // heatmaps
    {
        let samples = records_to_samples(records);
        for &game in &games {
            let subset: Vec<_> = samples
                .iter()
                .filter(|s| s.game == game)
                .cloned()
                .collect();
            let grid = heatmap(&subset, params.heatmap_bucket_width);
            let bins: Vec<_> = grid
                .bins
                .iter()
                .map(|(&(bucket, score), &count)| {
                    json!({"round_bucket": bucket, "score": score, "count": count})
                })
                .collect();
            let obj = json!({
                "game": game.name(),
                "round_bucket_width": grid.round_bucket_width,
                "score_levels": grid.score_levels,
                "sample_count": grid.sample_count,
                "bins": bins,
            });
            bundle.files.insert(
                format!("heatmap_{}.json", game.name()),
                serde_json::to_string_pretty(&obj).expect("valid json") + "\n",
            );
        }
    }

    bundle
}
