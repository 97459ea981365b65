//! `arena` — run board-game tournaments between scripted or external agents,
//! replay stored matches, and emit the report bundle.
//!
//! Exit codes: 0 success, 2 config error, 3 forfeit threshold exceeded,
//! 4 engine invariant violation, 1 anything else.

mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use arena_core::report::{self, ReportParams};
use arena_core::tournament::{
    make_schedule, run_tournament, MatchError, RecordStore, TournamentConfig,
};
use arena_core::{ChessConfig, GameState, Outcome};

/// Records-directory override honored by every subcommand.
const RECORDS_DIR_ENV: &str = "ARENA_RECORDS_DIR";

#[derive(Parser)]
#[command(name = "arena", version, about = "Adversarial board-game tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tournament described by a config file.
    Run {
        /// TOML tournament config.
        config: PathBuf,
        /// Also write the report bundle after the run.
        #[arg(long)]
        report: bool,
    },
    /// Re-render one stored match, verifying it replays cleanly.
    Replay {
        /// Records directory.
        records_dir: PathBuf,
        /// Match id, e.g. `chess-c1-m007`.
        match_id: String,
        /// Where SVG frames go (default: `<records>/replay/<match-id>`).
        #[arg(long)]
        svg_dir: Option<PathBuf>,
        /// Skip SVG output, print ASCII frames only.
        #[arg(long)]
        no_svg: bool,
    },
    /// Generate the report bundle from stored records.
    Report {
        /// Records directory.
        records_dir: PathBuf,
        /// Output directory (default: `<records>/report`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Simple-cycle counting cap.
        #[arg(long, default_value_t = 10_000_000)]
        loop_cap: u64,
        /// Heatmap round-bucket width.
        #[arg(long, default_value_t = 5)]
        bucket_width: u32,
        /// Rating every player starts from when rebuilding Elo.
        #[arg(long, default_value_t = 1500.0)]
        initial_rating: f64,
        /// Elo update step size.
        #[arg(long, default_value_t = 32.0)]
        k_factor: f64,
    },
    /// Parse and validate a config file without running anything.
    ValidateConfig { config: PathBuf },
    /// Count legal chess move paths from a FEN position (engine debugging).
    Perft {
        fen: String,
        depth: u32,
        /// Show per-move subtree counts.
        #[arg(long)]
        split: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run { config, report } => cmd_run(&config, report),
        Command::Replay {
            records_dir,
            match_id,
            svg_dir,
            no_svg,
        } => cmd_replay(&records_dir, &match_id, svg_dir, no_svg),
        Command::Report {
            records_dir,
            out,
            loop_cap,
            bucket_width,
            initial_rating,
            k_factor,
        } => cmd_report(&records_dir, out, loop_cap, bucket_width, initial_rating, k_factor),
        Command::ValidateConfig { config } => cmd_validate(&config),
        Command::Perft { fen, depth, split } => cmd_perft(&fen, depth, split),
    }
}

fn records_dir_override(configured: &Path) -> PathBuf {
    match std::env::var(RECORDS_DIR_ENV) {
        Ok(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => configured.to_path_buf(),
    }
}

fn load_config(path: &Path) -> Result<TournamentConfig, ExitCode> {
    match TournamentConfig::from_path(path) {
        Ok(c) => Ok(c),
        Err(e) => {
            eprintln!("config error: {e}");
            Err(ExitCode::from(2))
        }
    }
}

fn cmd_run(config_path: &Path, with_report: bool) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let config = match load_config(config_path) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let games = config.game_kinds().expect("validated");
    let players: Vec<String> = config.players.iter().map(|p| p.id.clone()).collect();
    let schedules = make_schedule(&players, &games, config.repeats, config.seed)?;
    let records_dir = records_dir_override(Path::new(&config.records_dir));
    let store = RecordStore::open(&records_dir)?;

    let total: usize = schedules.iter().map(|s| s.matches.len()).sum();
    eprintln!(
        "running {total} matches over {} game(s), {} cycle(s), records in {}",
        games.len(),
        config.repeats,
        records_dir.display()
    );
    let result = run_tournament(&config, &schedules, &store, |record, elo_x, elo_y| {
        let result = match record.outcome {
            Outcome::FirstWins => "first",
            Outcome::SecondWins => "second",
            Outcome::Draw => "draw",
            Outcome::Ongoing => "ongoing",
        };
        println!("{}\t{}\t{:.2}\t{:.2}", record.match_id, result, elo_x, elo_y);
    });
    let output = match result {
        Ok(o) => o,
        Err(MatchError::ForfeitThreshold(n)) => {
            eprintln!("aborted: forfeit threshold of {n} exceeded");
            return Ok(ExitCode::from(3));
        }
        Err(MatchError::EngineInvariant { match_id, reason }) => {
            eprintln!("engine invariant violated in {match_id}: {reason}");
            return Ok(ExitCode::from(4));
        }
        Err(e) => return Err(e.into()),
    };

    eprintln!(
        "done: {} records, {} forfeits, {} failed negotiations",
        output.records.len(),
        output.forfeits,
        output.negotiation_failures
    );
    for (game, stat) in &output.rounds {
        eprintln!(
            "  {game}: mean total rounds/cycle {:.1}, per-match range [{}, {}]",
            stat.total_rounds_mean, stat.min_rounds, stat.max_rounds
        );
    }
    if with_report {
        let bundle = report::generate(
            &output.records,
            &ReportParams {
                elo: config.elo.params(),
                loop_cap: config.limits.loop_cap,
                heatmap_bucket_width: 5,
            },
        );
        let out = records_dir.join("report");
        bundle.write_to(&out)?;
        for warning in &bundle.warnings {
            eprintln!("warning: {warning}");
        }
        eprintln!("report bundle in {}", out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_replay(
    records_dir: &Path,
    match_id: &str,
    svg_dir: Option<PathBuf>,
    no_svg: bool,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let dir = records_dir_override(records_dir);
    let store = RecordStore::open(&dir)?;
    let Some(record) = store.find(match_id)? else {
        eprintln!("no record with id `{match_id}` under {}", dir.display());
        return Ok(ExitCode::from(1));
    };
    if let Some(rules) = &record.rules_text {
        println!("negotiated rules:");
        print!("{rules}");
        println!();
    }
    if record.negotiation_failed {
        println!(
            "{}: negotiation failed; recorded as a flagged draw with no rounds",
            record.match_id
        );
        return Ok(ExitCode::SUCCESS);
    }
    let frames = match record.replay() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("corrupt record: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let svg_out = svg_dir.unwrap_or_else(|| dir.join("replay").join(match_id));
    if !no_svg {
        std::fs::create_dir_all(&svg_out)?;
    }
    for (i, frame) in frames.iter().enumerate() {
        if i == 0 {
            println!("initial position:");
        } else {
            let entry = &record.rounds[i - 1];
            println!(
                "round {}: {} plays {}{}  [{}] {}",
                entry.round,
                record.player_on(entry.actor),
                entry.mv,
                if entry.fallback { " (fallback)" } else { "" },
                entry.emotion,
                entry.analysis
            );
        }
        print!("{}", frame.encode_board());
        println!();
        if !no_svg {
            let path = svg_out.join(format!("round_{i:03}.svg"));
            std::fs::write(path, svg::render(frame))?;
        }
    }
    println!(
        "outcome: {:?} after {} rounds{}",
        record.outcome,
        record.round_count,
        if record.forfeit { " (forfeit)" } else { "" }
    );
    if !no_svg {
        eprintln!("{} SVG frames in {}", frames.len(), svg_out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(
    records_dir: &Path,
    out: Option<PathBuf>,
    loop_cap: u64,
    bucket_width: u32,
    initial_rating: f64,
    k_factor: f64,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let dir = records_dir_override(records_dir);
    let store = RecordStore::open(&dir)?;
    let records = store.load_all()?;
    if records.is_empty() {
        eprintln!("no records under {}", dir.display());
        return Ok(ExitCode::from(1));
    }
    let mut elo = arena_core::EloParams::default();
    elo.initial_rating = initial_rating;
    elo.k_factor = k_factor;
    let params = ReportParams {
        elo,
        loop_cap,
        heatmap_bucket_width: bucket_width,
    };
    let bundle = report::generate(&records, &params);
    for warning in &bundle.warnings {
        eprintln!("warning: {warning}");
    }
    let out = out.unwrap_or_else(|| dir.join("report"));
    bundle.write_to(&out)?;
    for name in bundle.files.keys() {
        println!("{}", out.join(name).display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(config_path: &Path) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let config = match load_config(config_path) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let games = config.game_kinds().expect("validated");
    println!(
        "ok: {} players, {} game(s), {} cycle(s), seed {}",
        config.players.len(),
        games.len(),
        config.repeats,
        config.seed
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_perft(fen: &str, depth: u32, split: bool) -> Result<ExitCode, Box<dyn std::error::Error>> {
    // perft counts move paths; the optional draw adjudications stay out of it
    let config = ChessConfig {
        fifty_move_rule: false,
        insufficient_material_rule: false,
    };
    let state = match GameState::from_fen_with(fen, config) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("bad position: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    if split && depth >= 1 {
        let mut total = 0u64;
        for mv in state.legal_moves()? {
            let next = state.apply(&mv)?;
            let nodes = if depth == 1 {
                1
            } else if next.status().is_terminal() {
                0
            } else {
                perft(&next, depth - 1)
            };
            println!("{mv}\t{nodes}");
            total += nodes;
        }
        println!("total\t{total}");
    } else {
        for d in 1..=depth {
            println!("perft({d}) = {}", perft(&state, d));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn perft(state: &GameState, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = match state.legal_moves() {
        Ok(m) => m,
        Err(_) => return 0,
    };
    if depth == 1 {
        return moves.len() as u64;
    }
    moves
        .iter()
        .map(|mv| {
            let next = state.apply(mv).expect("legal move applies");
            if next.status().is_terminal() {
                0
            } else {
                perft(&next, depth - 1)
            }
        })
        .sum()
}
