//! Criterion benchmarks for the hot paths: move generation, playouts, loop
//! enumeration, and rating updates.

use std::hint::black_box;

use arena_core::plg::PlgGraph;
use arena_core::rating::{EloParams, EloTable, MatchResult};
use arena_core::{GameKind, GameState, RuleSet};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn chess_positions(c: &mut Criterion) {
    let start = GameState::new(GameKind::Chess).unwrap();
    let kiwipete = GameState::from_fen(
        "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
    )
    .unwrap();
    c.bench_function("chess_legal_moves_start", |b| {
        b.iter(|| black_box(&start).legal_moves().unwrap())
    });
    c.bench_function("chess_legal_moves_kiwipete", |b| {
        b.iter(|| black_box(&kiwipete).legal_moves().unwrap())
    });
    c.bench_function("chess_perft3_start", |b| {
        b.iter(|| perft(black_box(&start), 3))
    });
}

fn perft(state: &GameState, depth: u32) -> u64 {
    let moves = state.legal_moves().unwrap();
    if depth == 1 {
        return moves.len() as u64;
    }
    moves
        .iter()
        .map(|mv| {
            let next = state.apply(mv).unwrap();
            if next.status().is_terminal() {
                0
            } else {
                perft(&next, depth - 1)
            }
        })
        .sum()
}

fn playouts(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_playout");
    for kind in [GameKind::TicTacToe, GameKind::Gomoku, GameKind::Reversi, GameKind::Chess] {
        group.bench_function(kind.name(), |b| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut state = GameState::new(kind).unwrap();
                while !state.status().is_terminal() {
                    let legal = state.legal_moves().unwrap();
                    let mv = legal.choose(&mut rng).unwrap();
                    state = state.apply(mv).unwrap();
                }
                state.history().len()
            })
        });
    }
    group.bench_function("freestyle_hidden", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut state = GameState::new_freestyle(RuleSet::hidden_numbers()).unwrap();
            while !state.status().is_terminal() {
                let legal = state.legal_moves().unwrap();
                let mv = legal.choose(&mut rng).unwrap();
                state = state.apply(mv).unwrap();
            }
            state.history().len()
        })
    });
    group.finish();
}

fn loop_analysis(c: &mut Criterion) {
    // a ring through all 20 vertices plus random chords, the shape loop
    // statistics actually face
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let n = 20usize;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for _ in 0..30 {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let graph = PlgGraph::from_edges(names, &edges);
    c.bench_function("enumerate_loops_20v_capped", |b| {
        b.iter(|| black_box(&graph).enumerate_loops(100_000))
    });
}

fn rating_updates(c: &mut Criterion) {
    let params = EloParams::default();
    let players: Vec<String> = (0..20).map(|i| format!("p{i:02}")).collect();
    c.bench_function("elo_190_updates", |b| {
        b.iter(|| {
            let mut table = EloTable::new();
            for p in &players {
                table.register(p, &params).unwrap();
            }
            let mut k = 0;
            for i in 0..players.len() {
                for j in (i + 1)..players.len() {
                    let result = match k % 3 {
                        0 => MatchResult::XWins,
                        1 => MatchResult::YWins,
                        _ => MatchResult::Draw,
                    };
                    table
                        .update(&format!("m{k}"), &players[i], &players[j], result, &params)
                        .unwrap();
                    k += 1;
                }
            }
            table
        })
    });
}

criterion_group!(benches, chess_positions, playouts, loop_analysis, rating_updates);
criterion_main!(benches);
