//! Static SVG board frames for replays, one frame per round.

use arena_core::{GameKind, GameState};

const CELL: usize = 40;
const MARGIN: usize = 20;

fn chess_glyph(letter: char) -> char {
    match letter {
        'K' => '♔',
        'Q' => '♕',
        'R' => '♖',
        'B' => '♗',
        'N' => '♘',
        'P' => '♙',
        'k' => '♚',
        'q' => '♛',
        'r' => '♜',
        'b' => '♝',
        'n' => '♞',
        'p' => '♟',
        other => other,
    }
}

enum CellArt {
    Empty,
    DarkStone,
    LightStone,
    Text { label: String, color: &'static str },
}

fn cell_art(kind: GameKind, cell: &str) -> CellArt {
    if cell == "." {
        return CellArt::Empty;
    }
    match kind {
        GameKind::TicTacToe => CellArt::Text {
            label: cell.to_ascii_uppercase(),
            color: if cell == "x" { "#8a2020" } else { "#1d3f8a" },
        },
        GameKind::Gomoku | GameKind::Reversi => {
            if cell == "b" {
                CellArt::DarkStone
            } else {
                CellArt::LightStone
            }
        }
        GameKind::Chess => {
            let letter = cell.chars().next().unwrap_or('?');
            CellArt::Text {
                label: chess_glyph(letter).to_string(),
                color: if letter.is_ascii_uppercase() {
                    "#fbfbf6"
                } else {
                    "#1d1d1d"
                },
            }
        }
        GameKind::FreeStyle => {
            // `b`/`w` marks, or owned values like `b7` / `w12` / `b?`
            if cell == "b" {
                CellArt::DarkStone
            } else if cell == "w" {
                CellArt::LightStone
            } else if let Some(value) = cell.strip_prefix('b') {
                CellArt::Text {
                    label: value.to_string(),
                    color: "#1d1d1d",
                }
            } else if let Some(value) = cell.strip_prefix('w') {
                CellArt::Text {
                    label: value.to_string(),
                    color: "#8a6d1c",
                }
            } else {
                CellArt::Text {
                    label: cell.to_string(),
                    color: "#1d3f8a",
                }
            }
        }
    }
}

/// Render the current board as a standalone SVG document.
pub fn render(state: &GameState) -> String {
    let text = state.encode_board();
    let rows: Vec<&str> = text.lines().filter(|l| !l.ends_with("to move")).collect();
    let grid: Vec<Vec<String>> = if text.contains(' ') && state.kind() == GameKind::FreeStyle {
        // integer free-style boards separate cells with spaces
        rows.iter()
            .map(|r| r.split_whitespace().map(String::from).collect())
            .collect()
    } else {
        rows.iter()
            .map(|r| r.chars().map(|c| c.to_string()).collect())
            .collect()
    };
    let n_rows = grid.len();
    let n_cols = grid.iter().map(|r| r.len()).max().unwrap_or(0);
    let width = n_cols * CELL + 2 * MARGIN;
    let height = n_rows * CELL + 2 * MARGIN;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"#f4e9d8\"/>\n"
    ));
    for (row_idx, row) in grid.iter().enumerate() {
        for (col_idx, cell) in row.iter().enumerate() {
            let x = MARGIN + col_idx * CELL;
            let y = MARGIN + row_idx * CELL;
            let fill = if (row_idx + col_idx) % 2 == 0 {
                "#e8d7b9"
            } else {
                "#d2b887"
            };
            svg.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#6b5537\"/>\n"
            ));
            let cx = x + CELL / 2;
            let cy = y + CELL / 2;
            match cell_art(state.kind(), cell) {
                CellArt::Empty => {}
                CellArt::DarkStone => {
                    svg.push_str(&format!(
                        "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"15\" fill=\"#1d1d1d\"/>\n"
                    ));
                }
                CellArt::LightStone => {
                    svg.push_str(&format!(
                        "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"15\" fill=\"#fbfbf6\" stroke=\"#1d1d1d\"/>\n"
                    ));
                }
                CellArt::Text { label, color } => {
                    svg.push_str(&format!(
                        "  <text x=\"{cx}\" y=\"{}\" font-size=\"26\" font-family=\"serif\" text-anchor=\"middle\" fill=\"{color}\" stroke=\"#1d1d1d\" stroke-width=\"0.6\">{label}</text>\n",
                        cy + 9
                    ));
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
