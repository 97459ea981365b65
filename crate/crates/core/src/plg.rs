//! Performance loop graphs: players as vertices, one winner→loser edge per
//! best-of-three series, no edge on a tied series. Loop analysis counts the
//! simple directed cycles (each counted once, rotations collapsed) and finds
//! the loop covering the most vertices.
//!
//! A dense 20-vertex digraph can hold astronomically many simple cycles, so
//! counting takes a cap and flags the result as a lower bound when it hits;
//! the longest-loop search runs depth-first with a reachability bound and a
//! node-expansion budget, flagging a best-effort answer if the budget runs
//! out.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::rating::PlayerId;

/// Outcome of one best-of-three series between an unordered pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesResult {
    pub x: PlayerId,
    pub y: PlayerId,
    pub wins_x: u32,
    pub wins_y: u32,
    pub draws: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlgError {
    #[error("pair ({0}, {1}) appears more than once")]
    DuplicatePair(PlayerId, PlayerId),
    #[error("malformed series for ({x}, {y}): {reason}")]
    MalformedSeries {
        x: PlayerId,
        y: PlayerId,
        reason: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(PlayerId),
}

/// Directed win/loss graph. At most one of the two orientations exists per
/// pair; tied series leave the pair in `draws` with no edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlgGraph {
    vertices: Vec<PlayerId>,
    /// Indices into `vertices`: (winner, loser).
    edges: BTreeSet<(usize, usize)>,
    /// Unordered index pairs whose series tied.
    draws: BTreeSet<(usize, usize)>,
}

impl PlgGraph {
    /// Build from best-of-three series results; `wins_x + wins_y + draws`
    /// must be 3 and each unordered pair may appear once.
    pub fn build(series: &[SeriesResult]) -> Result<PlgGraph, PlgError> {
        Self::build_inner(series, true)
    }

    /// Majority-rule build without the three-games-per-pair requirement, for
    /// tournaments that ran a different number of cycles.
    pub fn build_lenient(series: &[SeriesResult]) -> Result<PlgGraph, PlgError> {
        Self::build_inner(series, false)
    }

    fn build_inner(series: &[SeriesResult], strict: bool) -> Result<PlgGraph, PlgError> {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for s in series {
            names.insert(&s.x);
            names.insert(&s.y);
        }
        let vertices: Vec<PlayerId> = names.into_iter().map(String::from).collect();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut edges = BTreeSet::new();
        let mut draws = BTreeSet::new();
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for s in series {
            if s.x == s.y {
                return Err(PlgError::MalformedSeries {
                    x: s.x.clone(),
                    y: s.y.clone(),
                    reason: "a player cannot meet itself".into(),
                });
            }
            if strict && s.wins_x + s.wins_y + s.draws != 3 {
                return Err(PlgError::MalformedSeries {
                    x: s.x.clone(),
                    y: s.y.clone(),
                    reason: format!(
                        "best-of-three needs 3 games, got {}",
                        s.wins_x + s.wins_y + s.draws
                    ),
                });
            }
            let xi = index[s.x.as_str()];
            let yi = index[s.y.as_str()];
            let key = (xi.min(yi), xi.max(yi));
            if !seen.insert(key) {
                return Err(PlgError::DuplicatePair(s.x.clone(), s.y.clone()));
            }
            match s.wins_x.cmp(&s.wins_y) {
                std::cmp::Ordering::Greater => {
                    edges.insert((xi, yi));
                }
                std::cmp::Ordering::Less => {
                    edges.insert((yi, xi));
                }
                std::cmp::Ordering::Equal => {
                    draws.insert(key);
                }
            }
        }
        Ok(PlgGraph {
            vertices,
            edges,
            draws,
        })
    }

    /// Graph from explicit vertex names and directed edges, for analysis of
    /// arbitrary digraphs (no best-of-three constraints enforced).
    pub fn from_edges(vertices: Vec<PlayerId>, edge_pairs: &[(usize, usize)]) -> PlgGraph {
        let edges = edge_pairs
            .iter()
            .copied()
            .filter(|&(u, v)| u != v && u < vertices.len() && v < vertices.len())
            .collect();
        PlgGraph {
            vertices,
            edges,
            draws: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> &[PlayerId] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn draw_pair_count(&self) -> usize {
        self.draws.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.vertices[u].as_str(), self.vertices[v].as_str()))
    }

    /// (out-degree, in-degree): wins and losses of the player.
    pub fn degrees(&self, v: &str) -> Result<(usize, usize), PlgError> {
        let idx = self
            .vertices
            .iter()
            .position(|name| name == v)
            .ok_or_else(|| PlgError::UnknownVertex(v.to_string()))?;
        let out = self.edges.iter().filter(|&&(u, _)| u == idx).count();
        let inn = self.edges.iter().filter(|&&(_, w)| w == idx).count();
        Ok((out, inn))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        adj
    }

    /// Count simple cycles and find the maximum loop. See [`LoopStats`].
    pub fn enumerate_loops(&self, cap: u64) -> LoopStats {
        let adj = self.adjacency();
        let (loop_count, per_length, capped) = count_simple_cycles(&adj, cap);
        let budget = DEFAULT_EXPANSION_BUDGET;
        let (max_len, witness_idx, budget_exceeded) = longest_cycle(&adj, budget);
        LoopStats {
            loop_count,
            count_is_lower_bound: capped,
            max_loop_length: max_len,
            max_loop_witness: witness_idx
                .into_iter()
                .map(|i| self.vertices[i].clone())
                .collect(),
            max_is_best_effort: budget_exceeded,
            per_length,
        }
    }

    /// DOT rendering with short display labels, deterministic line order.
    pub fn to_dot(&self, graph_name: &str, labels: &BTreeMap<PlayerId, String>) -> String {
        let label_of = |name: &str| {
            labels
                .get(name)
                .cloned()
                .unwrap_or_else(|| name.to_string())
        };
        let mut out = format!("digraph {graph_name} {{\n");
        for name in &self.vertices {
            out.push_str(&format!(
                "  \"{}\" [label=\"{}\"];\n",
                name,
                label_of(name)
            ));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  \"{u}\" -> \"{v}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Result of loop analysis over a [`PlgGraph`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopStats {
    /// Simple directed cycles found (exact unless flagged as a lower bound).
    pub loop_count: u64,
    pub count_is_lower_bound: bool,
    /// Vertices covered by the largest loop; 0 in an acyclic graph.
    pub max_loop_length: usize,
    /// One largest loop, as player ids in traversal order.
    pub max_loop_witness: Vec<PlayerId>,
    /// True when the longest-loop search ran out of budget and reports the
    /// best loop found so far.
    pub max_is_best_effort: bool,
    /// Cycle count per cycle length.
    pub per_length: BTreeMap<usize, u64>,
}

const DEFAULT_EXPANSION_BUDGET: u64 = 50_000_000;

/// Johnson-style blocked search, counting each elementary circuit once by
/// only visiting vertices at or above the start vertex.
fn count_simple_cycles(adj: &[Vec<usize>], cap: u64) -> (u64, BTreeMap<usize, u64>, bool) {
    let n = adj.len();
    let mut count = 0u64;
    let mut per_length: BTreeMap<usize, u64> = BTreeMap::new();

    for start in 0..n {
        let mut blocked = vec![false; n];
        let mut block_list: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        blocked[start] = true;
        let neighbors = |v: usize| -> Vec<usize> {
            adj[v].iter().copied().filter(|&w| w >= start).collect()
        };
        let mut path: Vec<usize> = vec![start];
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, neighbors(start))];
        let mut found_on_path: BTreeSet<usize> = BTreeSet::new();

        while let Some((v, next)) = stack.last_mut() {
            let v = *v;
            if let Some(w) = next.pop() {
                if w == start {
                    count += 1;
                    *per_length.entry(path.len()).or_insert(0) += 1;
                    for &u in &path {
                        found_on_path.insert(u);
                    }
                    if count >= cap {
                        return (count, per_length, true);
                    }
                } else if !blocked[w] {
                    path.push(w);
                    blocked[w] = true;
                    found_on_path.remove(&w);
                    stack.push((w, neighbors(w)));
                }
                continue;
            }
            // all successors of v explored
            if found_on_path.contains(&v) {
                unblock(v, &mut blocked, &mut block_list);
            } else {
                for w in neighbors(v) {
                    block_list[w].insert(v);
                }
            }
            stack.pop();
            path.pop();
        }
    }
    (count, per_length, false)
}

fn unblock(v: usize, blocked: &mut [bool], block_list: &mut [BTreeSet<usize>]) {
    let mut queue = vec![v];
    while let Some(u) = queue.pop() {
        if blocked[u] {
            blocked[u] = false;
            queue.extend(std::mem::take(&mut block_list[u]));
        }
    }
}

/// Longest simple cycle by DFS over simple paths with a reachability bound.
/// Returns (length, witness, budget_exceeded).
fn longest_cycle(adj: &[Vec<usize>], budget: u64) -> (usize, Vec<usize>, bool) {
    let n = adj.len();
    let mut best_len = 0usize;
    let mut best_path: Vec<usize> = Vec::new();
    let mut expansions = 0u64;
    let mut exceeded = false;

    // upper bound: vertices still reachable from `v` without touching `visited`
    fn reachable_count(adj: &[Vec<usize>], from: usize, visited: &[bool]) -> usize {
        let mut seen = vec![false; adj.len()];
        let mut queue = vec![from];
        let mut count = 0;
        seen[from] = true;
        while let Some(u) = queue.pop() {
            count += 1;
            for &w in &adj[u] {
                if !seen[w] && !visited[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        count
    }

    fn dfs(
        adj: &[Vec<usize>],
        start: usize,
        v: usize,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        best_len: &mut usize,
        best_path: &mut Vec<usize>,
        expansions: &mut u64,
        budget: u64,
        exceeded: &mut bool,
    ) {
        if *exceeded {
            return;
        }
        *expansions += 1;
        if *expansions > budget {
            *exceeded = true;
            return;
        }
        for &w in &adj[v] {
            if w == start && path.len() > *best_len {
                *best_len = path.len();
                *best_path = path.clone();
            }
            if w > start && !visited[w] {
                // bound: even absorbing every reachable vertex cannot beat best
                let bound = path.len() + reachable_count(adj, w, visited);
                if bound <= *best_len {
                    continue;
                }
                visited[w] = true;
                path.push(w);
                dfs(
                    adj, start, w, visited, path, best_len, best_path, expansions, budget,
                    exceeded,
                );
                path.pop();
                visited[w] = false;
            }
        }
    }

    for start in 0..n {
        // a cycle through `start` using only vertices >= start; every cycle
        // is found from its smallest vertex
        let mut visited = vec![false; n];
        visited[start] = true;
        let mut path = vec![start];
        dfs(
            adj,
            start,
            start,
            &mut visited,
            &mut path,
            &mut best_len,
            &mut best_path,
            &mut expansions,
            budget,
            &mut exceeded,
        );
        if exceeded {
            break;
        }
    }
    (best_len, best_path, exceeded)
}
