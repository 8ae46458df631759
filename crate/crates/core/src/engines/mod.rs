//! Single-source shortest path engines.
//!
//! All engines share one contract: they take a [`Graph`] and a source and
//! return an [`SsspOutcome`] together with [`RunStats`]. Bellman-Ford is
//! the reference the others are tested against.

mod audit;
mod aux_tree;
mod bellman_ford;
mod dijkstra;
mod raffica;
mod spfa;
mod stats;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use audit::AuditReport;
pub use aux_tree::{AuxTree, Children, Relink};
pub use stats::{extract_stats_csv, parse_stats_csv, RunStats};

use crate::graph::{EdgeId, Graph, SsspOutcome, VertexId, Weight};
use aux_tree::NIL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    #[serde(rename = "bf")]
    BellmanFord,
    Spfa,
    Dijkstra,
    Raffica,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::BellmanFord, Algorithm::Spfa, Algorithm::Dijkstra, Algorithm::Raffica];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BellmanFord => "bf",
            Algorithm::Spfa => "spfa",
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::Raffica => "raffica",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bf" | "bellman_ford" | "bellman-ford" => Ok(Algorithm::BellmanFord),
            "spfa" => Ok(Algorithm::Spfa),
            "dijkstra" => Ok(Algorithm::Dijkstra),
            "raffica" => Ok(Algorithm::Raffica),
            _ => Err(format!("unknown algorithm `{s}` (expected bf, spfa, dijkstra or raffica)")),
        }
    }
}

/// Tree maintenance policy of the Raffica engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RafficaMode {
    #[default]
    Plain,
    /// Experimental. After every queue round, each scanned vertex at the
    /// round's deepest level that has children is picked with probability
    /// `p`; its strict subtree is disassembled without a relaxation and the
    /// vertex is queued again so the subtree regrows.
    DensityControl { p: f64, seed: u64 },
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub mode: RafficaMode,
    /// Audit the auxiliary tree after every round (Raffica only).
    pub audit: bool,
    /// Give up once this instant has passed.
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn with_timeout(timeout: Duration) -> Self {
        SolveOptions {
            deadline: Some(Instant::now() + timeout),
            ..SolveOptions::default()
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("source {vertex} out of range for {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },
    #[error("negative weight {weight} on edge {edge}; dijkstra needs nonnegative weights")]
    NegativeWeight { edge: usize, weight: String },
    #[error("deadline passed after {} relaxation attempts", .0.relax_attempts)]
    TimedOut(Box<RunStats>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<W> {
    pub outcome: SsspOutcome<W>,
    pub stats: RunStats,
    /// Present when auditing was requested and the engine supports it.
    pub audit: Option<AuditReport>,
}

/// Runs `algo` from `source`.
pub fn solve<W: Weight>(g: &Graph<W>, source: VertexId, algo: Algorithm, opts: &SolveOptions) -> Result<Solution<W>, SolveError> {
    if source.index() >= g.n() {
        return Err(SolveError::SourceOutOfRange {
            vertex: source.index(),
            n: g.n(),
        });
    }
    let mut budget = Budget::new(opts.deadline);
    let started = Instant::now();
    let timed_out = |mut st: Box<RunStats>| {
        st.wall_time = started.elapsed();
        SolveError::TimedOut(st)
    };
    let (outcome, mut stats, audit) = match algo {
        Algorithm::BellmanFord => {
            let (o, s) = bellman_ford::run(g, source.index(), &mut budget).map_err(timed_out)?;
            (o, s, None)
        }
        Algorithm::Spfa => {
            let (o, s) = spfa::run(g, source.index(), &mut budget).map_err(timed_out)?;
            (o, s, None)
        }
        Algorithm::Dijkstra => {
            if let Some(e) = g.edges().find(|e| e.weight.is_negative()) {
                return Err(SolveError::NegativeWeight {
                    edge: e.id.index(),
                    weight: e.weight.to_string(),
                });
            }
            let (o, s) = dijkstra::run(g, source.index(), &mut budget).map_err(timed_out)?;
            (o, s, None)
        }
        Algorithm::Raffica => raffica::run(g, source.index(), &opts.mode, opts.audit, &mut budget).map_err(timed_out)?,
    };
    stats.wall_time = started.elapsed();
    Ok(Solution { outcome, stats, audit })
}

fn solve_plain<W: Weight>(g: &Graph<W>, source: VertexId, algo: Algorithm, opts: &SolveOptions) -> Result<(SsspOutcome<W>, RunStats), SolveError> {
    solve(g, source, algo, opts).map(|s| (s.outcome, s.stats))
}

fn unwrap_total<T>(r: Result<T, SolveError>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

/// Reference engine: full edge passes, then a detection pass.
///
/// # Panics
/// If `source` is out of range.
pub fn bellman_ford<W: Weight>(g: &Graph<W>, source: VertexId) -> (SsspOutcome<W>, RunStats) {
    unwrap_total(solve_plain(g, source, Algorithm::BellmanFord, &SolveOptions::default()))
}

/// FIFO label-correcting engine.
///
/// # Panics
/// If `source` is out of range.
pub fn spfa<W: Weight>(g: &Graph<W>, source: VertexId) -> (SsspOutcome<W>, RunStats) {
    unwrap_total(solve_plain(g, source, Algorithm::Spfa, &SolveOptions::default()))
}

/// Binary-heap Dijkstra; refuses graphs with a negative weight.
pub fn dijkstra<W: Weight>(g: &Graph<W>, source: VertexId) -> Result<(SsspOutcome<W>, RunStats), SolveError> {
    solve_plain(g, source, Algorithm::Dijkstra, &SolveOptions::default())
}

/// FIFO engine that keeps the auxiliary tree a shortest-path tree by
/// disassembling subtrees, detecting negative cycles on the spot.
///
/// # Panics
/// If `source` is out of range.
pub fn raffica<W: Weight>(g: &Graph<W>, source: VertexId, mode: RafficaMode) -> (SsspOutcome<W>, RunStats) {
    let opts = SolveOptions {
        mode,
        ..SolveOptions::default()
    };
    unwrap_total(solve_plain(g, source, Algorithm::Raffica, &opts))
}

/// Deadline check amortised over many calls.
pub(crate) struct Budget {
    deadline: Option<Instant>,
    ticks: u32,
}

impl Budget {
    fn new(deadline: Option<Instant>) -> Self {
        Budget { deadline, ticks: 0 }
    }

    #[inline]
    pub(crate) fn expired(&mut self) -> bool {
        let Some(deadline) = self.deadline else {
            return false;
        };
        self.ticks = self.ticks.wrapping_add(1);
        self.ticks.is_multiple_of(1024) && Instant::now() >= deadline
    }
}

/// Walks `n` parent links from `start`; if that succeeds the walk has
/// entered a cycle of the parent graph, which is returned in edge order
/// (`edges[i]` leaves `cycle[i]`).
pub(crate) fn parent_cycle(parent: &[u32], parent_edge: &[usize], start: usize) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = parent.len();
    let mut x = start;
    for _ in 0..n {
        let p = parent[x];
        if p == NIL {
            return None;
        }
        x = p as usize;
    }
    let mut back = vec![x];
    let mut y = parent[x] as usize;
    while y != x {
        back.push(y);
        y = parent[y] as usize;
    }
    back.reverse();
    let k = back.len();
    let cycle: Vec<VertexId> = back.iter().map(|&c| VertexId::new(c)).collect();
    let edges = (0..k).map(|i| EdgeId(parent_edge[back[(i + 1) % k]])).collect();
    Some((cycle, edges))
}

/// Any cycle of the parent graph, found in O(n) by following each
/// unvisited vertex's parent chain with a per-walk stamp.
pub(crate) fn any_parent_cycle(parent: &[u32], parent_edge: &[usize]) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = parent.len();
    let mut stamp = vec![u32::MAX; n];
    for start in 0..n {
        let mut x = start;
        while stamp[x] == u32::MAX {
            stamp[x] = start as u32;
            if parent[x] == NIL {
                break;
            }
            x = parent[x] as usize;
        }
        if stamp[x] == start as u32 && parent[x] != NIL {
            return parent_cycle(parent, parent_edge, x);
        }
    }
    None
}

/// Depth histogram of a parent forest rooted at `source` (depth 1).
pub(crate) fn depth_histogram(parent: &[u32], source: usize) -> Vec<u64> {
    let n = parent.len();
    let mut depth = vec![0u32; n];
    depth[source] = 1;
    let mut hist = Vec::new();
    let mut stack = Vec::new();
    for v in 0..n {
        let mut x = v;
        while depth[x] == 0 && parent[x] != NIL {
            stack.push(x);
            x = parent[x] as usize;
        }
        let mut d = depth[x];
        while let Some(y) = stack.pop() {
            if d != 0 {
                d += 1;
            }
            depth[y] = d;
        }
        if depth[v] != 0 {
            RunStats::bump_depth(&mut hist, depth[v] as usize);
        }
    }
    hist
}

pub(crate) fn solved<W: Weight>(dist: Vec<Option<W>>, parent: &[u32]) -> SsspOutcome<W> {
    SsspOutcome::Solved {
        dist,
        parent: parent.iter().map(|&p| (p != NIL).then_some(VertexId(p))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert!("astar".parse::<Algorithm>().is_err());
    }

    #[test]
    fn parent_cycle_from_tail() {
        // 4 -> 0 -> 1 -> 2 -> 0 (parent[v] is the tail of v's tree edge)
        let parent = [2, 0, 1, NIL, 0];
        let pedge = [12, 10, 11, usize::MAX, 14];
        let (cycle, edges) = parent_cycle(&parent, &pedge, 4).unwrap();
        let k = cycle.len();
        assert_eq!(k, 3);
        for i in 0..k {
            // edge i leaves cycle[i] and enters cycle[i+1], whose parent edge it is
            assert_eq!(edges[i].0, pedge[cycle[(i + 1) % k].index()]);
            assert_eq!(parent[cycle[(i + 1) % k].index()] as usize, cycle[i].index());
        }
        assert_eq!(parent_cycle(&parent, &pedge, 3), None);
    }

    #[test]
    fn depth_histogram_chain_and_unreached() {
        assert_eq!(depth_histogram(&[NIL, 0, 1, NIL], 0), vec![0, 1, 1, 1]);
    }
}
