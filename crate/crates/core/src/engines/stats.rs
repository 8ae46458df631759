use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

/// Work counters of one engine run.
///
/// Depth histograms are indexed by tree depth, where the source has depth 1
/// (index 0 is always zero).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    pub relax_attempts: u64,
    pub successful_relaxes: u64,
    pub enqueues: u64,
    /// Queue pops that were processed (lazy-skipped entries excluded).
    pub dequeues: u64,
    /// Queue pops discarded because the entry's in-queue flag was cleared.
    pub skipped_dequeues: u64,
    /// Full edge passes (Bellman-Ford) or queue rounds (queue engines).
    pub rounds: u64,
    /// Re-parentings of a vertex that already had a different tree parent.
    pub raffica_count: u64,
    /// Vertices orphaned by subtree disassembly.
    pub disassembled_vertices: u64,
    /// Disassemblies triggered by density control rather than a relaxation.
    pub forced_disassemblies: u64,
    /// Largest per-vertex Raffica count.
    pub max_vertex_rafficas: u64,
    /// Vertices whose Raffica count exceeded `n - 2`.
    pub progress_bound_anomalies: u64,
    /// Final tree: number of vertices at each depth.
    pub per_depth_vertices: Vec<u64>,
    /// Raffica operations, by the depth the re-parented vertex moved to.
    pub per_depth_raffica: Vec<u64>,
    #[serde(serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl RunStats {
    /// Copy with wall time zeroed, for determinism comparisons.
    pub fn counters(&self) -> RunStats {
        RunStats {
            wall_time: Duration::ZERO,
            ..self.clone()
        }
    }

    pub(crate) fn bump_depth(hist: &mut Vec<u64>, depth: usize) {
        if hist.len() <= depth {
            hist.resize(depth + 1, 0);
        }
        hist[depth] += 1;
    }

    /// `relax_attempts + disassembled_vertices`, the machine-independent
    /// cost used for scaling fits.
    pub fn work(&self) -> u64 {
        self.relax_attempts + self.disassembled_vertices
    }
}

/// Depth histogram as CSV: `depth,vertices,rafficas` rows for every depth
/// from 1 to the deepest populated one, a `total` row, then a `#` comment
/// line with the scalar counters.
pub fn extract_stats_csv(stats: &RunStats) -> String {
    let depths = stats.per_depth_vertices.len().max(stats.per_depth_raffica.len());
    let at = |h: &[u64], d: usize| h.get(d).copied().unwrap_or(0);
    let mut out = String::from("depth,vertices,rafficas\n");
    for d in 1..depths {
        let _ = writeln!(
            out,
            "{d},{},{}",
            at(&stats.per_depth_vertices, d),
            at(&stats.per_depth_raffica, d)
        );
    }
    let _ = writeln!(
        out,
        "total,{},{}",
        stats.per_depth_vertices.iter().sum::<u64>(),
        stats.per_depth_raffica.iter().sum::<u64>()
    );
    let _ = writeln!(
        out,
        "# relax_attempts={},successful_relaxes={},enqueues={},dequeues={},rafficas={},disassembled={},forced={},rounds={},wall_ms={:.3}",
        stats.relax_attempts,
        stats.successful_relaxes,
        stats.enqueues,
        stats.dequeues,
        stats.raffica_count,
        stats.disassembled_vertices,
        stats.forced_disassemblies,
        stats.rounds,
        stats.wall_time.as_secs_f64() * 1e3
    );
    out
}

/// Parses the histogram rows written by [`extract_stats_csv`] back into
/// `(depth, vertices, rafficas)` triples.
pub fn parse_stats_csv(text: &str) -> Vec<(usize, u64, u64)> {
    text.lines()
        .skip(1)
        .filter_map(|line| {
            let mut f = line.split(',');
            let d = f.next()?.parse().ok()?;
            let v = f.next()?.parse().ok()?;
            let r = f.next()?.parse().ok()?;
            Some((d, v, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run() {
        let csv = extract_stats_csv(&RunStats::default());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("depth,vertices,rafficas"));
        assert_eq!(lines.next(), Some("total,0,0"));
        assert!(lines.next().unwrap().starts_with("# relax_attempts=0,"));
        assert!(parse_stats_csv(&csv).is_empty());
    }

    #[test]
    fn histogram_rows() {
        let stats = RunStats {
            per_depth_vertices: vec![0, 1, 1, 1],
            ..RunStats::default()
        };
        let csv = extract_stats_csv(&stats);
        assert_eq!(parse_stats_csv(&csv), vec![(1, 1, 0), (2, 1, 0), (3, 1, 0)]);
        assert!(csv.contains("total,3,0\n"));
    }
}
