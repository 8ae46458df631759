use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::BenchRecord;

/// Least-squares slope of `ys` against `xs`; `None` with fewer than two
/// distinct `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if xs.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub family: String,
    pub algo: String,
    pub points: usize,
    /// Slope of `ln(work)` against `ln(m)`.
    pub slope: f64,
    /// `(m, mean work / m)` per size.
    pub per_edge: Vec<(usize, f64)>,
}

/// Fits `ln(work) ~ ln(m)` per (family, algorithm) over completed, verified
/// records and renders a table followed by notes for omitted groups.
pub fn scaling_report(records: &[BenchRecord]) -> (Vec<ScalingRow>, String) {
    let mut groups: BTreeMap<(String, String), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.family.clone(), r.algo.to_string())).or_default().push(r);
    }
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for ((family, algo), recs) in groups {
        let used: Vec<&&BenchRecord> = recs.iter().filter(|r| r.counts() && r.m > 0 && r.work() > 0).collect();
        let skipped = recs.len() - used.len();
        if skipped > 0 {
            notes.push(format!("{family}/{algo}: {skipped} censored, inapplicable or invalid record(s) left out"));
        }
        let xs: Vec<f64> = used.iter().map(|r| (r.m as f64).ln()).collect();
        let ys: Vec<f64> = used.iter().map(|r| (r.work() as f64).ln()).collect();
        let Some(slope) = fit_slope(&xs, &ys) else {
            notes.push(format!("{family}/{algo}: omitted, needs completed runs at two or more sizes"));
            continue;
        };
        let mut by_m: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
        for r in &used {
            let e = by_m.entry(r.m).or_default();
            e.0 += r.work() as f64 / r.m as f64;
            e.1 += 1;
        }
        rows.push(ScalingRow {
            family,
            algo,
            points: used.len(),
            slope,
            per_edge: by_m.into_iter().map(|(m, (s, k))| (m, s / k as f64)).collect(),
        });
    }
    if records.iter().any(|r| r.disassembled.is_none()) {
        notes.push("work = relax_attempts only: disassembled_vertices is not stored in the CSV".into());
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:<16} {:<9} {:>6} {:>7}  work/m by m", "family", "algo", "points", "slope");
    for r in &rows {
        let ladder: Vec<String> = r.per_edge.iter().map(|(m, w)| format!("{m}:{w:.3}")).collect();
        let _ = writeln!(out, "{:<16} {:<9} {:>6} {:>7.3}  {}", r.family, r.algo, r.points, r.slope, ladder.join(" "));
    }
    for n in notes {
        let _ = writeln!(out, "note: {n}");
    }
    (rows, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::RunStatus;
    use crate::engines::Algorithm;

    fn rec(m: usize, work: u64) -> BenchRecord {
        BenchRecord {
            family: "syn".into(),
            n: m / 10,
            m,
            seed: m as u64,
            algo: Algorithm::Raffica,
            status: RunStatus::Solved,
            verified: true,
            wall_ms: 0.0,
            relax_attempts: work,
            enqueues: 0,
            rafficas: 0,
            disassembled: Some(0),
        }
    }

    #[test]
    fn linear_synthetic_slope() {
        let recs: Vec<BenchRecord> = [1_000, 10_000, 100_000].iter().map(|&m| rec(m, 3 * m as u64)).collect();
        let (rows, text) = scaling_report(&recs);
        assert_eq!(rows.len(), 1);
        assert!((rows[0].slope - 1.0).abs() < 0.01);
        assert!(text.contains("syn"));
    }

    #[test]
    fn single_size_is_omitted() {
        let mut r = rec(1000, 5);
        let mut censored = rec(2000, 9);
        censored.status = RunStatus::Timeout;
        r.disassembled = None;
        let (rows, text) = scaling_report(&[r, censored]);
        assert!(rows.is_empty());
        assert!(text.contains("omitted"));
        assert!(text.contains("1 censored"));
        assert!(text.contains("relax_attempts only"));
    }

    #[test]
    fn slope_of_constant_is_zero() {
        assert_eq!(fit_slope(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0]), Some(0.0));
        assert_eq!(fit_slope(&[1.0, 1.0], &[1.0, 2.0]), None);
    }
}
