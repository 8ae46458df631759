//! Benchmark campaigns: a JSON plan expands into family x size x repetition
//! cells, each cell's graph is generated once and solved by every requested
//! engine, and every outcome is validated before it is recorded.

mod report;

use std::io;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{fit_slope, scaling_report, ScalingRow};

use crate::engines::{solve, Algorithm, SolveError, SolveOptions};
use crate::generators::rng::{derive_seed, label_hash};
use crate::generators::{generate, DegreeSequence, Family, GenError, GenSpec, GenWeight, Orientation, WeightDist};
use crate::graph::{validate_outcome, Graph, VertexId, WeightMode};

/// The graph family of one plan entry; `sizes` in [`FamilyPlan`] give `n`
/// (for grids, the side length).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyKind {
    Configuration {
        #[serde(default = "ten")]
        m_per_n: usize,
        #[serde(default)]
        orientation: Orientation,
    },
    Grid {
        #[serde(default = "yes")]
        bidirectional: bool,
    },
    Hub {
        /// Defaults to `n / 2`.
        #[serde(default)]
        fan_out: Option<usize>,
    },
    Planted {
        #[serde(default = "ten")]
        m_per_n: usize,
        #[serde(default = "three")]
        cycle_len: usize,
        #[serde(default = "minus_one")]
        total_weight: f64,
    },
}

fn ten() -> usize {
    10
}
fn three() -> usize {
    3
}
fn minus_one() -> f64 {
    -1.0
}
fn yes() -> bool {
    true
}
fn one() -> usize {
    1
}
fn sixty() -> f64 {
    60.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyPlan {
    /// Label written to the `family` column.
    pub name: String,
    #[serde(flatten)]
    pub kind: FamilyKind,
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub weights: WeightDist,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchPlan {
    pub families: Vec<FamilyPlan>,
    pub algos: Vec<Algorithm>,
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(default)]
    pub seed_base: u64,
    /// Per-run limit; a run past it is recorded as censored.
    #[serde(default = "sixty")]
    pub timeout_secs: f64,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid plan: {0}")]
    Plan(String),
    #[error("family {family}, n={n}: {source}")]
    Generate {
        family: String,
        n: usize,
        #[source]
        source: GenError,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Solved,
    NegativeCycle,
    /// Deadline passed; counters are partial.
    Timeout,
    /// Dijkstra on a graph with a negative weight.
    Inapplicable,
    /// The outcome failed validation.
    Invalid,
}

/// One CSV row. Column order is the field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub algo: Algorithm,
    pub status: RunStatus,
    pub verified: bool,
    pub wall_ms: f64,
    pub relax_attempts: u64,
    pub enqueues: u64,
    pub rafficas: u64,
    /// Not a CSV column; `None` for records read back from CSV.
    #[serde(skip)]
    pub disassembled: Option<u64>,
}

pub const CSV_HEADER: &str = "family,n,m,seed,algo,status,verified,wall_ms,relax_attempts,enqueues,rafficas";

impl BenchRecord {
    /// Whether this row is a completed, validated run.
    pub fn counts(&self) -> bool {
        self.verified && matches!(self.status, RunStatus::Solved | RunStatus::NegativeCycle)
    }

    /// `relax_attempts + disassembled_vertices`; the second term is zero
    /// when unknown.
    pub fn work(&self) -> u64 {
        self.relax_attempts + self.disassembled.unwrap_or(0)
    }
}

impl FamilyPlan {
    fn mode(&self) -> WeightMode {
        match self.kind {
            FamilyKind::Hub { .. } => WeightMode::Integer,
            _ => self.weights.mode(),
        }
    }

    /// Generation recipe for size `n` and instance seed `seed`.
    pub fn spec(&self, n: usize, seed: u64) -> GenSpec {
        let family = match &self.kind {
            FamilyKind::Configuration { m_per_n, orientation } => Family::Configuration {
                degrees: DegreeSequence::for_arcs(n, n * m_per_n),
                orientation: *orientation,
            },
            FamilyKind::Grid { bidirectional } => Family::Grid {
                rows: n,
                cols: n,
                bidirectional: *bidirectional,
            },
            FamilyKind::Hub { fan_out } => Family::Hub {
                n,
                fan_out: fan_out.unwrap_or(n / 2),
            },
            FamilyKind::Planted {
                m_per_n,
                cycle_len,
                total_weight,
            } => Family::PlantedCycle {
                degrees: DegreeSequence::for_arcs(n, n * m_per_n),
                cycle_len: *cycle_len,
                total_weight: *total_weight,
            },
        };
        GenSpec {
            family,
            weights: self.weights,
            seed,
        }
    }
}

impl BenchPlan {
    pub fn check(&self) -> Result<(), BenchError> {
        let bad = |why: String| Err(BenchError::Plan(why));
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if self.algos.is_empty() {
            return bad("no algorithms".into());
        }
        if self.timeout_secs.is_nan() || self.timeout_secs <= 0.0 {
            return bad(format!("timeout {} must be positive", self.timeout_secs));
        }
        for f in &self.families {
            if f.sizes.is_empty() || f.sizes.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("sizes of {} must be non-empty and strictly increasing", f.name));
            }
            // hub weights are fixed by construction
            let hub = matches!(f.kind, FamilyKind::Hub { .. });
            if let (false, Err(e)) = (hub, f.weights.check(f.mode())) {
                return bad(format!("{}: {e}", f.name));
            }
        }
        Ok(())
    }

    /// Seed of repetition `rep` at size `n` of `family`; independent of the
    /// algorithm list.
    pub fn instance_seed(&self, family: &str, n: usize, rep: usize) -> u64 {
        derive_seed(self.seed_base, &[label_hash(family), n as u64, rep as u64])
    }
}

/// Executes every cell of `plan` on `jobs` worker threads (0 = all cores).
/// Records come back sorted by family, size, seed and algorithm.
pub fn run_plan(plan: &BenchPlan, jobs: usize) -> Result<Vec<BenchRecord>, BenchError> {
    plan.check()?;
    let cells: Vec<(usize, usize, usize)> = plan
        .families
        .iter()
        .enumerate()
        .flat_map(|(fi, f)| f.sizes.iter().flat_map(move |&n| (0..plan.repetitions).map(move |rep| (fi, n, rep))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| BenchError::Plan(e.to_string()))?;
    let per_cell: Result<Vec<Vec<BenchRecord>>, BenchError> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(fi, n, rep)| run_cell(plan, &plan.families[fi], n, rep))
            .collect()
    });
    let mut records: Vec<BenchRecord> = per_cell?.into_iter().flatten().collect();
    let family_rank = |name: &str| plan.families.iter().position(|f| f.name == name);
    records.sort_by(|a, b| {
        (family_rank(&a.family), a.n, a.seed, a.algo).cmp(&(family_rank(&b.family), b.n, b.seed, b.algo))
    });
    Ok(records)
}

fn run_cell(plan: &BenchPlan, fam: &FamilyPlan, n: usize, rep: usize) -> Result<Vec<BenchRecord>, BenchError> {
    let seed = plan.instance_seed(&fam.name, n, rep);
    let spec = fam.spec(n, seed);
    let wrap = |source| BenchError::Generate {
        family: fam.name.clone(),
        n,
        source,
    };
    Ok(match fam.mode() {
        WeightMode::Integer => run_algos(plan, fam, seed, &generate::<i64>(&spec).map_err(wrap)?),
        WeightMode::Real => run_algos(plan, fam, seed, &generate::<f64>(&spec).map_err(wrap)?),
    })
}

fn run_algos<W: GenWeight>(plan: &BenchPlan, fam: &FamilyPlan, seed: u64, g: &Graph<W>) -> Vec<BenchRecord> {
    let timeout = Duration::from_secs_f64(plan.timeout_secs);
    let source = VertexId(0);
    plan.algos
        .iter()
        .map(|&algo| {
            let mut rec = BenchRecord {
                family: fam.name.clone(),
                n: g.n(),
                m: g.m(),
                seed,
                algo,
                status: RunStatus::Inapplicable,
                verified: false,
                wall_ms: 0.0,
                relax_attempts: 0,
                enqueues: 0,
                rafficas: 0,
                disassembled: None,
            };
            let (stats, status) = match solve(g, source, algo, &SolveOptions::with_timeout(timeout)) {
                Ok(sol) => {
                    let ok = validate_outcome(g, source, &sol.outcome).is_ok();
                    rec.verified = ok;
                    let status = match (ok, sol.outcome.is_negative_cycle()) {
                        (false, _) => RunStatus::Invalid,
                        (true, false) => RunStatus::Solved,
                        (true, true) => RunStatus::NegativeCycle,
                    };
                    (sol.stats, status)
                }
                Err(SolveError::TimedOut(st)) => (*st, RunStatus::Timeout),
                Err(SolveError::NegativeWeight { .. }) => return rec,
                Err(e @ SolveError::SourceOutOfRange { .. }) => unreachable!("{e}"),
            };
            rec.status = status;
            rec.wall_ms = stats.wall_time.as_secs_f64() * 1e3;
            rec.relax_attempts = stats.relax_attempts;
            rec.enqueues = stats.enqueues;
            rec.rafficas = stats.raffica_count;
            rec.disassembled = Some(stats.disassembled_vertices);
            rec
        })
        .collect()
}

pub fn write_csv<Wr: io::Write>(records: &[BenchRecord], out: Wr) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::Plan(format!("unexpected CSV header `{}`", header.join(","))));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
