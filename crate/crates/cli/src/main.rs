use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use raffica::applications::{min_mean_cycle, solve_diff_system, DiffSystem};
use raffica::bench::{read_csv, run_plan, scaling_report, write_csv, BenchPlan};
use raffica::engines::{extract_stats_csv, solve, Algorithm, RafficaMode, SolveError, SolveOptions};
use raffica::generators::{generate, DegreeSequence, Family, GenSpec, GenWeight, Orientation, WeightDist};
use raffica::graph::{read_any_graph, write_graph, AnyGraph, Graph, VertexId, WeightMode};

#[derive(Parser)]
#[command(name = "raffica", version, about = "Single-source shortest paths with negative-cycle witnesses")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Config,
    Grid,
    Hub,
    Planted,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph file.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertices (config, hub, planted).
        #[arg(long)]
        n: Option<usize>,
        /// Arcs for config and planted; defaults to 10n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `uniform:LO:HI[:SHIFT]`, `int:LO:HI` or `const:W`.
        #[arg(long, conflicts_with = "shift")]
        wdist: Option<WeightDist>,
        /// Mean shift of the default `U(-1,1)` weights.
        #[arg(long)]
        shift: Option<f64>,
        /// One arc per matched pair, direction by coin flip.
        #[arg(long)]
        one_way: bool,
        /// Grid arcs only point right and down.
        #[arg(long)]
        one_way_grid: bool,
        #[arg(long)]
        fan_out: Option<usize>,
        #[arg(long, default_value_t = 3)]
        cycle_len: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        cycle_weight: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve single-source shortest paths; prints the outcome as JSON.
    Solve {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        graph: PathBuf,
        /// 0-based source vertex.
        #[arg(long, default_value_t = 0)]
        source: usize,
        /// Density-control probability (raffica only).
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 0)]
        density_seed: u64,
        /// Per-depth vertex and Raffica counts.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
        /// Audit the auxiliary tree after every round (raffica only).
        #[arg(long)]
        audit: bool,
    },
    /// Decide a system of difference constraints.
    Diff {
        #[arg(long = "in")]
        input: PathBuf,
        /// Solve over the reals even if every bound is an integer.
        #[arg(long)]
        real: bool,
    },
    /// Minimum mean-weight cycle.
    Mmc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a benchmark plan and write the CSV.
    Bench {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Fit scaling exponents from a benchmark CSV.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("cannot open {}", path.display()))?))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json<T: serde::Serialize + ?Sized>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen {
            family,
            n,
            m,
            rows,
            cols,
            seed,
            wdist,
            shift,
            one_way,
            one_way_grid,
            fan_out,
            cycle_len,
            cycle_weight,
            out,
        } => {
            let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required for this family"));
            let weights = wdist.unwrap_or_else(|| shift.map_or_else(WeightDist::default, WeightDist::shifted));
            let family = match family {
                FamilyArg::Config => {
                    let n = need(n, "n")?;
                    Family::Configuration {
                        degrees: DegreeSequence::for_arcs(n, m.unwrap_or(10 * n)),
                        orientation: if one_way { Orientation::RandomOne } else { Orientation::Both },
                    }
                }
                FamilyArg::Grid => Family::Grid {
                    rows: need(rows, "rows")?,
                    cols: need(cols, "cols")?,
                    bidirectional: !one_way_grid,
                },
                FamilyArg::Hub => {
                    let n = need(n, "n")?;
                    Family::Hub {
                        n,
                        fan_out: fan_out.unwrap_or(n / 2),
                    }
                }
                FamilyArg::Planted => {
                    let n = need(n, "n")?;
                    Family::PlantedCycle {
                        degrees: DegreeSequence::for_arcs(n, m.unwrap_or(10 * n)),
                        cycle_len,
                        total_weight: cycle_weight,
                    }
                }
            };
            let integer = matches!(family, Family::Hub { .. }) || weights.mode() == WeightMode::Integer;
            let spec = GenSpec { family, weights, seed };
            if integer {
                write_generated::<i64>(&spec, out.as_deref())
            } else {
                write_generated::<f64>(&spec, out.as_deref())
            }
        }
        Cmd::Solve {
            algo,
            graph,
            source,
            density,
            density_seed,
            stats,
            out,
            timeout,
            audit,
        } => {
            let mut opts = match timeout {
                Some(t) if t > 0.0 => SolveOptions::with_timeout(Duration::from_secs_f64(t)),
                Some(t) => bail!("--timeout {t} must be positive"),
                None => SolveOptions::default(),
            };
            opts.audit = audit;
            if let Some(p) = density {
                if !(0.0..=1.0).contains(&p) {
                    bail!("--density {p} must lie in [0, 1]");
                }
                if algo != Algorithm::Raffica {
                    bail!("--density only applies to raffica");
                }
                opts.mode = RafficaMode::DensityControl { p, seed: density_seed };
            }
            let g = read_any_graph(open(&graph)?).with_context(|| format!("cannot read {}", graph.display()))?;
            let job = SolveJob {
                source,
                algo,
                opts: &opts,
                stats: stats.as_deref(),
                out: out.as_deref(),
            };
            match &g {
                AnyGraph::Integer(g) => job.run(g),
                AnyGraph::Real(g) => job.run(g),
            }
        }
        Cmd::Diff { input, real } => {
            let value: serde_json::Value = serde_json::from_reader(open(&input)?).context("malformed JSON")?;
            let integral = value["constraints"]
                .as_array()
                .is_some_and(|cs| cs.iter().all(|c| c["k"].is_i64()));
            if integral && !real {
                let sys: DiffSystem<i64> = serde_json::from_value(value)?;
                emit_json(&solve_diff_system(&sys)?, None)
            } else {
                let sys: DiffSystem<f64> = serde_json::from_value(value)?;
                emit_json(&solve_diff_system(&sys)?, None)
            }
        }
        Cmd::Mmc { graph, tol } => {
            let g = read_any_graph(open(&graph)?).with_context(|| format!("cannot read {}", graph.display()))?;
            let result = match &g {
                AnyGraph::Integer(g) => min_mean_cycle(g, tol),
                AnyGraph::Real(g) => min_mean_cycle(g, tol),
            };
            emit_json(&result, None)
        }
        Cmd::Bench { plan, out, jobs } => {
            let plan: BenchPlan = serde_json::from_reader(open(&plan)?).context("malformed plan")?;
            let records = run_plan(&plan, jobs)?;
            write_csv(&records, sink(Some(&out))?)?;
            let censored = records.iter().filter(|r| !r.verified).count();
            eprintln!("{} records written to {} ({censored} unverified)", records.len(), out.display());
            Ok(())
        }
        Cmd::Report { input } => {
            let records = read_csv(open(&input)?)?;
            print!("{}", scaling_report(&records).1);
            Ok(())
        }
    }
}

fn write_generated<W: GenWeight>(spec: &GenSpec, out: Option<&Path>) -> Result<()> {
    let g: Graph<W> = generate(spec)?;
    let mut w = sink(out)?;
    write_graph(&g, &mut w)?;
    w.flush()?;
    Ok(())
}

struct SolveJob<'a> {
    source: usize,
    algo: Algorithm,
    opts: &'a SolveOptions,
    stats: Option<&'a Path>,
    out: Option<&'a Path>,
}

impl SolveJob<'_> {
    fn run<W: raffica::graph::Weight + serde::Serialize>(&self, g: &Graph<W>) -> Result<()> {
        let sol = match solve(g, VertexId::new(self.source), self.algo, self.opts) {
            Ok(sol) => sol,
            Err(SolveError::TimedOut(st)) => {
                if let Some(p) = self.stats {
                    std::fs::write(p, extract_stats_csv(&st))?;
                }
                bail!("timed out after {} relaxation attempts", st.relax_attempts)
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(p) = self.stats {
            std::fs::write(p, extract_stats_csv(&sol.stats)).with_context(|| format!("cannot write {}", p.display()))?;
        }
        if let Some(a) = &sol.audit {
            eprintln!(
                "audit: {} rounds, {} oracle checks, {} violations",
                a.rounds_audited, a.oracle_checks, a.violation_count
            );
            for v in &a.violations {
                eprintln!("  {v}");
            }
        }
        emit_json(&sol.outcome, self.out)
    }
}
