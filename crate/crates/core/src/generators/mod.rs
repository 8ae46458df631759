//! Seeded, reproducible graph families.
//!
//! Every generator is a pure function of its arguments, seed included; see
//! [`rng`] for the stream conventions.

mod configuration;
mod grid;
mod hub;
mod planted;
pub mod rng;
mod weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use configuration::gen_configuration;
pub use grid::gen_grid;
pub use hub::{gen_hub_worst_case, split_hub, HUB_SOURCE, HUB_VERTEX};
pub use planted::{plant_negative_cycle, planted_cycle_vertices};
pub use weights::{GenWeight, WeightDist};

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("half-edge total {0} is odd")]
    OddHalfEdges(usize),
    #[error("invalid weight distribution {0}")]
    InvalidWeights(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("planted cycle weight must be negative, got {0}")]
    NonNegativeCycle(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Per-vertex half-edge counts for the configuration model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSequence {
    /// `n` vertices, each with `degree` half-edges.
    Constant { n: usize, degree: usize },
    Explicit(Vec<usize>),
}

impl DegreeSequence {
    /// Near-constant sequence with `arcs` total half-edges: `arcs / n` each,
    /// the first `arcs % n` vertices one more. With both-way arcs this yields
    /// exactly `arcs` directed edges.
    pub fn for_arcs(n: usize, arcs: usize) -> Self {
        if n > 0 && arcs.is_multiple_of(n) {
            return DegreeSequence::Constant { n, degree: arcs / n };
        }
        let (q, r) = (arcs / n.max(1), arcs % n.max(1));
        DegreeSequence::Explicit((0..n).map(|i| q + usize::from(i < r)).collect())
    }

    pub fn n(&self) -> usize {
        match self {
            DegreeSequence::Constant { n, .. } => *n,
            DegreeSequence::Explicit(d) => d.len(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match self {
            DegreeSequence::Constant { degree, .. } => *degree,
            DegreeSequence::Explicit(d) => d[v],
        }
    }

    pub fn total(&self) -> usize {
        match self {
            DegreeSequence::Constant { n, degree } => n * degree,
            DegreeSequence::Explicit(d) => d.iter().sum(),
        }
    }
}

/// How a matched half-edge pair `{a, b}` becomes directed arcs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `a -> b` and `b -> a`, weights drawn independently.
    #[default]
    Both,
    /// A single arc, direction by fair coin.
    RandomOne,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Configuration {
        degrees: DegreeSequence,
        #[serde(default)]
        orientation: Orientation,
    },
    Grid {
        rows: usize,
        cols: usize,
        #[serde(default = "yes")]
        bidirectional: bool,
    },
    Hub {
        n: usize,
        fan_out: usize,
    },
    /// A configuration graph with one planted negative cycle.
    PlantedCycle {
        degrees: DegreeSequence,
        cycle_len: usize,
        total_weight: f64,
    },
}

fn yes() -> bool {
    true
}

/// A complete, reproducible recipe for one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub weights: WeightDist,
    pub seed: u64,
}

impl GenSpec {
    pub fn configuration(n: usize, degree: usize, weights: WeightDist, seed: u64) -> Self {
        GenSpec {
            family: Family::Configuration {
                degrees: DegreeSequence::Constant { n, degree },
                orientation: Orientation::Both,
            },
            weights,
            seed,
        }
    }

    pub fn grid(rows: usize, cols: usize, weights: WeightDist, seed: u64) -> Self {
        GenSpec {
            family: Family::Grid {
                rows,
                cols,
                bidirectional: true,
            },
            weights,
            seed,
        }
    }
}

/// Builds the graph described by `spec`.
pub fn generate<W: GenWeight>(spec: &GenSpec) -> Result<Graph<W>, GenError> {
    match &spec.family {
        Family::Configuration { .. } => gen_configuration(spec),
        Family::Grid {
            rows,
            cols,
            bidirectional,
        } => gen_grid(*rows, *cols, &spec.weights, spec.seed, *bidirectional),
        Family::Hub { n, fan_out } => gen_hub_worst_case(*n, *fan_out, spec.seed),
        Family::PlantedCycle {
            degrees,
            cycle_len,
            total_weight,
        } => {
            let base = gen_configuration(&GenSpec {
                family: Family::Configuration {
                    degrees: degrees.clone(),
                    orientation: Orientation::Both,
                },
                weights: spec.weights,
                seed: spec.seed,
            })?;
            let total = W::from_real(*total_weight);
            if total.to_f64() != *total_weight {
                return Err(GenError::InvalidParameter(format!(
                    "cycle weight {total_weight} not representable in {:?} mode",
                    W::MODE
                )));
            }
            plant_negative_cycle(&base, *cycle_len, total, rng::derive_seed(spec.seed, &[rng::label_hash("plant")]))
        }
    }
}
