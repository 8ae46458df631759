//! Instance builders shared by the integration and acceptance tests.
#![allow(dead_code)]

use rand::Rng;
use raffica::engines::bellman_ford;
use raffica::generators::rng::{derive_seed, label_hash, rng_from_seed};
use raffica::generators::{generate, DegreeSequence, Family, GenSpec, Orientation, WeightDist};
use raffica::graph::{Edge, Graph, VertexId};

/// A fuzzed configuration-model graph with mixed-sign integer weights and no
/// negative cycle reachable from vertex 0.
///
/// Nonnegative base weights `w` become `w + pi(u) - pi(v)` for random
/// potentials `pi`, which changes signs but not cycle weights. About a third
/// of the instances skip the shift (a nonnegative subset for Dijkstra) and
/// about a third get a few edges pushed down afterwards; those are kept only
/// if Bellman-Ford still finds no negative cycle.
pub fn fuzz_graph(seed: u64, max_n: usize, max_m: usize) -> Graph<i64> {
    for attempt in 0u64.. {
        let mut rng = rng_from_seed(derive_seed(seed, &[label_hash("fuzz"), attempt]));
        let n = rng.gen_range(2..=max_n);
        let m = rng.gen_range(0..=max_m.min(10 * n)) & !1;
        let spec = GenSpec {
            family: Family::Configuration {
                degrees: DegreeSequence::for_arcs(n, m),
                orientation: Orientation::Both,
            },
            weights: WeightDist::UniformInt { lo: 0, hi: 20 },
            seed: rng.gen(),
        };
        let base: Graph<i64> = generate(&spec).expect("valid spec");
        let kind = rng.gen_range(0..3);
        let pi: Vec<i64> = (0..n).map(|_| if kind == 0 { 0 } else { rng.gen_range(0..=30) }).collect();
        let mut edges: Vec<Edge<i64>> = base
            .to_edge_list()
            .into_iter()
            .map(|e| Edge { weight: e.weight + pi[e.src.index()] - pi[e.dst.index()], ..e })
            .collect();
        if kind == 2 && !edges.is_empty() {
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(0..edges.len());
                edges[i].weight -= rng.gen_range(1..=5);
            }
        }
        let g = Graph::build(n, edges).expect("valid edges");
        if !bellman_ford(&g, VertexId(0)).0.is_negative_cycle() {
            return g;
        }
    }
    unreachable!()
}

/// Configuration graph with a planted cycle of total weight -1 on top of
/// weights in `1..=9`, so the planted cycle is the only negative one.
/// Returns the graph and the planted vertices.
pub fn planted_graph(n: usize, arcs: usize, cycle_len: usize, seed: u64) -> (Graph<i64>, Vec<usize>) {
    let spec = GenSpec {
        family: Family::PlantedCycle {
            degrees: DegreeSequence::for_arcs(n, arcs),
            cycle_len,
            total_weight: -1.0,
        },
        weights: WeightDist::UniformInt { lo: 1, hi: 9 },
        seed,
    };
    let g = generate(&spec).expect("valid spec");
    let cyc = raffica::generators::planted_cycle_vertices(n, cycle_len, derive_seed(seed, &[label_hash("plant")]));
    (g, cyc)
}

/// Configuration graph, `arcs` directed edges, default real weight model.
pub fn config_real(n: usize, arcs: usize, seed: u64) -> Graph<f64> {
    let spec = GenSpec {
        family: Family::Configuration {
            degrees: DegreeSequence::for_arcs(n, arcs),
            orientation: Orientation::Both,
        },
        weights: WeightDist::default(),
        seed,
    };
    generate(&spec).expect("valid spec")
}

/// Karp's minimum mean cycle: with `D_k(v)` the lightest walk of exactly
/// `k` edges ending at `v` (starting anywhere),
/// `min_v max_{k < n} (D_n(v) - D_k(v)) / (n - k)` over `v` with finite
/// `D_n(v)`. `None` if the graph has no cycle.
pub fn karp_min_mean(g: &Graph<i64>) -> Option<num_rational::Ratio<i128>> {
    use num_rational::Ratio;
    let n = g.n();
    let mut d: Vec<Vec<Option<i128>>> = vec![vec![Some(0); n]];
    for k in 1..=n {
        let mut row = vec![None; n];
        for e in g.edges() {
            if let Some(du) = d[k - 1][e.src.index()] {
                let cand = du + e.weight as i128;
                let slot = &mut row[e.dst.index()];
                if slot.is_none_or(|x| cand < x) {
                    *slot = Some(cand);
                }
            }
        }
        d.push(row);
    }
    (0..n)
        .filter_map(|v| {
            let dn = d[n][v]?;
            (0..n)
                .filter_map(|k| d[k][v].map(|dk| Ratio::new(dn - dk, (n - k) as i128)))
                .max()
        })
        .min()
}

/// The four-variable system from the difference-constraints example, with
/// 0-based variables `x0..x3` standing for `x1..x4`.
pub fn four_constraints() -> raffica::applications::DiffSystem<i64> {
    use raffica::applications::{DiffConstraint, DiffSystem};
    DiffSystem::new(
        4,
        vec![
            DiffConstraint::lt(0, 1, -1),
            DiffConstraint::lt(1, 2, -2),
            DiffConstraint::lt(1, 3, -2),
            DiffConstraint::lt(3, 0, 4),
        ],
    )
}
