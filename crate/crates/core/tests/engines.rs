mod common;

use proptest::prelude::*;
use raffica::engines::{bellman_ford, dijkstra, raffica, solve, spfa, Algorithm, RafficaMode, SolveOptions};
use raffica::generators::{generate, GenSpec, WeightDist};
use raffica::graph::{validate_outcome, Edge, Graph, SsspOutcome, VertexId};

const S: VertexId = VertexId(0);

fn audited(g: &Graph<i64>) -> raffica::engines::Solution<i64> {
    let opts = SolveOptions {
        audit: true,
        ..SolveOptions::default()
    };
    solve(g, S, Algorithm::Raffica, &opts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_with_reference(seed in any::<u64>()) {
        let g = common::fuzz_graph(seed, 60, 600);
        let (reference, _) = bellman_ford(&g, S);
        prop_assert!(validate_outcome(&g, S, &reference).is_ok());
        let (q, _) = spfa(&g, S);
        prop_assert_eq!(q.dist(), reference.dist());
        let sol = audited(&g);
        prop_assert_eq!(sol.outcome.dist(), reference.dist());
        prop_assert!(validate_outcome(&g, S, &sol.outcome).is_ok());
        let audit = sol.audit.unwrap();
        prop_assert!(audit.is_clean(), "{:?}", audit.violations);
        if !g.has_negative_weight() {
            let (d, _) = dijkstra(&g, S).unwrap();
            prop_assert_eq!(d.dist(), reference.dist());
        }
    }

    #[test]
    fn detection_verdicts_agree(seed in any::<u64>(), n in 2usize..80, deg in 1usize..5) {
        let g: Graph<i64> = generate(&GenSpec::configuration(n, 2 * deg, WeightDist::UniformInt { lo: -3, hi: 8 }, seed)).unwrap();
        let (reference, _) = bellman_ford(&g, S);
        for out in [spfa(&g, S).0, raffica(&g, S, RafficaMode::Plain).0] {
            prop_assert_eq!(out.is_negative_cycle(), reference.is_negative_cycle());
            let report = validate_outcome(&g, S, &out);
            prop_assert!(report.is_ok(), "{}", report);
            if !reference.is_negative_cycle() {
                prop_assert_eq!(out.dist(), reference.dist());
            }
        }
    }
}

#[test]
fn planted_triangle_is_the_witness() {
    for seed in 0..30 {
        let (g, planted) = common::planted_graph(300, 1200, 3, seed);
        let (out, _) = raffica(&g, S, RafficaMode::Plain);
        let mut found: Vec<usize> = out.cycle().expect("planted cycle").iter().map(|v| v.index()).collect();
        let mut want = planted.clone();
        found.sort();
        want.sort();
        assert_eq!(found, want, "seed {seed}");
        assert!(validate_outcome(&g, S, &out).is_ok());
    }
}

#[test]
fn real_weights_match_within_tolerance() {
    let mut solved = 0;
    for seed in 0..40 {
        // |w| plus a real potential difference: negative arcs, no negative cycle
        let base = common::config_real(150, 600, seed);
        let pi: Vec<f64> = (0..150).map(|v| ((v * 37 + seed as usize * 11) % 101) as f64 * 0.173).collect();
        let g = Graph::build(
            150,
            base.edges().map(|e| Edge {
                src: e.src,
                dst: e.dst,
                weight: e.weight.abs() + pi[e.src.index()] - pi[e.dst.index()],
            }),
        )
        .unwrap();
        assert!(g.has_negative_weight());
        let (reference, _) = bellman_ford(&g, S);
        let (out, _) = raffica(&g, S, RafficaMode::Plain);
        assert_eq!(out.is_negative_cycle(), reference.is_negative_cycle(), "seed {seed}");
        assert!(validate_outcome(&g, S, &out).is_ok(), "seed {seed}");
        if let (Some(a), Some(b)) = (out.dist(), reference.dist()) {
            solved += 1;
            for (x, y) in a.iter().zip(b) {
                match (x, y) {
                    (Some(x), Some(y)) => assert!((x - y).abs() <= 1e-9, "seed {seed}: {x} vs {y}"),
                    _ => assert_eq!(x.is_some(), y.is_some()),
                }
            }
        }
    }
    assert_eq!(solved, 40);
}

#[test]
fn grid_without_cycles_agrees() {
    let g: Graph<i64> = generate(&GenSpec::grid(20, 20, WeightDist::UniformInt { lo: 0, hi: 9 }, 5)).unwrap();
    let (reference, _) = bellman_ford(&g, S);
    for algo in Algorithm::ALL {
        let sol = solve(&g, S, algo, &SolveOptions::default()).unwrap();
        assert_eq!(sol.outcome.dist(), reference.dist(), "{algo}");
        assert!(validate_outcome(&g, S, &sol.outcome).is_ok(), "{algo}");
    }
}

#[test]
fn source_out_of_range_is_an_error() {
    let g = Graph::<i64>::empty(2);
    let err = solve(&g, VertexId(2), Algorithm::Raffica, &SolveOptions::default()).unwrap_err();
    assert_eq!(err.to_string(), "source 2 out of range for 2 vertices");
}

#[test]
fn counters_are_consistent() {
    for seed in 0..20 {
        let g = common::fuzz_graph(seed, 100, 1000);
        for algo in Algorithm::ALL {
            let Ok(sol) = solve(&g, S, algo, &SolveOptions::default()) else { continue };
            let st = &sol.stats;
            assert!(st.successful_relaxes <= st.relax_attempts, "{algo}");
            assert!(st.raffica_count <= st.successful_relaxes, "{algo}");
            assert!(st.dequeues <= st.enqueues, "{algo}");
            if let SsspOutcome::Solved { dist, .. } = &sol.outcome {
                let reached = dist.iter().filter(|d| d.is_some()).count() as u64;
                assert_eq!(st.per_depth_vertices.iter().sum::<u64>(), reached, "{algo}");
            }
        }
    }
}

#[test]
fn timeout_reports_partial_counters() {
    let (g, _) = common::planted_graph(20_000, 100_000, 3, 1);
    let opts = SolveOptions::with_timeout(std::time::Duration::ZERO);
    match solve(&g, S, Algorithm::BellmanFord, &opts) {
        Err(raffica::engines::SolveError::TimedOut(st)) => assert!(st.relax_attempts > 0),
        other => panic!("expected a timeout, got {:?}", other.map(|s| s.outcome.status())),
    }
}
