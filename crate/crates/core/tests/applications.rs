mod common;

use rand::Rng;
use raffica::applications::{min_mean_cycle, reduce_diff_system, solve_diff_system, DiffConstraint, DiffSolution, DiffSystem, MeanCycleResult};
use raffica::generators::rng::rng_from_seed;
use raffica::generators::{generate, GenSpec, WeightDist};
use raffica::graph::{Edge, Graph};

#[test]
fn four_constraints_is_infeasible_over_integers() {
    let sys = common::four_constraints();
    let DiffSolution::Infeasible { indices, witness, bound_sum } = solve_diff_system(&sys).unwrap() else {
        panic!("strict integer system must be infeasible")
    };
    let mut vars: Vec<usize> = witness.iter().map(|c| c.i).collect();
    vars.sort();
    assert_eq!(vars, vec![0, 1, 3]);
    let mut idx = indices.clone();
    idx.sort();
    assert_eq!(idx, vec![0, 2, 3]);
    // tightened bounds -2, -3, 3
    assert_eq!(bound_sum, -2);
}

#[test]
fn four_constraints_is_feasible_over_reals() {
    let constraints = common::four_constraints()
        .constraints
        .iter()
        .map(|c| DiffConstraint {
            i: c.i,
            j: c.j,
            k: c.k as f64,
            strict: c.strict,
        })
        .collect();
    let sys = DiffSystem::new(4, constraints);
    // x = (0, 1.5, 4, 3.9) satisfies all four strict constraints
    assert!(sys.satisfied_by(&[0.0, 1.5, 4.0, 3.9]));
    assert!(matches!(solve_diff_system(&sys).unwrap(), DiffSolution::Feasible { .. }));
}

#[test]
fn four_constraints_graph_shape() {
    let r = reduce_diff_system(&common::four_constraints()).unwrap();
    assert_eq!((r.graph.n(), r.graph.m()), (5, 8));
    let mut arcs: Vec<(u32, u32, i64)> = r
        .graph
        .edges()
        .filter(|e| r.arc_constraint[e.id.index()].is_some())
        .map(|e| (e.src.0, e.dst.0, e.weight))
        .collect();
    arcs.sort();
    assert_eq!(arcs, vec![(0, 3, 3), (1, 0, -2), (2, 1, -3), (3, 1, -3)]);
}

#[test]
fn hidden_assignment_systems_are_feasible() {
    for seed in 0..200 {
        let mut rng = rng_from_seed(seed);
        let n = rng.gen_range(1..30);
        let hidden: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..50)).collect();
        let constraints = (0..rng.gen_range(0..4 * n))
            .map(|_| {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let slack = rng.gen_range(0..4);
                let strict = rng.gen_bool(0.5);
                DiffConstraint {
                    i,
                    j,
                    k: hidden[i] - hidden[j] + slack + i64::from(strict),
                    strict,
                }
            })
            .collect();
        let sys = DiffSystem::new(n, constraints);
        let DiffSolution::Feasible { assignment, weak } = solve_diff_system(&sys).unwrap() else {
            panic!("seed {seed}: hidden assignment exists")
        };
        assert!(!weak);
        assert!(sys.satisfied_by(&assignment), "seed {seed}");
    }
}

#[test]
fn infeasible_witnesses_certify() {
    let mut infeasible = 0;
    for seed in 0..200 {
        let mut rng = rng_from_seed(1000 + seed);
        let n = rng.gen_range(2..20);
        let constraints = (0..rng.gen_range(1..3 * n))
            .map(|_| DiffConstraint {
                i: rng.gen_range(0..n),
                j: rng.gen_range(0..n),
                k: rng.gen_range(-3i64..8),
                strict: rng.gen_bool(0.3),
            })
            .collect();
        let sys = DiffSystem::new(n, constraints);
        match solve_diff_system(&sys).unwrap() {
            DiffSolution::Feasible { assignment, .. } => assert!(sys.satisfied_by(&assignment)),
            DiffSolution::Infeasible { witness, bound_sum, .. } => {
                infeasible += 1;
                assert!(bound_sum < 0);
                // consecutive constraints chain: x_i - x_j then x_j - x_l ...
                let k = witness.len();
                for t in 0..k {
                    assert_eq!(witness[t].i, witness[(t + 1) % k].j, "seed {seed}");
                }
            }
        }
    }
    assert!(infeasible > 20);
}

#[test]
fn mean_cycle_matches_karp() {
    for seed in 0..60 {
        let mut rng = rng_from_seed(seed);
        let n = rng.gen_range(1..=30);
        let arcs = rng.gen_range(0..=4 * n) & !1;
        let g: Graph<i64> = generate(&GenSpec {
            family: raffica::generators::Family::Configuration {
                degrees: raffica::generators::DegreeSequence::for_arcs(n, arcs),
                orientation: raffica::generators::Orientation::RandomOne,
            },
            weights: WeightDist::UniformInt { lo: -10, hi: 10 },
            seed,
        })
        .unwrap();
        let ours = min_mean_cycle(&g, 0.0);
        assert_eq!(ours.exact(), common::karp_min_mean(&g), "seed {seed}");
        if let MeanCycleResult::Found { cycle, edges, exact, .. } = &ours {
            assert_eq!(cycle.len(), edges.len());
            let sum: i64 = edges.iter().map(|&e| g.weight(e)).sum();
            assert_eq!(num_rational::Ratio::new(sum as i128, cycle.len() as i128), exact.unwrap());
        }
    }
}

#[test]
fn shifting_weights_shifts_the_mean() {
    for seed in 0..20 {
        let g: Graph<i64> = generate(&GenSpec::configuration(25, 4, WeightDist::UniformInt { lo: -10, hi: 10 }, seed)).unwrap();
        let base = min_mean_cycle(&g, 0.0).exact().unwrap();
        for c in [-7i64, 3, 20] {
            let h = Graph::build(g.n(), g.to_edge_list().into_iter().map(|e| Edge { weight: e.weight + c, ..e })).unwrap();
            assert_eq!(min_mean_cycle(&h, 0.0).exact().unwrap(), base + c as i128);
        }
    }
}

#[test]
fn real_mean_within_tolerance() {
    for seed in 0..10 {
        let g: Graph<i64> = generate(&GenSpec::configuration(20, 3 * 2, WeightDist::UniformInt { lo: -10, hi: 10 }, seed)).unwrap();
        let exact = common::karp_min_mean(&g).unwrap();
        let r = Graph::build(g.n(), g.to_edge_list().into_iter().map(|e| Edge::new(e.src.index(), e.dst.index(), e.weight as f64 / 4.0))).unwrap();
        let got = min_mean_cycle(&r, 1e-9).mean().unwrap();
        let want = *exact.numer() as f64 / *exact.denom() as f64 / 4.0;
        assert!((got - want).abs() <= 1e-9, "seed {seed}: {got} vs {want}");
    }
}
