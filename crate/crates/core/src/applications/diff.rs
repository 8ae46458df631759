use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engines::{raffica, RafficaMode};
use crate::graph::{Edge, Graph, SsspOutcome, VertexId, Weight, WeightMode};

/// `x_i - x_j < k` when `strict`, otherwise `x_i - x_j <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffConstraint<W> {
    pub i: usize,
    pub j: usize,
    pub k: W,
    #[serde(default)]
    pub strict: bool,
}

impl<W: Weight> DiffConstraint<W> {
    pub fn le(i: usize, j: usize, k: W) -> Self {
        DiffConstraint { i, j, k, strict: false }
    }

    pub fn lt(i: usize, j: usize, k: W) -> Self {
        DiffConstraint { i, j, k, strict: true }
    }

    /// The non-strict bound actually solved for: `k - 1` for strict integer
    /// constraints, `k` otherwise.
    pub fn effective_bound(&self) -> W {
        if self.strict && W::MODE == WeightMode::Integer {
            self.k - W::from_i64(1)
        } else {
            self.k
        }
    }

    /// Whether the values `xi`, `xj` satisfy this constraint as written.
    pub fn holds(&self, xi: W, xj: W) -> bool {
        let d = xi - xj;
        if self.strict {
            d < self.k
        } else {
            d <= self.k
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffSystem<W> {
    #[serde(rename = "vars")]
    pub num_vars: usize,
    pub constraints: Vec<DiffConstraint<W>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum DiffError {
    #[error("constraint {index} uses variable {var}, but the system has {num_vars} variables")]
    VariableOutOfRange { index: usize, var: usize, num_vars: usize },
    #[error("constraint {index} has non-finite bound {bound}")]
    NonFiniteBound { index: usize, bound: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiffSolution<W> {
    Feasible {
        assignment: Vec<W>,
        /// Real mode only: some strict constraint holds with equality, so
        /// only its non-strict relaxation is satisfied.
        weak: bool,
    },
    Infeasible {
        /// Constraints along the negative cycle, in cycle order.
        witness: Vec<DiffConstraint<W>>,
        /// Their positions in the input system.
        indices: Vec<usize>,
        /// Sum of the effective bounds around the cycle; always negative.
        bound_sum: W,
    },
}

/// A reduced system: the constraint graph plus the arc-to-constraint map.
#[derive(Clone, Debug)]
pub struct DiffGraph<W> {
    pub graph: Graph<W>,
    pub source: VertexId,
    /// `arc_constraint[e]` is the constraint behind edge `e`, `None` for the
    /// zero arcs out of the super-source.
    pub arc_constraint: Vec<Option<usize>>,
}

impl<W: Weight> DiffSystem<W> {
    pub fn new(num_vars: usize, constraints: Vec<DiffConstraint<W>>) -> Self {
        DiffSystem { num_vars, constraints }
    }

    pub fn check(&self) -> Result<(), DiffError> {
        for (index, c) in self.constraints.iter().enumerate() {
            for var in [c.i, c.j] {
                if var >= self.num_vars {
                    return Err(DiffError::VariableOutOfRange {
                        index,
                        var,
                        num_vars: self.num_vars,
                    });
                }
            }
            if !c.k.is_finite() {
                return Err(DiffError::NonFiniteBound {
                    index,
                    bound: c.k.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint as written.
    pub fn satisfied_by(&self, x: &[W]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.holds(x[c.i], x[c.j]))
    }
}

/// Builds the constraint graph.
///
/// Vertex `v < num_vars` stands for `x_v`, vertex `num_vars` is a
/// super-source with a zero arc to every variable. A constraint
/// `x_i - x_j <= k` becomes the arc `j -> i` of weight `k` (strict integer
/// constraints use `k - 1`), so shortest distances satisfy every constraint
/// and a negative cycle sums bounds to a contradiction.
pub fn reduce_diff_system<W: Weight>(sys: &DiffSystem<W>) -> Result<DiffGraph<W>, DiffError> {
    sys.check()?;
    let n = sys.num_vars;
    let s = n;
    let edges = sys
        .constraints
        .iter()
        .map(|c| Edge::new(c.j, c.i, c.effective_bound()))
        .chain((0..n).map(|v| Edge::new(s, v, W::ZERO)));
    let graph = Graph::build(n + 1, edges).expect("endpoints checked");
    // Graph::build sorts stably by tail; replay it to map arcs back.
    let mut cursor = graph.offsets()[..=n].to_vec();
    let mut arc_constraint = vec![None; graph.m()];
    for (idx, c) in sys.constraints.iter().enumerate() {
        arc_constraint[cursor[c.j]] = Some(idx);
        cursor[c.j] += 1;
    }
    Ok(DiffGraph {
        graph,
        source: VertexId::new(s),
        arc_constraint,
    })
}

/// Decides feasibility with the Raffica engine from the super-source.
pub fn solve_diff_system<W: Weight>(sys: &DiffSystem<W>) -> Result<DiffSolution<W>, DiffError> {
    let reduced = reduce_diff_system(sys)?;
    let (outcome, _) = raffica(&reduced.graph, reduced.source, RafficaMode::Plain);
    Ok(match outcome {
        SsspOutcome::Solved { dist, .. } => {
            let assignment: Vec<W> = dist[..sys.num_vars]
                .iter()
                .map(|d| d.expect("every variable hangs off the super-source"))
                .collect();
            let weak = W::MODE == WeightMode::Real && !sys.satisfied_by(&assignment);
            DiffSolution::Feasible { assignment, weak }
        }
        SsspOutcome::NegativeCycle { edges, .. } => {
            let indices: Vec<usize> = edges
                .iter()
                .map(|e| reduced.arc_constraint[e.index()].expect("the super-source lies on no cycle"))
                .collect();
            let witness: Vec<DiffConstraint<W>> = indices.iter().map(|&i| sys.constraints[i]).collect();
            let bound_sum = witness.iter().fold(W::ZERO, |acc, c| acc + c.effective_bound());
            DiffSolution::Infeasible {
                witness,
                indices,
                bound_sum,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_system_is_a_star() {
        let sys = DiffSystem::<i64>::new(2, vec![]);
        let r = reduce_diff_system(&sys).unwrap();
        assert_eq!((r.graph.n(), r.graph.m(), r.source), (3, 2, VertexId(2)));
        assert!(r.graph.edges().all(|e| e.src == VertexId(2) && e.weight == 0));
        assert_eq!(
            solve_diff_system(&sys).unwrap(),
            DiffSolution::Feasible {
                assignment: vec![0, 0],
                weak: false
            }
        );
    }

    #[test]
    fn single_constraint_arc() {
        let sys = DiffSystem::new(2, vec![DiffConstraint::lt(0, 1, 5i64)]);
        let r = reduce_diff_system(&sys).unwrap();
        let e = r.graph.edges().find(|e| r.arc_constraint[e.id.index()] == Some(0)).unwrap();
        assert_eq!((e.src, e.dst, e.weight), (VertexId(1), VertexId(0), 4));
    }

    #[test]
    fn one_le_constraint() {
        let sys = DiffSystem::new(2, vec![DiffConstraint::le(0, 1, -1i64)]);
        let DiffSolution::Feasible { assignment, .. } = solve_diff_system(&sys).unwrap() else {
            panic!("feasible")
        };
        assert_eq!(assignment, vec![-1, 0]);
        assert!(sys.satisfied_by(&assignment));
    }

    #[test]
    fn strict_self_constraint() {
        let sys = DiffSystem::new(1, vec![DiffConstraint::lt(0, 0, 0i64)]);
        let DiffSolution::Infeasible { indices, bound_sum, .. } = solve_diff_system(&sys).unwrap() else {
            panic!("x - x < 0 is infeasible")
        };
        assert_eq!((indices, bound_sum), (vec![0], -1));
        let sys = DiffSystem::new(1, vec![DiffConstraint::lt(0, 0, 1i64)]);
        assert!(matches!(solve_diff_system(&sys).unwrap(), DiffSolution::Feasible { .. }));
    }

    #[test]
    fn real_strict_is_weak_when_tight() {
        // x0 - x1 < 0 and x1 - x0 <= 0 force equality.
        let sys = DiffSystem::new(2, vec![DiffConstraint::lt(0, 1, 0.0f64), DiffConstraint::le(1, 0, 0.0)]);
        assert!(matches!(solve_diff_system(&sys).unwrap(), DiffSolution::Feasible { weak: true, .. }));
        // A lone strict constraint ends up tight on its tree arc.
        let sys = DiffSystem::new(2, vec![DiffConstraint::lt(0, 1, -0.5f64)]);
        assert!(matches!(solve_diff_system(&sys).unwrap(), DiffSolution::Feasible { weak: true, .. }));
        let sys = DiffSystem::new(2, vec![DiffConstraint::lt(0, 1, 5.0f64), DiffConstraint::le(1, 0, -1.0)]);
        assert!(matches!(solve_diff_system(&sys).unwrap(), DiffSolution::Feasible { weak: false, .. }));
    }

    #[test]
    fn bad_index() {
        let sys = DiffSystem::new(2, vec![DiffConstraint::le(0, 2, 1i64)]);
        assert_eq!(
            solve_diff_system(&sys).unwrap_err(),
            DiffError::VariableOutOfRange {
                index: 0,
                var: 2,
                num_vars: 2
            }
        );
    }

    #[test]
    fn json_shape() {
        let sys: DiffSystem<i64> = serde_json::from_str(r#"{"vars":2,"constraints":[{"i":0,"j":1,"k":-1,"strict":true}]}"#).unwrap();
        assert_eq!(sys, DiffSystem::new(2, vec![DiffConstraint::lt(0, 1, -1)]));
    }
}
