use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::engines::{raffica, RafficaMode};
use crate::graph::{Edge, EdgeId, Graph, SsspOutcome, VertexId, Weight, WeightMode};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum MeanCycleResult {
    /// The graph has no cycle at all.
    Acyclic,
    Found {
        mean: f64,
        /// Exact value in integer mode, as `p/q` with `q <= n`.
        #[serde(serialize_with = "ratio_text", skip_serializing_if = "Option::is_none")]
        exact: Option<Ratio<i128>>,
        /// A simple cycle attaining the minimum; `cycle[i] -> cycle[i + 1]`.
        cycle: Vec<VertexId>,
        /// The edge taken at each hop.
        #[serde(skip)]
        edges: Vec<EdgeId>,
    },
}

fn ratio_text<S: Serializer>(r: &Option<Ratio<i128>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

impl MeanCycleResult {
    pub fn mean(&self) -> Option<f64> {
        match self {
            MeanCycleResult::Found { mean, .. } => Some(*mean),
            MeanCycleResult::Acyclic => None,
        }
    }

    pub fn exact(&self) -> Option<Ratio<i128>> {
        match self {
            MeanCycleResult::Found { exact, .. } => *exact,
            MeanCycleResult::Acyclic => None,
        }
    }
}

/// Test graph for a candidate mean: every edge reweighted by `f`, plus a
/// super-source `n` with zero arcs to all vertices. Original edges keep
/// their ids because the super-source sorts last.
fn shifted<W: Weight, V: Weight>(g: &Graph<W>, f: impl Fn(W) -> V) -> Graph<V> {
    let n = g.n();
    let edges = g
        .edges()
        .map(|e| Edge {
            src: e.src,
            dst: e.dst,
            weight: f(e.weight),
        })
        .chain((0..n).map(|v| Edge::new(n, v, V::ZERO)));
    Graph::build(n + 1, edges).expect("shifted weights stay finite")
}

/// Negative cycle of the test graph, if any.
fn probe<V: Weight>(h: &Graph<V>) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    match raffica(h, VertexId::new(h.n() - 1), RafficaMode::Plain).0 {
        SsspOutcome::NegativeCycle { cycle, edges } => Some((cycle, edges)),
        SsspOutcome::Solved { .. } => None,
    }
}

/// Minimum mean weight over all cycles of `g`, by bisection on the mean
/// `lambda` with a Raffica negative-cycle test on weights `w - lambda`.
///
/// In integer mode the search runs over `lambda = t / n^2` with integer
/// `t`, scaling weights by `n^2` in `i128`. Two distinct fractions with
/// denominators at most `n` are at least `1 / n^2` apart, so the final
/// interval `[t / n^2, (t + 1) / n^2)` holds exactly one candidate, and the
/// witness cycle from the last negative test has exactly that mean. `tol`
/// is ignored. In real mode the bisection stops once the interval is
/// narrower than `tol`.
pub fn min_mean_cycle<W: Weight>(g: &Graph<W>, tol: f64) -> MeanCycleResult {
    if g.n() == 0 || g.m() == 0 {
        return MeanCycleResult::Acyclic;
    }
    match W::MODE {
        WeightMode::Integer => integer_search(g),
        WeightMode::Real => real_search(g, tol),
    }
}

fn integer_search<W: Weight>(g: &Graph<W>) -> MeanCycleResult {
    let n = g.n() as i128;
    let q = n * n;
    let wmax = g.edges().map(|e| e.weight.as_i128().expect("integer mode").abs()).max().unwrap_or(0);
    let test = |t: i128| probe(&shifted(g, |w: W| w.as_i128().expect("integer mode") * q - t));
    // Invariant: no cycle has mean < lo / q; some cycle has mean < hi / q.
    let mut lo = -wmax * q - 1;
    let mut hi = wmax * q + 1;
    let Some(mut witness) = test(hi) else {
        return MeanCycleResult::Acyclic;
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match test(mid) {
            Some(w) => {
                hi = mid;
                witness = w;
            }
            None => lo = mid,
        }
    }
    let (cycle, edges) = witness;
    let sum: i128 = edges.iter().map(|&e| g.weight(e).as_i128().expect("integer mode")).sum();
    let exact = Ratio::new(sum, cycle.len() as i128);
    debug_assert!(exact >= Ratio::new(lo, q) && exact < Ratio::new(hi, q));
    MeanCycleResult::Found {
        mean: sum as f64 / cycle.len() as f64,
        exact: Some(exact),
        cycle,
        edges,
    }
}

fn real_search<W: Weight>(g: &Graph<W>, tol: f64) -> MeanCycleResult {
    let tol = if tol > 0.0 { tol } else { 1e-9 };
    let wmax = g.edges().map(|e| e.weight.to_f64().abs()).fold(0.0, f64::max);
    let test = |lambda: f64| probe(&shifted(g, |w: W| w.to_f64() - lambda));
    let mut lo = -wmax - 1.0;
    let mut hi = wmax + 1.0;
    let Some(mut witness) = test(hi) else {
        return MeanCycleResult::Acyclic;
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match test(mid) {
            Some(w) => {
                hi = mid;
                witness = w;
            }
            None => lo = mid,
        }
    }
    let (cycle, edges) = witness;
    let sum: f64 = edges.iter().map(|&e| g.weight(e).to_f64()).sum();
    MeanCycleResult::Found {
        mean: sum / cycle.len() as f64,
        exact: None,
        cycle,
        edges,
    }
}
