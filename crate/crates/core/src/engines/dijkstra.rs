use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::aux_tree::NIL;
use super::{depth_histogram, solved, Budget, RunStats};
use crate::graph::{Graph, SsspOutcome, Weight};

/// Heap key ordered by [`Weight::total_cmp`], ties broken by vertex.
#[derive(Clone, Copy, Debug)]
struct Key<W>(W, u32);

impl<W: Weight> PartialEq for Key<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Key<W> {}

impl<W: Weight> PartialOrd for Key<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Key<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Binary heap with lazy deletion: stale heap entries are skipped when
/// popped. The caller has already rejected negative weights.
pub(crate) fn run<W: Weight>(g: &Graph<W>, s: usize, budget: &mut Budget) -> Result<(SsspOutcome<W>, RunStats), Box<RunStats>> {
    let n = g.n();
    let (offsets, heads, weights) = (g.offsets(), g.heads(), g.weights());
    let mut st = RunStats::default();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![NIL; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(W::ZERO);
    heap.push(Reverse(Key(W::ZERO, s as u32)));
    st.enqueues = 1;
    let mut settles = 0usize;
    while let Some(Reverse(Key(du, u))) = heap.pop() {
        let u = u as usize;
        if settled[u] || dist[u] != Some(du) {
            st.skipped_dequeues += 1;
            continue;
        }
        settled[u] = true;
        settles += 1;
        st.dequeues += 1;
        for e in offsets[u]..offsets[u + 1] {
            st.relax_attempts += 1;
            let v = heads[e].index();
            let cand = du + weights[e];
            if dist[v].is_none_or(|dv| cand < dv) {
                debug_assert!(!settled[v], "settled vertex {v} improved");
                dist[v] = Some(cand);
                parent[v] = u as u32;
                st.successful_relaxes += 1;
                heap.push(Reverse(Key(cand, v as u32)));
                st.enqueues += 1;
            }
        }
        if budget.expired() {
            return Err(Box::new(st));
        }
    }
    assert!(settles <= n, "{settles} settles for {n} vertices");
    st.rounds = 1;
    st.per_depth_vertices = depth_histogram(&parent, s);
    Ok((solved(dist, &parent), st))
}

#[cfg(test)]
mod tests {
    use crate::engines::{dijkstra, SolveError};
    use crate::graph::{Edge, Graph, VertexId};

    #[test]
    fn chain() {
        let g = Graph::build(3, [Edge::new(0, 1, 1i64), Edge::new(1, 2, 1)]).unwrap();
        let (out, _) = dijkstra(&g, VertexId(0)).unwrap();
        assert_eq!(out.dist(), Some(&[Some(0), Some(1), Some(2)][..]));
    }

    #[test]
    fn rejects_negative_weight() {
        let g = Graph::build(2, [Edge::new(0, 1, -0.5f64)]).unwrap();
        let err = dijkstra(&g, VertexId(0)).unwrap_err();
        assert!(matches!(err, SolveError::NegativeWeight { edge: 0, .. }));
        assert!(err.to_string().contains("negative weight"));
    }

    #[test]
    fn stale_entries_skipped() {
        // 0->2 is improved through 1, leaving a stale heap entry for 2.
        let g = Graph::build(3, [Edge::new(0, 2, 10i64), Edge::new(0, 1, 1), Edge::new(1, 2, 1)]).unwrap();
        let (out, st) = dijkstra(&g, VertexId(0)).unwrap();
        assert_eq!(out.dist(), Some(&[Some(0), Some(1), Some(2)][..]));
        assert_eq!(st.dequeues, 3);
        assert_eq!(st.skipped_dequeues, 1);
    }
}
