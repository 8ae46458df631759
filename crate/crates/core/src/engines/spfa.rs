use std::collections::VecDeque;

use super::aux_tree::NIL;
use super::{any_parent_cycle, depth_histogram, parent_cycle, solved, Budget, RunStats};
use crate::graph::{Graph, SsspOutcome, Weight};

/// FIFO queue with an in-queue flag so a vertex is queued at most once at a
/// time. Whenever some vertex's enqueue count reaches a multiple of `n`, the
/// parent graph is searched for a cycle: first along that vertex's parent
/// chain, then everywhere. A cycle there is always negative; if none has
/// formed yet the run continues.
pub(crate) fn run<W: Weight>(g: &Graph<W>, s: usize, budget: &mut Budget) -> Result<(SsspOutcome<W>, RunStats), Box<RunStats>> {
    let n = g.n();
    let (offsets, heads, weights) = (g.offsets(), g.heads(), g.weights());
    let mut st = RunStats::default();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![NIL; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut inqueue = vec![false; n];
    let mut count = vec![0u64; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[s] = Some(W::ZERO);
    queue.push_back(s);
    inqueue[s] = true;
    count[s] = 1;
    st.enqueues = 1;
    let mut round_left = 1usize;
    while let Some(u) = queue.pop_front() {
        inqueue[u] = false;
        st.dequeues += 1;
        let du = dist[u].expect("queued vertex has a distance");
        for e in offsets[u]..offsets[u + 1] {
            st.relax_attempts += 1;
            let v = heads[e].index();
            let cand = du + weights[e];
            if dist[v].is_none_or(|dv| cand < dv) {
                dist[v] = Some(cand);
                parent[v] = u as u32;
                parent_edge[v] = e;
                st.successful_relaxes += 1;
                if !inqueue[v] {
                    inqueue[v] = true;
                    queue.push_back(v);
                    st.enqueues += 1;
                    count[v] += 1;
                    if count[v].is_multiple_of(n as u64) {
                        let found = parent_cycle(&parent, &parent_edge, v).or_else(|| any_parent_cycle(&parent, &parent_edge));
                        if let Some((cycle, edges)) = found {
                            return Ok((SsspOutcome::NegativeCycle { cycle, edges }, st));
                        }
                    }
                }
            }
        }
        round_left -= 1;
        if round_left == 0 {
            st.rounds += 1;
            round_left = queue.len();
        }
        if budget.expired() {
            return Err(Box::new(st));
        }
    }
    st.per_depth_vertices = depth_histogram(&parent, s);
    Ok((solved(dist, &parent), st))
}

#[cfg(test)]
mod tests {
    use crate::engines::{bellman_ford, spfa};
    use crate::graph::{validate_outcome, Edge, Graph, SsspOutcome, VertexId};

    #[test]
    fn chain() {
        let g = Graph::build(3, [Edge::new(0, 1, 1i64), Edge::new(1, 2, 1)]).unwrap();
        let (out, st) = spfa(&g, VertexId(0));
        assert_eq!(out.dist(), Some(&[Some(0), Some(1), Some(2)][..]));
        assert_eq!((st.relax_attempts, st.enqueues, st.dequeues), (2, 3, 3));
    }

    #[test]
    fn two_cycle_detected() {
        let g = Graph::build(3, [Edge::new(0, 1, 1i64), Edge::new(1, 2, -2), Edge::new(2, 1, 1)]).unwrap();
        let (out, _) = spfa(&g, VertexId(0));
        assert!(out.is_negative_cycle());
        assert!(validate_outcome(&g, VertexId(0), &out).is_ok());
        assert!(bellman_ford(&g, VertexId(0)).0.is_negative_cycle());
    }

    #[test]
    fn unreachable_cycle_is_ignored() {
        let g = Graph::build(3, [Edge::new(1, 2, -2i64), Edge::new(2, 1, 1)]).unwrap();
        let (out, _) = spfa(&g, VertexId(0));
        assert_eq!(
            out,
            SsspOutcome::Solved {
                dist: vec![Some(0), None, None],
                parent: vec![None, None, None]
            }
        );
    }
}
