use super::aux_tree::NIL;
use super::{any_parent_cycle, depth_histogram, parent_cycle, solved, Budget, RunStats};
use crate::graph::{Graph, SsspOutcome, Weight};

/// Passes over all edges in CSR order, relaxing in place. After pass `k`
/// every distance is at most the shortest `k`-edge distance, so a pass
/// without change ends the run early and a change in pass `n` means a
/// reachable negative cycle. The cycle is then read off the parent graph
/// by walking `n` parent links from the last vertex relaxed (falling back
/// to a scan of the whole parent graph); if the parent graph is still
/// acyclic, passes continue until it is not.
pub(crate) fn run<W: Weight>(g: &Graph<W>, s: usize, budget: &mut Budget) -> Result<(SsspOutcome<W>, RunStats), Box<RunStats>> {
    let n = g.n();
    let (offsets, heads, weights) = (g.offsets(), g.heads(), g.weights());
    let mut st = RunStats::default();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![NIL; n];
    let mut parent_edge = vec![usize::MAX; n];
    dist[s] = Some(W::ZERO);
    let mut pass = 0usize;
    loop {
        pass += 1;
        st.rounds += 1;
        let mut last = None;
        for u in 0..n {
            let Some(du) = dist[u] else { continue };
            for e in offsets[u]..offsets[u + 1] {
                st.relax_attempts += 1;
                let v = heads[e].index();
                let cand = du + weights[e];
                if dist[v].is_none_or(|dv| cand < dv) {
                    dist[v] = Some(cand);
                    parent[v] = u as u32;
                    parent_edge[v] = e;
                    st.successful_relaxes += 1;
                    last = Some(v);
                }
            }
            if budget.expired() {
                return Err(Box::new(st));
            }
        }
        let Some(v) = last else {
            st.per_depth_vertices = depth_histogram(&parent, s);
            return Ok((solved(dist, &parent), st));
        };
        if pass >= n {
            let found = parent_cycle(&parent, &parent_edge, v).or_else(|| any_parent_cycle(&parent, &parent_edge));
            if let Some((cycle, edges)) = found {
                return Ok((SsspOutcome::NegativeCycle { cycle, edges }, st));
            }
        }
    }
}
