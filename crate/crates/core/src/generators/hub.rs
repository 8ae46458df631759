use super::rng::rng_from_seed;
use super::{GenError, GenWeight, WeightDist};
use crate::graph::{Edge, Graph, VertexId, Weight};

/// Source vertex of [`gen_hub_worst_case`] graphs.
pub const HUB_SOURCE: VertexId = VertexId(0);
/// The high out-degree vertex of [`gen_hub_worst_case`] graphs.
pub const HUB_VERTEX: VertexId = VertexId(1);

/// Adversarial instance: a hub whose distance improves once per BFS round.
///
/// Layout, with `leaves = min(fan_out, n - 3)` and `k = n - 2 - leaves`:
///
/// * vertex 0 is the source, vertex 1 the hub `A`;
/// * chain `c_1..c_k` (ids `2..2+k`): `0 -> c_1` and `c_i -> c_{i+1}` weigh 1;
/// * `c_i -> A` weighs `2(k - i) + 1`, so the distance offered to `A` by
///   `c_i` is `2k - i + 1`, strictly decreasing along the chain;
/// * `A -> leaf` for every leaf, weights drawn from `int:0:9` with `seed`.
///
/// Under FIFO processing `A` is improved (and its out-list rescanned) in each
/// of the `k` rounds, costing about `k * leaves` relaxations.
pub fn gen_hub_worst_case<W: GenWeight>(n: usize, fan_out: usize, seed: u64) -> Result<Graph<W>, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("hub instance needs n >= 3, got {n}")));
    }
    let leaves = fan_out.min(n - 3);
    let k = n - 2 - leaves;
    let chain = |i: usize| 1 + i; // c_i for i in 1..=k
    let leaf_dist = WeightDist::UniformInt { lo: 0, hi: 9 };
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(2 * k + leaves);
    edges.push(Edge::new(0, chain(1), W::from_int(1)));
    for i in 1..=k {
        edges.push(Edge::new(chain(i), 1, W::from_int(2 * (k - i) as i64 + 1)));
        if i < k {
            edges.push(Edge::new(chain(i), chain(i + 1), W::from_int(1)));
        }
    }
    for j in 0..leaves {
        edges.push(Edge::new(1, 2 + k + j, leaf_dist.sample(&mut rng)));
    }
    Ok(Graph::build(n, edges)?)
}

/// Replaces every out-list longer than `max_out_degree` by a balanced tree of
/// zero-weight intermediate vertices (appended after the original ids).
///
/// Leaves of the tree are the original edges, in order, grouped bottom-up in
/// runs of `max_out_degree`. Distances between original vertices are
/// unchanged.
pub fn split_hub<W: Weight>(g: &Graph<W>, max_out_degree: usize) -> Result<Graph<W>, GenError> {
    if max_out_degree < 2 {
        return Err(GenError::InvalidParameter(format!("max_out_degree must be >= 2, got {max_out_degree}")));
    }
    let mut next_id = g.n();
    let mut edges = Vec::with_capacity(g.m() + g.m() / (max_out_degree - 1) + 1);
    let mut extra = Vec::new();
    for v in g.vertices() {
        if g.out_degree(v) <= max_out_degree {
            edges.extend(g.out_edges(v).map(|e| Edge { src: e.src, dst: e.dst, weight: e.weight }));
            continue;
        }
        let mut level: Vec<(VertexId, W)> = g.out_edges(v).map(|e| (e.dst, e.weight)).collect();
        while level.len() > max_out_degree {
            let mut up = Vec::with_capacity(level.len().div_ceil(max_out_degree));
            for chunk in level.chunks(max_out_degree) {
                if let [single] = chunk {
                    up.push(*single);
                    continue;
                }
                let x = VertexId::new(next_id);
                next_id += 1;
                extra.extend(chunk.iter().map(|&(dst, weight)| Edge { src: x, dst, weight }));
                up.push((x, W::ZERO));
            }
            level = up;
        }
        edges.extend(level.into_iter().map(|(dst, weight)| Edge { src: v, dst, weight }));
    }
    edges.extend(extra);
    Ok(Graph::build(next_id, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn hub_layout() {
        let g: Graph<i64> = gen_hub_worst_case(10, 4, 1).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.out_degree(HUB_VERTEX), 4);
        // k = 4 chain vertices: 1 + 4 (to hub) + 3 (chain) + 4 leaves
        assert_eq!(g.m(), 12);
        let offers: Vec<i64> = (1..=4)
            .map(|i| i + g.lightest_edge(VertexId::new(1 + i as usize), HUB_VERTEX).unwrap().weight)
            .collect();
        assert!(offers.windows(2).all(|w| w[0] > w[1]), "{offers:?}");
        assert!(gen_hub_worst_case::<i64>(2, 1, 0).is_err());
    }

    #[test]
    fn hub_minimal() {
        let g: Graph<i64> = gen_hub_worst_case(3, 5, 0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.out_degree(HUB_VERTEX), 0);
    }

    #[test]
    fn split_star_of_eight() {
        let edges: Vec<_> = (1..=8).map(|i| Edge::new(0, i, i as i64)).collect();
        let g = build_graph(9, &edges).unwrap();
        let s = split_hub(&g, 2).unwrap();
        // balanced binary tree over 8 leaves has 7 internal nodes; the root is vertex 0
        assert_eq!(s.n(), 9 + 6);
        assert!(s.vertices().all(|v| s.out_degree(v) <= 2));
        assert_eq!(s.m(), 8 + 4 + 2);
    }

    #[test]
    fn split_within_bound_is_identity() {
        let g = build_graph(3, &[Edge::new(0, 1, 1i64), Edge::new(0, 2, 2), Edge::new(1, 2, 3)]).unwrap();
        assert_eq!(split_hub(&g, 2).unwrap(), g);
        assert!(split_hub(&g, 1).is_err());
    }

    #[test]
    fn split_uneven_fan() {
        let edges: Vec<_> = (1..=10).map(|i| Edge::new(0, i, 1i64)).collect();
        let g = build_graph(11, &edges).unwrap();
        let s = split_hub(&g, 3).unwrap();
        assert!(s.vertices().all(|v| s.out_degree(v) <= 3));
        // every original leaf still has exactly one in-arc
        let mut indeg = vec![0; s.n()];
        for e in s.edges() {
            indeg[e.dst.index()] += 1;
        }
        assert!((1..=10).all(|v| indeg[v] == 1));
    }
}
