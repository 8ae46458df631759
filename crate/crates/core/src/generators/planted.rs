use rand::seq::index::sample;

use super::rng::rng_from_seed;
use super::{GenError, GenWeight};
use crate::graph::{Edge, Graph};

/// Adds a simple cycle of `cycle_len` distinct existing vertices whose arc
/// weights sum to `total_weight`, plus a zero-weight arc from vertex 0 to the
/// first cycle vertex (unless it is vertex 0) so the cycle is reachable.
///
/// Cycle vertices are a seeded sample without replacement. Planted arcs are
/// appended after the existing edges; with integer weights the split is
/// `total.div_euclid(len)` per arc, the remainder spread one unit at a time.
pub fn plant_negative_cycle<W: GenWeight>(
    g: &Graph<W>,
    cycle_len: usize,
    total_weight: W,
    seed: u64,
) -> Result<Graph<W>, GenError> {
    if !total_weight.is_negative() {
        return Err(GenError::NonNegativeCycle(total_weight.to_string()));
    }
    if cycle_len < 2 || cycle_len > g.n() {
        return Err(GenError::InvalidParameter(format!(
            "cycle length {cycle_len} must be in 2..={}",
            g.n()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let cycle: Vec<usize> = sample(&mut rng, g.n(), cycle_len).into_vec();
    let weights = W::split(total_weight, cycle_len);
    let mut edges = g.to_edge_list();
    if cycle[0] != 0 {
        edges.push(Edge::new(0, cycle[0], W::ZERO));
    }
    for i in 0..cycle_len {
        edges.push(Edge::new(cycle[i], cycle[(i + 1) % cycle_len], weights[i]));
    }
    Ok(Graph::build(g.n(), edges)?)
}

/// Vertices of the cycle planted by [`plant_negative_cycle`] with this seed.
pub fn planted_cycle_vertices(n: usize, cycle_len: usize, seed: u64) -> Vec<usize> {
    sample(&mut rng_from_seed(seed), n, cycle_len).into_vec()
}
