use rand::seq::SliceRandom;
use rand::Rng;

use super::rng::rng_from_seed;
use super::{Family, GenError, GenSpec, GenWeight, Orientation};
use crate::graph::{Edge, Graph, VertexId};

/// Configuration-model multigraph.
///
/// Vertex `v` receives `d_v` half-edges; the half-edge list is shuffled
/// (Fisher-Yates over the seeded stream) and consecutive entries are paired,
/// which is a uniform perfect matching. Under [`Orientation::Both`] each pair
/// `{a, b}` yields `a -> b` then `b -> a`, so the out-degree of `v` is exactly
/// `d_v`. Self-loops and parallel edges are kept.
pub fn gen_configuration<W: GenWeight>(spec: &GenSpec) -> Result<Graph<W>, GenError> {
    let Family::Configuration { degrees, orientation } = &spec.family else {
        return Err(GenError::InvalidParameter("not a configuration spec".into()));
    };
    spec.weights.check(W::MODE)?;
    let total = degrees.total();
    if total % 2 != 0 {
        return Err(GenError::OddHalfEdges(total));
    }
    let n = degrees.n();
    let mut half_edges: Vec<u32> = Vec::with_capacity(total);
    for v in 0..n {
        half_edges.extend(std::iter::repeat_n(v as u32, degrees.degree(v)));
    }
    let mut rng = rng_from_seed(spec.seed);
    half_edges.shuffle(&mut rng);

    let arcs_per_pair = match orientation {
        Orientation::Both => 2,
        Orientation::RandomOne => 1,
    };
    let mut edges = Vec::with_capacity(total / 2 * arcs_per_pair);
    for pair in half_edges.chunks_exact(2) {
        let (a, b) = (VertexId(pair[0]), VertexId(pair[1]));
        match orientation {
            Orientation::Both => {
                edges.push(Edge { src: a, dst: b, weight: spec.weights.sample(&mut rng) });
                edges.push(Edge { src: b, dst: a, weight: spec.weights.sample(&mut rng) });
            }
            Orientation::RandomOne => {
                let (src, dst) = if rng.gen::<bool>() { (a, b) } else { (b, a) };
                edges.push(Edge { src, dst, weight: spec.weights.sample(&mut rng) });
            }
        }
    }
    Ok(Graph::build(n, edges)?)
}
