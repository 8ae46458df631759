use super::rng::rng_from_seed;
use super::{GenError, GenWeight, WeightDist};
use crate::graph::{Edge, Graph};

/// `rows x cols` 4-neighbour lattice; vertex `(r, c)` has id `r * cols + c`.
///
/// Arcs are emitted per vertex in row-major order: right, down, and when
/// `bidirectional` also left, up. Weights are drawn in emission order.
pub fn gen_grid<W: GenWeight>(
    rows: usize,
    cols: usize,
    weights: &WeightDist,
    seed: u64,
    bidirectional: bool,
) -> Result<Graph<W>, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::InvalidParameter(format!("grid {rows}x{cols} must be at least 1x1")));
    }
    weights.check(W::MODE)?;
    let mut rng = rng_from_seed(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let per_vertex = if bidirectional { 4 } else { 2 };
    let mut edges = Vec::with_capacity(rows * cols * per_vertex);
    for r in 0..rows {
        for c in 0..cols {
            let here = id(r, c);
            let mut neighbours = [None; 4];
            neighbours[0] = (c + 1 < cols).then(|| id(r, c + 1));
            neighbours[1] = (r + 1 < rows).then(|| id(r + 1, c));
            if bidirectional {
                neighbours[2] = (c > 0).then(|| id(r, c - 1));
                neighbours[3] = (r > 0).then(|| id(r - 1, c));
            }
            for there in neighbours.into_iter().flatten() {
                edges.push(Edge::new(here, there, weights.sample(&mut rng)));
            }
        }
    }
    Ok(Graph::build(rows * cols, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_grid() {
        let g: Graph<f64> = gen_grid(1, 1, &WeightDist::default(), 0, true).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn two_by_two_unidirectional() {
        let g: Graph<i64> = gen_grid(2, 2, &WeightDist::Constant { w: 1.0 }, 0, false).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        let arcs: Vec<(u32, u32)> = g.edges().map(|e| (e.src.0, e.dst.0)).collect();
        assert_eq!(arcs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn bidirectional_closed_form() {
        for (r, c) in [(1, 5), (3, 4), (7, 2), (10, 10)] {
            let g: Graph<f64> = gen_grid(r, c, &WeightDist::default(), 3, true).unwrap();
            assert_eq!(g.m(), 2 * (r * (c - 1) + c * (r - 1)));
            let u: Graph<f64> = gen_grid(r, c, &WeightDist::default(), 3, false).unwrap();
            assert_eq!(u.m(), r * (c - 1) + c * (r - 1));
        }
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(gen_grid::<f64>(0, 3, &WeightDist::default(), 0, true).is_err());
    }
}
