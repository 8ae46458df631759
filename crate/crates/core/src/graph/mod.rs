//! Graph data model shared by every engine: an immutable directed
//! multigraph stored as per-vertex contiguous out-edge lists.

mod io;
mod outcome;
mod weight;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{read_any_graph, read_graph, write_graph, AnyGraph, ParseError};
pub use outcome::{validate_outcome, Check, CheckResult, SsspOutcome, ValidationReport};
pub use weight::{Weight, WeightMode};

/// Index of a vertex, `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        VertexId::new(index)
    }
}

/// Position of an edge in the graph's adjacency arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge<W> {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: W,
}

impl<W> Edge<W> {
    pub fn new(src: usize, dst: usize, weight: W) -> Self {
        Edge {
            src: VertexId::new(src),
            dst: VertexId::new(dst),
            weight,
        }
    }
}

/// A borrowed view of one stored edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeRef<W> {
    pub id: EdgeId,
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: W,
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} has non-finite weight {weight}")]
    NonFiniteWeight { edge: usize, weight: String },
}

/// Immutable directed weighted multigraph.
///
/// Out-edges of vertex `v` occupy the id range `offsets[v]..offsets[v+1]`,
/// in the order they were supplied to [`Graph::build`]. Parallel edges and
/// self-loops are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<W> {
    offsets: Vec<usize>,
    tails: Vec<VertexId>,
    heads: Vec<VertexId>,
    weights: Vec<W>,
}

impl<W: Weight> Graph<W> {
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge<W>>,
    {
        let edges: Vec<Edge<W>> = edges.into_iter().collect();
        let mut offsets = vec![0usize; n + 1];
        for (i, e) in edges.iter().enumerate() {
            for v in [e.src, e.dst] {
                if v.index() >= n {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: i,
                        vertex: v.index(),
                        n,
                    });
                }
            }
            if !e.weight.is_finite() {
                return Err(GraphError::NonFiniteWeight {
                    edge: i,
                    weight: e.weight.to_string(),
                });
            }
            offsets[e.src.index() + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        // stable counting sort by source
        let m = edges.len();
        let mut cursor = offsets[..n].to_vec();
        let mut tails = vec![VertexId(0); m];
        let mut heads = vec![VertexId(0); m];
        let mut weights = vec![W::ZERO; m];
        for e in &edges {
            let slot = &mut cursor[e.src.index()];
            tails[*slot] = e.src;
            heads[*slot] = e.dst;
            weights[*slot] = e.weight;
            *slot += 1;
        }
        Ok(Graph {
            offsets,
            tails,
            heads,
            weights,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            tails: Vec::new(),
            heads: Vec::new(),
            weights: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.heads.len()
    }

    pub fn weight_mode(&self) -> WeightMode {
        W::MODE
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Edge heads in CSR order; index with an edge position.
    pub fn heads(&self) -> &[VertexId] {
        &self.heads
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    #[inline]
    pub fn edge_range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v.index()]..self.offsets[v.index() + 1]
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> EdgeRef<W> {
        let i = id.index();
        EdgeRef {
            id,
            src: self.tails[i],
            dst: self.heads[i],
            weight: self.weights[i],
        }
    }

    #[inline]
    pub fn head(&self, id: EdgeId) -> VertexId {
        self.heads[id.index()]
    }

    #[inline]
    pub fn tail(&self, id: EdgeId) -> VertexId {
        self.tails[id.index()]
    }

    #[inline]
    pub fn weight(&self, id: EdgeId) -> W {
        self.weights[id.index()]
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeRef<W>> + '_ {
        self.edge_range(v).map(move |i| self.edge(EdgeId(i)))
    }

    /// All edges, grouped by source vertex.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef<W>> + '_ {
        (0..self.m()).map(move |i| self.edge(EdgeId(i)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId::new)
    }

    pub fn to_edge_list(&self) -> Vec<Edge<W>> {
        self.edges()
            .map(|e| Edge {
                src: e.src,
                dst: e.dst,
                weight: e.weight,
            })
            .collect()
    }

    /// Lightest edge `src -> dst`, if any.
    pub fn lightest_edge(&self, src: VertexId, dst: VertexId) -> Option<EdgeRef<W>> {
        self.out_edges(src)
            .filter(|e| e.dst == dst)
            .min_by(|a, b| a.weight.total_cmp(&b.weight))
    }

    pub fn has_negative_weight(&self) -> bool {
        self.weights.iter().any(|w| w.is_negative())
    }

    pub fn max_abs_weight(&self) -> Option<W> {
        self.weights
            .iter()
            .map(|&w| if w.is_negative() { -w } else { w })
            .max_by(|a, b| a.total_cmp(b))
    }

    /// Same topology with every weight passed through `f`.
    pub fn map_weights<V: Weight>(&self, mut f: impl FnMut(W) -> V) -> Result<Graph<V>, GraphError> {
        let weights: Vec<V> = self.weights.iter().map(|&w| f(w)).collect();
        if let Some(i) = weights.iter().position(|w| !w.is_finite()) {
            return Err(GraphError::NonFiniteWeight {
                edge: i,
                weight: weights[i].to_string(),
            });
        }
        Ok(Graph {
            offsets: self.offsets.clone(),
            tails: self.tails.clone(),
            heads: self.heads.clone(),
            weights,
        })
    }
}

/// Builds a graph from an explicit edge list. Edge order within each
/// vertex's out-list follows input order.
pub fn build_graph<W: Weight>(n: usize, edges: &[Edge<W>]) -> Result<Graph<W>, GraphError> {
    Graph::build(n, edges.iter().copied())
}
