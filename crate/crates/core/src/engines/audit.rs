//! Between-round checks of the auxiliary tree.
//!
//! After every queue round the auditor verifies:
//!
//! - the tree structure (parent links mirror child lists, the tree is what
//!   hangs off the root, orphans carry no links and are not queued);
//! - every queued vertex is a leaf of the tree;
//! - every tree edge is tight, `dist[p] + w = dist[v]`;
//! - no edge out of a scanned (in-tree, not queued) vertex can lower the
//!   distance of a tree vertex;
//! - for small graphs, an independent Bellman-Ford over the traversed edge
//!   set (edges out of scanned tree vertices, plus the tree edges) reproduces
//!   the recorded distance of every tree vertex;
//! - no vertex has been re-parented more than `n - 2` times.
//!
//! Violations are collected, not raised.

use serde::Serialize;

use super::aux_tree::AuxTree;
use crate::graph::{EdgeId, Graph, VertexId, Weight};

/// Largest graph for which the Bellman-Ford cross-check runs.
pub const ORACLE_LIMIT: usize = 200;

const KEEP: usize = 32;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub rounds_audited: u64,
    pub oracle_checks: u64,
    pub violation_count: u64,
    /// The first few violations, verbatim.
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    fn flag(&mut self, round: u64, what: String) {
        self.violation_count += 1;
        if self.violations.len() < KEEP {
            self.violations.push(format!("round {round}: {what}"));
        }
    }
}

pub(crate) struct Auditor {
    pub(crate) report: AuditReport,
}

impl Auditor {
    pub(crate) fn new() -> Self {
        Auditor {
            report: AuditReport::default(),
        }
    }

    pub(crate) fn check<W: Weight>(&mut self, g: &Graph<W>, tree: &AuxTree<W>, rafficas: &[u32], round: u64) {
        self.report.rounds_audited += 1;
        let order = match tree.check_structure() {
            Ok(order) => order,
            Err(e) => {
                self.report.flag(round, format!("structure: {e}"));
                return;
            }
        };
        let n = g.n();
        let dist = |v: VertexId| tree.dist(v).expect("tree vertex has a distance");
        for &x in &order {
            let v = VertexId(x);
            if tree.in_queue(v) && tree.has_children(v) {
                self.report.flag(round, format!("queued vertex {v} has children"));
            }
            if let (Some(p), Some(e)) = (tree.parent(v), tree.parent_edge(v)) {
                let ok = g.tail(e) == p && g.head(e) == v && dist(p) + g.weight(e) == dist(v);
                if !ok {
                    self.report.flag(round, format!("tree edge {p}->{v} is not tight"));
                }
            }
            if !tree.in_queue(v) {
                for er in g.out_edges(v) {
                    if tree.in_tree(er.dst) && dist(v) + er.weight < dist(er.dst) {
                        self.report.flag(round, format!("scanned edge {v}->{} still relaxes", er.dst));
                    }
                }
            }
        }
        let bound = n.saturating_sub(2) as u32;
        if let Some(v) = rafficas.iter().position(|&r| r > bound) {
            self.report.flag(round, format!("vertex {v} re-parented {} times, bound {bound}", rafficas[v]));
        }
        if n <= ORACLE_LIMIT {
            self.oracle_check(g, tree, &order, round);
        }
    }

    /// Bellman-Ford restricted to tree vertices and traversed edges,
    /// passing over vertices in tree breadth-first order.
    fn oracle_check<W: Weight>(&mut self, g: &Graph<W>, tree: &AuxTree<W>, order: &[u32], round: u64) {
        self.report.oracle_checks += 1;
        let n = g.n();
        let mut d: Vec<Option<W>> = vec![None; n];
        d[tree.root().index()] = Some(W::ZERO);
        let traversed = |u: VertexId, e: EdgeId| -> bool {
            let v = g.head(e);
            tree.in_tree(v) && (!tree.in_queue(u) || tree.parent_edge(v) == Some(e))
        };
        let mut converged = false;
        for _ in 0..=order.len() {
            let mut changed = false;
            for &x in order {
                let u = VertexId(x);
                let Some(du) = d[u.index()] else { continue };
                for e in g.edge_range(u).map(EdgeId) {
                    if !traversed(u, e) {
                        continue;
                    }
                    let v = g.head(e).index();
                    let cand = du + g.weight(e);
                    if d[v].is_none_or(|dv| cand < dv) {
                        d[v] = Some(cand);
                        changed = true;
                    }
                }
            }
            if !changed {
                converged = true;
                break;
            }
        }
        if !converged {
            self.report.flag(round, "traversed edges contain a negative cycle".into());
            return;
        }
        for &x in order {
            let v = VertexId(x);
            if d[v.index()] != tree.dist(v) {
                self.report.flag(
                    round,
                    format!("vertex {v}: oracle {:?}, tree {:?}", d[v.index()], tree.dist(v)),
                );
            }
        }
    }
}
