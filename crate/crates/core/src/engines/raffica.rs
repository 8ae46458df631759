use std::collections::VecDeque;

use rand::Rng;

use super::audit::{AuditReport, Auditor};
use super::aux_tree::{AuxTree, Relink, NIL};
use super::{Budget, RafficaMode, RunStats};
use crate::generators::rng::{rng_from_seed, GenRng};
use crate::graph::{EdgeId, Graph, SsspOutcome, VertexId, Weight};

/// State for the experimental density-control mode.
struct Density {
    p: f64,
    rng: GenRng,
    /// Orphaned by a forced disassembly; may rejoin at equal distance.
    stale: Vec<bool>,
    forced: Vec<bool>,
    scanned: Vec<u32>,
}

pub(crate) fn run<W: Weight>(
    g: &Graph<W>,
    s: usize,
    mode: &RafficaMode,
    audit: bool,
    budget: &mut Budget,
) -> Result<(SsspOutcome<W>, RunStats, Option<AuditReport>), Box<RunStats>> {
    let n = g.n();
    let (offsets, heads, weights) = (g.offsets(), g.heads(), g.weights());
    let mut tree = AuxTree::new(n, VertexId::new(s));
    let mut st = RunStats::default();
    let mut queue: VecDeque<u32> = VecDeque::with_capacity(n);
    let mut buf = Vec::new();
    let mut rafficas = vec![0u32; n];
    let mut auditor = audit.then(Auditor::new);
    let mut density = match *mode {
        RafficaMode::Plain => None,
        RafficaMode::DensityControl { p, seed } => Some(Density {
            p: p.clamp(0.0, 1.0),
            rng: rng_from_seed(seed),
            stale: vec![false; n],
            forced: vec![false; n],
            scanned: Vec::new(),
        }),
    };
    let bound = n.saturating_sub(2) as u32;

    tree.set_in_queue(VertexId::new(s), true);
    queue.push_back(s as u32);
    st.enqueues = 1;
    let mut round_left = 1usize;
    while let Some(x) = queue.pop_front() {
        round_left -= 1;
        let xv = VertexId(x);
        if !tree.in_queue(xv) {
            // cleared by a disassembly while waiting
            st.skipped_dequeues += 1;
        } else {
            tree.set_in_queue(xv, false);
            st.dequeues += 1;
            let dx = tree.dist(xv).expect("queued vertex has a distance");
            for e in offsets[x as usize]..offsets[x as usize + 1] {
                st.relax_attempts += 1;
                let v = heads[e];
                let cand = dx + weights[e];
                let better = match tree.dist(v) {
                    None => true,
                    Some(dv) => cand < dv || (cand == dv && density.as_ref().is_some_and(|d| d.stale[v.index()])),
                };
                if !better {
                    continue;
                }
                st.successful_relaxes += 1;
                match tree.relax(xv, v, EdgeId(e), cand, &mut buf) {
                    Relink::Cycle { cycle, edges } => {
                        st.per_depth_vertices = tree_histogram(&tree);
                        return Ok((SsspOutcome::NegativeCycle { cycle, edges }, st, auditor.map(|a| a.report)));
                    }
                    Relink::Linked { rewired, orphaned } => {
                        st.disassembled_vertices += orphaned as u64;
                        if let Some(d) = density.as_mut() {
                            d.stale[v.index()] = false;
                        }
                        if rewired {
                            let r = &mut rafficas[v.index()];
                            *r += 1;
                            st.raffica_count += 1;
                            st.max_vertex_rafficas = st.max_vertex_rafficas.max(*r as u64);
                            if *r == bound + 1 {
                                st.progress_bound_anomalies += 1;
                            }
                            let depth = tree.depth(v).expect("relaxed vertex is in the tree");
                            RunStats::bump_depth(&mut st.per_depth_raffica, depth as usize);
                        }
                    }
                }
                if !tree.in_queue(v) {
                    tree.set_in_queue(v, true);
                    queue.push_back(v.0);
                    st.enqueues += 1;
                }
            }
            if let Some(d) = density.as_mut() {
                d.scanned.push(x);
            }
        }
        if round_left == 0 {
            st.rounds += 1;
            if let Some(d) = density.as_mut() {
                force_disassembly(&mut tree, d, &mut queue, &mut st, &mut buf);
            }
            if let Some(a) = auditor.as_mut() {
                a.check(g, &tree, &rafficas, st.rounds);
            }
            round_left = queue.len();
        }
        if budget.expired() {
            return Err(Box::new(st));
        }
    }
    st.per_depth_vertices = tree_histogram(&tree);
    let (dist, parent, _) = tree.into_parts();
    let outcome = SsspOutcome::Solved {
        dist,
        parent: parent.iter().map(|&p| (p != NIL).then_some(VertexId(p))).collect(),
    };
    Ok((outcome, st, auditor.map(|a| a.report)))
}

/// Density control after a round: among the vertices scanned in the round
/// that sit at its deepest level, still in the tree, not queued and with
/// children, each is picked with probability `p` (at most once per run).
/// A picked vertex loses its strict subtree and is queued again; the
/// orphans keep their distances and may rejoin at equal distance.
fn force_disassembly<W: Weight>(tree: &mut AuxTree<W>, d: &mut Density, queue: &mut VecDeque<u32>, st: &mut RunStats, buf: &mut Vec<u32>) {
    let frontier = d
        .scanned
        .iter()
        .filter_map(|&x| tree.depth(VertexId(x)))
        .max();
    let scanned = std::mem::take(&mut d.scanned);
    if let Some(frontier) = frontier {
        for &x in &scanned {
            let v = VertexId(x);
            let eligible = tree.depth(v) == Some(frontier) && !tree.in_queue(v) && tree.has_children(v) && !d.forced[x as usize];
            if !eligible || !d.rng.gen_bool(d.p) {
                continue;
            }
            d.forced[x as usize] = true;
            let cut = tree.disassemble(v, buf);
            for &o in &buf[1..] {
                d.stale[o as usize] = true;
            }
            st.forced_disassemblies += 1;
            st.disassembled_vertices += cut as u64;
            tree.set_in_queue(v, true);
            queue.push_back(x);
            st.enqueues += 1;
        }
    }
    d.scanned = scanned;
    d.scanned.clear();
}

fn tree_histogram<W: Weight>(tree: &AuxTree<W>) -> Vec<u64> {
    let mut hist = Vec::new();
    for v in 0..tree.n() {
        if let Some(d) = tree.depth(VertexId::new(v)) {
            RunStats::bump_depth(&mut hist, d as usize);
        }
    }
    hist
}
