use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph, VertexId, Weight};

/// Result of any single-source engine.
///
/// Serialises as `{"status":"solved","dist":[..],"parent":[..]}` or
/// `{"status":"negative_cycle","cycle":[..]}` with 0-based indices and
/// `null` for unreachable / root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SsspOutcome<W> {
    Solved {
        /// `None` marks an unreachable vertex.
        dist: Vec<Option<W>>,
        parent: Vec<Option<VertexId>>,
    },
    NegativeCycle {
        /// `cycle[i] -> cycle[(i + 1) % k]` for every `i`.
        cycle: Vec<VertexId>,
        /// The edge realising each hop; `edges[i]` leaves `cycle[i]`. May be
        /// empty for externally supplied cycles, in which case the lightest
        /// parallel edge is assumed for each hop.
        #[serde(default, skip_serializing)]
        edges: Vec<EdgeId>,
    },
}

impl<W: Weight> SsspOutcome<W> {
    pub fn is_negative_cycle(&self) -> bool {
        matches!(self, SsspOutcome::NegativeCycle { .. })
    }

    pub fn dist(&self) -> Option<&[Option<W>]> {
        match self {
            SsspOutcome::Solved { dist, .. } => Some(dist),
            SsspOutcome::NegativeCycle { .. } => None,
        }
    }

    pub fn cycle(&self) -> Option<&[VertexId]> {
        match self {
            SsspOutcome::NegativeCycle { cycle, .. } => Some(cycle),
            SsspOutcome::Solved { .. } => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            SsspOutcome::Solved { .. } => "solved",
            SsspOutcome::NegativeCycle { .. } => "negative_cycle",
        }
    }
}

/// Total weight of a cycle given as vertices plus (optionally) edge ids.
/// `None` if some hop has no edge.
pub(crate) fn cycle_weight<W: Weight>(g: &Graph<W>, cycle: &[VertexId], edges: &[EdgeId]) -> Option<W> {
    let k = cycle.len();
    let mut total = W::ZERO;
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        if a.index() >= g.n() || b.index() >= g.n() {
            return None;
        }
        let w = if edges.is_empty() {
            g.lightest_edge(a, b)?.weight
        } else {
            let id = *edges.get(i)?;
            if id.index() >= g.m() {
                return None;
            }
            let e = g.edge(id);
            if e.src != a || e.dst != b {
                return None;
            }
            e.weight
        };
        total = total + w;
    }
    Some(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Shape,
    SourceIsRoot,
    ParentsConsistent,
    ParentsAcyclic,
    TreeEdgesTight,
    NoRelaxableEdge,
    CycleSimple,
    CycleEdgesExist,
    CycleNegative,
    CycleReachable,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Shape => "array lengths match the graph",
            Check::SourceIsRoot => "source has distance 0 and no parent",
            Check::ParentsConsistent => "parents exactly on reachable non-source vertices",
            Check::ParentsAcyclic => "parent links form a tree",
            Check::TreeEdgesTight => "tree edges are tight",
            Check::NoRelaxableEdge => "relaxable edge remains",
            Check::CycleSimple => "cycle is simple",
            Check::CycleEdgesExist => "cycle hops are edges",
            Check::CycleNegative => "cycle weight is negative",
            Check::CycleReachable => "cycle reachable from source",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Pass/fail per invariant of an [`SsspOutcome`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, check: Check) -> bool {
        self.checks.iter().any(|c| c.check == check && !c.passed)
    }

    fn push(&mut self, check: Check, failure: Option<String>) {
        self.checks.push(CheckResult {
            check,
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", c.check)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks an outcome against the graph it claims to solve. Never panics on
/// malformed input; every problem is reported as a failed check.
pub fn validate_outcome<W: Weight>(g: &Graph<W>, source: VertexId, out: &SsspOutcome<W>) -> ValidationReport {
    let mut report = ValidationReport::default();
    match out {
        SsspOutcome::Solved { dist, parent } => validate_solved(g, source, dist, parent, &mut report),
        SsspOutcome::NegativeCycle { cycle, edges } => validate_cycle(g, source, cycle, edges, &mut report),
    }
    report
}

fn validate_solved<W: Weight>(
    g: &Graph<W>,
    source: VertexId,
    dist: &[Option<W>],
    parent: &[Option<VertexId>],
    report: &mut ValidationReport,
) {
    let n = g.n();
    if dist.len() != n || parent.len() != n || source.index() >= n {
        report.push(
            Check::Shape,
            Some(format!("n={n}, |dist|={}, |parent|={}, source={source}", dist.len(), parent.len())),
        );
        return;
    }
    report.push(Check::Shape, None);

    let s = source.index();
    report.push(
        Check::SourceIsRoot,
        (dist[s] != Some(W::ZERO) || parent[s].is_some())
            .then(|| format!("dist={:?}, parent={:?}", dist[s], parent[s])),
    );

    let bad_parent = (0..n).find(|&v| {
        if v == s {
            return false;
        }
        match (dist[v], parent[v]) {
            (None, None) => false,
            (Some(_), Some(p)) => p.index() >= n || dist[p.index()].is_none(),
            _ => true,
        }
    });
    report.push(
        Check::ParentsConsistent,
        bad_parent.map(|v| format!("vertex {v}: dist={:?}, parent={:?}", dist[v], parent[v])),
    );
    if bad_parent.is_some() {
        return;
    }

    // 0 = unvisited, 1 = on current walk, 2 = leads to root
    let mut state = vec![0u8; n];
    state[s] = 2;
    let mut cyclic = None;
    let mut walk = Vec::new();
    'outer: for start in 0..n {
        if state[start] != 0 || parent[start].is_none() {
            continue;
        }
        walk.clear();
        let mut v = start;
        loop {
            match state[v] {
                2 => break,
                1 => {
                    cyclic = Some(v);
                    break 'outer;
                }
                _ => {
                    state[v] = 1;
                    walk.push(v);
                    match parent[v] {
                        Some(p) => v = p.index(),
                        None => break,
                    }
                }
            }
        }
        for &w in &walk {
            state[w] = 2;
        }
    }
    report.push(Check::ParentsAcyclic, cyclic.map(|v| format!("cycle through vertex {v}")));

    let loose = (0..n).filter(|&v| v != s).find_map(|v| {
        let p = parent[v]?;
        let (dp, dv) = (dist[p.index()]?, dist[v]?);
        let tight = g.out_edges(p).any(|e| e.dst.index() == v && dp + e.weight == dv);
        (!tight).then(|| format!("no edge {p}->{v} with dist[{p}] + w = dist[{v}]"))
    });
    report.push(Check::TreeEdgesTight, loose);

    let relaxable = g.edges().find_map(|e| {
        let du = dist[e.src.index()]?;
        let cand = du + e.weight;
        match dist[e.dst.index()] {
            Some(dv) if cand >= dv => None,
            dv => Some(format!(
                "edge {}->{} (w={}): {} < {:?}",
                e.src, e.dst, e.weight, cand, dv
            )),
        }
    });
    report.push(Check::NoRelaxableEdge, relaxable);
}

fn validate_cycle<W: Weight>(
    g: &Graph<W>,
    source: VertexId,
    cycle: &[VertexId],
    edges: &[EdgeId],
    report: &mut ValidationReport,
) {
    let n = g.n();
    if cycle.is_empty() || source.index() >= n || cycle.iter().any(|v| v.index() >= n) {
        report.push(Check::Shape, Some(format!("cycle {cycle:?} on n={n}")));
        return;
    }
    if !edges.is_empty() && edges.len() != cycle.len() {
        report.push(
            Check::Shape,
            Some(format!("{} hops but {} edges", cycle.len(), edges.len())),
        );
        return;
    }
    report.push(Check::Shape, None);

    let mut seen = vec![false; n];
    let repeat = cycle.iter().find(|v| std::mem::replace(&mut seen[v.index()], true));
    report.push(Check::CycleSimple, repeat.map(|v| format!("vertex {v} repeats")));

    match cycle_weight(g, cycle, edges) {
        None => {
            report.push(Check::CycleEdgesExist, Some("some hop has no matching edge".into()));
        }
        Some(total) => {
            report.push(Check::CycleEdgesExist, None);
            report.push(
                Check::CycleNegative,
                (!total.is_negative()).then(|| format!("total weight {total}")),
            );
        }
    }

    let mut reached = vec![false; n];
    let mut queue = VecDeque::from([source]);
    reached[source.index()] = true;
    while let Some(u) = queue.pop_front() {
        for e in g.out_edges(u) {
            if !std::mem::replace(&mut reached[e.dst.index()], true) {
                queue.push_back(e.dst);
            }
        }
    }
    report.push(
        Check::CycleReachable,
        (!reached[cycle[0].index()]).then(|| format!("vertex {} unreachable from {source}", cycle[0])),
    );
}
