//! The auxiliary tree: parent links mirrored by intrusive child lists.
//!
//! Children of a vertex form a doubly linked list threaded through
//! `next`/`prev`, so detaching a vertex is O(1) and walking a subtree costs
//! O(subtree). A vertex is *in the tree* when it has a depth; the root has
//! depth 1, orphans have none.

use crate::graph::{EdgeId, VertexId, Weight};

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct AuxTree<W> {
    root: u32,
    parent: Vec<u32>,
    parent_edge: Vec<usize>,
    first_child: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    depth: Vec<u32>,
    inqueue: Vec<bool>,
    dist: Vec<Option<W>>,
}

/// What a relaxation did to the tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Relink {
    /// The head was an ancestor of the tail: `cycle[0]` is the head, the last
    /// vertex is the tail, and `edges[i]` leaves `cycle[i]`.
    Cycle { cycle: Vec<VertexId>, edges: Vec<EdgeId> },
    Linked {
        /// The head had a different parent before (a Raffica).
        rewired: bool,
        /// Strict descendants that lost their tree membership.
        orphaned: usize,
    },
}

impl<W: Weight> AuxTree<W> {
    /// A tree holding only `root`, at distance zero, not queued.
    pub fn new(n: usize, root: VertexId) -> Self {
        let r = root.index();
        assert!(r < n, "root {r} out of range for {n} vertices");
        let mut t = AuxTree {
            root: root.0,
            parent: vec![NIL; n],
            parent_edge: vec![usize::MAX; n],
            first_child: vec![NIL; n],
            next: vec![NIL; n],
            prev: vec![NIL; n],
            depth: vec![0; n],
            inqueue: vec![false; n],
            dist: vec![None; n],
        };
        t.depth[r] = 1;
        t.dist[r] = Some(W::ZERO);
        t
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        VertexId(self.root)
    }

    #[inline]
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v.index()];
        (p != NIL).then_some(VertexId(p))
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent(v).map(|_| EdgeId(self.parent_edge[v.index()]))
    }

    pub fn children(&self, v: VertexId) -> Children<'_, W> {
        Children {
            tree: self,
            cur: self.first_child[v.index()],
        }
    }

    #[inline]
    pub fn has_children(&self, v: VertexId) -> bool {
        self.first_child[v.index()] != NIL
    }

    #[inline]
    pub fn dist(&self, v: VertexId) -> Option<W> {
        self.dist[v.index()]
    }

    #[inline]
    pub fn in_queue(&self, v: VertexId) -> bool {
        self.inqueue[v.index()]
    }

    #[inline]
    pub fn set_in_queue(&mut self, v: VertexId, flag: bool) {
        self.inqueue[v.index()] = flag;
    }

    /// Depth of `v`, root = 1; `None` for vertices outside the tree.
    #[inline]
    pub fn depth(&self, v: VertexId) -> Option<u32> {
        let d = self.depth[v.index()];
        (d != 0).then_some(d)
    }

    #[inline]
    pub fn in_tree(&self, v: VertexId) -> bool {
        self.depth[v.index()] != 0
    }

    /// Records a successful relaxation of `u -(edge)-> v` to distance `d`.
    ///
    /// One breadth-first walk over the subtree of `v` both looks for `u`
    /// (if found, `v` is an ancestor of `u` and the tree path plus the edge
    /// is a negative cycle; nothing is modified) and collects the vertices to
    /// orphan. Otherwise every strict descendant of `v` loses its links and
    /// its in-queue flag, keeping its distance, and `v` hangs under `u`.
    /// The queue flag of `v` itself is left to the caller.
    ///
    /// `buf` is scratch space; on return it holds `v` followed by the
    /// orphaned vertices.
    pub fn relax(&mut self, u: VertexId, v: VertexId, edge: EdgeId, d: W, buf: &mut Vec<u32>) -> Relink {
        debug_assert!(self.in_tree(u), "relaxing out of a vertex outside the tree");
        if self.collect_subtree(v, Some(u.0), buf) {
            return self.cycle_through(u, v, edge);
        }
        let orphaned = buf.len() - 1;
        self.orphan(&buf[1..]);
        let (ui, vi) = (u.index(), v.index());
        self.first_child[vi] = NIL;
        let old = self.parent[vi];
        if old != u.0 {
            if old != NIL {
                self.unlink(vi);
            }
            self.link(vi, u.0);
        }
        self.parent_edge[vi] = edge.index();
        self.depth[vi] = self.depth[ui] + 1;
        self.dist[vi] = Some(d);
        Relink::Linked {
            rewired: old != NIL && old != u.0,
            orphaned,
        }
    }

    /// Orphans the strict descendants of `v`, leaving `v` in place. Returns
    /// how many were cut; `buf` then holds `v` followed by them.
    pub fn disassemble(&mut self, v: VertexId, buf: &mut Vec<u32>) -> usize {
        self.collect_subtree(v, None, buf);
        self.orphan(&buf[1..]);
        self.first_child[v.index()] = NIL;
        buf.len() - 1
    }

    /// Breadth-first subtree of `v` into `buf`; stops early and returns
    /// `true` if `target` is met.
    fn collect_subtree(&self, v: VertexId, target: Option<u32>, buf: &mut Vec<u32>) -> bool {
        buf.clear();
        buf.push(v.0);
        let mut i = 0;
        while i < buf.len() {
            let x = buf[i];
            if Some(x) == target {
                return true;
            }
            let mut c = self.first_child[x as usize];
            while c != NIL {
                buf.push(c);
                c = self.next[c as usize];
            }
            i += 1;
        }
        false
    }

    fn orphan(&mut self, vs: &[u32]) {
        for &x in vs {
            let x = x as usize;
            self.parent[x] = NIL;
            self.parent_edge[x] = usize::MAX;
            self.first_child[x] = NIL;
            self.next[x] = NIL;
            self.prev[x] = NIL;
            self.depth[x] = 0;
            self.inqueue[x] = false;
        }
    }

    fn cycle_through(&self, u: VertexId, v: VertexId, edge: EdgeId) -> Relink {
        let mut cycle = vec![u];
        let mut x = u;
        while x != v {
            x = VertexId(self.parent[x.index()]);
            cycle.push(x);
        }
        cycle.reverse();
        let mut edges: Vec<EdgeId> = cycle[1..].iter().map(|&c| EdgeId(self.parent_edge[c.index()])).collect();
        edges.push(edge);
        Relink::Cycle { cycle, edges }
    }

    fn link(&mut self, v: usize, p: u32) {
        let head = self.first_child[p as usize];
        self.next[v] = head;
        self.prev[v] = NIL;
        if head != NIL {
            self.prev[head as usize] = v as u32;
        }
        self.first_child[p as usize] = v as u32;
        self.parent[v] = p;
    }

    fn unlink(&mut self, v: usize) {
        let (p, nx, pv) = (self.parent[v], self.next[v], self.prev[v]);
        if pv != NIL {
            self.next[pv as usize] = nx;
        } else {
            self.first_child[p as usize] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = pv;
        }
        self.parent[v] = NIL;
        self.next[v] = NIL;
        self.prev[v] = NIL;
    }

    /// Checks that parent links and child lists mirror each other, that the
    /// tree is exactly what hangs off the root, and that depths and in-queue
    /// flags are consistent. On success returns the tree vertices in
    /// breadth-first order from the root.
    pub fn check_structure(&self) -> Result<Vec<u32>, String> {
        let n = self.n();
        let root = self.root as usize;
        if self.parent[root] != NIL {
            return Err(format!("root {root} has parent {}", self.parent[root]));
        }
        let mut order = vec![self.root];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            let mut c = self.first_child[p as usize];
            let mut before = NIL;
            while c != NIL {
                let ci = c as usize;
                if seen[ci] {
                    return Err(format!("vertex {c} reached twice through child lists"));
                }
                seen[ci] = true;
                if self.parent[ci] != p {
                    return Err(format!("{c} listed as child of {p} but parent is {}", self.parent[ci]));
                }
                if self.prev[ci] != before {
                    return Err(format!("sibling links around {c} are broken"));
                }
                if self.depth[ci] != self.depth[p as usize] + 1 {
                    return Err(format!("depth of {c} is {}, parent {p} has {}", self.depth[ci], self.depth[p as usize]));
                }
                order.push(c);
                before = c;
                c = self.next[ci];
            }
            i += 1;
        }
        for (v, &reached) in seen.iter().enumerate() {
            let in_tree = self.depth[v] != 0;
            if in_tree != reached {
                return Err(format!("vertex {v}: depth {} but reachable from root: {}", self.depth[v], reached));
            }
            if !in_tree && (self.parent[v] != NIL || self.first_child[v] != NIL) {
                return Err(format!("orphan {v} still has tree links"));
            }
            if self.inqueue[v] && !in_tree {
                return Err(format!("orphan {v} is still queued"));
            }
            if in_tree && self.dist[v].is_none() {
                return Err(format!("tree vertex {v} has no distance"));
            }
        }
        Ok(order)
    }

    pub(crate) fn into_parts(self) -> (Vec<Option<W>>, Vec<u32>, Vec<u32>) {
        (self.dist, self.parent, self.depth)
    }
}

pub struct Children<'a, W> {
    tree: &'a AuxTree<W>,
    cur: u32,
}

impl<W> Iterator for Children<'_, W> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        (self.cur != NIL).then(|| {
            let v = self.cur;
            self.cur = self.tree.next[v as usize];
            VertexId(v)
        })
    }
}
