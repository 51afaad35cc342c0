//! Enumeration of the simple walks between two vertices.
//!
//! [`SimpleWalkStream`] is Yen's k-shortest-simple-paths scheme specialised
//! to unweighted graphs: the shortest-path subroutine is a BFS, and ties are
//! broken by the edge-id sequence, so the stream is ordered by length and
//! then lexicographically by edge ids. Each call to `next` performs the spur
//! searches of the previously emitted walk, which bounds the delay by
//! `O(n · (|V| + |E|))` plus candidate bookkeeping. The work is counted in an
//! operation counter so the delay can be observed.

use std::borrow::Cow;
use std::cell::Cell;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Database, EdgeId, VertexId, Walk};

/// Default vertex bound of [`brute_force_enumerate`].
pub const DEFAULT_ORACLE_BOUND: usize = 12;

#[derive(Debug, Default)]
struct TrieNode {
    children: BTreeMap<EdgeId, usize>,
}

/// Ordered, exhaustive stream of the simple walks from `s` to `t`.
#[derive(Debug)]
pub struct SimpleWalkStream<'g> {
    graph: Cow<'g, Database>,
    source: VertexId,
    target: VertexId,
    /// Emitted walks as a trie over edge ids, used to find the edges to
    /// block at each spur vertex.
    trie: Vec<TrieNode>,
    candidates: BinaryHeap<Reverse<(usize, Vec<EdgeId>)>>,
    seen: HashSet<Vec<EdgeId>>,
    last: Option<Vec<EdgeId>>,
    started: bool,
    ops: Cell<u64>,
    last_delay: u64,
    max_delay: u64,
    emitted: u64,
}

/// Starts the enumeration of the simple walks from `s` to `t` in `g`.
pub fn yen_enumerate(g: &Database, s: VertexId, t: VertexId) -> Result<SimpleWalkStream<'_>> {
    SimpleWalkStream::new(Cow::Borrowed(g), s, t)
}

/// Like [`yen_enumerate`], taking ownership of the graph.
pub fn yen_enumerate_owned(
    g: Database,
    s: VertexId,
    t: VertexId,
) -> Result<SimpleWalkStream<'static>> {
    SimpleWalkStream::new(Cow::Owned(g), s, t)
}

impl<'g> SimpleWalkStream<'g> {
    fn new(g: Cow<'g, Database>, s: VertexId, t: VertexId) -> Result<Self> {
    for v in [s, t] {
        if v.0 >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
    }
    Ok(SimpleWalkStream {
        graph: g,
        source: s,
        target: t,
        trie: vec![TrieNode::default()],
        candidates: BinaryHeap::new(),
        seen: HashSet::new(),
        last: None,
        started: false,
        ops: Cell::new(0),
        last_delay: 0,
        max_delay: 0,
        emitted: 0,
    })
    }
}

impl SimpleWalkStream<'_> {
    /// Elementary operations performed so far.
    pub fn operations(&self) -> u64 {
        self.ops.get()
    }

    pub fn graph(&self) -> &Database {
        &self.graph
    }

    fn tick(&self, n: u64) {
        self.ops.set(self.ops.get() + n);
    }

    /// Operations spent producing the most recent walk.
    pub fn last_delay(&self) -> u64 {
        self.last_delay
    }

    /// Largest per-emission operation count so far.
    pub fn max_delay(&self) -> u64 {
        self.max_delay
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Lexicographically least shortest path from `from` to the target that
    /// avoids the blocked vertices, and the blocked edges when leaving
    /// `from`.
    fn shortest(
        &self,
        from: VertexId,
        blocked_vertex: &[bool],
        blocked_first: &[EdgeId],
    ) -> Option<Vec<EdgeId>> {
        let g: &Database = &self.graph;
        let n = g.vertex_count();
        // backward BFS: distance from every vertex to the target
        let mut dist = vec![usize::MAX; n];
        dist[self.target.0] = 0;
        let mut queue = VecDeque::from([self.target]);
        while let Some(v) = queue.pop_front() {
            self.tick(1);
            if v == from {
                // distances of vertices at least as close are final
                continue;
            }
            for &e in g.in_edges(v) {
                self.tick(1);
                let u = g.edge(e).src;
                if blocked_vertex[u.0] || dist[u.0] != usize::MAX {
                    continue;
                }
                if u == from && blocked_first.contains(&e) {
                    continue;
                }
                dist[u.0] = dist[v.0] + 1;
                queue.push_back(u);
            }
        }
        // `from` may have been reached only through a blocked first edge
        let mut best = usize::MAX;
        for &e in g.out_edges(from) {
            self.tick(1);
            let v = g.edge(e).tgt;
            if blocked_first.contains(&e) || blocked_vertex[v.0] || v == from {
                continue;
            }
            if dist[v.0] != usize::MAX {
                best = best.min(dist[v.0] + 1);
            }
        }
        if from == self.target {
            return Some(Vec::new());
        }
        if best == usize::MAX {
            return None;
        }
        let mut path = Vec::with_capacity(best);
        let mut cur = from;
        let mut remaining = best;
        while cur != self.target {
            let next = g.out_edges(cur).iter().copied().find(|&e| {
                self.tick(1);
                let v = g.edge(e).tgt;
                !(cur == from && blocked_first.contains(&e))
                    && !blocked_vertex[v.0]
                    && v != from
                    && dist[v.0] == remaining - 1
            })?;
            path.push(next);
            cur = g.edge(next).tgt;
            remaining -= 1;
        }
        Some(path)
    }

    fn insert_into_trie(&mut self, path: &[EdgeId]) {
        let mut node = 0;
        for &e in path {
            self.tick(1);
            node = match self.trie[node].children.get(&e) {
                Some(&child) => child,
                None => {
                    let child = self.trie.len();
                    self.trie.push(TrieNode::default());
                    self.trie[node].children.insert(e, child);
                    child
                }
            };
        }
    }

    fn push_candidate(&mut self, path: Vec<EdgeId>) {
        self.tick(path.len() as u64 + 1);
        if self.seen.insert(path.clone()) {
            self.candidates.push(Reverse((path.len(), path)));
        }
    }

    /// Generates the deviations of the last emitted walk.
    fn expand_last(&mut self) {
        let Some(last) = self.last.take() else {
            return;
        };
        let mut vertices = Vec::with_capacity(last.len() + 1);
        vertices.push(self.source);
        for &e in &last {
            vertices.push(self.graph.edge(e).tgt);
        }
        let mut blocked_vertex = vec![false; self.graph.vertex_count()];
        let mut node = 0;
        for i in 0..last.len() {
            let spur = vertices[i];
            let blocked_first: Vec<EdgeId> =
                self.trie[node].children.keys().copied().collect();
            self.tick(blocked_first.len() as u64 + 1);
            if let Some(spur_path) = self.shortest(spur, &blocked_vertex, &blocked_first) {
                let mut candidate = last[..i].to_vec();
                candidate.extend(spur_path);
                self.push_candidate(candidate);
            }
            blocked_vertex[spur.0] = true;
            node = self.trie[node].children[&last[i]];
        }
    }
}

impl Iterator for SimpleWalkStream<'_> {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        let before = self.ops.get();
        if !self.started {
            self.started = true;
            let blocked = vec![false; self.graph.vertex_count()];
            if let Some(p) = self.shortest(self.source, &blocked, &[]) {
                self.push_candidate(p);
            }
        } else {
            self.expand_last();
        }
        let Reverse((_, path)) = self.candidates.pop()?;
        self.tick(1);
        self.insert_into_trie(&path);
        self.last = Some(path.clone());
        self.last_delay = self.ops.get() - before;
        self.max_delay = self.max_delay.max(self.last_delay);
        self.emitted += 1;
        Some(
            Walk::from_edges(&self.graph, self.source, path)
                .expect("enumerated paths follow graph edges"),
        )
    }
}

/// All simple walks from `s` to `t` by exhaustive depth-first search,
/// sorted canonically. Fails when the graph has more than `bound` vertices.
pub fn brute_force_enumerate(
    g: &Database,
    s: VertexId,
    t: VertexId,
    bound: usize,
) -> Result<Vec<Walk>> {
    if g.vertex_count() > bound {
        return Err(Error::GuardExceeded(format!(
            "exhaustive enumeration limited to {bound} vertices, graph has {}",
            g.vertex_count()
        )));
    }
    for v in [s, t] {
        if v.0 >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
    }
    fn dfs(
        g: &Database,
        v: VertexId,
        t: VertexId,
        visited: &mut Vec<bool>,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        if v == t {
            out.push(path.clone());
            return;
        }
        for &e in g.out_edges(v) {
            let u = g.edge(e).tgt;
            if !visited[u.0] {
                visited[u.0] = true;
                path.push(e);
                dfs(g, u, t, visited, path, out);
                path.pop();
                visited[u.0] = false;
            }
        }
    }
    let mut visited = vec![false; g.vertex_count()];
    visited[s.0] = true;
    let mut paths = Vec::new();
    dfs(g, s, t, &mut visited, &mut Vec::new(), &mut paths);
    let mut walks: Vec<Walk> = paths
        .into_iter()
        .map(|p| Walk::from_edges(g, s, p).expect("DFS follows graph edges"))
        .collect();
    walks.sort();
    Ok(walks)
}
