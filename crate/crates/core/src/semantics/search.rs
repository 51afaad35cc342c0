//! Exhaustive searches: over base walks (trail, simple-walk and capped walk
//! semantics) and over product paths (multiplicity counting), plus the
//! product reachability used for tuple membership.

use std::collections::{HashSet, VecDeque};

use super::runs::{Budget, RunFilter};
use crate::automaton::Automaton;
use crate::error::Result;
use crate::graph::{Database, EdgeId, VertexId, Walk};
use crate::product::RunDatabase;

/// Which base walks the search explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BaseConstraint {
    Trail,
    Simple,
    MaxLength(usize),
}

/// Depth-first search over the base walks starting at `starts`, tracking
/// the number of runs ending in each state. Calls `on_match` with every
/// matching walk ending at `target` (any vertex when `None`) and its number
/// of runs; the search stops when `on_match` returns `false`.
pub(crate) fn search_base(
    db: &Database,
    a: &Automaton,
    starts: &[VertexId],
    target: Option<VertexId>,
    constraint: BaseConstraint,
    budget: &mut Budget,
    on_match: &mut dyn FnMut(Walk, u64) -> bool,
) -> Result<()> {
    struct State<'a> {
        db: &'a Database,
        a: &'a Automaton,
        target: Option<VertexId>,
        constraint: BaseConstraint,
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
        used_edge: Vec<bool>,
        visited: Vec<bool>,
    }

    fn go(
        st: &mut State<'_>,
        counts: &[u64],
        budget: &mut Budget,
        on_match: &mut dyn FnMut(Walk, u64) -> bool,
    ) -> Result<bool> {
        budget.step()?;
        let here = *st.vertices.last().expect("walks are non-empty");
        if st.target.is_none_or(|t| t == here) {
            let mult = st
                .a
                .finals()
                .iter()
                .fold(0u64, |acc, &f| acc.saturating_add(counts[f]));
            if mult > 0 {
                let w = Walk::from_parts(st.vertices.clone(), st.edges.clone());
                if !on_match(w, mult) {
                    return Ok(false);
                }
            }
        }
        if let BaseConstraint::MaxLength(cap) = st.constraint {
            if st.edges.len() >= cap {
                return Ok(true);
            }
        }
        for &e in st.db.out_edges(here) {
            let edge = st.db.edge(e);
            match st.constraint {
                BaseConstraint::Trail if st.used_edge[e.0] => continue,
                BaseConstraint::Simple if st.visited[edge.tgt.0] => continue,
                _ => {}
            }
            let mut next = vec![0u64; counts.len()];
            let mut alive = false;
            for t in st.a.transitions() {
                if counts[t.src] > 0 && edge.has_label(&t.label) {
                    next[t.tgt] = next[t.tgt].saturating_add(counts[t.src]);
                    alive = true;
                }
            }
            if !alive {
                continue;
            }
            st.used_edge[e.0] = true;
            st.visited[edge.tgt.0] = true;
            st.vertices.push(edge.tgt);
            st.edges.push(e);
            let keep_going = go(st, &next, budget, on_match)?;
            st.edges.pop();
            st.vertices.pop();
            st.used_edge[e.0] = false;
            st.visited[edge.tgt.0] = st.vertices.contains(&edge.tgt);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    let mut init = vec![0u64; a.state_count()];
    for &q in a.initial() {
        init[q] = 1;
    }
    for &s in starts {
        let mut st = State {
            db,
            a,
            target,
            constraint,
            vertices: vec![s],
            edges: Vec::new(),
            used_edge: vec![false; db.edge_count()],
            visited: vec![false; db.vertex_count()],
        };
        st.visited[s.0] = true;
        if !go(&mut st, &init, budget, on_match)? {
            break;
        }
    }
    Ok(())
}

/// Product vertices from which some vertex satisfying `is_target` is
/// reachable.
fn coreachable(rd: &RunDatabase, is_target: &dyn Fn(VertexId) -> bool) -> Vec<bool> {
    let p = rd.product();
    let mut seen = vec![false; p.vertex_count()];
    let mut queue = VecDeque::new();
    for v in p.vertex_ids() {
        if is_target(v) {
            seen[v.0] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &e in p.in_edges(v) {
            let u = p.edge(e).src;
            if !seen[u.0] {
                seen[u.0] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Whether some product vertex satisfying `is_target` is reachable from
/// `sources`.
pub(crate) fn product_reachable(
    rd: &RunDatabase,
    sources: &[VertexId],
    is_target: &dyn Fn(VertexId) -> bool,
) -> bool {
    let p = rd.product();
    let mut seen = vec![false; p.vertex_count()];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &s in sources {
        if !seen[s.0] {
            seen[s.0] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if is_target(v) {
            return true;
        }
        for &e in p.out_edges(v) {
            let u = p.edge(e).tgt;
            if !seen[u.0] {
                seen[u.0] = true;
                queue.push_back(u);
            }
        }
    }
    false
}

/// Counts the product paths from `sources` to vertices satisfying
/// `is_target` that are kept by `filter`.
pub(crate) fn count_product_paths(
    rd: &RunDatabase,
    sources: &[VertexId],
    is_target: &dyn Fn(VertexId) -> bool,
    filter: RunFilter,
    budget: &mut Budget,
) -> Result<u64> {
    struct Search<'a> {
        rd: &'a RunDatabase,
        is_target: &'a dyn Fn(VertexId) -> bool,
        useful: Vec<bool>,
        filter: RunFilter,
        used: HashSet<(usize, usize)>,
        count: u64,
    }

    impl Search<'_> {
        fn go(&mut self, v: VertexId, budget: &mut Budget) -> Result<()> {
            budget.step()?;
            if (self.is_target)(v) {
                self.count = self.count.saturating_add(1);
            }
            let p = self.rd.product();
            for &e in p.out_edges(v) {
                let u = p.edge(e).tgt;
                if !self.useful[u.0] {
                    continue;
                }
                let key = match self.filter {
                    RunFilter::Simple => (u.0, 0),
                    RunFilter::Trail => (e.0, 0),
                    RunFilter::Binding => (self.rd.base_edge(e).0, self.rd.state_of(u)),
                    RunFilter::Any => unreachable!("unbounded without a length cap"),
                };
                if !self.used.insert(key) {
                    continue;
                }
                self.go(u, budget)?;
                self.used.remove(&key);
            }
            Ok(())
        }
    }

    let mut search = Search {
        rd,
        is_target,
        useful: coreachable(rd, is_target),
        filter,
        used: HashSet::new(),
        count: 0,
    };
    for &s in sources {
        if !search.useful[s.0] {
            continue;
        }
        if filter == RunFilter::Simple {
            search.used.insert((s.0, 0));
        }
        search.go(s, budget)?;
        search.used.clear();
    }
    Ok(search.count)
}

/// Counts the product walks of length at most `cap` from `sources` to
/// vertices satisfying `is_target`, saturating.
pub(crate) fn count_capped_walks(
    rd: &RunDatabase,
    sources: &[VertexId],
    is_target: &dyn Fn(VertexId) -> bool,
    cap: usize,
) -> u64 {
    let p = rd.product();
    let mut layer = vec![0u64; p.vertex_count()];
    for &s in sources {
        layer[s.0] = layer[s.0].saturating_add(1);
    }
    let tally = |layer: &[u64]| {
        p.vertex_ids()
            .filter(|&v| is_target(v))
            .fold(0u64, |acc, v| acc.saturating_add(layer[v.0]))
    };
    let mut total = tally(&layer);
    for _ in 0..cap {
        let mut next = vec![0u64; p.vertex_count()];
        for e in p.edges() {
            next[e.tgt.0] = next[e.tgt.0].saturating_add(layer[e.src.0]);
        }
        layer = next;
        total = total.saturating_add(tally(&layer));
    }
    total
}
