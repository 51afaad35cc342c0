//! Runs of an automaton over one fixed walk: existence, counting under the
//! run filters, and the cycle-excision decomposition.

use std::collections::HashSet;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Database, Walk};

/// Restriction on the runs of the run database that are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunFilter {
    /// Every run.
    Any,
    /// No repeated `(vertex, state)`.
    Simple,
    /// No repeated `(edge, transition)`.
    Trail,
    /// No repeated `(e_i, q_{i+1})`.
    Binding,
}

/// Step budget for exhaustive searches.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn step(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::GuardExceeded(format!(
                "search exceeded its budget of {} steps",
                self.limit
            )));
        }
        Ok(())
    }
}

/// `feasible[i][q]`: the run can be completed from state `q` at vertex
/// position `i`.
pub(crate) fn feasible_states(db: &Database, a: &Automaton, w: &Walk) -> Vec<Vec<bool>> {
    let m = w.len();
    let nq = a.state_count();
    let mut feasible = vec![vec![false; nq]; m + 1];
    for q in 0..nq {
        feasible[m][q] = a.is_final(q);
    }
    for i in (0..m).rev() {
        let edge = db.edge(w.edges()[i]);
        for t in a.transitions() {
            if feasible[i + 1][t.tgt] && edge.has_label(&t.label) {
                feasible[i][t.src] = true;
            }
        }
    }
    feasible
}

/// Number of runs projecting to `w`, saturating at `u64::MAX`.
pub(crate) fn count_all_runs(db: &Database, a: &Automaton, w: &Walk) -> u64 {
    let nq = a.state_count();
    let mut count = vec![0u64; nq];
    for &q in a.initial() {
        count[q] = 1;
    }
    for &e in w.edges() {
        let edge = db.edge(e);
        let mut next = vec![0u64; nq];
        for t in a.transitions() {
            if count[t.src] > 0 && edge.has_label(&t.label) {
                next[t.tgt] = next[t.tgt].saturating_add(count[t.src]);
            }
        }
        count = next;
    }
    a.finals()
        .iter()
        .fold(0u64, |acc, &f| acc.saturating_add(count[f]))
}

/// Counts the runs over `w` kept by `filter`, stopping once `limit` is
/// reached.
pub fn count_runs(
    db: &Database,
    a: &Automaton,
    w: &Walk,
    filter: RunFilter,
    limit: Option<u64>,
    budget: &mut Budget,
) -> Result<u64> {
    Walk::new(db, w.vertices().to_vec(), w.edges().to_vec())?;
    if filter == RunFilter::Any {
        let n = count_all_runs(db, a, w);
        return Ok(limit.map_or(n, |l| n.min(l)));
    }
    let feasible = feasible_states(db, a, w);
    let mut search = FilteredRuns {
        db,
        a,
        w,
        filter,
        feasible: &feasible,
        used: HashSet::new(),
        count: 0,
        limit: limit.unwrap_or(u64::MAX),
        budget,
    };
    for &q in a.initial() {
        if !feasible[0][q] {
            continue;
        }
        if filter == RunFilter::Simple {
            search.used.insert((w.src().0, q));
        }
        search.extend(0, q)?;
        search.used.clear();
        if search.count >= search.limit {
            break;
        }
    }
    Ok(search.count)
}

struct FilteredRuns<'a> {
    db: &'a Database,
    a: &'a Automaton,
    w: &'a Walk,
    filter: RunFilter,
    feasible: &'a [Vec<bool>],
    used: HashSet<(usize, usize)>,
    count: u64,
    limit: u64,
    budget: &'a mut Budget,
}

impl FilteredRuns<'_> {
    fn extend(&mut self, i: usize, q: usize) -> Result<()> {
        self.budget.step()?;
        if i == self.w.len() {
            self.count += 1;
            return Ok(());
        }
        let e = self.w.edges()[i];
        let edge = self.db.edge(e);
        let next_vertex = self.w.vertices()[i + 1];
        let lo = self.a.transitions().partition_point(|t| t.src < q);
        for (ti, t) in self.a.transitions_from(q).iter().enumerate() {
            if !self.feasible[i + 1][t.tgt] || !edge.has_label(&t.label) {
                continue;
            }
            let key = match self.filter {
                RunFilter::Simple => (next_vertex.0, t.tgt),
                RunFilter::Trail => (e.0, lo + ti),
                RunFilter::Binding => (e.0, t.tgt),
                RunFilter::Any => unreachable!("handled by the counting DP"),
            };
            if !self.used.insert(key) {
                continue;
            }
            self.extend(i + 1, t.tgt)?;
            self.used.remove(&key);
            if self.count >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

/// Some run over `w`, as its state sequence, preferring the earliest
/// transitions in canonical order.
pub(crate) fn some_run(db: &Database, a: &Automaton, w: &Walk) -> Option<Vec<usize>> {
    let feasible = feasible_states(db, a, w);
    let mut q = a.initial().iter().copied().find(|&q| feasible[0][q])?;
    let mut states = vec![q];
    for (i, &e) in w.edges().iter().enumerate() {
        let edge = db.edge(e);
        let t = a
            .transitions_from(q)
            .iter()
            .find(|t| feasible[i + 1][t.tgt] && edge.has_label(&t.label))
            .expect("feasibility guarantees a continuation");
        q = t.tgt;
        states.push(q);
    }
    Some(states)
}

/// A decomposition `w = u₁ v₁ u₂ ⋯ vₙ uₙ₊₁` in which every `uᵢ` is closed
/// and `v₁ ⋯ vₙ` is the projection of a simple run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub us: Vec<Walk>,
    pub vs: Vec<Walk>,
}

impl Decomposition {
    /// `v₁ ⋯ vₙ`.
    pub fn kept(&self) -> Walk {
        let mut out = self.vs[0].clone();
        for v in &self.vs[1..] {
            out = out.concat(v).expect("kept parts chain through closed walks");
        }
        out
    }

    /// `u₁ v₁ ⋯ vₙ uₙ₊₁`, which equals the decomposed walk.
    pub fn reassemble(&self) -> Walk {
        let mut out = self.us[0].clone();
        for (v, u) in self.vs.iter().zip(&self.us[1..]) {
            out = out
                .concat(v)
                .and_then(|x| x.concat(u))
                .expect("parts of a decomposition chain");
        }
        out
    }
}

/// Finds a run over `w` and repeatedly excises the first cycle on which a
/// `(vertex, state)` pair repeats, until the run is simple.
pub fn coverage_decompose(db: &Database, a: &Automaton, w: &Walk) -> Result<Decomposition> {
    Walk::new(db, w.vertices().to_vec(), w.edges().to_vec())?;
    let states = some_run(db, a, w).ok_or_else(|| {
        Error::Precondition("no run of the automaton projects to the walk".to_string())
    })?;
    // current run: vertex positions and edge positions of `w`
    let mut nodes: Vec<usize> = (0..=w.len()).collect();
    let mut edges: Vec<usize> = (0..w.len()).collect();
    let key = |pos: usize| (w.vertices()[pos], states[pos]);
    loop {
        let mut first_seen = std::collections::HashMap::new();
        let mut repeat = None;
        for (j, &pos) in nodes.iter().enumerate() {
            if let Some(&i) = first_seen.get(&key(pos)) {
                repeat = Some((i, j));
                break;
            }
            first_seen.insert(key(pos), j);
        }
        let Some((i, j)) = repeat else { break };
        nodes.drain(i + 1..=j);
        edges.drain(i..j);
    }

    let mut kept = vec![false; w.len()];
    for &e in &edges {
        kept[e] = true;
    }
    let mut us = Vec::new();
    let mut vs = Vec::new();
    let mut pos = 0;
    let m = w.len();
    loop {
        let start = pos;
        while pos < m && !kept[pos] {
            pos += 1;
        }
        us.push(w.subwalk(start, pos));
        if pos == m && (!vs.is_empty() || edges.is_empty()) {
            if vs.is_empty() {
                vs.push(Walk::empty(w.tgt()));
                us.push(Walk::empty(w.tgt()));
            }
            break;
        }
        let start = pos;
        while pos < m && kept[pos] {
            pos += 1;
        }
        vs.push(w.subwalk(start, pos));
        if pos == m {
            us.push(Walk::empty(w.tgt()));
            break;
        }
    }
    Ok(Decomposition { us, vs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{glushkov, parse_regex};

    fn roads() -> Database {
        Database::parse(include_str!("../../data/roads.graph")).unwrap()
    }

    fn q2() -> Automaton {
        Automaton::parse(include_str!("../../data/q2.auto")).unwrap()
    }

    const W1: &str = "s -r1-> c1 -r2-> c2 -r3-> c3 -gas-> c3 -r4-> c1 -r2-> c2 -r5-> t";

    fn count(db: &Database, a: &Automaton, w: &Walk, f: RunFilter) -> u64 {
        count_runs(db, a, w, f, None, &mut Budget::new(1_000_000)).unwrap()
    }

    #[test]
    fn running_example_runs() {
        let d = roads();
        let a = q2();
        let w1 = d.parse_walk(W1).unwrap();
        assert_eq!(count(&d, &a, &w1, RunFilter::Any), 1);
        assert_eq!(count(&d, &a, &w1, RunFilter::Simple), 1);
        assert_eq!(count(&d, &a, &w1, RunFilter::Trail), 1);
        let ferry = d.parse_walk("s -f1-> t").unwrap();
        assert_eq!(count(&d, &a, &ferry, RunFilter::Any), 0);
    }

    #[test]
    fn filters_differ_on_repeated_cycles() {
        // a single a-loop traversed twice with a one-state automaton
        let d = Database::parse("edge l v v a\n").unwrap();
        let a = Automaton::parse("initial q\nfinal q\ntrans q a q\n").unwrap();
        let w = d.parse_walk("v -l-> v -l-> v").unwrap();
        assert_eq!(count(&d, &a, &w, RunFilter::Any), 1);
        assert_eq!(count(&d, &a, &w, RunFilter::Simple), 0);
        assert_eq!(count(&d, &a, &w, RunFilter::Trail), 0);
        assert_eq!(count(&d, &a, &w, RunFilter::Binding), 0);

        // two positions for the same atom allow two traversals under binding
        let g = glushkov(&parse_regex("(a + a)*").unwrap());
        assert_eq!(count(&d, &g, &w, RunFilter::Binding), 2);
        assert_eq!(count(&d, &g, &w, RunFilter::Simple), 2);
        assert_eq!(count(&d, &g, &w, RunFilter::Any), 4);
    }

    #[test]
    fn limit_and_budget() {
        let d = Database::parse("edge l v v a\n").unwrap();
        let g = glushkov(&parse_regex("(a + a + a)*").unwrap());
        let w = d.parse_walk("v -l-> v -l-> v").unwrap();
        let all = count(&d, &g, &w, RunFilter::Trail);
        assert_eq!(all, 9);
        let limited =
            count_runs(&d, &g, &w, RunFilter::Trail, Some(2), &mut Budget::new(100)).unwrap();
        assert_eq!(limited, 2);
        assert!(matches!(
            count_runs(&d, &g, &w, RunFilter::Trail, None, &mut Budget::new(2)),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn decomposition_of_a_simple_run_is_trivial() {
        let d = roads();
        let a = q2();
        let w1 = d.parse_walk(W1).unwrap();
        let dec = coverage_decompose(&d, &a, &w1).unwrap();
        assert_eq!(dec.vs, [w1.clone()]);
        assert_eq!(dec.us.len(), 2);
        assert!(dec.us.iter().all(Walk::is_empty));
    }

    #[test]
    fn decomposition_excises_the_cycle() {
        let d = roads();
        let a = glushkov(&parse_regex("(Road + Ferry)*").unwrap());
        let w = d
            .parse_walk("s -r1-> c1 -r2-> c2 -r3-> c3 -r4-> c1 -r2-> c2 -r5-> t")
            .unwrap();
        let dec = coverage_decompose(&d, &a, &w).unwrap();
        assert_eq!(dec.reassemble(), w);
        assert!(dec.us.iter().all(|u| u.src() == u.tgt()));
        let kept = dec.kept();
        assert_eq!(d.format_walk(&kept), "s -r1-> c1 -r2-> c2 -r5-> t");
        assert_eq!(count(&d, &a, &kept, RunFilter::Simple), 1);
        assert_eq!(d.format_walk(&dec.us[1]), "c1 -r2-> c2 -r3-> c3 -r4-> c1");
    }

    #[test]
    fn decomposition_needs_a_run() {
        let d = roads();
        let w = d.parse_walk("s -f1-> t").unwrap();
        assert!(matches!(
            coverage_decompose(&d, &q2(), &w),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fully_excised_closed_walk() {
        let d = Database::parse("edge l v v a\n").unwrap();
        let a = Automaton::parse("initial q\nfinal q\ntrans q a q\n").unwrap();
        let w = d.parse_walk("v -l-> v -l-> v").unwrap();
        let dec = coverage_decompose(&d, &a, &w).unwrap();
        assert_eq!(dec.reassemble(), w);
        assert!(dec.kept().is_empty());
    }
}
