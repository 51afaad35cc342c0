//! Query semantics and the four evaluation problems: tuple membership,
//! evaluation, tuple multiplicity and walk membership.
//!
//! | mode            | kept walks                                        |
//! |-----------------|---------------------------------------------------|
//! | `Walk`          | projections of all runs                           |
//! | `Trail`         | projections of runs that are trails in `D`        |
//! | `SimpleWalk`    | projections of runs that are simple in `D`        |
//! | `TrailRun`      | projections of runs that are trails in `D×A`      |
//! | `SimpleRun`     | projections of runs that are simple in `D×A`      |
//! | `BindingTrail`  | runs of `Gl(R)` with pairwise distinct `(e, q′)`  |
//!
//! All answers are bags: the multiplicity of a walk is the number of kept
//! runs projecting to it.

mod enumgraph;
pub mod matching;
pub mod runs;
mod search;

use std::borrow::Cow;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::automaton::Automaton;
use crate::enumerate::{yen_enumerate_owned, SimpleWalkStream};
use crate::error::{Error, Result};
use crate::graph::{Database, VertexId, Walk};
use crate::product::RunDatabase;
use crate::regex::{glushkov, Regex};

pub use matching::{walk_membership_matching, walk_membership_matching_counted};
pub use runs::{count_runs, coverage_decompose, Budget, Decomposition, RunFilter};

use enumgraph::{EnumGraph, Endpoints};
use search::{
    count_capped_walks, count_product_paths, product_reachable, search_base, BaseConstraint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticsMode {
    Walk,
    Trail,
    SimpleWalk,
    TrailRun,
    SimpleRun,
    BindingTrail,
}

impl SemanticsMode {
    pub const ALL: [SemanticsMode; 6] = [
        SemanticsMode::Walk,
        SemanticsMode::Trail,
        SemanticsMode::SimpleWalk,
        SemanticsMode::TrailRun,
        SemanticsMode::SimpleRun,
        SemanticsMode::BindingTrail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsMode::Walk => "walk",
            SemanticsMode::Trail => "trail",
            SemanticsMode::SimpleWalk => "simple-walk",
            SemanticsMode::TrailRun => "trail-run",
            SemanticsMode::SimpleRun => "simple-run",
            SemanticsMode::BindingTrail => "binding-trail",
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemanticsMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::IllDefined(format!("unknown semantics `{s}`")))
    }
}

/// A query, as an expression or directly as an automaton. Expressions are
/// evaluated through their Glushkov automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Regex(Regex),
    Automaton(Automaton),
}

impl From<Regex> for Query {
    fn from(r: Regex) -> Self {
        Query::Regex(r)
    }
}

impl From<Automaton> for Query {
    fn from(a: Automaton) -> Self {
        Query::Automaton(a)
    }
}

impl Query {
    pub fn automaton(&self) -> Cow<'_, Automaton> {
        match self {
            Query::Regex(r) => Cow::Owned(glushkov(r)),
            Query::Automaton(a) => Cow::Borrowed(a),
        }
    }

    pub fn regex(&self) -> Option<&Regex> {
        match self {
            Query::Regex(r) => Some(r),
            Query::Automaton(_) => None,
        }
    }

    /// The automaton whose runs `mode` filters.
    fn automaton_for(&self, mode: SemanticsMode) -> Result<Cow<'_, Automaton>> {
        if mode == SemanticsMode::BindingTrail && self.regex().is_none() {
            return Err(Error::Precondition(
                "binding-trail semantics needs the query as a regular expression".to_string(),
            ));
        }
        Ok(self.automaton())
    }
}

/// Limits on the procedures that are exponential in the worst case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest database, in vertices, searched exhaustively under trail and
    /// simple-walk semantics.
    pub max_exhaustive_vertices: usize,
    /// Length cap on walks; required to evaluate under walk semantics.
    pub max_walk_length: Option<usize>,
    /// Step budget of every exhaustive search.
    pub max_steps: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_exhaustive_vertices: 12,
            max_walk_length: None,
            max_steps: 50_000_000,
        }
    }
}

impl Guards {
    fn check_exhaustive(&self, db: &Database, mode: SemanticsMode) -> Result<()> {
        if db.vertex_count() > self.max_exhaustive_vertices {
            return Err(Error::GuardExceeded(format!(
                "{mode} semantics needs an exhaustive search, limited to databases of {} \
                 vertices (this one has {})",
                self.max_exhaustive_vertices,
                db.vertex_count()
            )));
        }
        Ok(())
    }

    fn budget(&self) -> Budget {
        Budget::new(self.max_steps)
    }
}

fn check_vertex(db: &Database, v: VertexId) -> Result<()> {
    if v.0 >= db.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    Ok(())
}

fn run_filter(mode: SemanticsMode) -> RunFilter {
    match mode {
        SemanticsMode::SimpleRun => RunFilter::Simple,
        SemanticsMode::TrailRun => RunFilter::Trail,
        SemanticsMode::BindingTrail => RunFilter::Binding,
        SemanticsMode::Walk | SemanticsMode::Trail | SemanticsMode::SimpleWalk => RunFilter::Any,
    }
}

/// Is there a walk from `s` to `t` in the answer under `mode`?
///
/// Under walk, simple-run, trail-run and binding-trail semantics the
/// shortest matching walks are always kept, so the answer is product
/// reachability. Trail and simple-walk semantics need an exhaustive search.
pub fn tuple_membership(
    db: &Database,
    query: &Query,
    s: VertexId,
    t: VertexId,
    mode: SemanticsMode,
    guards: &Guards,
) -> Result<bool> {
    check_vertex(db, s)?;
    check_vertex(db, t)?;
    let a = query.automaton_for(mode)?;
    match mode {
        SemanticsMode::Trail | SemanticsMode::SimpleWalk => {
            guards.check_exhaustive(db, mode)?;
            let constraint = if mode == SemanticsMode::Trail {
                BaseConstraint::Trail
            } else {
                BaseConstraint::Simple
            };
            let mut found = false;
            search_base(db, &a, &[s], Some(t), constraint, &mut guards.budget(), &mut |_, _| {
                found = true;
                false
            })?;
            Ok(found)
        }
        _ => {
            let rd = RunDatabase::build(db, &a);
            let sources: Vec<VertexId> = a.initial().iter().map(|&q| rd.vertex(s, q)).collect();
            let is_target = |v: VertexId| rd.base_vertex(v) == t && a.is_final(rd.state_of(v));
            Ok(product_reachable(&rd, &sources, &is_target))
        }
    }
}

enum Source {
    Stream {
        stream: SimpleWalkStream<'static>,
        graph: EnumGraph,
        cap: Option<usize>,
    },
    Done,
}

/// Stream of `(walk, multiplicity)` pairs, ordered by length and then
/// canonically. Walks of equal length are buffered so that their
/// multiplicities can be grouped.
pub struct Evaluation<'d> {
    db: &'d Database,
    source: Source,
    ready: VecDeque<(Walk, u64)>,
    pending: Vec<Walk>,
    lookahead: Option<Walk>,
}

impl Evaluation<'_> {
    /// Operations spent by the underlying enumeration so far (zero for the
    /// exhaustive modes, which do all their work upfront).
    pub fn operations(&self) -> u64 {
        match &self.source {
            Source::Stream { stream, .. } => stream.operations(),
            Source::Done => 0,
        }
    }

    /// Collects everything into a bag.
    pub fn into_bag(self) -> crate::graph::WalkBag {
        self.collect()
    }

    fn next_projected(&mut self) -> Option<Walk> {
        if let Some(w) = self.lookahead.take() {
            return Some(w);
        }
        let Source::Stream { stream, graph, cap } = &mut self.source else {
            return None;
        };
        let path = stream.next()?;
        let w = graph.project(self.db, &path);
        if cap.is_some_and(|c| w.len() > c) {
            self.source = Source::Done;
            return None;
        }
        Some(w)
    }

    fn fill(&mut self) {
        let Some(first) = self.next_projected() else {
            return;
        };
        let len = first.len();
        self.pending.push(first);
        while let Some(w) = self.next_projected() {
            if w.len() != len {
                self.lookahead = Some(w);
                break;
            }
            self.pending.push(w);
        }
        self.pending.sort();
        for w in self.pending.drain(..) {
            match self.ready.back_mut() {
                Some((last, m)) if *last == w => *m += 1,
                _ => self.ready.push_back((w, 1)),
            }
        }
    }
}

impl Iterator for Evaluation<'_> {
    type Item = (Walk, u64);

    fn next(&mut self) -> Option<(Walk, u64)> {
        if self.ready.is_empty() {
            self.fill();
        }
        self.ready.pop_front()
    }
}

/// Evaluates `query` under `mode`, optionally restricted to walks from
/// `endpoints.0` to `endpoints.1`.
///
/// Run-based semantics enumerate with polynomial delay. Trail and
/// simple-walk semantics search exhaustively within the guards. Walk
/// semantics may have infinitely many answers and need a length cap.
pub fn evaluate<'d>(
    db: &'d Database,
    query: &Query,
    mode: SemanticsMode,
    endpoints: Option<(VertexId, VertexId)>,
    guards: &Guards,
) -> Result<Evaluation<'d>> {
    if let Some((s, t)) = endpoints {
        check_vertex(db, s)?;
        check_vertex(db, t)?;
    }
    let a = query.automaton_for(mode)?;
    let ends = Endpoints {
        from: endpoints.map(|e| e.0),
        to: endpoints.map(|e| e.1),
    };
    let cap = guards.max_walk_length;
    let exhaustive = |constraint: BaseConstraint| -> Result<Evaluation<'d>> {
        let starts: Vec<VertexId> = match ends.from {
            Some(s) => vec![s],
            None => db.vertex_ids().collect(),
        };
        let mut found = Vec::new();
        search_base(db, &a, &starts, ends.to, constraint, &mut guards.budget(), &mut |w, m| {
            if cap.is_none_or(|c| w.len() <= c) {
                found.push((w, m));
            }
            true
        })?;
        found.sort();
        Ok(Evaluation {
            db,
            source: Source::Done,
            ready: found.into(),
            pending: Vec::new(),
            lookahead: None,
        })
    };
    let graph = match mode {
        SemanticsMode::Walk => {
            let Some(c) = cap else {
                return Err(Error::IllDefined(
                    "evaluation under walk semantics may have infinitely many answers; \
                     give a maximum walk length"
                        .to_string(),
                ));
            };
            return exhaustive(BaseConstraint::MaxLength(c));
        }
        SemanticsMode::Trail => {
            guards.check_exhaustive(db, mode)?;
            return exhaustive(BaseConstraint::Trail);
        }
        SemanticsMode::SimpleWalk => {
            guards.check_exhaustive(db, mode)?;
            return exhaustive(BaseConstraint::Simple);
        }
        SemanticsMode::SimpleRun => EnumGraph::simple_runs(&RunDatabase::build(db, &a), &a, ends),
        SemanticsMode::TrailRun => EnumGraph::trail_runs(&RunDatabase::build(db, &a), &a, ends),
        SemanticsMode::BindingTrail => EnumGraph::binding_keys(db, &a, ends),
    };
    let stream = yen_enumerate_owned(graph.graph.clone(), graph.source, graph.sink)?;
    Ok(Evaluation {
        db,
        source: Source::Stream { stream, graph, cap },
        ready: VecDeque::new(),
        pending: Vec::new(),
        lookahead: None,
    })
}

/// Total multiplicity of the answers from `s` to `t`.
pub fn tuple_multiplicity(
    db: &Database,
    query: &Query,
    s: VertexId,
    t: VertexId,
    mode: SemanticsMode,
    guards: &Guards,
) -> Result<u64> {
    check_vertex(db, s)?;
    check_vertex(db, t)?;
    let a = query.automaton_for(mode)?;
    match mode {
        SemanticsMode::Trail | SemanticsMode::SimpleWalk => {
            let bag = evaluate(db, query, mode, Some((s, t)), guards)?;
            Ok(bag.fold(0u64, |acc, (_, m)| acc.saturating_add(m)))
        }
        _ => {
            let rd = RunDatabase::build(db, &a);
            let sources: Vec<VertexId> = a.initial().iter().map(|&q| rd.vertex(s, q)).collect();
            let is_target = |v: VertexId| rd.base_vertex(v) == t && a.is_final(rd.state_of(v));
            if mode == SemanticsMode::Walk {
                let cap = guards.max_walk_length.ok_or_else(|| {
                    Error::IllDefined(
                        "multiplicity under walk semantics may be infinite; \
                         give a maximum walk length"
                            .to_string(),
                    )
                })?;
                return Ok(count_capped_walks(&rd, &sources, &is_target, cap));
            }
            count_product_paths(&rd, &sources, &is_target, run_filter(mode), &mut guards.budget())
        }
    }
}

/// Number of runs kept by `mode` that project to `w`.
pub fn walk_multiplicity(
    db: &Database,
    query: &Query,
    w: &Walk,
    mode: SemanticsMode,
    guards: &Guards,
) -> Result<u64> {
    walk_count(db, query, w, mode, guards, None)
}

/// Is `w` in the answer under `mode`?
pub fn walk_membership(
    db: &Database,
    query: &Query,
    w: &Walk,
    mode: SemanticsMode,
    guards: &Guards,
) -> Result<bool> {
    Ok(walk_count(db, query, w, mode, guards, Some(1))? > 0)
}

fn walk_count(
    db: &Database,
    query: &Query,
    w: &Walk,
    mode: SemanticsMode,
    guards: &Guards,
    limit: Option<u64>,
) -> Result<u64> {
    Walk::new(db, w.vertices().to_vec(), w.edges().to_vec())?;
    let a = query.automaton_for(mode)?;
    let shape_ok = match mode {
        SemanticsMode::Trail => w.is_trail(),
        SemanticsMode::SimpleWalk => w.is_simple(),
        _ => true,
    };
    if !shape_ok {
        return Ok(0);
    }
    count_runs(db, &a, w, run_filter(mode), limit, &mut guards.budget())
}
