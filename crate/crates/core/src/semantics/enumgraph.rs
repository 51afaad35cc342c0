//! Graphs whose simple source-to-sink walks are in bijection with the runs
//! kept by a run filter, so that simple-walk enumeration serves all three
//! run-based semantics.
//!
//! * simple runs: the run database plus a source and a sink;
//! * trail runs: the line graph of the run database (vertex-disjointness in
//!   the line graph is edge-disjointness in the product);
//! * binding trails: the key graph, whose vertices are the pairs
//!   `(e, q′)` so that vertex-simplicity is key-distinctness.
//!
//! Every edge of such a graph records what it contributes to the projected
//! base walk: possibly the start vertex, possibly one base edge.

use std::collections::HashMap;

use crate::automaton::Automaton;
use crate::graph::{Database, EdgeId, VertexId, Walk};
use crate::product::RunDatabase;

#[derive(Debug, Clone, Copy, Default)]
struct Step {
    start: Option<VertexId>,
    edge: Option<EdgeId>,
}

#[derive(Debug, Clone)]
pub(crate) struct EnumGraph {
    pub graph: Database,
    pub source: VertexId,
    pub sink: VertexId,
    steps: Vec<Step>,
}

/// Base vertices allowed as walk sources and targets.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Endpoints {
    pub from: Option<VertexId>,
    pub to: Option<VertexId>,
}

impl Endpoints {
    fn source_ok(&self, v: VertexId) -> bool {
        self.from.is_none_or(|s| s == v)
    }

    fn target_ok(&self, v: VertexId) -> bool {
        self.to.is_none_or(|t| t == v)
    }
}

struct Builder {
    graph: Database,
    steps: Vec<Step>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            graph: Database::new(),
            steps: Vec::new(),
        }
    }

    fn vertex(&mut self, name: String) -> VertexId {
        self.graph.add_vertex(name)
    }

    fn edge(&mut self, src: VertexId, tgt: VertexId, step: Step) {
        let name = format!("x{}", self.steps.len());
        self.graph
            .add_edge(name, src, tgt, ["_"])
            .expect("fresh edge names");
        self.steps.push(step);
    }

    fn finish(self, source: VertexId, sink: VertexId) -> EnumGraph {
        EnumGraph {
            graph: self.graph,
            source,
            sink,
            steps: self.steps,
        }
    }
}

impl EnumGraph {
    /// Simple walks source ⇝ sink are the simple runs, framed by one edge
    /// on each side.
    pub fn simple_runs(rd: &RunDatabase, a: &Automaton, ends: Endpoints) -> EnumGraph {
        let p = rd.product();
        let mut b = Builder::new();
        for v in p.vertex_ids() {
            b.vertex(p.vertex_name(v).to_string());
        }
        let source = b.vertex("⊢".to_string());
        let sink = b.vertex("⊣".to_string());
        for e in p.edge_ids() {
            let edge = p.edge(e);
            b.edge(
                edge.src,
                edge.tgt,
                Step {
                    start: None,
                    edge: Some(rd.base_edge(e)),
                },
            );
        }
        for v in p.vertex_ids() {
            let base = rd.base_vertex(v);
            let q = rd.state_of(v);
            if a.is_initial(q) && ends.source_ok(base) {
                b.edge(
                    source,
                    v,
                    Step {
                        start: Some(base),
                        edge: None,
                    },
                );
            }
        }
        for v in p.vertex_ids() {
            if a.is_final(rd.state_of(v)) && ends.target_ok(rd.base_vertex(v)) {
                b.edge(v, sink, Step::default());
            }
        }
        b.finish(source, sink)
    }

    /// Line graph of the run database: simple walks source ⇝ sink are the
    /// trail runs.
    pub fn trail_runs(rd: &RunDatabase, a: &Automaton, ends: Endpoints) -> EnumGraph {
        let p = rd.product();
        let mut b = Builder::new();
        let source = b.vertex("⊢".to_string());
        let sink = b.vertex("⊣".to_string());
        let line: Vec<VertexId> = p
            .edges()
            .iter()
            .map(|e| b.vertex(e.name.clone()))
            .collect();
        let is_source = |v: VertexId| a.is_initial(rd.state_of(v)) && ends.source_ok(rd.base_vertex(v));
        let is_target = |v: VertexId| a.is_final(rd.state_of(v)) && ends.target_ok(rd.base_vertex(v));
        for v in p.vertex_ids() {
            if is_source(v) && is_target(v) {
                b.edge(
                    source,
                    sink,
                    Step {
                        start: Some(rd.base_vertex(v)),
                        edge: None,
                    },
                );
            }
        }
        for e in p.edge_ids() {
            let edge = p.edge(e);
            if is_source(edge.src) {
                b.edge(
                    source,
                    line[e.0],
                    Step {
                        start: Some(rd.base_vertex(edge.src)),
                        edge: Some(rd.base_edge(e)),
                    },
                );
            }
        }
        for e in p.edge_ids() {
            let edge = p.edge(e);
            for &f in p.out_edges(edge.tgt) {
                if f != e {
                    b.edge(
                        line[e.0],
                        line[f.0],
                        Step {
                            start: None,
                            edge: Some(rd.base_edge(f)),
                        },
                    );
                }
            }
            if is_target(edge.tgt) {
                b.edge(line[e.0], sink, Step::default());
            }
        }
        b.finish(source, sink)
    }

    /// Key graph of a Glushkov automaton `g` over `db`: simple walks
    /// source ⇝ sink are the runs whose keys `(e_i, q_{i+1})` are pairwise
    /// distinct.
    pub fn binding_keys(db: &Database, g: &Automaton, ends: Endpoints) -> EnumGraph {
        let mut b = Builder::new();
        let source = b.vertex("⊢".to_string());
        let sink = b.vertex("⊣".to_string());
        let starts: Vec<(VertexId, usize, VertexId)> = db
            .vertex_ids()
            .filter(|&v| ends.source_ok(v))
            .flat_map(|v| g.initial().iter().map(move |&q| (v, q)))
            .map(|(v, q)| {
                let name = format!("({},{})", db.vertex_name(v), g.state_name(q));
                (v, q, b.vertex(name))
            })
            .collect();
        let mut keys: HashMap<(EdgeId, usize), VertexId> = HashMap::new();
        let mut key_list: Vec<(EdgeId, usize)> = Vec::new();
        for e in db.edge_ids() {
            let edge = db.edge(e);
            for t in g.transitions() {
                if edge.has_label(&t.label) && !keys.contains_key(&(e, t.tgt)) {
                    let name = format!("({},{})", edge.name, g.state_name(t.tgt));
                    keys.insert((e, t.tgt), b.vertex(name));
                    key_list.push((e, t.tgt));
                }
            }
        }
        let successors = |b: &mut Builder, from: VertexId, v: VertexId, q: usize, skip: Option<(EdgeId, usize)>| {
            for &e in db.out_edges(v) {
                let edge = db.edge(e);
                for t in g.transitions_from(q) {
                    if edge.has_label(&t.label) && skip != Some((e, t.tgt)) {
                        b.edge(
                            from,
                            keys[&(e, t.tgt)],
                            Step {
                                start: None,
                                edge: Some(e),
                            },
                        );
                    }
                }
            }
        };
        for &(v, q, x) in &starts {
            b.edge(
                source,
                x,
                Step {
                    start: Some(v),
                    edge: None,
                },
            );
            successors(&mut b, x, v, q, None);
            if g.is_final(q) && ends.target_ok(v) {
                b.edge(x, sink, Step::default());
            }
        }
        for &(e, q) in &key_list {
            let k = keys[&(e, q)];
            let tgt = db.edge(e).tgt;
            successors(&mut b, k, tgt, q, Some((e, q)));
            if g.is_final(q) && ends.target_ok(tgt) {
                b.edge(k, sink, Step::default());
            }
        }
        b.finish(source, sink)
    }

    /// The base walk described by a source ⇝ sink walk of this graph.
    pub fn project(&self, db: &Database, path: &Walk) -> Walk {
        let mut start = None;
        let mut edges = Vec::new();
        for &e in path.edges() {
            let step = self.steps[e.0];
            if let Some(v) = step.start {
                start = Some(v);
            }
            if let Some(be) = step.edge {
                edges.push(be);
            }
        }
        let start = start.expect("every source edge records a start vertex");
        Walk::from_edges(db, start, edges).expect("steps follow base edges")
    }
}
