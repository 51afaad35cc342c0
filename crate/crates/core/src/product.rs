//! The run database `D×A`: vertices `V×Q`, one edge `(e, (q, a, q′))` per
//! base edge `e` and transition `(q, a, q′)` with `a ∈ lbl(e)`.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Database, EdgeId, VertexId, Walk};

#[derive(Debug, Clone)]
pub struct RunDatabase {
    product: Database,
    state_count: usize,
    /// Product vertex index `v * |Q| + q` maps to `(v, q)`.
    vertex_proj: Vec<(VertexId, usize)>,
    /// Product edge to (base edge, transition index).
    edge_proj: Vec<(EdgeId, usize)>,
    initial_layer: Vec<VertexId>,
    final_layer: Vec<VertexId>,
}

pub fn product_vertex_name(vertex: &str, state: &str) -> String {
    format!("({vertex},{state})")
}

impl RunDatabase {
    /// Materializes `d × a`. Product edges are ordered by base edge, then by
    /// transition in canonical order.
    pub fn build(d: &Database, a: &Automaton) -> RunDatabase {
        let nq = a.state_count();
        let mut product = Database::new();
        let mut vertex_proj = Vec::with_capacity(d.vertex_count() * nq);
        for v in d.vertex_ids() {
            for q in 0..nq {
                product.add_vertex(product_vertex_name(d.vertex_name(v), a.state_name(q)));
                vertex_proj.push((v, q));
            }
        }
        let mut edge_proj = Vec::new();
        for e in d.edge_ids() {
            let edge = d.edge(e);
            for (ti, t) in a.transitions().iter().enumerate() {
                if !edge.has_label(&t.label) {
                    continue;
                }
                let name = format!(
                    "({},({},{},{}))",
                    edge.name,
                    a.state_name(t.src),
                    t.label,
                    a.state_name(t.tgt)
                );
                let src = VertexId(edge.src.0 * nq + t.src);
                let tgt = VertexId(edge.tgt.0 * nq + t.tgt);
                product
                    .add_edge(name, src, tgt, [t.label.clone()])
                    .expect("product edge names are unique");
                edge_proj.push((e, ti));
            }
        }
        let initial_layer = d
            .vertex_ids()
            .flat_map(|v| a.initial().iter().map(move |&q| VertexId(v.0 * nq + q)))
            .collect();
        let final_layer = d
            .vertex_ids()
            .flat_map(|v| a.finals().iter().map(move |&q| VertexId(v.0 * nq + q)))
            .collect();
        RunDatabase {
            product,
            state_count: nq,
            vertex_proj,
            edge_proj,
            initial_layer,
            final_layer,
        }
    }

    pub fn product(&self) -> &Database {
        &self.product
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The product vertex `(v, q)`.
    pub fn vertex(&self, v: VertexId, q: usize) -> VertexId {
        VertexId(v.0 * self.state_count + q)
    }

    pub fn base_vertex(&self, pv: VertexId) -> VertexId {
        self.vertex_proj[pv.0].0
    }

    pub fn state_of(&self, pv: VertexId) -> usize {
        self.vertex_proj[pv.0].1
    }

    pub fn base_edge(&self, pe: EdgeId) -> EdgeId {
        self.edge_proj[pe.0].0
    }

    /// Index of the automaton transition carried by a product edge.
    pub fn transition_of(&self, pe: EdgeId) -> usize {
        self.edge_proj[pe.0].1
    }

    /// Vertices of `V×I`, ordered by base vertex then state.
    pub fn initial_layer(&self) -> &[VertexId] {
        &self.initial_layer
    }

    /// Vertices of `V×F`, ordered by base vertex then state.
    pub fn final_layer(&self) -> &[VertexId] {
        &self.final_layer
    }

    /// Projection `π_D` of a product walk, checked for validity first.
    pub fn project(&self, r: &Walk) -> Result<Walk> {
        Walk::new(&self.product, r.vertices().to_vec(), r.edges().to_vec())
            .map_err(|e| Error::InvalidWalk(format!("not a walk of the run database: {e}")))?;
        Ok(self.project_unchecked(r))
    }

    pub(crate) fn project_unchecked(&self, r: &Walk) -> Walk {
        Walk::from_parts(
            r.vertices().iter().map(|&v| self.base_vertex(v)).collect(),
            r.edges().iter().map(|&e| self.base_edge(e)).collect(),
        )
    }

    /// Whether a product walk starts in `V×I` and ends in `V×F`.
    pub fn is_run(&self, a: &Automaton, r: &Walk) -> bool {
        a.is_initial(self.state_of(r.src())) && a.is_final(self.state_of(r.tgt()))
    }

    /// The product in the graph file format.
    pub fn dump(&self) -> String {
        self.product.to_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{glushkov, parse_regex};

    fn roads() -> Database {
        Database::parse(include_str!("../data/roads.graph")).unwrap()
    }

    fn q2() -> Automaton {
        Automaton::parse(include_str!("../data/q2.auto")).unwrap()
    }

    #[test]
    fn running_example_product_size() {
        let rd = RunDatabase::build(&roads(), &q2());
        assert_eq!(rd.product().vertex_count(), 10);
        assert_eq!(rd.product().edge_count(), 13);
        let gas: Vec<&str> = rd
            .product()
            .edges()
            .iter()
            .filter(|e| e.has_label("Gas"))
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(gas, ["(gas,(0,Gas,1))"]);
        let p = rd.product();
        let e = p.edge(p.edge_by_name("(gas,(0,Gas,1))").unwrap());
        assert_eq!(p.vertex_name(e.src), "(c3,0)");
        assert_eq!(p.vertex_name(e.tgt), "(c3,1)");
    }

    #[test]
    fn projection_of_the_example_run() {
        let d = roads();
        let a = q2();
        let rd = RunDatabase::build(&d, &a);
        let r = rd
            .product()
            .parse_walk(
                "(s,0) -(r1,(0,Road,0))-> (c1,0) -(r2,(0,Road,0))-> (c2,0) \
                 -(r3,(0,Road,0))-> (c3,0) -(gas,(0,Gas,1))-> (c3,1) \
                 -(r4,(1,Road,1))-> (c1,1) -(r2,(1,Road,1))-> (c2,1) -(r5,(1,Road,1))-> (t,1)",
            )
            .unwrap();
        assert!(rd.is_run(&a, &r));
        assert!(r.is_simple());
        let w = rd.project(&r).unwrap();
        assert_eq!(
            d.format_walk(&w),
            "s -r1-> c1 -r2-> c2 -r3-> c3 -gas-> c3 -r4-> c1 -r2-> c2 -r5-> t"
        );
        assert_eq!(w.len(), r.len());

        let at_t0 = rd
            .product()
            .parse_walk("(c2,0) -(r5,(0,Road,0))-> (t,0)")
            .unwrap();
        assert!(!rd.is_run(&a, &at_t0));

        let s0 = Walk::empty(rd.vertex(d.vertex("s").unwrap(), 0));
        assert_eq!(rd.project(&s0).unwrap(), Walk::empty(d.vertex("s").unwrap()));
        assert!(!rd.is_run(&a, &s0));
    }

    #[test]
    fn length_zero_run_needs_initial_final_state() {
        let d = Database::parse("edge l v v a\n").unwrap();
        let a = Automaton::parse("initial q\nfinal q\ntrans q a q\n").unwrap();
        let rd = RunDatabase::build(&d, &a);
        assert_eq!(rd.product().vertex_count(), 1);
        assert_eq!(rd.product().edge_count(), 1);
        let e = rd.product().edge(EdgeId(0));
        assert_eq!(e.src, e.tgt);
        assert!(rd.is_run(&a, &Walk::empty(VertexId(0))));
    }

    #[test]
    fn no_transitions_no_edges() {
        let mut a = Automaton::new();
        let q = a.add_state("q");
        a.set_initial(q);
        let rd = RunDatabase::build(&roads(), &a);
        assert_eq!(rd.product().edge_count(), 0);
        assert_eq!(rd.product().vertex_count(), 5);
    }

    #[test]
    fn project_rejects_foreign_walks() {
        let d = roads();
        let rd = RunDatabase::build(&d, &q2());
        let bogus = Walk::from_parts(vec![VertexId(0), VertexId(9)], vec![EdgeId(0)]);
        assert!(rd.project(&bogus).is_err());
    }

    /// Language-equivalent automata give run databases of different sizes.
    #[test]
    fn product_depends_on_automaton_structure() {
        let d = Database::parse("edge e1 S T a,b\nedge e2 S S a\nedge e3 T T b\n").unwrap();
        let left = glushkov(&parse_regex("a* b*").unwrap());
        let right = glushkov(&parse_regex("a* + a* b b*").unwrap());
        let l = RunDatabase::build(&d, &left);
        let r = RunDatabase::build(&d, &right);
        assert_ne!(l.product().vertex_count(), r.product().vertex_count());
        assert_ne!(l.product().edge_count(), r.product().edge_count());
    }

    #[test]
    fn dump_round_trips() {
        let rd = RunDatabase::build(&roads(), &q2());
        let parsed = Database::parse(&rd.dump()).unwrap();
        assert_eq!(&parsed, rd.product());
    }
}
