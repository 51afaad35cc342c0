//! Edge-labelled directed multigraphs, walks over them, and the text format
//! used to store them.
//!
//! Edges carry explicit identifiers: parallel edges and self-loops are
//! allowed, and trails are defined on repeated *edges*, so an edge is never
//! identified with its endpoint pair. Vertices and edges keep their
//! declaration order, which is the canonical order used for tie-breaking
//! everywhere downstream.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// Index of a vertex in its [`Database`] (declaration order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an edge in its [`Database`] (declaration order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
    /// Never empty.
    pub labels: BTreeSet<String>,
}

impl Edge {
    pub fn has_label(&self, label: &str) -> bool {
        self.labels.contains(label)
    }
}

/// A database: alphabet, vertices, and multi-labelled edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Database {
    alphabet: BTreeSet<String>,
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Database {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Looks up a vertex, failing with [`Error::UnknownVertex`].
    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Outgoing edges of `v`, in increasing edge id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Incoming edges of `v`, in increasing edge id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn add_symbol(&mut self, symbol: impl Into<String>) {
        self.alphabet.insert(symbol.into());
    }

    /// Declares a vertex, returning the existing id if it is already known.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        if let Some(&v) = self.vertex_index.get(&name) {
            return v;
        }
        let v = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), v);
        self.vertices.push(name);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        v
    }

    /// Adds an edge between two declared vertices. Labels are added to the
    /// alphabet.
    pub fn add_edge<I, S>(
        &mut self,
        name: impl Into<String>,
        src: VertexId,
        tgt: VertexId,
        labels: I,
    ) -> Result<EdgeId>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(Error::Precondition(format!("duplicate edge id `{name}`")));
        }
        for v in [src, tgt] {
            if v.0 >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        let labels: BTreeSet<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Precondition(format!(
                "edge `{name}` has no label"
            )));
        }
        self.alphabet.extend(labels.iter().cloned());
        let e = EdgeId(self.edges.len());
        self.edge_index.insert(name.clone(), e);
        self.edges.push(Edge {
            name,
            src,
            tgt,
            labels,
        });
        self.out_edges[src.0].push(e);
        self.in_edges[tgt.0].push(e);
        Ok(e)
    }

    /// Adds an edge between two vertices given by name, declaring them if
    /// needed.
    pub fn add_edge_by_name<I, S>(
        &mut self,
        name: impl Into<String>,
        src: &str,
        tgt: &str,
        labels: I,
    ) -> Result<EdgeId>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let s = self.add_vertex(src);
        let t = self.add_vertex(tgt);
        self.add_edge(name, s, t, labels)
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// alphabet Road Ferry Gas
    /// vertex s
    /// edge e1 s c1 Road
    /// edge e2 s t Ferry,Road
    /// ```
    ///
    /// When the file declares at least one `vertex`, every edge endpoint must
    /// be declared; otherwise vertices are introduced by the edges that
    /// mention them. Labels are checked against the `alphabet` line when one
    /// is present.
    pub fn parse(text: &str) -> Result<Database> {
        let mut declared_alphabet: Option<(usize, BTreeSet<String>)> = None;
        let mut vertex_lines: Vec<(usize, String)> = Vec::new();
        let mut edge_lines: Vec<(usize, String, String, String, Vec<String>)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap_or_default();
            let rest: Vec<&str> = tokens.collect();
            match keyword {
                "alphabet" => {
                    if declared_alphabet.is_some() {
                        return Err(Error::syntax(line_no, "duplicate alphabet line"));
                    }
                    let symbols = rest.iter().map(|s| s.to_string()).collect();
                    declared_alphabet = Some((line_no, symbols));
                }
                "vertex" => {
                    if rest.len() != 1 {
                        return Err(Error::syntax(line_no, "expected `vertex <name>`"));
                    }
                    if vertex_lines.iter().any(|(_, v)| v == rest[0]) {
                        return Err(Error::syntax(
                            line_no,
                            format!("duplicate vertex `{}`", rest[0]),
                        ));
                    }
                    vertex_lines.push((line_no, rest[0].to_string()));
                }
                "edge" => {
                    if rest.len() != 4 {
                        return Err(Error::syntax(
                            line_no,
                            "expected `edge <id> <src> <tgt> <label>[,<label>...]`",
                        ));
                    }
                    let labels: Vec<String> = rest[3]
                        .split(',')
                        .map(str::trim)
                        .filter(|l| !l.is_empty())
                        .map(str::to_string)
                        .collect();
                    if labels.is_empty() {
                        return Err(Error::syntax(line_no, "edge without label"));
                    }
                    if edge_lines.iter().any(|(_, id, ..)| id == rest[0]) {
                        return Err(Error::syntax(
                            line_no,
                            format!("duplicate edge id `{}`", rest[0]),
                        ));
                    }
                    edge_lines.push((
                        line_no,
                        rest[0].to_string(),
                        rest[1].to_string(),
                        rest[2].to_string(),
                        labels,
                    ));
                }
                other => {
                    return Err(Error::syntax(line_no, format!("unknown record `{other}`")));
                }
            }
        }

        let mut db = Database::new();
        if let Some((_, symbols)) = &declared_alphabet {
            for s in symbols {
                db.add_symbol(s.clone());
            }
        }
        for (_, name) in &vertex_lines {
            db.add_vertex(name.clone());
        }
        let strict_vertices = !vertex_lines.is_empty();
        for (line_no, id, src, tgt, labels) in edge_lines {
            if let Some((_, symbols)) = &declared_alphabet {
                if let Some(bad) = labels.iter().find(|l| !symbols.contains(*l)) {
                    return Err(Error::syntax(line_no, format!("unknown label `{bad}`")));
                }
            }
            let mut endpoint = |name: &str| -> Result<VertexId> {
                match db.vertex(name) {
                    Some(v) => Ok(v),
                    None if strict_vertices => Err(Error::syntax(
                        line_no,
                        format!("edge `{id}` references undeclared vertex `{name}`"),
                    )),
                    None => Ok(db.add_vertex(name)),
                }
            };
            let s = endpoint(&src)?;
            let t = endpoint(&tgt)?;
            db.add_edge(id, s, t, labels)
                .map_err(|e| Error::syntax(line_no, e.to_string()))?;
        }
        Ok(db)
    }

    /// Serializes in the graph format; [`Database::parse`] reads it back to
    /// an equal database.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet");
        for s in &self.alphabet {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for e in &self.edges {
            let labels: Vec<&str> = e.labels.iter().map(String::as_str).collect();
            let _ = writeln!(
                out,
                "edge {} {} {} {}",
                e.name,
                self.vertices[e.src.0],
                self.vertices[e.tgt.0],
                labels.join(",")
            );
        }
        out
    }

    /// Renders a walk as `v0 -e0-> v1 -e1-> ... vk`.
    pub fn format_walk(&self, w: &Walk) -> String {
        let mut out = String::from(self.vertex_name(w.vertices[0]));
        for (i, e) in w.edges.iter().enumerate() {
            let _ = write!(
                out,
                " -{}-> {}",
                self.edge(*e).name,
                self.vertex_name(w.vertices[i + 1])
            );
        }
        out
    }

    /// Parses the walk format produced by [`Database::format_walk`].
    pub fn parse_walk(&self, text: &str) -> Result<Walk> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens.len().is_multiple_of(2) {
            return Err(Error::InvalidWalk(format!("malformed walk `{text}`")));
        }
        let start = self.require_vertex(tokens[0])?;
        let mut edges = Vec::with_capacity(tokens.len() / 2);
        let mut vertices = vec![start];
        for pair in tokens[1..].chunks(2) {
            let arrow = pair[0];
            let name = arrow
                .strip_prefix('-')
                .and_then(|a| a.strip_suffix("->"))
                .ok_or_else(|| Error::InvalidWalk(format!("malformed edge token `{arrow}`")))?;
            let e = self
                .edge_by_name(name)
                .ok_or_else(|| Error::UnknownEdge(name.to_string()))?;
            edges.push(e);
            vertices.push(self.require_vertex(pair[1])?);
        }
        Walk::new(self, vertices, edges)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// An alternating sequence of vertices and edges `n0 e0 n1 ... e(k-1) nk`.
///
/// Validity is checked against a database at construction time; afterwards
/// the walk is a plain value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Walk {
    /// The length-0 walk at `v`.
    pub fn empty(v: VertexId) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn new(db: &Database, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Self> {
        if vertices.len() != edges.len() + 1 {
            return Err(Error::InvalidWalk(format!(
                "{} vertices for {} edges",
                vertices.len(),
                edges.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.0 >= db.vertex_count()) {
            return Err(Error::InvalidWalk(format!("vertex #{} out of range", v.0)));
        }
        for (i, &e) in edges.iter().enumerate() {
            if e.0 >= db.edge_count() {
                return Err(Error::InvalidWalk(format!("edge #{} out of range", e.0)));
            }
            let edge = db.edge(e);
            if edge.src != vertices[i] || edge.tgt != vertices[i + 1] {
                return Err(Error::InvalidWalk(format!(
                    "edge `{}` does not connect `{}` to `{}`",
                    edge.name,
                    db.vertex_name(vertices[i]),
                    db.vertex_name(vertices[i + 1])
                )));
            }
        }
        Ok(Walk { vertices, edges })
    }

    /// Builds the walk starting at `start` and following `edges`.
    pub fn from_edges(db: &Database, start: VertexId, edges: Vec<EdgeId>) -> Result<Self> {
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(start);
        let mut cur = start;
        for &e in &edges {
            if e.0 >= db.edge_count() {
                return Err(Error::InvalidWalk(format!("edge #{} out of range", e.0)));
            }
            let edge = db.edge(e);
            if edge.src != cur {
                return Err(Error::InvalidWalk(format!(
                    "edge `{}` does not leave `{}`",
                    edge.name,
                    db.vertex_name(cur)
                )));
            }
            cur = edge.tgt;
            vertices.push(cur);
        }
        Ok(Walk { vertices, edges })
    }

    /// Builds a walk from parts already known to be consistent.
    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Walk { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn src(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn tgt(&self) -> VertexId {
        *self.vertices.last().expect("walks are non-empty")
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.src(), self.tgt())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// No repeated edge.
    pub fn is_trail(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert(*e))
    }

    /// No repeated vertex.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// Whether `word` belongs to the label set of this walk.
    pub fn label_contains<S: AsRef<str>>(&self, db: &Database, word: &[S]) -> bool {
        word.len() == self.edges.len()
            && self
                .edges
                .iter()
                .zip(word)
                .all(|(e, a)| db.edge(*e).has_label(a.as_ref()))
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.tgt() != other.src() {
            return Err(Error::EndpointMismatch {
                first_target: format!("#{}", self.tgt().0),
                second_source: format!("#{}", other.src().0),
            });
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Walk { vertices, edges })
    }

    /// The factor between vertex positions `from` and `to` (inclusive).
    pub fn subwalk(&self, from: usize, to: usize) -> Walk {
        Walk {
            vertices: self.vertices[from..=to].to_vec(),
            edges: self.edges[from..to].to_vec(),
        }
    }
}

/// Canonical order: length, then edge ids lexicographically, then vertices.
impl Ord for Walk {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Walk {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.vertices[0].0)?;
        for (i, e) in self.edges.iter().enumerate() {
            write!(f, " -#{}-> #{}", e.0, self.vertices[i + 1].0)?;
        }
        Ok(())
    }
}

/// An ordered bag of walks with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WalkBag {
    entries: Vec<(Walk, u64)>,
}

impl WalkBag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` copies of `walk`, merging with an existing entry.
    pub fn add(&mut self, walk: Walk, count: u64) {
        if count == 0 {
            return;
        }
        match self.entries.iter_mut().find(|(w, _)| *w == walk) {
            Some((_, m)) => *m += count,
            None => self.entries.push((walk, count)),
        }
    }

    pub fn entries(&self) -> &[(Walk, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, walk: &Walk) -> u64 {
        self.entries
            .iter()
            .find(|(w, _)| w == walk)
            .map_or(0, |(_, m)| *m)
    }

    pub fn contains(&self, walk: &Walk) -> bool {
        self.multiplicity(walk) > 0
    }

    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.0.cmp(&b.0));
    }

    pub fn into_entries(self) -> Vec<(Walk, u64)> {
        self.entries
    }
}

impl FromIterator<(Walk, u64)> for WalkBag {
    fn from_iter<I: IntoIterator<Item = (Walk, u64)>>(iter: I) -> Self {
        let mut bag = WalkBag::new();
        for (w, m) in iter {
            bag.add(w, m);
        }
        bag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const ROADS: &str = include_str!("../data/roads.graph");

    fn roads() -> Database {
        Database::parse(ROADS).unwrap()
    }

    fn walk(db: &Database, text: &str) -> Walk {
        db.parse_walk(text).unwrap()
    }

    #[test]
    fn parses_running_example() {
        let db = roads();
        assert_eq!(db.vertex_count(), 5);
        assert_eq!(db.edge_count(), 7);
        let alphabet: Vec<&str> = db.alphabet().iter().map(String::as_str).collect();
        assert_eq!(alphabet, ["Ferry", "Gas", "Road"]);
    }

    #[test]
    fn single_vertex_no_edges() {
        let db = Database::parse("vertex v\n").unwrap();
        assert_eq!(db.vertex_count(), 1);
        assert_eq!(db.edge_count(), 0);
    }

    #[test]
    fn undeclared_vertex_is_rejected() {
        let err = Database::parse("vertex a\nvertex b\nedge e a c x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn implicit_vertices_without_vertex_lines() {
        let db = Database::parse("edge e a b x\nedge f b a y\n").unwrap();
        assert_eq!(db.vertex_count(), 2);
        assert_eq!(db.vertex_name(VertexId(0)), "a");
    }

    #[test]
    fn label_outside_declared_alphabet() {
        let err = Database::parse("alphabet a\nedge e u v b\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        // without an alphabet header the label is simply inferred
        assert!(Database::parse("edge e u v b\n").is_ok());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = Database::parse("# header\n\nvertex\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                message: "expected `vertex <name>`".into()
            }
        );
        assert!(Database::parse("edge e a b\n").is_err());
        assert!(Database::parse("edge e a b x\nedge e a b y\n").is_err());
        assert!(Database::parse("frobnicate\n").is_err());
    }

    #[test]
    fn trail_and_simple_predicates() {
        let db = roads();
        let w1 = walk(&db, "s -r1-> c1 -r2-> c2 -r3-> c3 -gas-> c3 -r4-> c1 -r2-> c2 -r5-> t");
        assert!(!w1.is_trail());
        assert!(!w1.is_simple());

        let w = walk(&db, "s -r1-> c1 -r2-> c2 -r5-> t");
        assert!(w.is_trail());
        assert!(w.is_simple());

        let empty = Walk::empty(db.vertex("c3").unwrap());
        assert!(empty.is_trail() && empty.is_simple());
        assert_eq!(empty.len(), 0);
    }

    #[test]
    fn walk_labels() {
        let db = roads();
        let ferry = walk(&db, "s -f1-> t");
        assert!(ferry.label_contains(&db, &["Ferry"]));
        assert!(!ferry.label_contains(&db, &["Road"]));
        assert!(!ferry.label_contains(&db, &["Ferry", "Ferry"]));
        let gas = walk(&db, "c3 -gas-> c3");
        assert!(!gas.label_contains(&db, &["Road"]));
        assert!(gas.label_contains(&db, &["Gas"]));
    }

    #[test]
    fn multi_labelled_edges() {
        let db = Database::parse("edge e u v a,b\n").unwrap();
        let w = walk(&db, "u -e-> v");
        assert!(w.label_contains(&db, &["a"]));
        assert!(w.label_contains(&db, &["b"]));
        assert!(!w.label_contains(&db, &["c"]));
    }

    #[test]
    fn concatenation() {
        let db = roads();
        let a = walk(&db, "s -r1-> c1");
        let b = walk(&db, "c1 -r2-> c2");
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab, walk(&db, "s -r1-> c1 -r2-> c2"));
        assert_eq!(ab.len(), 2);

        let unit = Walk::empty(a.tgt());
        assert_eq!(a.concat(&unit).unwrap(), a);

        let c = walk(&db, "c2 -r5-> t");
        assert!(matches!(a.concat(&c), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn invalid_walks_rejected() {
        let db = roads();
        assert!(db.parse_walk("s -r2-> c2").is_err());
        assert!(db.parse_walk("s -nope-> c2").is_err());
        assert!(db.parse_walk("s r1 c1").is_err());
        assert!(db.parse_walk("").is_err());
    }

    #[test]
    fn round_trip_text() {
        let db = roads();
        assert_eq!(Database::parse(&db.to_text()).unwrap(), db);
        let w = walk(&db, "s -r1-> c1 -r2-> c2 -r5-> t");
        assert_eq!(db.parse_walk(&db.format_walk(&w)).unwrap(), w);
    }

    #[test]
    fn canonical_walk_order() {
        let db = roads();
        let short = walk(&db, "s -f1-> t");
        let long = walk(&db, "s -r1-> c1 -r2-> c2 -r5-> t");
        assert!(short < long);
        let a = Walk::empty(VertexId(0));
        let b = Walk::empty(VertexId(1));
        assert!(a < b && a < short);
    }

    #[test]
    fn walk_bag_merges() {
        let db = roads();
        let w = walk(&db, "s -f1-> t");
        let mut bag = WalkBag::new();
        bag.add(w.clone(), 1);
        bag.add(w.clone(), 2);
        bag.add(Walk::empty(VertexId(0)), 1);
        assert_eq!(bag.len(), 2);
        assert_eq!(bag.multiplicity(&w), 3);
        assert_eq!(bag.total_multiplicity(), 4);
    }
}
