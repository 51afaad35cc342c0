//! Random instance generators and independent oracles shared by the
//! integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rpq::regex::Expr;
use rpq::sat::{Literal, SatInstance};
use rpq::{Automaton, Database, EdgeId, Regex, VertexId, Walk};

pub const ROADS: &str = include_str!("../../data/roads.graph");
pub const Q2_AUTO: &str = include_str!("../../data/q2.auto");
pub const THREE_CLAUSES_CNF: &str = include_str!("../../data/three_clauses.cnf");
pub const Q1: &str = "(Road+Ferry)*";
pub const Q2: &str = "(Road+Ferry)* Gas (Road+Ferry)*";
pub const W1: &str = "s -r1-> c1 -r2-> c2 -r3-> c3 -gas-> c3 -r4-> c1 -r2-> c2 -r5-> t";
pub const W1_WITHOUT_GAS: &str = "s -r1-> c1 -r2-> c2 -r3-> c3 -r4-> c1 -r2-> c2 -r5-> t";

pub fn roads() -> Database {
    Database::parse(ROADS).unwrap()
}

pub fn q2_automaton() -> Automaton {
    Automaton::parse(Q2_AUTO).unwrap()
}

/// Random database over `{a, b}` with non-empty label sets.
pub fn random_db(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> Database {
    let mut db = Database::new();
    db.add_symbol("a");
    db.add_symbol("b");
    let n = rng.gen_range(1..=max_vertices);
    for i in 0..n {
        db.add_vertex(format!("v{i}"));
    }
    for i in 0..rng.gen_range(0..=max_edges) {
        let labels: Vec<&str> = match rng.gen_range(0..4) {
            0 => vec!["a"],
            1 => vec!["b"],
            _ => vec!["a", "b"],
        };
        let (s, t) = (VertexId(rng.gen_range(0..n)), VertexId(rng.gen_range(0..n)));
        db.add_edge(format!("e{i}"), s, t, labels).unwrap();
    }
    db
}

fn leaf(rng: &mut ChaCha8Rng) -> Regex {
    match rng.gen_range(0..5) {
        0 => Expr::Epsilon,
        1 | 2 => Expr::Atom("a".to_string()),
        _ => Expr::Atom("b".to_string()),
    }
}

pub fn random_regex(rng: &mut ChaCha8Rng, depth: usize) -> Regex {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => random_regex(rng, depth - 1).star(),
        1 => random_regex(rng, depth - 1).concat(random_regex(rng, depth - 1)),
        _ => random_regex(rng, depth - 1).union(random_regex(rng, depth - 1)),
    }
}

/// Random expression with no concatenation under a star.
pub fn random_regex_no_concat_under_star(rng: &mut ChaCha8Rng, depth: usize) -> Regex {
    fn starless_sum(rng: &mut ChaCha8Rng, depth: usize) -> Regex {
        if depth == 0 || rng.gen_bool(0.4) {
            return leaf(rng);
        }
        match rng.gen_range(0..3) {
            0 => starless_sum(rng, depth - 1).star(),
            _ => starless_sum(rng, depth - 1).union(starless_sum(rng, depth - 1)),
        }
    }
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => starless_sum(rng, depth - 1).star(),
        1 => random_regex_no_concat_under_star(rng, depth - 1)
            .concat(random_regex_no_concat_under_star(rng, depth - 1)),
        _ => random_regex_no_concat_under_star(rng, depth - 1)
            .union(random_regex_no_concat_under_star(rng, depth - 1)),
    }
}

/// Random automaton over `{a, b}` with state 0 initial.
pub fn random_automaton(rng: &mut ChaCha8Rng, max_states: usize, max_transitions: usize) -> Automaton {
    let mut a = Automaton::new();
    a.add_symbol("a");
    a.add_symbol("b");
    let n = rng.gen_range(1..=max_states);
    for i in 0..n {
        a.add_state(format!("q{i}"));
    }
    a.set_initial(0);
    for q in 0..n {
        if rng.gen_bool(0.4) {
            a.set_final(q);
        }
    }
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let label = if rng.gen_bool(0.5) { "a" } else { "b" };
        a.add_transition(rng.gen_range(0..n), label, rng.gen_range(0..n));
    }
    a
}

/// Random trim automaton, drawn by rejection.
pub fn random_trim_automaton(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    max_transitions: usize,
    max_letters: usize,
) -> Automaton {
    loop {
        let mut a = Automaton::new();
        let k = rng.gen_range(1..=max_letters);
        let letters: Vec<String> = ["a", "b", "c", "d"][..k].iter().map(|s| s.to_string()).collect();
        for x in &letters {
            a.add_symbol(x.clone());
        }
        let n = rng.gen_range(1..=max_states);
        for i in 0..n {
            a.add_state(format!("q{i}"));
        }
        for q in 0..n {
            if rng.gen_bool(0.4) {
                a.set_initial(q);
            }
            if rng.gen_bool(0.4) {
                a.set_final(q);
            }
        }
        for _ in 0..rng.gen_range(0..=max_transitions) {
            let x = letters[rng.gen_range(0..k)].clone();
            a.add_transition(rng.gen_range(0..n), x, rng.gen_range(0..n));
        }
        if a.transitions().len() <= max_transitions && a.is_trim() {
            return a;
        }
    }
}

pub fn random_3sat(rng: &mut ChaCha8Rng, max_variables: usize, max_clauses: usize) -> SatInstance {
    let n = rng.gen_range(1..=max_variables);
    let clauses = (0..rng.gen_range(1..=max_clauses))
        .map(|_| {
            [0; 3].map(|_| {
                let var = rng.gen_range(1..=n);
                if rng.gen_bool(0.5) {
                    Literal::pos(var)
                } else {
                    Literal::neg(var)
                }
            })
        })
        .collect();
    SatInstance::new(n, clauses).unwrap()
}

/// Satisfying assignments, by enumeration of all valuations.
pub fn brute_force_models(instance: &SatInstance) -> u64 {
    let n = instance.variables();
    (0..1u64 << n)
        .filter(|bits| {
            instance.clauses().iter().all(|clause| {
                clause.iter().any(|l| (bits >> (l.var - 1) & 1 == 1) == l.positive)
            })
        })
        .count() as u64
}

/// Complete digraph on `n` vertices, without loops, all edges labelled `a`.
pub fn complete_digraph(n: usize) -> Database {
    let mut db = Database::new();
    let vs: Vec<VertexId> = (0..n).map(|i| db.add_vertex(format!("v{i}"))).collect();
    for &s in &vs {
        for &t in &vs {
            if s != t {
                db.add_edge(format!("e{}_{}", s.0, t.0), s, t, ["a"]).unwrap();
            }
        }
    }
    db
}

/// One-state automaton for `a*`.
pub fn a_star() -> Automaton {
    Automaton::parse("state q\ninitial q\nfinal q\ntrans q a q\n").unwrap()
}

/// States of `a` reachable by reading some label word of `w`.
pub fn reading_states(db: &Database, a: &Automaton, w: &Walk) -> BTreeSet<usize> {
    let mut current: BTreeSet<usize> = a.initial().clone();
    for e in w.edges() {
        let edge = db.edge(*e);
        current = a
            .transitions()
            .iter()
            .filter(|t| current.contains(&t.src) && edge.has_label(&t.label))
            .map(|t| t.tgt)
            .collect();
    }
    current
}

/// Whether some label word of `w` is accepted by `a`.
pub fn matches(db: &Database, a: &Automaton, w: &Walk) -> bool {
    reading_states(db, a, w).iter().any(|&q| a.is_final(q))
}

/// Breadth-first search over (vertex, state) pairs.
pub fn has_matching_walk(db: &Database, a: &Automaton, s: VertexId, t: VertexId) -> bool {
    shortest_match_length(db, a, s, t).is_some()
}

pub fn shortest_match_length(db: &Database, a: &Automaton, s: VertexId, t: VertexId) -> Option<usize> {
    let n = a.state_count();
    let mut dist = vec![usize::MAX; db.vertex_count() * n];
    let mut queue = VecDeque::new();
    for &q in a.initial() {
        dist[s.0 * n + q] = 0;
        queue.push_back((s, q));
    }
    while let Some((v, q)) = queue.pop_front() {
        let d = dist[v.0 * n + q];
        if v == t && a.is_final(q) {
            return Some(d);
        }
        for &e in db.out_edges(v) {
            let edge = db.edge(e);
            for tr in a.transitions_from(q) {
                let slot = edge.tgt.0 * n + tr.tgt;
                if edge.has_label(&tr.label) && dist[slot] == usize::MAX {
                    dist[slot] = d + 1;
                    queue.push_back((edge.tgt, tr.tgt));
                }
            }
        }
    }
    None
}

/// Every matching walk from `s` to `t` of minimal length.
pub fn shortest_witnesses(db: &Database, a: &Automaton, s: VertexId, t: VertexId) -> Vec<Walk> {
    let Some(len) = shortest_match_length(db, a, s, t) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut edges: Vec<EdgeId> = Vec::new();
    fn go(db: &Database, a: &Automaton, s: VertexId, t: VertexId, len: usize, edges: &mut Vec<EdgeId>, out: &mut Vec<Walk>) {
        let w = Walk::from_edges(db, s, edges.clone()).unwrap();
        if edges.len() == len {
            if w.tgt() == t && matches(db, a, &w) {
                out.push(w);
            }
            return;
        }
        if reading_states(db, a, &w).is_empty() {
            return;
        }
        for &e in db.out_edges(w.tgt()) {
            edges.push(e);
            go(db, a, s, t, len, edges, out);
            edges.pop();
        }
    }
    go(db, a, s, t, len, &mut edges, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Random walk of length at most `max_len`, cut short at sinks.
pub fn random_walk(rng: &mut ChaCha8Rng, db: &Database, max_len: usize) -> Walk {
    let start = VertexId(rng.gen_range(0..db.vertex_count()));
    let len = rng.gen_range(0..=max_len);
    let mut edges = Vec::new();
    let mut here = start;
    for _ in 0..len {
        let out = db.out_edges(here);
        if out.is_empty() {
            break;
        }
        let e = out[rng.gen_range(0..out.len())];
        edges.push(e);
        here = db.edge(e).tgt;
    }
    Walk::from_edges(db, start, edges).unwrap()
}

/// All words over `alphabet` of length at most `max_len`.
pub fn words_up_to(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in alphabet {
                let mut longer = w.clone();
                longer.push(x.clone());
                next.push(longer);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.max(1.0).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}
