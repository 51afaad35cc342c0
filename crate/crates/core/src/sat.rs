//! 3-SAT instances and their reduction to walk membership under simple-run
//! semantics: a fixed automaton, and for each instance `I` a database `D_I`
//! with a walk `p_I` whose simple runs are in bijection with the satisfying
//! valuations of `I`.
//!
//! Vertex and edge names follow the gadget coordinates: `x3_in`, `x3`,
//! `x3_out`, `~x3`, `(x3,C2)`, `(~x3,C2)`, `C2_in`, `C2_out`; edges are
//! `x3/var`, `x3/pos/2`, `x3/invert`, `x3/neg/2`, `x3/reset`, `C2/var`,
//! `C2/eval/1`, `C2/check` and the connectors `Start/link`, `x3/link`,
//! `Mid/link`, `C2/link`.

use std::fmt;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Database, VertexId, Walk};
use crate::semantics::{count_runs, Budget, RunFilter};

/// Largest variable count accepted by [`count_satisfying`].
pub const MAX_BRUTE_FORCE_VARIABLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    fn holds(self, valuation: &[bool]) -> bool {
        valuation[self.var - 1] == self.positive
    }

    fn name(self) -> String {
        if self.positive {
            format!("x{}", self.var)
        } else {
            format!("~x{}", self.var)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    variables: usize,
    clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(variables: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if variables == 0 {
            return Err(Error::Precondition("an instance needs at least one variable".into()));
        }
        if clauses.is_empty() {
            return Err(Error::Precondition("an instance needs at least one clause".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                if l.var == 0 || l.var > variables {
                    return Err(Error::Precondition(format!(
                        "clause {} mentions variable {} outside 1..={variables}",
                        i + 1,
                        l.var
                    )));
                }
            }
        }
        Ok(SatInstance { variables, clauses })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, valuation: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(valuation)))
    }

    /// Reads the DIMACS CNF subset: comment lines starting with `c`, one
    /// `p cnf <vars> <clauses>` header, and clauses of exactly three
    /// literals terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "p" {
                if header.is_some() {
                    return Err(Error::syntax(line_no, "duplicate problem line"));
                }
                let parsed = match tokens.as_slice() {
                    ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                header = Some(
                    parsed.ok_or_else(|| Error::syntax(line_no, "expected `p cnf <vars> <clauses>`"))?,
                );
                continue;
            }
            let Some((n, _)) = header else {
                return Err(Error::syntax(line_no, "clause before the problem line"));
            };
            let numbers: Vec<i64> = tokens
                .iter()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::syntax(line_no, "expected integer literals"))?;
            let [a, b, c, 0] = numbers[..] else {
                return Err(Error::syntax(line_no, "expected three literals followed by 0"));
            };
            let mut clause = [Literal::pos(1); 3];
            for (slot, x) in clause.iter_mut().zip([a, b, c]) {
                let var = x.unsigned_abs() as usize;
                if x == 0 || var > n {
                    return Err(Error::syntax(line_no, format!("literal {x} out of range")));
                }
                *slot = Literal {
                    var,
                    positive: x > 0,
                };
            }
            clauses.push(clause);
        }
        let (n, m) = header.ok_or_else(|| Error::syntax(1, "missing problem line"))?;
        if clauses.len() != m {
            return Err(Error::syntax(
                text.lines().count().max(1),
                format!("header announces {m} clauses, found {}", clauses.len()),
            ));
        }
        SatInstance::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variables, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

/// The fixed automaton of the reduction, over
/// `{Check, Eval, Invert, Keep, Reset, Var}` with states `0`, `1`, `⊤`.
pub fn sat_automaton() -> Automaton {
    let mut a = Automaton::new();
    for s in ["Check", "Eval", "Invert", "Keep", "Reset", "Var"] {
        a.add_symbol(s);
    }
    let zero = a.add_state("0");
    let one = a.add_state("1");
    let top = a.add_state("⊤");
    a.set_initial(top);
    a.set_final(top);
    for q in [zero, one, top] {
        a.add_transition(q, "Keep", q);
        a.add_transition(q, "Var", zero);
        a.add_transition(q, "Var", one);
        a.add_transition(q, "Reset", top);
    }
    a.add_transition(zero, "Invert", one);
    a.add_transition(one, "Invert", zero);
    a.add_transition(one, "Eval", zero);
    a.add_transition(one, "Eval", one);
    for q in [zero, top] {
        a.add_transition(q, "Eval", top);
        a.add_transition(q, "Check", top);
    }
    a
}

/// The database `D_I`, the walk `p_I` and its split point: the first
/// `setval_len` edges of `p_I` form `p_setval`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub database: Database,
    pub walk: Walk,
    pub setval_len: usize,
}

impl Reduction {
    pub fn setval(&self) -> Walk {
        self.walk.subwalk(0, self.setval_len)
    }

    pub fn checksat(&self) -> Walk {
        self.walk.subwalk(self.setval_len, self.walk.len())
    }
}

struct WalkBuilder {
    db: Database,
    vertices: Vec<VertexId>,
    edges: Vec<crate::graph::EdgeId>,
}

impl WalkBuilder {
    fn step(&mut self, name: String, label: &str, to: VertexId) {
        let from = *self.vertices.last().expect("walk started");
        let e = self
            .db
            .add_edge(name, from, to, [label])
            .expect("gadget edge names are distinct");
        self.edges.push(e);
        self.vertices.push(to);
    }
}

/// Builds `D_I` and `p_I`. Every variable `1..=n` gets a gadget, occurring
/// or not. A clause gadget visits the distinct literals of its clause in
/// order of first occurrence, so that repeated literals do not produce
/// self-loops.
pub fn build_reduction(instance: &SatInstance) -> Reduction {
    let n = instance.variables;
    let gamma = instance.clauses.len();
    let mut db = Database::new();
    for s in sat_automaton().alphabet() {
        db.add_symbol(s.clone());
    }
    let start = db.add_vertex("Start");
    let mid = db.add_vertex("Mid");
    let end = db.add_vertex("End");
    let mut literal_vertex = std::collections::HashMap::new();
    let mut gadget = Vec::with_capacity(n);
    for k in 1..=n {
        let x_in = db.add_vertex(format!("x{k}_in"));
        let x = db.add_vertex(format!("x{k}"));
        let x_out = db.add_vertex(format!("x{k}_out"));
        let nx = db.add_vertex(format!("~x{k}"));
        gadget.push((x_in, x, x_out, nx));
    }
    for k in 1..=n {
        for lit in [Literal::pos(k), Literal::neg(k)] {
            for i in 0..=gamma {
                let v = db.add_vertex(format!("({},C{i})", lit.name()));
                literal_vertex.insert((lit, i), v);
            }
        }
    }
    let mut clause_ends = Vec::with_capacity(gamma);
    for i in 1..=gamma {
        clause_ends.push((db.add_vertex(format!("C{i}_in")), db.add_vertex(format!("C{i}_out"))));
    }

    let mut b = WalkBuilder {
        db,
        vertices: vec![start],
        edges: Vec::new(),
    };
    for k in 1..=n {
        let (x_in, x, x_out, nx) = gadget[k - 1];
        let link = if k == 1 {
            "Start/link".to_string()
        } else {
            format!("x{}/link", k - 1)
        };
        b.step(link, "Reset", x_in);
        b.step(format!("x{k}/var"), "Var", x);
        for i in 0..=gamma {
            b.step(format!("x{k}/pos/{i}"), "Keep", literal_vertex[&(Literal::pos(k), i)]);
        }
        b.step(format!("x{k}/invert"), "Invert", nx);
        for i in (0..=gamma).rev() {
            b.step(format!("x{k}/neg/{i}"), "Keep", literal_vertex[&(Literal::neg(k), i)]);
        }
        b.step(format!("x{k}/reset"), "Reset", x_out);
    }
    b.step(format!("x{n}/link"), "Reset", mid);
    let setval_len = b.edges.len();
    for (i, clause) in instance.clauses.iter().enumerate() {
        let i = i + 1;
        let (c_in, c_out) = clause_ends[i - 1];
        let link = if i == 1 {
            "Mid/link".to_string()
        } else {
            format!("C{}/link", i - 1)
        };
        b.step(link, "Reset", c_in);
        let mut distinct: Vec<Literal> = Vec::with_capacity(3);
        for &l in clause {
            if !distinct.contains(&l) {
                distinct.push(l);
            }
        }
        for (j, l) in distinct.iter().enumerate() {
            let v = literal_vertex[&(*l, i)];
            if j == 0 {
                b.step(format!("C{i}/var"), "Var", v);
            } else {
                b.step(format!("C{i}/eval/{j}"), "Eval", v);
            }
        }
        b.step(format!("C{i}/check"), "Check", c_out);
    }
    b.step(format!("C{gamma}/link"), "Reset", end);
    let walk = Walk::new(&b.db, b.vertices, b.edges).expect("p_I follows the gadget edges");
    Reduction {
        database: b.db,
        walk,
        setval_len,
    }
}

/// Number of satisfying valuations of `instance`, by enumeration.
pub fn count_satisfying(instance: &SatInstance) -> Result<u64> {
    let n = instance.variables;
    if n > MAX_BRUTE_FORCE_VARIABLES {
        return Err(Error::GuardExceeded(format!(
            "{n} variables; brute force is limited to {MAX_BRUTE_FORCE_VARIABLES}"
        )));
    }
    let mut valuation = vec![false; n];
    let mut count = 0;
    for bits in 0u64..1 << n {
        for (i, slot) in valuation.iter_mut().enumerate() {
            *slot = bits >> i & 1 == 1;
        }
        if instance.is_satisfied_by(&valuation) {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of simple runs of `D_I × A` projecting to `p_I`.
pub fn count_reduction_runs(reduction: &Reduction, budget: &mut Budget) -> Result<u64> {
    count_runs(
        &reduction.database,
        &sat_automaton(),
        &reduction.walk,
        RunFilter::Simple,
        None,
        budget,
    )
}

/// Both sides of the counting correspondence: simple runs over `p_I` and
/// satisfying valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionCheck {
    pub simple_runs: u64,
    pub satisfying: u64,
}

impl ReductionCheck {
    pub fn holds(&self) -> bool {
        self.simple_runs == self.satisfying
    }
}

pub fn reduction_check(instance: &SatInstance, max_steps: u64) -> Result<ReductionCheck> {
    let satisfying = count_satisfying(instance)?;
    let reduction = build_reduction(instance);
    let simple_runs = count_reduction_runs(&reduction, &mut Budget::new(max_steps))?;
    Ok(ReductionCheck {
        simple_runs,
        satisfying,
    })
}
