//! Topological codings of automata into Glushkov automata.
//!
//! For a trim automaton `A` with `m` transitions, [`coding_expression`]
//! builds an expression `R` with a single star such that `Gl(R)` simulates
//! `A`: each state `q` becomes the position of its `σ` atom, and each
//! transition becomes a chain of `m + 1` positions followed by a `σ`. The
//! [`CodingWitness`] records the encoding and [`verify_coding`] checks the
//! coding conditions by direct search in `Gl(R)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Database, EdgeId, VertexId, Walk};
use crate::regex::{glushkov, Regex};
#[cfg(test)]
use crate::regex::Expr;

/// Largest automaton accepted by [`verify_coding`].
pub const MAX_VERIFY_STATES: usize = 6;
pub const MAX_VERIFY_TRANSITIONS: usize = 10;
/// Word length up to which [`verify_coding`] checks acceptance.
pub const DEFAULT_WORD_LENGTH: usize = 4;

/// The data realising a coding of `A` into `Gl(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingWitness {
    /// Fresh letter separating encoded letters.
    pub sigma: String,
    pub u_i: Vec<String>,
    pub u_f: Vec<String>,
    /// Letter encoding `λ(x) = x^{m+1} σ`.
    pub lambda: BTreeMap<String, Vec<String>>,
    /// `nu[q]`: the state of `Gl(R)` encoding state `q` of `A`.
    pub nu: Vec<usize>,
    /// `g[i]`, `h[i]`: the values of the two transition numberings on the
    /// `i`-th transition of `A`, with `g[i] + h[i] = m + 1`.
    pub g: Vec<usize>,
    pub h: Vec<usize>,
    pub m: usize,
}

/// A letter not in `alphabet`: `σ`, primed as often as needed.
pub fn fresh_symbol(alphabet: &BTreeSet<String>) -> String {
    let mut s = "σ".to_string();
    while alphabet.contains(&s) {
        s.push('\'');
    }
    s
}

fn require_trim(a: &Automaton) -> Result<()> {
    if a.state_count() == 0 {
        return Err(Error::Precondition("the automaton has no state".into()));
    }
    if !a.is_trim() {
        return Err(Error::Precondition("the automaton is not trim".into()));
    }
    Ok(())
}

fn sum(parts: Vec<Regex>) -> Regex {
    Regex::union_all(parts).expect("trim automata give non-empty sums")
}

/// Builds `R = (Σ_q R_q^left · σ · R_q^right)*` with
/// `R_q^left = [ε +] Σ_{e=(s,x,q)} x^{G(e)}` and
/// `R_q^right = [ε +] Σ_{e=(q,x,t)} x^{H(e)}`, where the `ε` summands are
/// present iff `q` is initial, respectively final. `G` numbers the
/// transitions in their sorted order.
pub fn coding_expression(a: &Automaton) -> Result<(Regex, CodingWitness)> {
    require_trim(a)?;
    let sigma = fresh_symbol(a.alphabet());
    let m = a.transitions().len();
    let g: Vec<usize> = (1..=m).collect();
    let h: Vec<usize> = g.iter().map(|gi| m + 1 - gi).collect();
    let mut nu = Vec::with_capacity(a.state_count());
    let mut position = 0;
    let mut bodies = Vec::with_capacity(a.state_count());
    for q in 0..a.state_count() {
        let mut left = Vec::new();
        if a.is_initial(q) {
            left.push(Regex::Epsilon);
        }
        for (i, t) in a.transitions().iter().enumerate() {
            if t.tgt == q {
                left.push(Regex::power(&t.label, g[i]));
                position += g[i];
            }
        }
        position += 1;
        nu.push(position);
        let mut right = Vec::new();
        if a.is_final(q) {
            right.push(Regex::Epsilon);
        }
        for (i, t) in a.transitions().iter().enumerate() {
            if t.src == q {
                right.push(Regex::power(&t.label, h[i]));
                position += h[i];
            }
        }
        bodies.push(sum(left).concat(Regex::atom(sigma.as_str())).concat(sum(right)));
    }
    let r = sum(bodies).star();
    let lambda = a
        .alphabet()
        .iter()
        .map(|x| {
            let mut word = vec![x.clone(); m + 1];
            word.push(sigma.clone());
            (x.clone(), word)
        })
        .collect();
    let witness = CodingWitness {
        u_i: vec![sigma.clone()],
        u_f: Vec::new(),
        sigma,
        lambda,
        nu,
        g,
        h,
        m,
    };
    Ok((r, witness))
}

/// `u_i · λ(u_1) ⋯ λ(u_k) · u_f`.
pub fn encode_word<S: AsRef<str>>(w: &CodingWitness, u: &[S]) -> Result<Vec<String>> {
    let mut out = w.u_i.clone();
    for x in u {
        let code = w
            .lambda
            .get(x.as_ref())
            .ok_or_else(|| Error::UnknownLabel(x.as_ref().to_string()))?;
        out.extend(code.iter().cloned());
    }
    out.extend(w.u_f.iter().cloned());
    Ok(out)
}

/// Sizes of the walk sets found while verifying a coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodingReport {
    pub initial_walks: usize,
    pub transition_walks: usize,
    pub final_walks: usize,
    pub words_checked: usize,
    pub glushkov_states: usize,
    pub glushkov_transitions: usize,
}

fn violation(condition: &str, detail: impl Into<String>) -> Error {
    Error::CodingViolation {
        condition: condition.to_string(),
        detail: detail.into(),
    }
}

/// All computations of `b` from `sources` labelled by `word`, as state
/// sequences.
fn computations(b: &Automaton, sources: &[usize], word: &[String]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = sources.iter().map(|&s| vec![s]).collect();
    while let Some(path) = stack.pop() {
        let i = path.len() - 1;
        if i == word.len() {
            out.push(path);
            continue;
        }
        for t in b.transitions_from(path[i]) {
            if t.label == word[i] {
                let mut next = path.clone();
                next.push(t.tgt);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

fn words_up_to(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |x| {
                    let mut next = w.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Checks that `Gl(r)` is a topological coding of `a` via `w`, and that
/// `u ∈ L(a) ⟺ encode(u) ∈ L(Gl(r))` for all words of length at most 4.
pub fn verify_coding(a: &Automaton, r: &Regex, w: &CodingWitness) -> Result<CodingReport> {
    verify_coding_up_to(a, r, w, DEFAULT_WORD_LENGTH)
}

pub fn verify_coding_up_to(
    a: &Automaton,
    r: &Regex,
    w: &CodingWitness,
    max_word_len: usize,
) -> Result<CodingReport> {
    if a.state_count() > MAX_VERIFY_STATES || a.transitions().len() > MAX_VERIFY_TRANSITIONS {
        return Err(Error::GuardExceeded(format!(
            "coding verification is limited to {MAX_VERIFY_STATES} states and \
             {MAX_VERIFY_TRANSITIONS} transitions"
        )));
    }
    let mut b = glushkov(r);
    for x in a.alphabet().iter().chain(w.lambda.values().flatten()).chain(&w.u_i).chain(&w.u_f) {
        b.add_symbol(x.clone());
    }
    let m = a.transitions().len();

    // witness shape: λ injective with non-empty images, ν injective, G/H
    let mut images = HashSet::new();
    for x in a.alphabet() {
        let code = w
            .lambda
            .get(x)
            .ok_or_else(|| violation("b", format!("λ undefined on `{x}`")))?;
        if code.is_empty() {
            return Err(violation("b", format!("λ(`{x}`) is empty")));
        }
        if !images.insert(code.clone()) {
            return Err(violation("b", "λ is not injective"));
        }
    }
    if w.nu.len() != a.state_count() {
        return Err(violation("c", "ν is not defined on every state"));
    }
    if w.nu.iter().any(|&s| s >= b.state_count()) {
        return Err(violation("c", "ν maps outside the states of Gl(R)"));
    }
    if w.nu.iter().collect::<HashSet<_>>().len() != w.nu.len() {
        return Err(violation("c", "ν is not injective"));
    }
    let mut gs = w.g.clone();
    gs.sort_unstable();
    let mut hs = w.h.clone();
    hs.sort_unstable();
    let range: Vec<usize> = (1..=m).collect();
    if w.m != m || gs != range || hs != range || w.g.iter().zip(&w.h).any(|(g, h)| g + h != m + 1) {
        return Err(violation("G/H", "G and H must be bijections onto 1..=m with G + H = m + 1"));
    }
    let nu_inv: BTreeMap<usize, usize> = w.nu.iter().enumerate().map(|(q, &s)| (s, q)).collect();
    let in_nu = |s: &usize| nu_inv.contains_key(s);

    // (d) initial walks
    let initials: Vec<usize> = b.initial().iter().copied().collect();
    let w_initial = computations(&b, &initials, &w.u_i);
    let mut hit = vec![0usize; a.state_count()];
    for walk in &w_initial {
        let end = walk.last().unwrap();
        let Some(&q) = nu_inv.get(end) else {
            return Err(violation("d", format!("an initial walk ends in `{}` outside im(ν)", b.state_name(*end))));
        };
        if !a.is_initial(q) {
            return Err(violation("d", format!("an initial walk ends in ν({})", a.state_name(q))));
        }
        if walk[..walk.len() - 1].iter().any(in_nu) {
            return Err(violation("d", "an initial walk passes through im(ν) before its end"));
        }
        hit[q] += 1;
    }
    for &q in a.initial() {
        if hit[q] != 1 {
            return Err(violation("d", format!("{} initial walks end in ν({})", hit[q], a.state_name(q))));
        }
    }

    // (e) transition walks
    let sources: Vec<usize> = w.nu.clone();
    let mut w_transition = Vec::new();
    let mut per_transition = vec![0usize; m];
    for (x, code) in &w.lambda {
        for walk in computations(&b, &sources, code) {
            let s = nu_inv[&walk[0]];
            let end = walk.last().unwrap();
            let Some(&t) = nu_inv.get(end) else {
                return Err(violation(
                    "e",
                    format!("a walk from ν({}) labelled λ({x}) ends outside im(ν)", a.state_name(s)),
                ));
            };
            let Some(i) = a
                .transitions()
                .iter()
                .position(|tr| tr.src == s && tr.label == *x && tr.tgt == t)
            else {
                return Err(violation(
                    "e",
                    format!(
                        "a walk ν({}) -λ({x})-> ν({}) encodes no transition",
                        a.state_name(s),
                        a.state_name(t)
                    ),
                ));
            };
            if walk[1..walk.len() - 1].iter().any(in_nu) {
                return Err(violation("e", "a transition walk has an internal state in im(ν)"));
            }
            per_transition[i] += 1;
            w_transition.push((walk, code.clone()));
        }
    }
    if let Some(i) = per_transition.iter().position(|&c| c != 1) {
        let t = &a.transitions()[i];
        return Err(violation(
            "e",
            format!(
                "transition ({}, {}, {}) has {} encoding walks",
                a.state_name(t.src),
                t.label,
                a.state_name(t.tgt),
                per_transition[i]
            ),
        ));
    }

    // (f) final walks: from im(ν), labelled u_f, ending in a final state
    let w_final: Vec<Vec<usize>> = computations(&b, &sources, &w.u_f)
        .into_iter()
        .filter(|walk| b.is_final(*walk.last().unwrap()))
        .collect();
    let mut hit = vec![0usize; a.state_count()];
    for walk in &w_final {
        let q = nu_inv[&walk[0]];
        if !a.is_final(q) {
            return Err(violation("f", format!("a final walk starts in ν({}), not final", a.state_name(q))));
        }
        if walk[1..].iter().any(in_nu) {
            return Err(violation("f", "a final walk passes through im(ν) after its start"));
        }
        hit[q] += 1;
    }
    for &q in a.finals() {
        if hit[q] != 1 {
            return Err(violation("f", format!("{} final walks start in ν({})", hit[q], a.state_name(q))));
        }
    }

    // (g) distinct walks share no transition and no internal state
    let all: Vec<(&[usize], &[String])> = w_initial
        .iter()
        .map(|p| (p.as_slice(), w.u_i.as_slice()))
        .chain(w_transition.iter().map(|(p, c)| (p.as_slice(), c.as_slice())))
        .chain(w_final.iter().map(|p| (p.as_slice(), w.u_f.as_slice())))
        .collect();
    let footprint = |(p, word): (&[usize], &[String])| {
        let steps: HashSet<(usize, String, usize)> = (0..word.len())
            .map(|i| (p[i], word[i].clone(), p[i + 1]))
            .collect();
        let internal: HashSet<usize> = p.iter().skip(1).take(p.len().saturating_sub(2)).copied().collect();
        (steps, internal)
    };
    let prints: Vec<_> = all.iter().map(|&x| footprint(x)).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i] == all[j] {
                continue;
            }
            let (si, ii) = &prints[i];
            let (sj, ij) = &prints[j];
            if !si.is_disjoint(sj) || !ii.is_disjoint(ij) {
                return Err(violation("g", "two distinct coding walks overlap"));
            }
        }
    }

    let alphabet: Vec<String> = a.alphabet().iter().cloned().collect();
    let words = words_up_to(&alphabet, max_word_len);
    for u in &words {
        let lhs = a.accepts(u)?;
        let rhs = b.accepts(&encode_word(w, u)?)?;
        if lhs != rhs {
            return Err(violation(
                "acceptance",
                format!("`{}` is {} A but its encoding is {} Gl(R)",
                    u.join(" "),
                    if lhs { "accepted by" } else { "rejected by" },
                    if rhs { "accepted by" } else { "rejected by" }),
            ));
        }
    }

    Ok(CodingReport {
        initial_walks: w_initial.len(),
        transition_walks: w_transition.len(),
        final_walks: w_final.len(),
        words_checked: words.len(),
        glushkov_states: b.state_count(),
        glushkov_transitions: b.transitions().len(),
    })
}

/// Builds, from a database with one label per edge and a walk `w`, the
/// database `D′` where every edge is replaced by a fresh path spelling
/// `λ` of its label, plus a fresh path spelling `u_i` into `src(w)` and one
/// spelling `u_f` out of `tgt(w)`. Returns `D′` and the image `w′` of `w`.
pub fn transfer_instance(db: &Database, w: &Walk, witness: &CodingWitness) -> Result<(Database, Walk)> {
    let mut out = Database::new();
    for codes in witness.lambda.values() {
        for x in codes {
            out.add_symbol(x.clone());
        }
    }
    for x in witness.u_i.iter().chain(&witness.u_f) {
        out.add_symbol(x.clone());
    }
    for v in db.vertex_ids() {
        out.add_vertex(db.vertex_name(v).to_string());
    }
    let mut chains = Vec::with_capacity(db.edge_count());
    for e in db.edge_ids() {
        let edge = db.edge(e);
        if edge.labels.len() != 1 {
            return Err(Error::Precondition(format!(
                "edge `{}` must carry exactly one label",
                edge.name
            )));
        }
        let label = edge.labels.iter().next().unwrap();
        let code = witness
            .lambda
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        let mut from = edge.src;
        let mut ids = Vec::with_capacity(code.len());
        for (i, x) in code.iter().enumerate() {
            let to = if i + 1 == code.len() {
                edge.tgt
            } else {
                let name = fresh_vertex_name(&out, &format!("{}.{}", edge.name, i + 1));
                out.add_vertex(name)
            };
            ids.push(out.add_edge(format!("{}.{}", edge.name, i + 1), from, to, [x.as_str()])?);
            from = to;
        }
        chains.push(ids);
    }
    let mut edges = fresh_path(&mut out, &witness.u_i, "S", w.src(), true)?;
    for e in w.edges() {
        edges.extend(chains[e.index()].iter().copied());
    }
    edges.extend(fresh_path(&mut out, &witness.u_f, "T", w.tgt(), false)?);
    let start = if witness.u_i.is_empty() {
        w.src()
    } else {
        out.edge(edges[0]).src
    };
    let walk = Walk::from_edges(&out, start, edges)?;
    Ok((out, walk))
}

fn fresh_vertex_name(db: &Database, base: &str) -> String {
    let mut name = base.to_string();
    while db.vertex(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Fresh path spelling `word` that ends at `anchor` when `inbound`, and
/// leaves it otherwise.
fn fresh_path(
    db: &mut Database,
    word: &[String],
    tag: &str,
    anchor: VertexId,
    inbound: bool,
) -> Result<Vec<EdgeId>> {
    let mut nodes = Vec::with_capacity(word.len() + 1);
    for i in 0..word.len() {
        let name = fresh_vertex_name(db, &format!("{tag}{i}"));
        nodes.push(db.add_vertex(name));
    }
    if inbound {
        nodes.push(anchor);
    } else {
        nodes.insert(0, anchor);
    }
    let mut ids = Vec::with_capacity(word.len());
    for (i, x) in word.iter().enumerate() {
        ids.push(db.add_edge(format!("{tag}/{i}"), nodes[i], nodes[i + 1], [x.as_str()])?);
    }
    Ok(ids)
}

/// Expression over `{a, b, c, σ}` with no union under a star that encodes
/// `a` after numbering its letters `0..k` and its states `0..n` in sorted
/// order:
///
/// `(Σ_{i∈I} c^{i+1}) · (Π_{i∈Q} (c^{n-i} σ a^{i+1})* · Π_{(i,x,j)∈Δ} (a^{n-i} b^x c^{j+1})*)* · (Σ_{i∈F} a^{n-i})`
pub fn coding_expression_no_union(a: &Automaton) -> Result<Regex> {
    require_trim(a)?;
    let n = a.state_count();
    let letters: Vec<&String> = a.alphabet().iter().collect();
    let index = |x: &str| letters.iter().position(|l| *l == x).expect("transition letters are in the alphabet");
    let word = |parts: &[(&str, usize)]| -> Regex {
        let atoms = parts
            .iter()
            .flat_map(|&(s, k)| std::iter::repeat_n(s, k))
            .map(Regex::atom);
        Regex::concat_all(atoms).unwrap_or(Regex::Epsilon)
    };
    let head = sum(a.initial().iter().map(|&i| word(&[("c", i + 1)])).collect());
    let tail = sum(a.finals().iter().map(|&i| word(&[("a", n - i)])).collect());
    let mut blocks: Vec<Regex> = (0..n)
        .map(|i| word(&[("c", n - i), ("σ", 1), ("a", i + 1)]).star())
        .collect();
    for t in a.transitions() {
        blocks.push(word(&[("a", n - t.src), ("b", index(&t.label)), ("c", t.tgt + 1)]).star());
    }
    let middle = Regex::concat_all(blocks).expect("at least one state").star();
    Ok(head.concat(middle).concat(tail))
}

/// The word encoding matching [`coding_expression_no_union`]:
/// `c^{n+1} σ λ(x_1) ⋯ λ(x_k) a^{n+1}` with `λ(x) = a^{n+1} b^x c^{n+1} σ`.
pub fn encode_word_no_union<S: AsRef<str>>(a: &Automaton, u: &[S]) -> Result<Vec<String>> {
    let n = a.state_count();
    let letters: Vec<&String> = a.alphabet().iter().collect();
    let rep = |s: &str, k: usize| std::iter::repeat_n(s.to_string(), k);
    let mut out: Vec<String> = rep("c", n + 1).chain(rep("σ", 1)).collect();
    for x in u {
        let i = letters
            .iter()
            .position(|l| l.as_str() == x.as_ref())
            .ok_or_else(|| Error::UnknownLabel(x.as_ref().to_string()))?;
        out.extend(rep("a", n + 1).chain(rep("b", i)).chain(rep("c", n + 1)).chain(rep("σ", 1)));
    }
    out.extend(rep("a", n + 1));
    Ok(out)
}

/// Removes the first atom that is the left operand of a concatenation.
#[cfg(test)]
fn drop_one_atom(r: &Regex) -> Option<Regex> {
    match r {
        Expr::Concat(x, y) if matches!(**x, Expr::Atom(_)) => Some((**y).clone()),
        Expr::Concat(x, y) => drop_one_atom(x)
            .map(|x| x.concat((**y).clone()))
            .or_else(|| drop_one_atom(y).map(|y| (**x).clone().concat(y))),
        Expr::Union(x, y) => drop_one_atom(x)
            .map(|x| x.union((**y).clone()))
            .or_else(|| drop_one_atom(y).map(|y| (**x).clone().union(y))),
        Expr::Star(x) => drop_one_atom(x).map(Regex::star),
        Expr::Epsilon | Expr::Atom(_) => None,
    }
}
