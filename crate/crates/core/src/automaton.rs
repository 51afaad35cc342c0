//! Nondeterministic finite automata without ε-transitions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: usize,
    pub label: String,
    pub tgt: usize,
}

/// An automaton `⟨Σ, Q, Δ, I, F⟩`. States are indices into a name table;
/// transitions are kept sorted by `(src, label, tgt)` and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Automaton {
    alphabet: BTreeSet<String>,
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    transitions: Vec<Transition>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
}

impl Automaton {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    /// Transitions in canonical `(src, label, tgt)` order.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initial.contains(&q)
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn add_symbol(&mut self, symbol: impl Into<String>) {
        self.alphabet.insert(symbol.into());
    }

    /// Declares a state, returning the existing index for a known name.
    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&q) = self.state_index.get(&name) {
            return q;
        }
        let q = self.states.len();
        self.state_index.insert(name.clone(), q);
        self.states.push(name);
        q
    }

    pub fn set_initial(&mut self, q: usize) {
        assert!(q < self.states.len(), "state index out of range");
        self.initial.insert(q);
    }

    pub fn set_final(&mut self, q: usize) {
        assert!(q < self.states.len(), "state index out of range");
        self.finals.insert(q);
    }

    /// Adds a transition; its label joins the alphabet.
    pub fn add_transition(&mut self, src: usize, label: impl Into<String>, tgt: usize) {
        assert!(
            src < self.states.len() && tgt < self.states.len(),
            "state index out of range"
        );
        let t = Transition {
            src,
            label: label.into(),
            tgt,
        };
        if let Err(pos) = self.transitions.binary_search(&t) {
            self.alphabet.insert(t.label.clone());
            self.transitions.insert(pos, t);
        }
    }

    /// Transitions leaving `q`, in canonical order.
    pub fn transitions_from(&self, q: usize) -> &[Transition] {
        let lo = self.transitions.partition_point(|t| t.src < q);
        let hi = self.transitions.partition_point(|t| t.src <= q);
        &self.transitions[lo..hi]
    }

    /// Subset simulation of the automaton on `word`.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        let mut current: BTreeSet<usize> = self.initial.clone();
        for letter in word {
            let letter = letter.as_ref();
            if !self.alphabet.contains(letter) {
                return Err(Error::UnknownLabel(letter.to_string()));
            }
            let mut next = BTreeSet::new();
            for &q in &current {
                for t in self.transitions_from(q) {
                    if t.label == letter {
                        next.insert(t.tgt);
                    }
                }
            }
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.iter().any(|q| self.finals.contains(q)))
    }

    /// States reachable from an initial state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        for &q in &self.initial {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for t in self.transitions_from(q) {
                if !seen[t.tgt] {
                    seen[t.tgt] = true;
                    queue.push_back(t.tgt);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            preds[t.tgt].push(t.src);
        }
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = self.finals.iter().copied().collect();
        for &q in &self.finals {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub fn is_trim(&self) -> bool {
        let acc = self.accessible();
        let co = self.coaccessible();
        acc.iter().zip(&co).all(|(a, c)| *a && *c)
    }

    /// Keeps the states that are both accessible and coaccessible, in their
    /// original relative order. The alphabet is unchanged.
    pub fn trim(&self) -> Automaton {
        let acc = self.accessible();
        let co = self.coaccessible();
        let mut out = Automaton {
            alphabet: self.alphabet.clone(),
            ..Automaton::default()
        };
        let mut remap = vec![None; self.states.len()];
        for q in 0..self.states.len() {
            if acc[q] && co[q] {
                remap[q] = Some(out.add_state(self.states[q].clone()));
            }
        }
        for t in &self.transitions {
            if let (Some(s), Some(d)) = (remap[t.src], remap[t.tgt]) {
                out.add_transition(s, t.label.clone(), d);
            }
        }
        for &q in &self.initial {
            if let Some(q) = remap[q] {
                out.initial.insert(q);
            }
        }
        for &q in &self.finals {
            if let Some(q) = remap[q] {
                out.finals.insert(q);
            }
        }
        out
    }

    /// Equality up to state names: same number of states, and identical
    /// transitions, initial and final sets on state indices.
    pub fn same_shape(&self, other: &Automaton) -> bool {
        self.states.len() == other.states.len()
            && self.transitions == other.transitions
            && self.initial == other.initial
            && self.finals == other.finals
    }

    /// Parses the automaton format:
    ///
    /// ```text
    /// alphabet Road Ferry Gas   # optional
    /// state 0
    /// initial 0
    /// final 1
    /// trans 0 Gas 1
    /// ```
    ///
    /// As for graphs, states must be declared when any `state` line is
    /// present and are introduced on first mention otherwise.
    pub fn parse(text: &str) -> Result<Automaton> {
        enum Rec {
            Initial(String),
            Final(String),
            Trans(String, String, String),
        }
        let mut alphabet: Option<BTreeSet<String>> = None;
        let mut declared: Vec<String> = Vec::new();
        let mut records: Vec<(usize, Rec)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match (tokens[0], tokens.len()) {
                ("alphabet", _) => {
                    if alphabet.is_some() {
                        return Err(Error::syntax(line_no, "duplicate alphabet line"));
                    }
                    alphabet = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
                }
                ("state", 2) => {
                    if declared.iter().any(|s| s == tokens[1]) {
                        return Err(Error::syntax(
                            line_no,
                            format!("duplicate state `{}`", tokens[1]),
                        ));
                    }
                    declared.push(tokens[1].to_string());
                }
                ("initial", 2) => records.push((line_no, Rec::Initial(tokens[1].into()))),
                ("final", 2) => records.push((line_no, Rec::Final(tokens[1].into()))),
                ("trans", 4) => records.push((
                    line_no,
                    Rec::Trans(tokens[1].into(), tokens[2].into(), tokens[3].into()),
                )),
                ("state" | "initial" | "final" | "trans", _) => {
                    return Err(Error::syntax(
                        line_no,
                        format!("wrong number of fields for `{}`", tokens[0]),
                    ));
                }
                (other, _) => {
                    return Err(Error::syntax(line_no, format!("unknown record `{other}`")));
                }
            }
        }

        let mut a = Automaton::new();
        if let Some(symbols) = &alphabet {
            for s in symbols {
                a.add_symbol(s.clone());
            }
        }
        for name in &declared {
            a.add_state(name.clone());
        }
        let strict = !declared.is_empty();
        let state = |a: &mut Automaton, line_no: usize, name: &str| -> Result<usize> {
            match a.state(name) {
                Some(q) => Ok(q),
                None if strict => Err(Error::syntax(
                    line_no,
                    format!("undeclared state `{name}`"),
                )),
                None => Ok(a.add_state(name)),
            }
        };
        for (line_no, rec) in records {
            match rec {
                Rec::Initial(q) => {
                    let q = state(&mut a, line_no, &q)?;
                    a.set_initial(q);
                }
                Rec::Final(q) => {
                    let q = state(&mut a, line_no, &q)?;
                    a.set_final(q);
                }
                Rec::Trans(s, label, t) => {
                    if let Some(symbols) = &alphabet {
                        if !symbols.contains(&label) {
                            return Err(Error::syntax(
                                line_no,
                                format!("unknown label `{label}`"),
                            ));
                        }
                    }
                    let s = state(&mut a, line_no, &s)?;
                    let t = state(&mut a, line_no, &t)?;
                    a.add_transition(s, label, t);
                }
            }
        }
        Ok(a)
    }

    /// Serializes in the automaton format; [`Automaton::parse`] reads it back
    /// to an equal automaton.
    pub fn to_text(&self) -> String {
        let mut out = String::from("alphabet");
        for s in &self.alphabet {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        for q in &self.states {
            let _ = writeln!(out, "state {q}");
        }
        for &q in &self.initial {
            let _ = writeln!(out, "initial {}", self.states[q]);
        }
        for &q in &self.finals {
            let _ = writeln!(out, "final {}", self.states[q]);
        }
        for t in &self.transitions {
            let _ = writeln!(
                out,
                "trans {} {} {}",
                self.states[t.src], t.label, self.states[t.tgt]
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q2: &str = include_str!("../data/q2.auto");

    fn words(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in alphabet {
                    let mut w2 = w.clone();
                    w2.push(a.to_string());
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Explores every computation labelled by `word`, one letter at a time.
    fn brute_accepts(a: &Automaton, word: &[String]) -> bool {
        fn go(a: &Automaton, q: usize, word: &[String]) -> bool {
            match word.split_first() {
                None => a.is_final(q),
                Some((x, rest)) => a
                    .transitions()
                    .iter()
                    .any(|t| t.src == q && &t.label == x && go(a, t.tgt, rest)),
            }
        }
        a.initial().iter().any(|&i| go(a, i, word))
    }

    #[test]
    fn running_example_words() {
        let a = Automaton::parse(Q2).unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.transitions().len(), 5);
        assert!(a.accepts(&["Road", "Gas", "Road"]).unwrap());
        assert!(!a.accepts(&["Road", "Road"]).unwrap());
        assert!(a.accepts(&["Gas"]).unwrap());
        assert!(matches!(
            a.accepts(&["Boat"]),
            Err(Error::UnknownLabel(l)) if l == "Boat"
        ));
    }

    #[test]
    fn empty_word() {
        let mut a = Automaton::new();
        let q = a.add_state("q");
        a.set_initial(q);
        a.set_final(q);
        assert!(a.accepts::<&str>(&[]).unwrap());
        let a = Automaton::parse(Q2).unwrap();
        assert!(!a.accepts::<&str>(&[]).unwrap());
    }

    #[test]
    fn trim_removes_dead_and_isolated_states() {
        let a = Automaton::parse(
            "state i\nstate q\nstate f\nstate d\nstate lone\ninitial i\nfinal f\n\
             trans i a q\ntrans q b f\ntrans i a d\n",
        )
        .unwrap();
        assert!(!a.is_trim());
        let t = a.trim();
        assert_eq!(t.state_names(), ["i", "q", "f"]);
        assert!(t.is_trim());
        for w in words(&["a", "b"], 4) {
            assert_eq!(a.accepts(&w).unwrap(), t.accepts(&w).unwrap(), "{w:?}");
        }
        assert_eq!(t.trim(), t);
    }

    #[test]
    fn trim_of_empty_language() {
        let a = Automaton::parse("state p\ninitial p\ntrans p a p\n").unwrap();
        let t = a.trim();
        assert_eq!(t.state_count(), 0);
        assert!(!t.accepts(&["a"]).unwrap());
    }

    #[test]
    fn transitions_are_sorted_and_deduplicated() {
        let mut a = Automaton::new();
        let p = a.add_state("p");
        let q = a.add_state("q");
        a.add_transition(q, "b", p);
        a.add_transition(p, "b", q);
        a.add_transition(p, "a", q);
        a.add_transition(p, "b", q);
        let labels: Vec<(usize, &str, usize)> = a
            .transitions()
            .iter()
            .map(|t| (t.src, t.label.as_str(), t.tgt))
            .collect();
        assert_eq!(labels, [(0, "a", 1), (0, "b", 1), (1, "b", 0)]);
        assert_eq!(a.transitions_from(q).len(), 1);
    }

    #[test]
    fn round_trip_text() {
        let a = Automaton::parse(Q2).unwrap();
        assert_eq!(Automaton::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            Automaton::parse("state a\ntrans a x b\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(Automaton::parse("trans a x\n").is_err());
        assert!(Automaton::parse("alphabet x\ntrans a y b\n").is_err());
        assert!(Automaton::parse("bogus\n").is_err());
    }

    fn random_automaton(seed: u64) -> Automaton {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Automaton::new();
        let n = rng.gen_range(1..=6);
        for q in 0..n {
            a.add_state(q.to_string());
        }
        a.add_symbol("a");
        a.add_symbol("b");
        for _ in 0..rng.gen_range(0..10) {
            let label = if rng.gen_bool(0.5) { "a" } else { "b" };
            a.add_transition(rng.gen_range(0..n), label, rng.gen_range(0..n));
        }
        for q in 0..n {
            if rng.gen_bool(0.3) {
                a.set_initial(q);
            }
            if rng.gen_bool(0.3) {
                a.set_final(q);
            }
        }
        a
    }

    #[test]
    fn accepts_matches_computation_search() {
        for seed in 0..200 {
            let a = random_automaton(seed);
            let t = a.trim();
            for w in words(&["a", "b"], 6) {
                let expected = brute_accepts(&a, &w);
                assert_eq!(a.accepts(&w).unwrap(), expected, "seed {seed}, {w:?}");
                assert_eq!(t.accepts(&w).unwrap(), expected, "trim, seed {seed}");
            }
        }
    }
}
