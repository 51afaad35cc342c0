mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use rpq::enumerate::yen_enumerate;
use rpq::regex::{glushkov, syntax_class};
use rpq::sat::SatInstance;
use rpq::semantics::{evaluate, tuple_multiplicity, walk_multiplicity};
use rpq::topo::{coding_expression, coding_expression_no_union, encode_word, encode_word_no_union};
use rpq::{Database, Guards, Query, SemanticsMode, VertexId};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const RUN_MODES: [SemanticsMode; 3] = [
    SemanticsMode::SimpleRun,
    SemanticsMode::TrailRun,
    SemanticsMode::BindingTrail,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(seed in any::<u64>()) {
        let db = random_db(&mut rng(seed), 6, 10);
        let again = Database::parse(&db.to_text()).unwrap();
        prop_assert_eq!(again.to_text(), db.to_text());
        prop_assert_eq!(again.vertex_count(), db.vertex_count());
    }

    #[test]
    fn walk_text_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = random_db(&mut r, 5, 10);
        let w = random_walk(&mut r, &db, 8);
        prop_assert_eq!(db.parse_walk(&db.format_walk(&w)).unwrap(), w);
    }

    #[test]
    fn dimacs_round_trips(seed in any::<u64>()) {
        let inst = random_3sat(&mut rng(seed), 5, 6);
        prop_assert_eq!(SatInstance::parse_dimacs(&inst.to_dimacs()).unwrap(), inst);
    }

    #[test]
    fn yen_emits_distinct_simple_walks_by_length(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = random_db(&mut r, 6, 12);
        let s = VertexId(r.gen_range(0..db.vertex_count()));
        let t = VertexId(r.gen_range(0..db.vertex_count()));
        let walks: Vec<_> = yen_enumerate(&db, s, t).unwrap().collect();
        for pair in walks.windows(2) {
            prop_assert!(pair[0].len() <= pair[1].len());
        }
        let mut sorted = walks.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), walks.len());
        for w in &walks {
            prop_assert!(w.is_simple());
            prop_assert_eq!(w.endpoints(), (s, t));
        }
    }

    #[test]
    fn run_answers_match_and_count_consistently(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = random_db(&mut r, 4, 5);
        let q = Query::Regex(random_regex(&mut r, 3));
        let a = q.automaton().into_owned();
        let s = VertexId(r.gen_range(0..db.vertex_count()));
        let t = VertexId(r.gen_range(0..db.vertex_count()));
        let g = Guards::default();
        for mode in RUN_MODES {
            if mode == SemanticsMode::TrailRun
                && rpq::RunDatabase::build(&db, &a).product().edge_count() > 9
            {
                continue;
            }
            let bag: Vec<_> = evaluate(&db, &q, mode, Some((s, t)), &g).unwrap().collect();
            let mut total = 0;
            for (w, m) in &bag {
                prop_assert!(matches(&db, &a, w));
                prop_assert_eq!(walk_multiplicity(&db, &q, w, mode, &g).unwrap(), *m);
                total += m;
            }
            prop_assert_eq!(tuple_multiplicity(&db, &q, s, t, mode, &g).unwrap(), total);
        }
    }

    #[test]
    fn filtered_semantics_refine_walk_semantics(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = random_db(&mut r, 4, 6);
        let q = Query::Automaton(random_automaton(&mut r, 3, 5));
        let g = Guards::default();
        let simple: Vec<_> = evaluate(&db, &q, SemanticsMode::SimpleWalk, None, &g).unwrap().collect();
        let simple_runs: Vec<_> = evaluate(&db, &q, SemanticsMode::SimpleRun, None, &g).unwrap().collect();
        for (w, _) in &simple {
            prop_assert!(w.is_simple());
            // a simple walk carries only simple runs
            prop_assert!(simple_runs.iter().any(|(x, _)| x == w));
        }
        let trails: Vec<_> = evaluate(&db, &q, SemanticsMode::Trail, None, &g).unwrap().collect();
        for (w, _) in &trails {
            prop_assert!(w.is_trail());
        }
    }

    #[test]
    fn encoded_words_have_the_expected_length(seed in any::<u64>(), word in proptest::collection::vec(0usize..3, 0..6)) {
        let a = random_trim_automaton(&mut rng(seed), 4, 6, 3);
        let (r, w) = coding_expression(&a).unwrap();
        prop_assert_eq!(r.star_count(), 1);
        let letters: Vec<String> = a.alphabet().iter().cloned().collect();
        let u: Vec<&String> = word.iter().map(|i| &letters[i % letters.len()]).collect();
        let code = encode_word(&w, &u).unwrap();
        prop_assert_eq!(code.len(), 1 + u.len() * (w.m + 2));
        prop_assert_eq!(&code[0], &w.sigma);
    }

    #[test]
    fn no_union_coding_preserves_acceptance(seed in any::<u64>()) {
        let a = random_trim_automaton(&mut rng(seed), 3, 4, 2);
        let r = coding_expression_no_union(&a).unwrap();
        prop_assert!(!syntax_class(&r).union_under_star);
        let mut b = glushkov(&r);
        for x in ["a", "b", "c", "σ"] {
            b.add_symbol(x);
        }
        let letters: Vec<String> = a.alphabet().iter().cloned().collect();
        for u in words_up_to(&letters, 3) {
            prop_assert_eq!(a.accepts(&u).unwrap(), b.accepts(&encode_word_no_union(&a, &u).unwrap()).unwrap());
        }
    }
}
