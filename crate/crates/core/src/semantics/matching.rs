//! Polynomial-time walk membership under simple-run semantics for Glushkov
//! automata of expressions without concatenation under a star.
//!
//! After star-normal simplification, every starred subexpression is a sum
//! of atoms `(a₁ + ⋯ + aₙ)*`. For each subexpression `X` the algorithm
//! computes the set `S_X` of factors `(i, j)` of the walk that are
//! projections of simple runs of `Gl(X)`. Concatenation and union combine
//! these relations directly. For a starred atom sum, a factor `(ℓ, k)` is
//! accepted iff, for every vertex `v`, the positions `i ∈ (ℓ, k]` entering
//! `v` can be matched to pairwise distinct atoms labelling their edges: the
//! matched atom is the Glushkov state reached at that position, and
//! distinct atoms at the same vertex is exactly run simplicity.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Database, Walk};
use crate::regex::{star_normal_simplify, syntax_class, Expr, Regex};

/// `rel[i][j]`: the factor from vertex position `i` to `j` is accepted.
type Relation = Vec<Vec<bool>>;

/// Decides whether `w` is the projection of a simple run of `Gl(r)`.
pub fn walk_membership_matching(db: &Database, r: &Regex, w: &Walk) -> Result<bool> {
    let mut ops = 0;
    walk_membership_matching_counted(db, r, w, &mut ops)
}

/// As [`walk_membership_matching`], adding the number of elementary
/// operations performed to `ops`.
pub fn walk_membership_matching_counted(
    db: &Database,
    r: &Regex,
    w: &Walk,
    ops: &mut u64,
) -> Result<bool> {
    if syntax_class(r).concat_under_star {
        return Err(Error::Precondition(
            "the expression has a concatenation under a Kleene star".to_string(),
        ));
    }
    Walk::new(db, w.vertices().to_vec(), w.edges().to_vec())?;
    let r = star_normal_simplify(r)?;
    let rel = relation(db, &r, w, ops);
    Ok(rel[0][w.len()])
}

fn relation(db: &Database, x: &Regex, w: &Walk, ops: &mut u64) -> Relation {
    let m = w.len();
    let mut rel = vec![vec![false; m + 1]; m + 1];
    match x {
        Expr::Epsilon => {
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
                *ops += 1;
            }
        }
        Expr::Atom(a) => {
            for i in 0..m {
                *ops += 1;
                rel[i][i + 1] = db.edge(w.edges()[i]).has_label(a);
            }
        }
        Expr::Union(x, y) => {
            let rx = relation(db, x, w, ops);
            let ry = relation(db, y, w, ops);
            for i in 0..=m {
                for j in i..=m {
                    *ops += 1;
                    rel[i][j] = rx[i][j] || ry[i][j];
                }
            }
        }
        Expr::Concat(x, y) => {
            let rx = relation(db, x, w, ops);
            let ry = relation(db, y, w, ops);
            for i in 0..=m {
                for h in i..=m {
                    if !rx[i][h] {
                        continue;
                    }
                    for j in h..=m {
                        *ops += 1;
                        if ry[h][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Expr::Star(body) => {
            let atoms: Vec<&String> = body.atoms();
            for l in 0..=m {
                rel[l][l] = true;
                for k in l + 1..=m {
                    rel[l][k] = star_factor(db, &atoms, w, l, k, ops);
                }
            }
        }
    }
    rel
}

/// Whether the factor `(l, k)` is the projection of a simple run of the
/// Glushkov automaton of `(a₁ + ⋯ + aₙ)*`.
fn star_factor(db: &Database, atoms: &[&String], w: &Walk, l: usize, k: usize, ops: &mut u64) -> bool {
    // positions i in (l, k], grouped by the vertex the i-th edge enters
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in l + 1..=k {
        *ops += 1;
        groups.entry(w.vertices()[i].0).or_default().push(i);
    }
    groups.values().all(|positions| {
        if positions.len() > atoms.len() {
            return false;
        }
        let adjacent = |i: usize, j: usize| db.edge(w.edges()[i - 1]).has_label(atoms[j]);
        maximum_matching(positions, atoms.len(), &adjacent, ops) == positions.len()
    })
}

/// Size of a maximum matching between `left` and `0..right` by augmenting
/// paths.
fn maximum_matching(
    left: &[usize],
    right: usize,
    adjacent: &dyn Fn(usize, usize) -> bool,
    ops: &mut u64,
) -> usize {
    fn augment(
        u: usize,
        left: &[usize],
        right: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        owner: &mut [Option<usize>],
        visited: &mut [bool],
        ops: &mut u64,
    ) -> bool {
        for j in 0..right {
            *ops += 1;
            if visited[j] || !adjacent(left[u], j) {
                continue;
            }
            visited[j] = true;
            let free = match owner[j] {
                None => true,
                Some(other) => augment(other, left, right, adjacent, owner, visited, ops),
            };
            if free {
                owner[j] = Some(u);
                return true;
            }
        }
        false
    }

    let mut owner = vec![None; right];
    let mut size = 0;
    for u in 0..left.len() {
        let mut visited = vec![false; right];
        if augment(u, left, right, adjacent, &mut owner, &mut visited, ops) {
            size += 1;
        }
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{glushkov, parse_regex};
    use crate::semantics::runs::{count_runs, Budget, RunFilter};

    fn oracle(db: &Database, r: &Regex, w: &Walk) -> bool {
        count_runs(
            db,
            &glushkov(r),
            w,
            RunFilter::Simple,
            Some(1),
            &mut Budget::new(10_000_000),
        )
        .unwrap()
            > 0
    }

    #[test]
    fn simple_walks_always_match_a_starred_sum() {
        let db = Database::parse("edge e1 u v a\nedge e2 v w b\nedge e3 w x a\n").unwrap();
        let w = db.parse_walk("u -e1-> v -e2-> w -e3-> x").unwrap();
        let r = parse_regex("(a+b)*").unwrap();
        assert!(walk_membership_matching(&db, &r, &w).unwrap());
        assert!(oracle(&db, &r, &w));
    }

    #[test]
    fn cycles_traversed_twice() {
        let db = Database::parse("edge e1 u v a\nedge e2 v u a\n").unwrap();
        let once = db.parse_walk("u -e1-> v -e2-> u").unwrap();
        let twice = db.parse_walk("u -e1-> v -e2-> u -e1-> v -e2-> u").unwrap();
        let r = parse_regex("a*").unwrap();
        assert!(walk_membership_matching(&db, &r, &once).unwrap());
        assert!(!walk_membership_matching(&db, &r, &twice).unwrap());
        let rr = parse_regex("(a+a)*").unwrap();
        assert!(walk_membership_matching(&db, &rr, &twice).unwrap());
        for r in [&r, &rr] {
            for w in [&once, &twice] {
                assert_eq!(walk_membership_matching(&db, r, w).unwrap(), oracle(&db, r, w));
            }
        }
    }

    #[test]
    fn star_next_to_concatenation() {
        let db = Database::parse("edge l v v a\nedge m v v b\n").unwrap();
        let w = db.parse_walk("v -l-> v -l-> v -m-> v").unwrap();
        for text in ["a* a b", "a a* b", "a* b*", "(a + b)* + a a b", "a* (a+b)* b", "eps a a b"] {
            let r = parse_regex(text).unwrap();
            assert_eq!(
                walk_membership_matching(&db, &r, &w).unwrap(),
                oracle(&db, &r, &w),
                "{text}"
            );
        }
    }

    #[test]
    fn precondition() {
        let db = Database::parse("edge l v v a\n").unwrap();
        let w = db.parse_walk("v -l-> v").unwrap();
        assert!(matches!(
            walk_membership_matching(&db, &parse_regex("(a a)*").unwrap(), &w),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn matching_sizes() {
        let mut ops = 0;
        let adj = |i: usize, j: usize| matches!((i, j), (0, 0) | (0, 1) | (1, 0));
        assert_eq!(maximum_matching(&[0, 1], 2, &adj, &mut ops), 2);
        let adj = |_: usize, j: usize| j == 0;
        assert_eq!(maximum_matching(&[0, 1, 2], 3, &adj, &mut ops), 1);
        assert!(ops > 0);
    }
}
