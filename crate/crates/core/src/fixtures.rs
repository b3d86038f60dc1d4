//! Small named complexes and posets used by tests, examples, and the CLI.

use crate::complex::{Chain, SemisimplicialSet};
use crate::poset::FinitePoset;

fn padded(mut counts: Vec<usize>, mut faces: Vec<Vec<Vec<usize>>>, max_dim: usize) -> SemisimplicialSet {
    counts.resize(max_dim + 1, 0);
    faces.resize(max_dim + 1, Vec::new());
    counts.truncate(max_dim + 1);
    faces.truncate(max_dim + 1);
    let labels = Some(vec![vec!["a".into(), "b".into(), "c".into()], vec!["ab".into(), "bc".into(), "ac".into()], vec!["abc".into()]]);
    SemisimplicialSet::new(counts, faces, labels).expect("fixture is valid")
}

/// Vertices a, b, c and edges ab, bc, ac, truncated at `max_dim >= 1` (higher levels empty).
pub fn hollow_triangle(max_dim: usize) -> SemisimplicialSet {
    padded(vec![3, 3], vec![vec![], vec![vec![1, 0], vec![2, 1], vec![2, 0]]], max_dim.max(1))
}

/// The hollow triangle plus the 2-simplex abc.
pub fn filled_triangle(max_dim: usize) -> SemisimplicialSet {
    padded(vec![3, 3, 1], vec![vec![], vec![vec![1, 0], vec![2, 1], vec![2, 0]], vec![vec![1, 2, 0]]], max_dim.max(2))
}

/// ab + bc - ac.
pub fn triangle_cycle() -> Chain {
    Chain::from_ints(1, &[(0, 1), (1, 1), (2, -1)])
}

fn labelled(names: &[&str], rel: &[(usize, usize)]) -> FinitePoset {
    FinitePoset::from_relations(names.iter().map(|s| s.to_string()).collect(), rel).expect("fixture is a poset")
}

/// {a, b} with no relations.
pub fn antichain2() -> FinitePoset {
    labelled(&["a", "b"], &[])
}

/// a ⪯ c, b ⪯ c.
pub fn v_poset() -> FinitePoset {
    labelled(&["a", "b", "c"], &[(0, 2), (1, 2)])
}

/// a, b below both c and d, with c and d incomparable; its order complex is a 4-cycle.
pub fn square_poset() -> FinitePoset {
    labelled(&["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 2), (1, 3)])
}

/// 0 ⪯ 1 ⪯ ... ⪯ n-1.
pub fn chain(n: usize) -> FinitePoset {
    let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::from_pairs(n, &rel).expect("chains are posets")
}

/// Two vertices a and b, nothing else.
pub fn antichain_complex() -> SemisimplicialSet {
    SemisimplicialSet::new(vec![2], vec![vec![]], Some(vec![vec!["a".into(), "b".into()]])).expect("fixture is valid")
}
