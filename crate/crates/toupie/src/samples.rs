//! Small toupie algebras used throughout the tests and the documentation.

use std::collections::BTreeMap;

use crate::algebra::{MonomialWindow, QuiverSpec, ToupieAlgebra};
use crate::rat::{rat, Rat};

fn linear_row(entries: &[(usize, Rat)]) -> BTreeMap<usize, Rat> {
    entries.iter().cloned().collect()
}

/// The golden test instance: six branches of lengths (1, 1, 2, 8, 2, 2), five
/// overlapping length-4 windows on the long branch, and one linear relation
/// identifying the two final branches. Invariants (a, l, m, n, D, r) =
/// (2, 1, 1, 2, 4, 2).
pub fn golden_example() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![1, 1, 2, 8, 2, 2],
        ..Default::default()
    };
    for start in 0..=4 {
        spec.monomial_relations.push(MonomialWindow {
            branch: 3,
            start,
            length: 4,
        });
    }
    spec.linear_relations
        .push(linear_row(&[(4, rat(1)), (5, rat(-1))]));
    ToupieAlgebra::build(spec).expect("golden instance is valid")
}

/// `a` parallel arrows from source to sink.
pub fn kronecker(a: usize) -> ToupieAlgebra {
    ToupieAlgebra::build(QuiverSpec {
        branch_lengths: vec![1; a],
        ..Default::default()
    })
    .expect("kronecker instance is valid")
}

/// Two length-2 branches identified by one linear relation (a commutative
/// square); abelian case with a = 0.
pub fn commutative_square() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![2, 2],
        ..Default::default()
    };
    spec.linear_relations
        .push(linear_row(&[(0, rat(1)), (1, rat(-1))]));
    ToupieAlgebra::build(spec).expect("commutative square is valid")
}

/// Three length-2 branches with one linear relation summing them, the shape
/// of a canonical algebra relation.
pub fn canonical_like() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![2, 2, 2],
        ..Default::default()
    };
    spec.linear_relations
        .push(linear_row(&[(0, rat(1)), (1, rat(1)), (2, rat(1))]));
    ToupieAlgebra::build(spec).expect("canonical-like instance is valid")
}

/// One arrow plus one relation-free branch of length 2.
pub fn arrow_and_free_branch() -> ToupieAlgebra {
    ToupieAlgebra::build(QuiverSpec {
        branch_lengths: vec![1, 2],
        ..Default::default()
    })
    .expect("instance is valid")
}

/// One arrow plus a length-2 branch killed by a whole-branch monomial
/// relation; the relation runs from source to sink.
pub fn arrow_and_dead_branch() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![1, 2],
        ..Default::default()
    };
    spec.monomial_relations.push(MonomialWindow {
        branch: 1,
        start: 0,
        length: 2,
    });
    ToupieAlgebra::build(spec).expect("instance is valid")
}

/// Two arrows plus a length-3 branch with two overlapping quadratic windows;
/// the full branch is a 2-ambiguity, so HH^3 is nonzero.
pub fn two_arrows_quadratic_branch() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![1, 1, 3],
        ..Default::default()
    };
    spec.monomial_relations.push(MonomialWindow {
        branch: 2,
        start: 0,
        length: 2,
    });
    spec.monomial_relations.push(MonomialWindow {
        branch: 2,
        start: 1,
        length: 2,
    });
    ToupieAlgebra::build(spec).expect("instance is valid")
}

/// Two arrows and a linear pair: a = 2, D = 3, m = 0, r = 1.
pub fn two_arrows_pair() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![1, 1, 2, 2],
        ..Default::default()
    };
    spec.linear_relations
        .push(linear_row(&[(2, rat(1)), (3, rat(-1))]));
    ToupieAlgebra::build(spec).expect("instance is valid")
}

/// Two arrows, one free length-2 branch, and a linear pair: a = 2, D = 4,
/// m = 0, r = 2.
pub fn two_arrows_free_and_pair() -> ToupieAlgebra {
    let mut spec = QuiverSpec {
        branch_lengths: vec![1, 1, 2, 2, 2],
        ..Default::default()
    };
    spec.linear_relations
        .push(linear_row(&[(3, rat(1)), (4, rat(-1))]));
    ToupieAlgebra::build(spec).expect("instance is valid")
}

/// Every sample instance, for suite-wide property checks.
pub fn all() -> Vec<ToupieAlgebra> {
    vec![
        golden_example(),
        kronecker(1),
        kronecker(2),
        kronecker(3),
        commutative_square(),
        canonical_like(),
        arrow_and_free_branch(),
        arrow_and_dead_branch(),
        two_arrows_quadratic_branch(),
        two_arrows_pair(),
        two_arrows_free_and_pair(),
    ]
}
