//! Small hand-checked semigroups used across the test suites and examples.
//!
//! Every table here was written out element by element and cross-checked
//! against the axiom validator; tests treat them as ground truth.

use crate::semigroup::InverseSemigroupTable;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Zero, two incomparable idempotents `a`, `b`, and their meet `c = ab`.
pub fn meet_semilattice() -> InverseSemigroupTable {
    let matrix = vec![
        0, 0, 0, 0, //
        0, 1, 3, 3, //
        0, 3, 2, 3, //
        0, 3, 3, 3,
    ];
    InverseSemigroupTable::from_dense(names(&["0", "a", "b", "c"]), matrix, vec![0, 1, 2, 3], 0)
        .unwrap()
}

/// A chain of `k` idempotents `e1 < e2 < … < ek` above zero; products are
/// meets, so `ei·ej = e_min(i,j)`.
pub fn chain_semilattice(k: usize) -> InverseSemigroupTable {
    let n = k + 1;
    let mut matrix = vec![0u32; n * n];
    for i in 1..n {
        for j in 1..n {
            matrix[i * n + j] = i.min(j) as u32;
        }
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..n).map(|i| format!("e{}", i)));
    let star = (0..n as u32).collect();
    InverseSemigroupTable::from_dense(labels, matrix, star, 0).unwrap()
}

/// The cyclic group of order `m` with a zero adjoined.  Element `i + 1`
/// (1-based) is the group element `i`; `g1` is the group identity.
pub fn cyclic_group_with_zero(m: usize) -> InverseSemigroupTable {
    assert!(m >= 1);
    let n = m + 1;
    let mut matrix = vec![0u32; n * n];
    let mut star = vec![0u32; n];
    for i in 0..m {
        star[i + 1] = ((m - i) % m + 1) as u32;
        for j in 0..m {
            matrix[(i + 1) * n + (j + 1)] = ((i + j) % m + 1) as u32;
        }
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((0..m).map(|i| format!("g{}", i)));
    InverseSemigroupTable::from_dense(labels, matrix, star, 0).unwrap()
}

/// The inverse semigroup of the one-edge graph `v --e--> w`: elements are
/// zero, the vertex idempotents `(v,v)` and `(w,w)`, the edge idempotent
/// `(e,e)` and the one-sided pairs `(e,v)` and `(v,e)`.
///
/// Conventions: `(μ,ν)` maps like `μ∘ν*`; `(e,v)·(v,e) = (e,e)`,
/// `(v,e)·(e,v) = (v,v)`, and `(e,e) ≤ (w,w)` is the only nontrivial order
/// relation.  Stars swap the coordinates.
pub fn one_edge_graph_table() -> InverseSemigroupTable {
    // indices: 0=zero, 1=(v,v), 2=(w,w), 3=(e,e), 4=(e,v), 5=(v,e)
    let matrix = vec![
        0, 0, 0, 0, 0, 0, //
        0, 1, 0, 0, 0, 5, //
        0, 0, 2, 3, 4, 0, //
        0, 0, 3, 3, 4, 0, //
        0, 4, 0, 0, 0, 3, //
        0, 0, 5, 5, 1, 0,
    ];
    InverseSemigroupTable::from_dense(
        names(&["0", "vv", "ww", "ee", "ev", "ve"]),
        matrix,
        vec![0, 1, 2, 3, 5, 4],
        0,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate::validate;

    #[test]
    fn all_fixtures_satisfy_the_axioms() {
        for (label, t) in [
            ("meet", meet_semilattice()),
            ("chain3", chain_semilattice(3)),
            ("chain1", chain_semilattice(1)),
            ("z4", cyclic_group_with_zero(4)),
            ("z1", cyclic_group_with_zero(1)),
            ("one_edge", one_edge_graph_table()),
        ] {
            let report = validate(&t);
            assert!(
                report.is_valid(),
                "{}: {:?}",
                label,
                report.violations.iter().map(|v| v.render(&t)).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn one_edge_order_and_maximals() {
        let t = one_edge_graph_table();
        // only nontrivial strict relation: ee ≤ ww
        assert!(t.leq(3, 2));
        assert!(!t.leq(2, 3));
        for s in 1..6 {
            for u in 1..6 {
                let expected = s == u || (s == 3 && u == 2);
                assert_eq!(t.leq(s, u), expected, "leq({}, {})", s, u);
            }
        }
        let max = t.maximal_elements_excluding(&[]);
        assert_eq!(max, vec![1, 2, 4, 5]);
        assert!(t.is_zero_f_inverse_excluding(&[]).holds());
    }

    #[test]
    fn cyclic_group_identity_found() {
        let t = cyclic_group_with_zero(5);
        assert_eq!(t.identity(), Some(1));
        assert_eq!(t.product(2, 5), 1); // g1·g4 = g0
        assert_eq!(t.star_of(2), 5);
    }
}
