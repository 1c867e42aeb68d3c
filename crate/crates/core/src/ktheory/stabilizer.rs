//! Stabilizer word sets at an idempotent: `G_e = {σ(s) : ss* = s*s = e}`,
//! together with a cross-check of the four equivalent ways to carve that
//! set out (via the section, via maximal elements, via dominated elements,
//! via exact stabilizers) and a group-closure verification.

use std::collections::BTreeSet;

use crate::grading::{Grading, GroupElem, MaximalSection};
use crate::semigroup::table::{Elem, InverseSemigroupTable};

/// The stabilizer word set at `base`, with its verification verdicts.
#[derive(Debug, Clone)]
pub struct StabilizerScan {
    pub base: Elem,
    /// Sorted, deduplicated words `σ(s)` over exact stabilizers of `base`.
    pub words: Vec<GroupElem>,
    /// Whether the word set is closed under the group product and inverse.
    pub closed_under_ops: bool,
    /// Whether all four definitions produced the same set (`None` when no
    /// section was available to evaluate the section-based definitions).
    pub definitions_agree: Option<bool>,
}

/// Definition by exact stabilizers: `{σ(s) : s ∈ scope, ss* = s*s = e}`.
fn words_exact(
    table: &InverseSemigroupTable,
    grading: &Grading,
    e: Elem,
    scope: &[Elem],
) -> BTreeSet<GroupElem> {
    let mut out = BTreeSet::new();
    for &s in scope {
        let st = table.star_of(s);
        if table.product(s, st) == e && table.product(st, s) == e {
            out.insert(grading.of(s).expect("nonzero element is graded").clone());
        }
    }
    out
}

/// Definition by dominated elements: `{σ(s) : s ∈ scope, e ≤ s*s, ses* = e}`.
fn words_dominated(
    table: &InverseSemigroupTable,
    grading: &Grading,
    e: Elem,
    scope: &[Elem],
) -> BTreeSet<GroupElem> {
    let mut out = BTreeSet::new();
    for &s in scope {
        let st = table.star_of(s);
        let ses = table.product(table.product(s, e), st);
        if table.leq(e, table.product(st, s)) && ses == e {
            out.insert(grading.of(s).expect("nonzero element is graded").clone());
        }
    }
    out
}

/// Definition through the section: `{g ∈ σ(scope) : e ≤ s_g*s_g, s_g e s_g* = e}`.
fn words_via_section(
    table: &InverseSemigroupTable,
    grading: &Grading,
    e: Elem,
    scope: &[Elem],
    section: &MaximalSection,
) -> Option<BTreeSet<GroupElem>> {
    let mut out = BTreeSet::new();
    for &s in scope {
        let g = grading.of(s).expect("nonzero element is graded");
        let s_g = section.section_of(g)?;
        let sg_star = table.star_of(s_g);
        if table.leq(e, table.product(sg_star, s_g))
            && table.product(table.product(s_g, e), sg_star) == e
        {
            out.insert(g.clone());
        }
    }
    Some(out)
}

/// Scans the stabilizer set at `e`, running all verifications.
///
/// `table` is the identity-adjoined table; `adjoined_one` is `Some(index)`
/// when the identity was freshly adjoined (it is then not part of the
/// original element scope); `section`, when available, enables the two
/// section-based definitions.
pub fn stabilizer_scan(
    table: &InverseSemigroupTable,
    adjoined_one: Option<Elem>,
    grading: &Grading,
    section: Option<&MaximalSection>,
    e: Elem,
    excluded: &[Elem],
) -> StabilizerScan {
    let zero = table.zero();
    let original_scope: Vec<Elem> = (0..table.n())
        .filter(|&s| s != zero && Some(s) != adjoined_one && !excluded.contains(&s))
        .collect();

    let exact = words_exact(table, grading, e, &original_scope);

    let definitions_agree = section.map(|section| {
        let dominated = words_dominated(table, grading, e, &original_scope);
        let maximal_scope: Vec<Elem> = table.maximal_elements_excluding(excluded);
        let from_maximals = words_dominated(table, grading, e, &maximal_scope);
        match words_via_section(table, grading, e, &original_scope, section) {
            Some(via_section) => {
                exact == dominated && exact == from_maximals && exact == via_section
            }
            None => false,
        }
    });

    let words: Vec<GroupElem> = exact.iter().cloned().collect();
    let group = grading.group();
    let word_set: BTreeSet<&GroupElem> = exact.iter().collect();
    let closed_under_ops = words.iter().all(|u| {
        word_set.contains(&group.inv(u))
            && words.iter().all(|v| word_set.contains(&group.mul(u, v)))
    });

    StabilizerScan { base: e, words, closed_under_ops, definitions_agree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic_group_with_zero, one_edge_graph_table};
    use crate::grading::{maximal_section, Grading, Group};

    #[test]
    fn graph_stabilizers_are_trivial() {
        let t = one_edge_graph_table();
        let g = Group::Free { alphabet: vec!["e".to_string()] };
        let id = g.identity();
        let e_w = g.parse_word("e").unwrap();
        let e_inv = g.parse_word("e^-1").unwrap();
        let grading = Grading::new(
            g,
            &t,
            vec![None, Some(id.clone()), Some(id.clone()), Some(id), Some(e_w), Some(e_inv)],
            &[],
        )
        .unwrap();

        let adjoined = t.adjoin_identity();
        let lifted = grading.extend_to_adjoined(&adjoined);
        let section = maximal_section(&adjoined.table, &lifted, &[]).unwrap();

        for e in [1, 2, 3] {
            let scan = stabilizer_scan(
                &adjoined.table,
                Some(adjoined.one),
                &lifted,
                Some(&section),
                e,
                &[],
            );
            assert_eq!(scan.words, vec![lifted.group().identity()], "e = {}", e);
            assert!(scan.closed_under_ops);
            assert_eq!(scan.definitions_agree, Some(true));
        }
    }

    #[test]
    fn group_with_zero_stabilizer_is_the_whole_group() {
        // S = ℤ/4 ∪ {0}, graded by itself into ℤ (injectively impossible) —
        // instead grade into the finite group ℤ/4 by the identity map.
        let t = cyclic_group_with_zero(4);
        let names: Vec<String> = (0..4).map(|i| format!("g{}", i)).collect();
        let mut matrix = vec![0u32; 16];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i * 4 + j] = ((i + j) % 4) as u32;
            }
        }
        let fg = Group::Finite(
            crate::grading::FiniteGroupTable::from_matrix(names, matrix).unwrap(),
        );
        let assignment = (0..t.n())
            .map(|s| if s == 0 { None } else { Some(GroupElem::Finite((s - 1) as u32)) })
            .collect();
        let grading = Grading::new(fg, &t, assignment, &[]).unwrap();

        let adjoined = t.adjoin_identity();
        assert!(adjoined.was_monoid);
        let lifted = grading.extend_to_adjoined(&adjoined);
        let section = maximal_section(&adjoined.table, &lifted, &[]).unwrap();
        let scan = stabilizer_scan(&adjoined.table, None, &lifted, Some(&section), 1, &[]);
        // every group element stabilizes the identity idempotent
        assert_eq!(scan.words.len(), 4);
        assert!(scan.closed_under_ops);
        assert_eq!(scan.definitions_agree, Some(true));
    }
}
