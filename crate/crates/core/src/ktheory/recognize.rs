//! Recognition of the group generated by a set of words, limited to cases
//! that can be certified: identity-only sets, subgroups of ℤⁿ (exact
//! integer rank), Nielsen-reduced free bases, and subgroups of finite
//! groups.  Anything else is reported unresolved — never guessed.

use std::collections::BTreeSet;

use crate::grading::{Group, GroupElem};

/// What the generated subgroup provably is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Trivial,
    /// ℤ^rank (rank ≥ 1).
    FreeAbelian { rank: usize },
    /// Free group of rank ≥ 2 on a certified Nielsen-reduced basis.
    FreeOfRank { rank: usize },
    /// Subgroup of a finite group: its order and conjugacy-class count.
    Finite { order: usize, classes: usize },
    /// Generators the recognizer cannot certify; rendered for display.
    Unresolved { generators: Vec<String> },
}

impl GroupDescriptor {
    /// Canonical string used for K-table lookup and reports.
    pub fn canonical(&self) -> String {
        match self {
            GroupDescriptor::Trivial => "trivial".to_string(),
            GroupDescriptor::FreeAbelian { rank } => format!("Z^{}", rank),
            GroupDescriptor::FreeOfRank { rank } => format!("F_{}", rank),
            GroupDescriptor::Finite { order, classes } => {
                format!("finite(order={},classes={})", order, classes)
            }
            GroupDescriptor::Unresolved { generators } => {
                format!("unresolved({})", generators.join(", "))
            }
        }
    }

    pub fn is_unresolved(&self) -> bool {
        matches!(self, GroupDescriptor::Unresolved { .. })
    }
}

/// Rank of the subgroup of ℤⁿ spanned by integer vectors, by fraction-free
/// (Bareiss) elimination.  `None` on (extremely unlikely) i128 overflow.
fn integer_rank(rows: &[Vec<i64>]) -> Option<usize> {
    if rows.is_empty() {
        return Some(0);
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0usize;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for r in rank + 1..m.len() {
            for c in 0..cols {
                if c == col {
                    continue;
                }
                let a = m[r][c].checked_mul(pivot)?;
                let b = m[r][col].checked_mul(m[rank][c])?;
                m[r][c] = a.checked_sub(b)? / prev;
            }
            m[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn word_len(w: &GroupElem) -> usize {
    match w {
        GroupElem::Free(letters) => letters.len(),
        _ => unreachable!("Nielsen checks apply to free words"),
    }
}

/// Nielsen conditions on a candidate basis `basis` (no identity, no two
/// elements inverse or equal).  If they hold, the set freely generates a
/// free group of rank `basis.len()`.
fn is_nielsen_reduced(group: &Group, basis: &[GroupElem]) -> bool {
    let mut symmetrized: Vec<GroupElem> = Vec::with_capacity(basis.len() * 2);
    for w in basis {
        symmetrized.push(w.clone());
        symmetrized.push(group.inv(w));
    }
    let id = group.identity();
    // N0: no empty word
    if symmetrized.iter().any(|w| *w == id) {
        return false;
    }
    // N1: |uv| ≥ max(|u|, |v|) whenever uv ≠ 1
    for u in &symmetrized {
        for v in &symmetrized {
            let uv = group.mul(u, v);
            if uv == id {
                continue;
            }
            if word_len(&uv) < word_len(u).max(word_len(v)) {
                return false;
            }
        }
    }
    // N2: |uvw| > |u| − |v| + |w| whenever uv ≠ 1 and vw ≠ 1
    for u in &symmetrized {
        for v in &symmetrized {
            if group.mul(u, v) == id {
                continue;
            }
            for w in &symmetrized {
                if group.mul(v, w) == id {
                    continue;
                }
                let uvw = group.mul(&group.mul(u, v), w);
                let bound = word_len(u) as i64 - word_len(v) as i64 + word_len(w) as i64;
                if (word_len(&uvw) as i64) <= bound {
                    return false;
                }
            }
        }
    }
    true
}

/// Order and conjugacy-class count of the subgroup generated inside a
/// finite group.
fn finite_subgroup(group: &Group, gens: &[GroupElem]) -> (usize, usize) {
    let mut elems: BTreeSet<GroupElem> = BTreeSet::new();
    elems.insert(group.identity());
    let mut frontier: Vec<GroupElem> = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            for next in [group.mul(&x, g), group.mul(&x, &group.inv(g))] {
                if !elems.contains(&next) {
                    elems.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    let members: Vec<GroupElem> = elems.iter().cloned().collect();
    let mut assigned = vec![false; members.len()];
    let mut classes = 0usize;
    for i in 0..members.len() {
        if assigned[i] {
            continue;
        }
        classes += 1;
        for g in &members {
            let conj = group.mul(&group.mul(g, &members[i]), &group.inv(g));
            if let Ok(pos) = members.binary_search(&conj) {
                assigned[pos] = true;
            }
        }
    }
    (members.len(), classes)
}

/// Certifies the subgroup generated by `gens` within `group`, or reports it
/// unresolved.
pub fn recognize(group: &Group, gens: &[GroupElem]) -> GroupDescriptor {
    let id = group.identity();
    let mut nontrivial: Vec<GroupElem> =
        gens.iter().filter(|w| **w != id).cloned().collect();
    nontrivial.sort();
    nontrivial.dedup();
    if nontrivial.is_empty() {
        return GroupDescriptor::Trivial;
    }

    match group {
        Group::ZPow { .. } => {
            let rows: Vec<Vec<i64>> = nontrivial
                .iter()
                .map(|w| match w {
                    GroupElem::Vector(v) => v.clone(),
                    _ => unreachable!("vector group holds vector elements"),
                })
                .collect();
            match integer_rank(&rows) {
                Some(rank) if rank > 0 => GroupDescriptor::FreeAbelian { rank },
                Some(_) => GroupDescriptor::Trivial,
                None => GroupDescriptor::Unresolved {
                    generators: nontrivial.iter().map(|w| group.format_elem(w)).collect(),
                },
            }
        }
        Group::Free { .. } => {
            // identify w with w⁻¹, keeping the lesser representative
            let mut basis: Vec<GroupElem> = nontrivial
                .iter()
                .map(|w| {
                    let inv = group.inv(w);
                    if inv < *w {
                        inv
                    } else {
                        w.clone()
                    }
                })
                .collect();
            basis.sort();
            basis.dedup();
            if is_nielsen_reduced(group, &basis) {
                match basis.len() {
                    1 => GroupDescriptor::FreeAbelian { rank: 1 },
                    rank => GroupDescriptor::FreeOfRank { rank },
                }
            } else {
                GroupDescriptor::Unresolved {
                    generators: basis.iter().map(|w| group.format_elem(w)).collect(),
                }
            }
        }
        Group::Finite(_) => {
            let (order, classes) = finite_subgroup(group, &nontrivial);
            if order == 1 {
                GroupDescriptor::Trivial
            } else {
                GroupDescriptor::Finite { order, classes }
            }
        }
    }
}
