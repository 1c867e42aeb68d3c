//! The connecting relation on nonzero idempotents: `e ≈ f` when some `s`
//! has `s*s = e` and `ss* = f`.  One pass over the nonzero elements finds
//! every edge; a union–find collapses them into classes, keeping the
//! witnesses that first merged each pair of components.

use std::collections::HashMap;

use crate::semigroup::table::{Elem, InverseSemigroupTable};

/// A witnessed edge `from ≈ to` via `via`: `via*·via = from`, `via·via* = to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub from: Elem,
    pub to: Elem,
    pub via: Elem,
}

/// One ≈-class: its members (ascending), the least member as representative,
/// and a spanning tree of witnesses.
#[derive(Debug, Clone)]
pub struct ApproxClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
    pub witnesses: Vec<Witness>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true when the merge joined two distinct components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // smaller index wins, so representatives are least members
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// First `s ∈ S^×` (ascending) with `s*s = e` and `ss* = f`, if any.
pub fn approx_witness(
    table: &InverseSemigroupTable,
    e: Elem,
    f: Elem,
    excluded: &[Elem],
) -> Option<Elem> {
    let zero = table.zero();
    (0..table.n()).find(|&s| {
        s != zero
            && !excluded.contains(&s)
            && table.product(table.star_of(s), s) == e
            && table.product(s, table.star_of(s)) == f
    })
}

/// Partitions the nonzero idempotents into ≈-classes.
///
/// Every nonzero element contributes the edge `s*s ≈ ss*`; scanning elements
/// in ascending order makes the recorded spanning-tree witnesses (and hence
/// the whole partition output) deterministic.
pub fn equiv_classes(table: &InverseSemigroupTable, excluded: &[Elem]) -> Vec<ApproxClass> {
    let idems = table.nonzero_idempotents_excluding(excluded);
    let idx: HashMap<Elem, usize> = idems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut dsu = Dsu::new(idems.len());
    let mut tree_edges: Vec<Witness> = Vec::new();

    let zero = table.zero();
    for s in 0..table.n() {
        if s == zero || excluded.contains(&s) {
            continue;
        }
        let st = table.star_of(s);
        let from = table.product(st, s);
        let to = table.product(s, st);
        let (Some(&fi), Some(&ti)) = (idx.get(&from), idx.get(&to)) else {
            // endpoints outside scope (excluded stand-ins) carry no edge
            continue;
        };
        if dsu.union(fi, ti) {
            tree_edges.push(Witness { from, to, via: s });
        }
    }

    let mut members_by_root: HashMap<usize, Vec<Elem>> = HashMap::new();
    for (i, &e) in idems.iter().enumerate() {
        members_by_root.entry(dsu.find(i)).or_default().push(e);
    }
    let mut classes: Vec<ApproxClass> = members_by_root
        .into_values()
        .map(|members| {
            let representative = members[0]; // idems ascending ⇒ first is least
            let witnesses = tree_edges
                .iter()
                .filter(|w| members.contains(&w.from))
                .copied()
                .collect();
            ApproxClass { representative, members, witnesses }
        })
        .collect();
    classes.sort_by_key(|c| c.representative);
    classes
}

/// Re-derives every stored witness's endpoints from the table; any mismatch
/// is a bug in class construction.
pub fn verify_witnesses(table: &InverseSemigroupTable, classes: &[ApproxClass]) -> bool {
    classes.iter().all(|c| {
        c.witnesses.iter().all(|w| {
            let st = table.star_of(w.via);
            table.product(st, w.via) == w.from && table.product(w.via, st) == w.to
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain_semilattice, cyclic_group_with_zero, meet_semilattice, one_edge_graph_table};

    #[test]
    fn semilattice_classes_are_singletons() {
        for t in [meet_semilattice(), chain_semilattice(4)] {
            let classes = equiv_classes(&t, &[]);
            let idems = t.nonzero_idempotents_excluding(&[]);
            assert_eq!(classes.len(), idems.len());
            for (c, &e) in classes.iter().zip(idems.iter()) {
                assert_eq!(c.members, vec![e]);
                assert!(c.witnesses.is_empty());
            }
            assert!(verify_witnesses(&t, &classes));
        }
    }

    #[test]
    fn one_edge_graph_classes_group_by_source_vertex() {
        // (v,v) ≈ (e,e) via (e,v); (w,w) alone — one class per vertex
        let t = one_edge_graph_table();
        let classes = equiv_classes(&t, &[]);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members, vec![1, 3]); // vv, ee
        assert_eq!(classes[1].members, vec![2]); // ww
        assert_eq!(classes[0].witnesses, vec![Witness { from: 1, to: 3, via: 4 }]);
        assert!(verify_witnesses(&t, &classes));
        // the standalone probe agrees
        assert_eq!(approx_witness(&t, 1, 3, &[]), Some(4));
        assert_eq!(approx_witness(&t, 3, 1, &[]), Some(5));
        assert_eq!(approx_witness(&t, 1, 2, &[]), None);
    }

    #[test]
    fn group_with_zero_has_one_class() {
        let t = cyclic_group_with_zero(4);
        let classes = equiv_classes(&t, &[]);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![1]);
    }

    #[test]
    fn reflexive_witness_is_the_idempotent_itself() {
        let t = meet_semilattice();
        for &e in &t.nonzero_idempotents_excluding(&[]) {
            assert_eq!(approx_witness(&t, e, e, &[]), Some(e));
        }
    }

    #[test]
    fn symmetry_and_transitivity_witnesses_compose() {
        // For every witnessed edge s: e → f, s* witnesses f → e; for chains,
        // the product witnesses the composite.
        let t = one_edge_graph_table();
        let classes = equiv_classes(&t, &[]);
        for c in &classes {
            for w in &c.witnesses {
                let back = t.star_of(w.via);
                assert_eq!(t.product(t.star_of(back), back), w.to);
                assert_eq!(t.product(back, t.star_of(back)), w.from);
            }
            // composite across two tree edges sharing a node, if any
            for w1 in &c.witnesses {
                for w2 in &c.witnesses {
                    if w2.from == w1.to {
                        let u = t.product(w2.via, w1.via);
                        assert_eq!(t.product(t.star_of(u), u), w1.from);
                        assert_eq!(t.product(u, t.star_of(u)), w2.to);
                    }
                }
            }
        }
    }
}
