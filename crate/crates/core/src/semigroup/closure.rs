//! Deterministic closure of partial-bijection generators into a full table.
//!
//! Starting from the empty bijection (zero) and the given generators, the
//! engine alternates star-closure and product-closure rounds until nothing
//! new appears.  Pairs are scanned in a fixed lexicographic order and new
//! elements are appended in first-discovery order, so the resulting table —
//! element numbering, names, everything — is identical run to run and
//! independent of thread count.

use std::collections::HashMap;
use std::sync::Arc;

use super::bijection::PartialBijection;
use super::table::{Elem, InverseSemigroupTable, ProductRule, DENSE_LIMIT};
use crate::par;

/// Default element budget: closures that outgrow this fail loudly rather
/// than truncate silently.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("closure exceeded the element budget of {cap}")]
    BudgetExceeded { cap: usize },
    #[error("generator ground sets disagree: {0} vs {1}")]
    GroundMismatch(usize, usize),
}

/// A closed set of partial bijections together with its multiplication table.
#[derive(Debug, Clone)]
pub struct Closure {
    pub table: InverseSemigroupTable,
    pub elements: Vec<PartialBijection>,
}

impl Closure {
    pub fn index_of(&self, b: &PartialBijection) -> Option<Elem> {
        self.elements.iter().position(|e| e == b)
    }
}

struct BijectionRule {
    elements: Vec<PartialBijection>,
    index: HashMap<PartialBijection, u32>,
}

impl ProductRule for BijectionRule {
    fn product(&self, a: Elem, b: Elem) -> Elem {
        let p = self.elements[a]
            .compose(&self.elements[b])
            .expect("closure elements share one ground set");
        self.index[&p] as Elem
    }
}

/// Closes `generators` under composition and inversion.
///
/// Element 0 of the result is the empty bijection (zero).  Generators keep
/// their given names; discovered elements are named `x{index}`.  Fails if
/// more than `cap` elements appear.
pub fn close(
    ground: usize,
    generators: &[(String, PartialBijection)],
    cap: usize,
) -> Result<Closure, ClosureError> {
    for (_, g) in generators {
        if g.ground() != ground {
            return Err(ClosureError::GroundMismatch(ground, g.ground()));
        }
    }

    let mut elements: Vec<PartialBijection> = Vec::new();
    let mut index: HashMap<PartialBijection, u32> = HashMap::new();
    let mut names: Vec<String> = Vec::new();

    let push = |elements: &mut Vec<PartialBijection>,
                    index: &mut HashMap<PartialBijection, u32>,
                    names: &mut Vec<String>,
                    b: PartialBijection,
                    name: Option<&str>|
     -> Option<u32> {
        if index.contains_key(&b) {
            return None;
        }
        let id = elements.len() as u32;
        let name = match name {
            Some(n) if !names.iter().any(|existing| existing == n) => n.to_string(),
            _ => format!("x{}", id),
        };
        index.insert(b.clone(), id);
        elements.push(b);
        names.push(name);
        Some(id)
    };

    push(&mut elements, &mut index, &mut names, PartialBijection::empty(ground), Some("0"));
    for (name, g) in generators {
        push(&mut elements, &mut index, &mut names, g.clone(), Some(name));
    }

    // `starred` / `scanned` are the prefixes already closed under star /
    // pairwise products.  Each round extends both to the current length.
    let mut starred = 0usize;
    let mut scanned = 0usize;
    loop {
        let m = elements.len();
        for i in starred..m {
            let inv = elements[i].inverse();
            push(&mut elements, &mut index, &mut names, inv, None);
            if elements.len() > cap {
                return Err(ClosureError::BudgetExceeded { cap });
            }
        }
        starred = m;

        let m2 = elements.len();
        if scanned == m2 && starred == m2 {
            break;
        }
        // All pairs with at least one coordinate in [scanned, m2), in lex
        // order.  Products are computed in parallel (order-preserving) and
        // inserted sequentially, so discovery order is fixed.
        let batch: Vec<PartialBijection> = par::flat_map_range(0..m2, |i| {
            let lo = if i < scanned { scanned } else { 0 };
            (lo..m2)
                .map(|j| elements[i].compose(&elements[j]).expect("shared ground set"))
                .collect::<Vec<_>>()
        });
        for p in batch {
            push(&mut elements, &mut index, &mut names, p, None);
            if elements.len() > cap {
                return Err(ClosureError::BudgetExceeded { cap });
            }
        }
        scanned = m2;
        if elements.len() == m2 && starred == m2 {
            break;
        }
    }

    let n = elements.len();
    let star: Vec<u32> = elements.iter().map(|e| index[&e.inverse()]).collect();
    let table = if n <= DENSE_LIMIT {
        let matrix: Vec<u32> = par::flat_map_range(0..n, |i| {
            (0..n)
                .map(|j| {
                    let p = elements[i].compose(&elements[j]).expect("shared ground set");
                    index[&p]
                })
                .collect::<Vec<_>>()
        });
        InverseSemigroupTable::from_dense(names, matrix, star, 0)
    } else {
        let rule = BijectionRule { elements: elements.clone(), index };
        InverseSemigroupTable::from_rule(names, Arc::new(rule), star, 0)
    }
    .expect("closure output is well-shaped by construction");

    Ok(Closure { table, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate::validate;

    /// Shift-by-one on {0,…,4} inside ground {0,…,5}.  The closure is the
    /// set of all shifts-by-d restricted to an interval, plus zero: for each
    /// d ∈ [-5,5] the domains are the intervals [l,u] ⊆ [0,5] with
    /// [l+d, u+d] ⊆ [0,5].  Every such restriction arises except the
    /// identity on the full ground set — every nonempty word in s, s* loses
    /// at least one point of domain, and closure never adjoins an identity.
    #[test]
    fn truncated_shift_closure_matches_interval_count() {
        let shift = PartialBijection::from_pairs(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
            .unwrap();
        let c = close(6, &[("s".to_string(), shift)], 10_000).unwrap();
        // Count (d, [l,u]) with 0 ≤ l ≤ u ≤ 5, 0 ≤ l+d, u+d ≤ 5, plus zero,
        // minus the ungenerated full identity (d, l, u) = (0, 0, 5).
        let mut expected = 1usize;
        for d in -5i32..=5 {
            for l in 0i32..6 {
                for u in l..6 {
                    if l + d >= 0 && u + d <= 5 && !(d == 0 && l == 0 && u == 5) {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(expected, 91);
        assert_eq!(c.table.n(), expected);
        assert!(c.index_of(&PartialBijection::identity(6)).is_none());
        assert!(c.index_of(&PartialBijection::identity_on(6, &[0, 1, 2, 3, 4])).is_some());
        let report = validate(&c.table);
        assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    #[test]
    fn closure_is_deterministic() {
        let a = PartialBijection::from_pairs(5, &[(0, 1), (1, 0), (3, 3)]).unwrap();
        let b = PartialBijection::from_pairs(5, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let gens = [("a".to_string(), a), ("b".to_string(), b)];
        let c1 = close(5, &gens, 10_000).unwrap();
        let c2 = close(5, &gens, 10_000).unwrap();
        assert_eq!(c1.elements, c2.elements);
        assert_eq!(c1.table.names(), c2.table.names());
        for i in 0..c1.table.n() {
            for j in 0..c1.table.n() {
                assert_eq!(c1.table.product(i, j), c2.table.product(i, j));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let shift = PartialBijection::from_pairs(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
            .unwrap();
        let err = close(6, &[("s".to_string(), shift)], 10);
        assert_eq!(err.unwrap_err(), ClosureError::BudgetExceeded { cap: 10 });
    }

    #[test]
    fn symmetric_inverse_monoid_on_two_points() {
        // All partial bijections of a 2-point set: empty, 2 singletons each
        // with 2 targets (4 maps), identity, swap, and the two mixed
        // single-point maps are already counted — total 1 + 4 + 2 = 7? No:
        // partial injections on {0,1}: empty (1), domain size 1 (2 choices
        // of source × 2 of target = 4), domain size 2 (2 bijections) = 7.
        let a = PartialBijection::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let e0 = PartialBijection::identity_on(2, &[0]);
        let c = close(
            2,
            &[("swap".to_string(), a), ("e0".to_string(), e0)],
            100,
        )
        .unwrap();
        assert_eq!(c.table.n(), 7);
        assert!(validate(&c.table).is_valid());
    }
}
