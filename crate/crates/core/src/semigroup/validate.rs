//! Exhaustive axiom validation for inverse-semigroup tables.
//!
//! Violations are data, not faults: a broken table produces a report naming
//! the witnessing elements for every failed law.  The associativity scan is
//! cubic in the element count and runs data-parallel.
//!
//! When a table carries excluded stand-in elements (truncation overflow),
//! any check that touches one — as operand or as intermediate product — is
//! skipped and counted, so the report states exactly how much of the table
//! was covered.

use super::table::{Elem, InverseSemigroupTable};
use crate::par;

/// A single law failure, with witnessing element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `(a·b)·c ≠ a·(b·c)`.
    NotAssociative { a: Elem, b: Elem, c: Elem },
    /// `s** ≠ s`.
    StarNotInvolutive { s: Elem },
    /// `s·s*·s ≠ s` or `s*·s·s* ≠ s*`.
    NotRegular { s: Elem },
    /// `(s·t)* ≠ t*·s*`.
    StarNotAntimultiplicative { s: Elem, t: Elem },
    /// `t` satisfies `s·t·s = s` and `t·s·t = t` but `t ≠ s*`.
    InverseNotUnique { s: Elem, t: Elem },
    /// `0·s ≠ 0` or `s·0 ≠ 0`.
    ZeroNotAbsorbing { s: Elem },
    /// `e·f ≠ f·e` for idempotents `e`, `f`.
    IdempotentsDontCommute { e: Elem, f: Elem },
    /// `s = s·s*·t` and `s = t·s*·s` disagree.
    OrderCharacterizationsDisagree { s: Elem, t: Elem },
    /// `s ≤ t`, `t ≤ s`, `s ≠ t`.
    OrderNotAntisymmetric { s: Elem, t: Elem },
}

impl Violation {
    pub fn render(&self, table: &InverseSemigroupTable) -> String {
        let n = |e: Elem| table.name(e).to_string();
        match *self {
            Violation::NotAssociative { a, b, c } => {
                format!("({}·{})·{} ≠ {}·({}·{})", n(a), n(b), n(c), n(a), n(b), n(c))
            }
            Violation::StarNotInvolutive { s } => format!("{}** ≠ {}", n(s), n(s)),
            Violation::NotRegular { s } => format!("{} is not regular under its star", n(s)),
            Violation::StarNotAntimultiplicative { s, t } => {
                format!("({}·{})* ≠ {}*·{}*", n(s), n(t), n(t), n(s))
            }
            Violation::InverseNotUnique { s, t } => {
                format!("{} has a second inverse {}", n(s), n(t))
            }
            Violation::ZeroNotAbsorbing { s } => format!("zero does not absorb {}", n(s)),
            Violation::IdempotentsDontCommute { e, f } => {
                format!("idempotents {} and {} do not commute", n(e), n(f))
            }
            Violation::OrderCharacterizationsDisagree { s, t } => format!(
                "order characterizations disagree on ({}, {}): s=s·s*·t vs s=t·s*·s",
                n(s),
                n(t)
            ),
            Violation::OrderNotAntisymmetric { s, t } => {
                format!("{} ≤ {} and {} ≤ {} but they differ", n(s), n(t), n(t), n(s))
            }
        }
    }
}

/// Outcome of [`validate`]: all violations found, plus the number of checks
/// skipped because they touched an excluded element.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub skipped_checks: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every axiom check over the whole table.
pub fn validate(table: &InverseSemigroupTable) -> ValidationReport {
    validate_excluding(table, &[])
}

/// Runs every axiom check, skipping operands and products in `excluded`.
pub fn validate_excluding(table: &InverseSemigroupTable, excluded: &[Elem]) -> ValidationReport {
    let n = table.n();
    let zero = table.zero();
    let skip = |e: Elem| excluded.contains(&e);
    let mut violations = Vec::new();
    let mut skipped: usize = 0;

    // Unary laws: star involution, regularity, zero absorption.
    for s in 0..n {
        if skip(s) {
            continue;
        }
        let st = table.star_of(s);
        if skip(st) {
            skipped += 1;
        } else if table.star_of(st) != s {
            violations.push(Violation::StarNotInvolutive { s });
        }
        let ss = table.product(s, st);
        let sss = table.product(ss, s);
        let ts = table.product(st, s);
        let tst = table.product(ts, st);
        if skip(ss) || skip(sss) || skip(ts) || skip(tst) {
            skipped += 1;
        } else if sss != s || tst != st {
            violations.push(Violation::NotRegular { s });
        }
        if table.product(zero, s) != zero || table.product(s, zero) != zero {
            violations.push(Violation::ZeroNotAbsorbing { s });
        }
    }

    // Pairwise laws.
    let pair_results: Vec<(Vec<Violation>, usize)> = par::map_range(0..n, |s| {
        let mut vs = Vec::new();
        let mut sk = 0usize;
        if skip(s) {
            return (vs, sk);
        }
        for t in 0..n {
            if skip(t) {
                continue;
            }
            // (s·t)* = t*·s*
            let stp = table.product(s, t);
            let anti = table.product(table.star_of(t), table.star_of(s));
            if skip(stp) || skip(anti) {
                sk += 1;
            } else if table.star_of(stp) != anti {
                vs.push(Violation::StarNotAntimultiplicative { s, t });
            }
            // uniqueness of the inverse
            let st_ = table.product(stp, s);
            let ts = table.product(t, s);
            let tst = table.product(ts, t);
            if skip(stp) || skip(st_) || skip(ts) || skip(tst) {
                sk += 1;
            } else if st_ == s && tst == t && t != table.star_of(s) {
                vs.push(Violation::InverseNotUnique { s, t });
            }
        }
        (vs, sk)
    });
    for (vs, sk) in pair_results {
        violations.extend(vs);
        skipped += sk;
    }

    // Idempotents commute.
    let idems: Vec<Elem> = table.idempotents().iter().copied().filter(|&e| !skip(e)).collect();
    for (i, &e) in idems.iter().enumerate() {
        for &f in &idems[i + 1..] {
            let ef = table.product(e, f);
            let fe = table.product(f, e);
            if skip(ef) || skip(fe) {
                skipped += 1;
            } else if ef != fe {
                violations.push(Violation::IdempotentsDontCommute { e, f });
            }
        }
    }

    // Order sanity: the two characterizations of ≤ agree, and ≤ is
    // antisymmetric.
    for s in 0..n {
        if skip(s) {
            continue;
        }
        let ss = table.product(s, table.star_of(s));
        let s_s = table.product(table.star_of(s), s);
        for t in 0..n {
            if skip(t) {
                continue;
            }
            let a = table.product(ss, t);
            let b = table.product(t, s_s);
            if skip(a) || skip(b) {
                skipped += 1;
                continue;
            }
            let left = a == s;
            let right = b == s;
            if left != right {
                violations.push(Violation::OrderCharacterizationsDisagree { s, t });
            }
            if left && t < s {
                // t < s by index: check the reverse direction for antisymmetry
                let tt = table.product(t, table.star_of(t));
                let rev = table.product(tt, s);
                if skip(rev) {
                    skipped += 1;
                } else if rev == t && s != t {
                    violations.push(Violation::OrderNotAntisymmetric { s: t, t: s });
                }
            }
        }
    }

    // Associativity, the cubic scan.
    let assoc: Vec<(Vec<Violation>, usize)> = par::map_range(0..n, |a| {
        let mut vs = Vec::new();
        let mut sk = 0usize;
        if skip(a) {
            return (vs, sk);
        }
        for b in 0..n {
            if skip(b) {
                continue;
            }
            let ab = table.product(a, b);
            for c in 0..n {
                if skip(c) {
                    continue;
                }
                let bc = table.product(b, c);
                let ab_c = table.product(ab, c);
                let a_bc = table.product(a, bc);
                if skip(ab) || skip(bc) || skip(ab_c) || skip(a_bc) {
                    sk += 1;
                } else if ab_c != a_bc {
                    vs.push(Violation::NotAssociative { a, b, c });
                }
            }
        }
        (vs, sk)
    });
    for (vs, sk) in assoc {
        violations.extend(vs);
        skipped += sk;
    }

    ValidationReport { violations, skipped_checks: skipped }
}
