//! Gradings: group-valued assignments on the nonzero part of a table,
//! the morphism law `σ(s·t) = σ(s)·σ(t) whenever s·t ≠ 0`, and the derived
//! checks (idempotent purity, injectivity on maximal elements) feeding the
//! decomposition hypotheses.

use std::collections::{BTreeMap, HashMap};

use super::group::{Group, GroupElem, GroupError};
use crate::par;
use crate::semigroup::table::{Adjoined, Elem, InverseSemigroupTable, ZeroFVerdict};

/// Pair budget for the exhaustive morphism scan; above it a deterministic
/// sample is checked instead and the report says so.
pub const MORPHISM_PAIR_BUDGET: usize = 4_000_000;

/// A group-valued grading of a table: every nonzero element carries a group
/// element; the zero carries nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    group: Group,
    assignment: Vec<Option<GroupElem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradingError {
    #[error("assignment covers {got} elements, table has {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("the zero element must not be assigned a group element")]
    ZeroAssigned,
    #[error("element {s} has no assigned group element")]
    MissingAssignment { s: Elem },
    #[error("element {s}: {source}")]
    BadElement { s: Elem, source: GroupError },
}

impl Grading {
    /// `assignment[s]` must be `Some` exactly for nonzero `s` (excluded
    /// stand-ins may be `None` too — they are never consulted).
    pub fn new(
        group: Group,
        table: &InverseSemigroupTable,
        assignment: Vec<Option<GroupElem>>,
        excluded: &[Elem],
    ) -> Result<Self, GradingError> {
        if assignment.len() != table.n() {
            return Err(GradingError::WrongLength { got: assignment.len(), expected: table.n() });
        }
        if assignment[table.zero()].is_some() {
            return Err(GradingError::ZeroAssigned);
        }
        for (s, a) in assignment.iter().enumerate() {
            if s == table.zero() || excluded.contains(&s) {
                continue;
            }
            match a {
                None => return Err(GradingError::MissingAssignment { s }),
                Some(e) => {
                    group.check_elem(e).map_err(|source| GradingError::BadElement { s, source })?
                }
            }
        }
        Ok(Grading { group, assignment })
    }

    /// The trivial grading: every nonzero element maps to the identity.
    pub fn constant_identity(group: Group, table: &InverseSemigroupTable) -> Self {
        let assignment = (0..table.n())
            .map(|s| if s == table.zero() { None } else { Some(group.identity()) })
            .collect();
        Grading { group, assignment }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn of(&self, s: Elem) -> Option<&GroupElem> {
        self.assignment.get(s).and_then(|a| a.as_ref())
    }

    /// Extends a grading of `S` to the identity-adjoined table: the new
    /// identity grades to the group identity.
    pub fn extend_to_adjoined(&self, adjoined: &Adjoined) -> Grading {
        let mut assignment = self.assignment.clone();
        if adjoined.was_monoid {
            return Grading { group: self.group.clone(), assignment };
        }
        assignment.push(Some(self.group.identity()));
        Grading { group: self.group.clone(), assignment }
    }
}

/// A failed grading law, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `s·t ≠ 0` but `σ(s·t) ≠ σ(s)·σ(t)`.
    NotMultiplicative { s: Elem, t: Elem },
    /// Idempotent `e` with `σ(e)` not the group identity.
    IdempotentNotIdentity { e: Elem },
    /// `σ(s*) ≠ σ(s)⁻¹`.
    StarNotInverted { s: Elem },
}

impl MorphismViolation {
    pub fn render(&self, table: &InverseSemigroupTable) -> String {
        match *self {
            MorphismViolation::NotMultiplicative { s, t } => format!(
                "grade({} · {}) differs from grade({}) · grade({})",
                table.name(s),
                table.name(t),
                table.name(s),
                table.name(t)
            ),
            MorphismViolation::IdempotentNotIdentity { e } => {
                format!("idempotent {} is not graded by the identity", table.name(e))
            }
            MorphismViolation::StarNotInverted { s } => {
                format!("grade({}*) is not the inverse of grade({})", table.name(s), table.name(s))
            }
        }
    }
}

/// Outcome of [`check_morphism`].
#[derive(Debug, Clone)]
pub struct MorphismReport {
    pub violations: Vec<MorphismViolation>,
    pub pairs_checked: usize,
    pub pairs_total: usize,
    /// True when the pair budget forced a deterministic sample instead of
    /// the full scan.  Sampling is reported, never silent.
    pub sampled: bool,
    /// Checks skipped because an operand or product was an excluded
    /// stand-in.
    pub skipped: usize,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the grading laws on all applicable pairs (or a deterministic
/// sample above the budget).
pub fn check_morphism(
    table: &InverseSemigroupTable,
    grading: &Grading,
    excluded: &[Elem],
) -> MorphismReport {
    let n = table.n();
    let zero = table.zero();
    let group = &grading.group;
    let skip = |e: Elem| e == zero || excluded.contains(&e);

    let mut violations = Vec::new();
    let mut skipped = 0usize;

    // Unary laws first: idempotent-identity and star-inversion.
    for s in 0..n {
        if skip(s) {
            continue;
        }
        let sigma_s = grading.of(s).expect("assignment total on nonzero");
        if table.product(s, s) == s && !group.is_identity(sigma_s) {
            violations.push(MorphismViolation::IdempotentNotIdentity { e: s });
        }
        let st = table.star_of(s);
        if skip(st) {
            skipped += 1;
        } else {
            let sigma_star = grading.of(st).expect("assignment total on nonzero");
            if *sigma_star != group.inv(sigma_s) {
                violations.push(MorphismViolation::StarNotInverted { s });
            }
        }
    }

    // Multiplicativity over pairs, with the sampling fallback.
    let pairs_total = n * n;
    let stride = if pairs_total > MORPHISM_PAIR_BUDGET {
        // Smallest stride that brings the pair count under budget; coprime
        // strides over s keep coverage spread across the table.
        pairs_total / MORPHISM_PAIR_BUDGET + 1
    } else {
        1
    };
    let sampled = stride > 1;

    let rows: Vec<(Vec<MorphismViolation>, usize, usize)> = par::map_range(0..n, |s| {
        let mut vs = Vec::new();
        let mut sk = 0usize;
        let mut checked = 0usize;
        if skip(s) {
            return (vs, sk, checked);
        }
        let sigma_s = grading.of(s).cloned().expect("assignment total on nonzero");
        let mut t = (s * 7) % stride; // deterministic per-row phase
        while t < n {
            if !skip(t) {
                let st = table.product(s, t);
                if st == zero {
                    // no constraint when the product vanishes
                } else if excluded.contains(&st) {
                    sk += 1;
                } else {
                    checked += 1;
                    let expected = group.mul(&sigma_s, grading.of(t).expect("total"));
                    if *grading.of(st).expect("total") != expected {
                        vs.push(MorphismViolation::NotMultiplicative { s, t });
                    }
                }
            }
            t += stride;
        }
        (vs, sk, checked)
    });

    let mut pairs_checked = 0usize;
    for (vs, sk, checked) in rows {
        violations.extend(vs);
        skipped += sk;
        pairs_checked += checked;
    }

    MorphismReport { violations, pairs_checked, pairs_total, sampled, skipped }
}

/// Returns the first nonzero nonidempotent element graded to the identity,
/// or `None` when the grading is idempotent pure.
pub fn idempotent_purity_witness(
    table: &InverseSemigroupTable,
    grading: &Grading,
    excluded: &[Elem],
) -> Option<Elem> {
    let zero = table.zero();
    (0..table.n()).find(|&s| {
        s != zero
            && !excluded.contains(&s)
            && grading.group.is_identity(grading.of(s).expect("total"))
            && table.product(s, s) != s
    })
}

/// Returns the first pair of distinct maximal elements sharing a grade, or
/// `None` when the grading is injective on `maximals`.
pub fn maximals_collision(
    grading: &Grading,
    maximals: &[Elem],
) -> Option<(Elem, Elem)> {
    let mut seen: HashMap<&GroupElem, Elem> = HashMap::new();
    for &m in maximals {
        let g = grading.of(m).expect("maximal elements are nonzero");
        if let Some(&first) = seen.get(g) {
            return Some((first, m));
        }
        seen.insert(g, m);
    }
    None
}

/// The section g ↦ s_g: for each grade hit by a maximal element, the unique
/// maximal element carrying it; plus, for every element, the unique maximal
/// element above it.
#[derive(Debug, Clone)]
pub struct MaximalSection {
    entries: BTreeMap<GroupElem, Elem>,
    cover: Vec<Option<Elem>>,
}

impl MaximalSection {
    /// `s_g`, if `g` is the grade of some maximal element.
    pub fn section_of(&self, g: &GroupElem) -> Option<Elem> {
        self.entries.get(g).copied()
    }

    /// The unique maximal element above `s` (identity for idempotents of a
    /// monoid, `s` itself when `s` is maximal).
    pub fn maximal_above(&self, s: Elem) -> Option<Elem> {
        self.cover.get(s).copied().flatten()
    }

    /// All (grade, maximal element) pairs in canonical grade order.
    pub fn grades(&self) -> impl Iterator<Item = (&GroupElem, Elem)> {
        self.entries.iter().map(|(g, &s)| (g, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SectionError {
    #[error("table is not 0-F-inverse: {0:?}")]
    NotZeroF(ZeroFVerdict),
    #[error("grading is not injective on maximal elements: {0} and {1} share a grade")]
    NotInjectiveOnMaximals(Elem, Elem),
}

/// Builds the maximal section, verifying its two preconditions (unique
/// maximal above every nonzero element; grades separate maximal elements).
pub fn maximal_section(
    table: &InverseSemigroupTable,
    grading: &Grading,
    excluded: &[Elem],
) -> Result<MaximalSection, SectionError> {
    let verdict = table.is_zero_f_inverse_excluding(excluded);
    let ZeroFVerdict::ZeroFInverse { cover } = verdict else {
        return Err(SectionError::NotZeroF(verdict));
    };
    let maximals = table.maximal_elements_excluding(excluded);
    if let Some((a, b)) = maximals_collision(grading, &maximals) {
        return Err(SectionError::NotInjectiveOnMaximals(a, b));
    }
    let mut entries = BTreeMap::new();
    for &m in &maximals {
        entries.insert(grading.of(m).expect("maximal elements are nonzero").clone(), m);
    }
    Ok(MaximalSection { entries, cover })
}
