//! Germs of the universal groupoid: pairs (s, φ) with φ ∈ D_{s*s}, under
//! the equivalence "(s,φ) ≡ (t,φ) iff some nonzero u ≤ s,t dominates φ",
//! with source/range maps, composition, the grade cocycle, and the
//! faithfulness check of the cocycle triple γ ↦ (r(γ), ρ(γ), d(γ)).

use std::collections::HashMap;

use super::{EnvelopeContext, EnvelopeError};
use crate::grading::GroupElem;
use crate::semigroup::Elem;
use crate::spectrum::CharId;

/// A representative pair; equality of germs is [`EnvelopeContext::germ_equal`],
/// not structural equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Germ {
    pub s: Elem,
    pub phi: CharId,
}

/// The germ classes of one instance, each listing its representative pairs.
#[derive(Debug, Clone)]
pub struct GermClasses {
    pub classes: Vec<Vec<Germ>>,
    class_of: HashMap<Germ, usize>,
}

impl GermClasses {
    pub fn class_of(&self, germ: Germ) -> Option<usize> {
        self.class_of.get(&germ).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Outcome of the faithfulness check on germ classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaithfulVerdict {
    /// γ ↦ (r(γ), ρ(γ), d(γ)) is injective on the germ classes.
    Faithful { germ_classes: usize },
    /// Two inequivalent germs share the triple.
    NotFaithful { a: Germ, b: Germ },
    /// A range computation escaped the table's scale.
    Inconclusive { germ: Germ },
}

impl EnvelopeContext {
    /// All valid germs: s ranges over the nonzero elements, φ over D_{s*s}.
    pub fn germs(&self) -> Vec<Germ> {
        let table = self.table();
        let spectrum = self.spectrum();
        let mut out = Vec::new();
        for s in 0..table.n() {
            if s == table.zero() {
                continue;
            }
            let dom = table.product(table.star_of(s), s);
            for phi in 0..spectrum.len() {
                if spectrum.eval(phi, dom) {
                    out.push(Germ { s, phi });
                }
            }
        }
        out
    }

    /// Germ equivalence: same character, and some nonzero common lower
    /// bound of the two elements dominates it.
    pub fn germ_equal(&self, a: Germ, b: Germ) -> bool {
        if a.phi != b.phi {
            return false;
        }
        if a.s == b.s {
            return true;
        }
        let table = self.table();
        let spectrum = self.spectrum();
        (0..table.n()).any(|u| {
            u != table.zero()
                && table.leq(u, a.s)
                && table.leq(u, b.s)
                && spectrum.eval(a.phi, table.product(table.star_of(u), u))
        })
    }

    /// Source (domain) character of a germ.
    pub fn germ_source(&self, germ: Germ) -> CharId {
        germ.phi
    }

    /// Range character: θ_s(φ).
    pub fn germ_range(&self, germ: Germ) -> Result<CharId, EnvelopeError> {
        Ok(self.spectrum().theta(germ.s, germ.phi)?)
    }

    /// [s,φ]⁻¹ = [s*, θ_s(φ)].
    pub fn germ_inverse(&self, germ: Germ) -> Result<Germ, EnvelopeError> {
        Ok(Germ { s: self.table().star_of(germ.s), phi: self.germ_range(germ)? })
    }

    /// [s,φ]·[t,ψ] = [s·t, ψ], defined when φ = θ_t(ψ).
    pub fn germ_product(&self, a: Germ, b: Germ) -> Result<Germ, EnvelopeError> {
        if self.germ_range(b)? != a.phi {
            return Err(EnvelopeError::NotComposable);
        }
        let st = self.table().product(a.s, b.s);
        debug_assert_ne!(st, self.table().zero(), "composable germs have nonzero product");
        Ok(Germ { s: st, phi: b.phi })
    }

    /// The unit germ at a character: the pair (generator of φ, φ).
    pub fn unit_germ(&self, phi: CharId) -> Germ {
        Germ { s: self.spectrum().generator(phi), phi }
    }

    /// The grade cocycle ρ([s,φ]) = σ(s).
    pub fn cocycle(&self, germ: Germ) -> &GroupElem {
        self.grading().of(germ.s).expect("germ elements are nonzero")
    }

    /// Partitions all germs into equivalence classes (union-find over the
    /// pairwise relation; members kept in enumeration order).
    pub fn germ_classes(&self) -> GermClasses {
        let germs = self.germs();
        // group by character first: equivalent germs share φ
        let mut by_char: HashMap<CharId, Vec<usize>> = HashMap::new();
        for (i, g) in germs.iter().enumerate() {
            by_char.entry(g.phi).or_default().push(i);
        }
        let mut root: Vec<usize> = (0..germs.len()).collect();
        fn find(root: &mut Vec<usize>, mut i: usize) -> usize {
            while root[i] != i {
                root[i] = root[root[i]];
                i = root[i];
            }
            i
        }
        let mut chars: Vec<&CharId> = by_char.keys().collect();
        chars.sort();
        for phi in chars {
            let bucket = &by_char[phi];
            for (i, &a) in bucket.iter().enumerate() {
                for &b in &bucket[i + 1..] {
                    if self.germ_equal(germs[a], germs[b]) {
                        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
                        if ra != rb {
                            root[rb.max(ra)] = rb.min(ra);
                        }
                    }
                }
            }
        }
        let mut class_ids: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<Germ>> = Vec::new();
        let mut class_of = HashMap::new();
        for i in 0..germs.len() {
            let r = find(&mut root, i);
            let id = *class_ids.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(germs[i]);
            class_of.insert(germs[i], id);
        }
        GermClasses { classes, class_of }
    }

    /// First pair of equivalent germs whose grades differ — `None` when the
    /// cocycle is well defined on classes (always, for a graded table).
    pub fn cocycle_conflict(&self, classes: &GermClasses) -> Option<(Germ, Germ)> {
        for class in &classes.classes {
            let first = class[0];
            for &g in &class[1..] {
                if self.cocycle(g) != self.cocycle(first) {
                    return Some((first, g));
                }
            }
        }
        None
    }

    /// Checks injectivity of γ ↦ (r(γ), ρ(γ), d(γ)) on germ classes.
    pub fn check_faithful(&self) -> FaithfulVerdict {
        let classes = self.germ_classes();
        let mut seen: HashMap<(CharId, &GroupElem, CharId), Germ> = HashMap::new();
        for class in &classes.classes {
            let germ = class[0];
            let range = match self.germ_range(germ) {
                Ok(r) => r,
                Err(_) => return FaithfulVerdict::Inconclusive { germ },
            };
            let triple = (range, self.cocycle(germ), germ.phi);
            if let Some(&other) = seen.get(&triple) {
                return FaithfulVerdict::NotFaithful { a: other, b: germ };
            }
            seen.insert(triple, germ);
        }
        FaithfulVerdict::Faithful { germ_classes: classes.len() }
    }
}
