//! Characters of the idempotent semilattice, the compact-open sets `D_e`,
//! and the θ-action of the semigroup on its spectrum.
//!
//! At finite scale every character is the indicator of a principal filter
//! `φ_e(f) = [e ≤ f]`, the spectrum is the discrete set `{φ_e : e ∈ E^×}`,
//! and "compact open" means any subset.  That collapse is deliberate and is
//! recorded in reports: topology contributes nothing at this scale, so all
//! statements become exhaustively checkable set arithmetic.

pub mod basis;

pub use basis::{
    is_generating, is_independent, is_regular_basis, BasisFamily, IndependenceWitness,
    GENERATION_CAP,
};

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::semigroup::table::{Elem, InverseSemigroupTable};

/// Index of a character within its [`Spectrum`].
pub type CharId = usize;

/// A character: the indicator of the principal filter above `generator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    /// The minimum of the support (the `e` of `φ_e`).
    pub generator: Elem,
    /// Indices of characters whose generators the support contains — i.e.
    /// the set `{f ∈ E^× : generator ≤ f}`, stored over character ids.
    pub support: BitSet,
}

/// A subset of the spectrum, tagged with how it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactOpenSet {
    pub members: BitSet,
    pub description: SetDescription,
}

/// Symbolic description of a compact-open set, renderable against a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescription {
    Empty,
    /// `D_e`
    DSet(Elem),
    /// `D_e \ ∪_{z∈Z} D_z`
    Basic { e: Elem, removed: Vec<Elem> },
    Union(Box<SetDescription>, Box<SetDescription>),
    Intersection(Box<SetDescription>, Box<SetDescription>),
    Difference(Box<SetDescription>, Box<SetDescription>),
    /// A set given by listing members (no algebraic pedigree).
    Explicit,
}

impl SetDescription {
    pub fn render(&self, table: &InverseSemigroupTable) -> String {
        match self {
            SetDescription::Empty => "∅".to_string(),
            SetDescription::DSet(e) => format!("D[{}]", table.name(*e)),
            SetDescription::Basic { e, removed } => {
                if removed.is_empty() {
                    format!("D[{}]", table.name(*e))
                } else {
                    let zs: Vec<&str> = removed.iter().map(|&z| table.name(z)).collect();
                    format!("D[{}; −{}]", table.name(*e), zs.join(",−"))
                }
            }
            SetDescription::Union(a, b) => {
                format!("({} ∪ {})", a.render(table), b.render(table))
            }
            SetDescription::Intersection(a, b) => {
                format!("({} ∩ {})", a.render(table), b.render(table))
            }
            SetDescription::Difference(a, b) => {
                format!("({} ∖ {})", a.render(table), b.render(table))
            }
            SetDescription::Explicit => "{…}".to_string(),
        }
    }
}

impl CompactOpenSet {
    pub fn union(&self, other: &CompactOpenSet) -> CompactOpenSet {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        CompactOpenSet {
            members,
            description: SetDescription::Union(
                Box::new(self.description.clone()),
                Box::new(other.description.clone()),
            ),
        }
    }

    pub fn intersection(&self, other: &CompactOpenSet) -> CompactOpenSet {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        CompactOpenSet {
            members,
            description: SetDescription::Intersection(
                Box::new(self.description.clone()),
                Box::new(other.description.clone()),
            ),
        }
    }

    pub fn difference(&self, other: &CompactOpenSet) -> CompactOpenSet {
        let mut members = self.members.clone();
        members.difference_with(&other.members);
        CompactOpenSet {
            members,
            description: SetDescription::Difference(
                Box::new(self.description.clone()),
                Box::new(other.description.clone()),
            ),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.count() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("element {e} is not a nonzero idempotent of this spectrum")]
    NotIdempotent { e: Elem },
    #[error("element {e} is an excluded stand-in")]
    Excluded { e: Elem },
    #[error("{z} is not below {e}")]
    NotBelow { z: Elem, e: Elem },
    #[error("character {phi} is outside the domain D[s*s] of element {s}")]
    OutOfDomain { s: Elem, phi: CharId },
    #[error("image of character {phi} under element {s} escapes this scale")]
    EscapesScale { s: Elem, phi: CharId },
}

/// The spectrum of a table's idempotent semilattice.
#[derive(Debug, Clone)]
pub struct Spectrum {
    table: InverseSemigroupTable,
    excluded: Vec<Elem>,
    /// Nonzero non-excluded idempotents, ascending; entry i generates φ_i.
    generators: Vec<Elem>,
    char_of_idem: HashMap<Elem, CharId>,
    characters: Vec<Character>,
    support_index: HashMap<BitSet, CharId>,
}

impl Spectrum {
    pub fn new(table: &InverseSemigroupTable, excluded: &[Elem]) -> Spectrum {
        let generators = table.nonzero_idempotents_excluding(excluded);
        let char_of_idem: HashMap<Elem, CharId> =
            generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let order = table.natural_order();
        let n_chars = generators.len();
        let characters: Vec<Character> = generators
            .iter()
            .map(|&e| {
                let mut support = BitSet::new(n_chars);
                for (j, &f) in generators.iter().enumerate() {
                    if order.leq(e, f) {
                        support.insert(j);
                    }
                }
                Character { generator: e, support }
            })
            .collect();
        let support_index =
            characters.iter().enumerate().map(|(i, c)| (c.support.clone(), i)).collect();
        Spectrum {
            table: table.clone(),
            excluded: excluded.to_vec(),
            generators,
            char_of_idem,
            characters,
            support_index,
        }
    }

    pub fn table(&self) -> &InverseSemigroupTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    /// The id of `φ_e`.
    pub fn character_of(&self, e: Elem) -> Option<CharId> {
        self.char_of_idem.get(&e).copied()
    }

    pub fn generator(&self, phi: CharId) -> Elem {
        self.characters[phi].generator
    }

    /// Evaluates `φ(x)` for any table element `x` (zero on non-idempotents).
    pub fn eval(&self, phi: CharId, x: Elem) -> bool {
        match self.char_of_idem.get(&x) {
            Some(&xi) => self.characters[phi].support.contains(xi),
            None => false,
        }
    }

    fn empty_set(&self) -> CompactOpenSet {
        CompactOpenSet { members: BitSet::new(self.len()), description: SetDescription::Empty }
    }

    /// `D_e = {φ : φ(e) = 1} = {φ_f : 0 ≠ f ≤ e}`.  `e` must be an
    /// idempotent; the zero gives ∅.
    pub fn d_set(&self, e: Elem) -> Result<CompactOpenSet, SpectrumError> {
        if e == self.table.zero() {
            return Ok(self.empty_set());
        }
        if self.excluded.contains(&e) {
            return Err(SpectrumError::Excluded { e });
        }
        if self.character_of(e).is_none() {
            return Err(SpectrumError::NotIdempotent { e });
        }
        let order = self.table.natural_order();
        let mut members = BitSet::new(self.len());
        for (j, &f) in self.generators.iter().enumerate() {
            if order.leq(f, e) {
                members.insert(j);
            }
        }
        Ok(CompactOpenSet { members, description: SetDescription::DSet(e) })
    }

    /// `D_(e,Z) = D_e ∖ ∪_{z∈Z} D_z`; every `z` must lie below `e`.
    pub fn basic_set(&self, e: Elem, z: &[Elem]) -> Result<CompactOpenSet, SpectrumError> {
        let base = self.d_set(e)?;
        let order = self.table.natural_order();
        let mut members = base.members;
        for &zi in z {
            if !order.leq(zi, e) {
                return Err(SpectrumError::NotBelow { z: zi, e });
            }
            members.difference_with(&self.d_set(zi)?.members);
        }
        Ok(CompactOpenSet {
            members,
            description: SetDescription::Basic { e, removed: z.to_vec() },
        })
    }

    /// The family `{D_e : e ∈ E^×}` in generator order.
    pub fn d_basis(&self) -> BasisFamily {
        let sets: Vec<CompactOpenSet> =
            self.generators.iter().map(|&e| self.d_set(e).expect("generators are idempotents")).collect();
        BasisFamily::new(sets).expect("each D_e contains φ_e, so none is empty")
    }

    /// `θ_s(φ)(x) = φ(s*·x·s)`, evaluated directly over the semilattice.
    ///
    /// Requires `φ ∈ D_{s*s}`.  On a complete table the image is `φ_{sfs*}`
    /// for `φ = φ_f`; on a truncated table the image may be the restriction
    /// of a character living beyond the scale, and when that restriction is
    /// not itself a character here the call reports an escape instead of
    /// guessing.
    pub fn theta(&self, s: Elem, phi: CharId) -> Result<CharId, SpectrumError> {
        if self.excluded.contains(&s) {
            return Err(SpectrumError::Excluded { e: s });
        }
        let f = self.generator(phi);
        let s_star = self.table.star_of(s);
        let s_star_s = self.table.product(s_star, s);
        if !self.table.leq(f, s_star_s) {
            return Err(SpectrumError::OutOfDomain { s, phi });
        }
        let mut image_support = BitSet::new(self.len());
        for (j, &x) in self.generators.iter().enumerate() {
            let conj = self.table.product(self.table.product(s_star, x), s);
            if self.eval(phi, conj) {
                image_support.insert(j);
            }
        }
        match self.support_index.get(&image_support) {
            Some(&psi) => Ok(psi),
            None => Err(SpectrumError::EscapesScale { s, phi }),
        }
    }

    /// The algebraic route to the same image: `θ_s(φ_f) = φ_{s·f·s*}`.
    /// Returns `None` when `s·f·s*` is not a character generator here
    /// (zero, excluded, or out of scale).
    pub fn theta_algebraic(&self, s: Elem, phi: CharId) -> Option<CharId> {
        let f = self.generator(phi);
        let sf = self.table.product(s, f);
        let sfs = self.table.product(sf, self.table.star_of(s));
        self.character_of(sfs)
    }
}
