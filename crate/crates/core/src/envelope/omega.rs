//! The globalized space Ω = (G × Ê)/∼ truncated to a ball in the grading
//! group: quotient enumeration with boundary flagging, the translation
//! action τ, the embedding ι: φ ↦ [1, φ], the translated set family
//! {τ_g(D_e)}, and the checks backing its regular-basis properties.

use std::collections::{HashMap, HashSet};

use super::{EnvelopeContext, EnvelopeError};
use crate::bits::BitSet;
use crate::grading::GroupElem;
use crate::semigroup::Elem;
use crate::spectrum::{
    is_independent, BasisFamily, CharId, CompactOpenSet, IndependenceWitness, SetDescription,
    SpectrumError,
};

/// A ball in the grading group's word metric: contains the identity and is
/// closed under inversion.
#[derive(Debug, Clone)]
pub struct BallSpec {
    pub radius: usize,
    pub elements: Vec<GroupElem>,
}

impl BallSpec {
    pub fn new(ctx: &EnvelopeContext, radius: usize) -> BallSpec {
        BallSpec { radius, elements: ctx.grading().group().ball(radius) }
    }
}

/// One ∼-class of ball × Ê pairs.
#[derive(Debug, Clone)]
pub struct OmegaClass {
    /// Members as (ball-word index, character), in canonical order
    /// (word length, then word, then character index).
    pub members: Vec<(usize, CharId)>,
    /// True when the class has ∼-neighbors outside the ball (or beyond the
    /// table's scale): its full class is larger than what the ball shows.
    pub boundary: bool,
}

/// The ball-truncated quotient with its lookup tables.
pub struct OmegaQuotient<'a> {
    ctx: &'a EnvelopeContext,
    ball: Vec<GroupElem>,
    radius: usize,
    word_index: HashMap<GroupElem, usize>,
    identity_index: usize,
    /// `class_of_pair[w][φ]` = class id of the pair (ball[w], φ).
    class_of_pair: Vec<Vec<usize>>,
    classes: Vec<OmegaClass>,
}

/// The family {τ_g(D_e)} over Ω-classes, deduplicated, each member tagged
/// with a (g, e) that produced it.
pub struct TaggedFamily {
    pub family: BasisFamily,
    pub tags: Vec<(GroupElem, Elem)>,
}

/// Outcome of the translated-basis verification.
#[derive(Debug)]
pub struct BasisTranslateReport {
    pub member_count: usize,
    /// `None` when the family is independent.
    pub independence: Option<IndependenceWitness>,
    /// Member indices whose intersection is nonempty yet not a member.
    pub intersection_failure: Option<(usize, usize)>,
    /// A (g, e) whose image β_g(D_e) is neither empty nor some D_f.
    pub image_failure: Option<(GroupElem, Elem)>,
}

impl BasisTranslateReport {
    pub fn passed(&self) -> bool {
        self.independence.is_none()
            && self.intersection_failure.is_none()
            && self.image_failure.is_none()
    }
}

/// A failed instance of the action lemma relating τ-translates of D-sets
/// back to D-sets.
#[derive(Debug, Clone)]
pub struct GActionWitness {
    pub g: GroupElem,
    pub e: Elem,
    pub reason: String,
}

impl<'a> OmegaQuotient<'a> {
    pub fn new(ctx: &'a EnvelopeContext, radius: usize) -> Result<OmegaQuotient<'a>, EnvelopeError> {
        let group = ctx.grading().group();
        let ball = BallSpec::new(ctx, radius).elements;
        let nchars = ctx.spectrum().len();
        let word_index: HashMap<GroupElem, usize> =
            ball.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let identity_index = word_index[&group.identity()];
        let grades = ctx.beta_grades()?;

        // β_k evaluated once per (grade, character): the image, "outside
        // the domain", or an escape past the table's scale.
        enum Entry {
            Out,
            Img(CharId),
            Escapes,
        }
        let mut beta_table: Vec<Vec<Entry>> = Vec::with_capacity(grades.len());
        for k in &grades {
            let mut row = Vec::with_capacity(nchars);
            for phi in 0..nchars {
                row.push(match ctx.beta_partial(k, phi) {
                    Ok(Some(psi)) => Entry::Img(psi),
                    Ok(None) => Entry::Out,
                    Err(EnvelopeError::Spectrum(SpectrumError::EscapesScale { .. })) => {
                        Entry::Escapes
                    }
                    Err(e) => return Err(e),
                });
            }
            beta_table.push(row);
        }

        let n_pairs = ball.len() * nchars;
        let pair = |w: usize, phi: usize| w * nchars + phi;
        let mut root: Vec<usize> = (0..n_pairs).collect();
        fn find(root: &mut [usize], mut i: usize) -> usize {
            while root[i] != i {
                root[i] = root[root[i]];
                i = root[i];
            }
            i
        }
        let mut escapes_ball = vec![false; n_pairs];

        for (wi, w) in ball.iter().enumerate() {
            for phi in 0..nchars {
                for (ki, k) in grades.iter().enumerate() {
                    let psi = match beta_table[ki][phi] {
                        Entry::Out => continue,
                        Entry::Escapes => {
                            escapes_ball[pair(wi, phi)] = true;
                            continue;
                        }
                        Entry::Img(psi) => psi,
                    };
                    // (w, φ) ∼ (h, β_k(φ)) for h = w·k⁻¹
                    let h = group.mul(w, &group.inv(k));
                    match word_index.get(&h) {
                        Some(&hi) => {
                            let (a, b) = (
                                find(&mut root, pair(wi, phi)),
                                find(&mut root, pair(hi, psi)),
                            );
                            if a != b {
                                root[a.max(b)] = a.min(b);
                            }
                        }
                        None => escapes_ball[pair(wi, phi)] = true,
                    }
                }
            }
        }

        // gather classes and order them canonically
        let key = |&(w, phi): &(usize, CharId)| {
            (group.word_length(&ball[w]), ball[w].clone(), phi)
        };
        let mut buckets: HashMap<usize, (Vec<(usize, CharId)>, bool)> = HashMap::new();
        for w in 0..ball.len() {
            for phi in 0..nchars {
                let p = pair(w, phi);
                let r = find(&mut root, p);
                let bucket = buckets.entry(r).or_default();
                bucket.0.push((w, phi));
                bucket.1 |= escapes_ball[p];
            }
        }
        let mut classes: Vec<OmegaClass> = buckets
            .into_values()
            .map(|(mut members, boundary)| {
                members.sort_by_key(key);
                OmegaClass { members, boundary }
            })
            .collect();
        classes.sort_by_key(|c| key(&c.members[0]));

        let mut class_of_pair = vec![vec![usize::MAX; nchars]; ball.len()];
        for (id, class) in classes.iter().enumerate() {
            for &(w, phi) in &class.members {
                class_of_pair[w][phi] = id;
            }
        }

        Ok(OmegaQuotient { ctx, ball, radius, word_index, identity_index, class_of_pair, classes })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn ball(&self) -> &[GroupElem] {
        &self.ball
    }

    pub fn classes(&self) -> &[OmegaClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Canonical representative of a class.
    pub fn representative(&self, class: usize) -> (&GroupElem, CharId) {
        let (w, phi) = self.classes[class].members[0];
        (&self.ball[w], phi)
    }

    pub fn class_of(&self, g: &GroupElem, phi: CharId) -> Option<usize> {
        let &w = self.word_index.get(g)?;
        self.class_of_pair[w].get(phi).copied()
    }

    /// The embedding ι: φ ↦ [1, φ].
    pub fn iota(&self, phi: CharId) -> usize {
        self.class_of_pair[self.identity_index][phi]
    }

    /// Whether a class lies in the embedded copy of the character space.
    pub fn in_iota_image(&self, class: usize) -> bool {
        self.classes[class].members.iter().any(|&(w, _)| w == self.identity_index)
    }

    /// τ_g([h, φ]) = [g·h, φ], evaluated on the first member whose
    /// translate stays inside the ball.
    pub fn tau(&self, g: &GroupElem, class: usize) -> Result<usize, EnvelopeError> {
        let group = self.ctx.grading().group();
        for &(w, phi) in &self.classes[class].members {
            let gh = group.mul(g, &self.ball[w]);
            if let Some(&hi) = self.word_index.get(&gh) {
                return Ok(self.class_of_pair[hi][phi]);
            }
        }
        Err(EnvelopeError::BallTooSmall { radius: self.radius })
    }

    /// ι is injective (distinct characters land in distinct classes).
    pub fn check_iota_injective(&self) -> bool {
        let mut seen = HashSet::new();
        (0..self.ctx.spectrum().len()).all(|phi| seen.insert(self.iota(phi)))
    }

    /// ι intertwines β with τ: [1, β_g(φ)] = τ_g([1, φ]) wherever β_g is
    /// defined, for every grade inside the ball.
    pub fn check_intertwine(&self) -> Result<bool, EnvelopeError> {
        for g in self.ctx.beta_grades()? {
            if !self.word_index.contains_key(&g) {
                continue;
            }
            for phi in 0..self.ctx.spectrum().len() {
                if let Some(psi) = self.ctx.beta_partial(&g, phi)? {
                    if self.iota(psi) != self.tau(&g, self.iota(phi))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every class is a ball-translate of an embedded character: for each
    /// member (g, φ), τ_g(ι(φ)) lands back in the class.
    pub fn check_orbit_coverage(&self) -> Result<bool, EnvelopeError> {
        for (id, class) in self.classes.iter().enumerate() {
            for &(w, phi) in &class.members {
                if self.tau(&self.ball[w].clone(), self.iota(phi))? != id {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The deduplicated family {τ_g(D_e) : g in the ball, e ∈ E^×} as sets
    /// of Ω-classes.
    pub fn v_family(&self) -> TaggedFamily {
        let spectrum = self.ctx.spectrum();
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        let mut sets = Vec::new();
        let mut tags = Vec::new();
        for (w, g) in self.ball.iter().enumerate() {
            for e in self.ctx.table().nonzero_idempotents() {
                let d_e = spectrum.d_set(e).expect("nonzero idempotents have D-sets");
                let mut members = BitSet::new(self.classes.len());
                for phi in d_e.members.iter() {
                    members.insert(self.class_of_pair[w][phi]);
                }
                if !seen.contains_key(&members) {
                    seen.insert(members.clone(), sets.len());
                    sets.push(CompactOpenSet { members, description: SetDescription::Explicit });
                    tags.push((g.clone(), e));
                }
            }
        }
        let family = BasisFamily::new(sets).expect("translates are nonempty and sized alike");
        TaggedFamily { family, tags }
    }

    /// Verifies (i) intersection-closure, (ii) independence of the
    /// translated family, and (iii) that every β_g(D_e) is empty or again
    /// a D-set.
    pub fn check_basistranslate(&self) -> Result<BasisTranslateReport, EnvelopeError> {
        let tagged = self.v_family();
        let sets = tagged.family.sets();

        let independence = is_independent(&tagged.family);

        let mut intersection_failure = None;
        'outer: for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let mut inter = sets[i].members.clone();
                inter.intersect_with(&sets[j].members);
                if !inter.is_empty() && !sets.iter().any(|s| s.members == inter) {
                    intersection_failure = Some((i, j));
                    break 'outer;
                }
            }
        }

        let spectrum = self.ctx.spectrum();
        let nchars = spectrum.len();
        let mut image_failure = None;
        'grades: for g in self.ctx.beta_grades()? {
            for e in self.ctx.table().nonzero_idempotents() {
                let d_e = spectrum.d_set(e).expect("nonzero idempotent");
                let mut image = BitSet::new(nchars);
                for phi in d_e.members.iter() {
                    if let Some(psi) = self.ctx.beta_partial(&g, phi)? {
                        image.insert(psi);
                    }
                }
                let ok = image.is_empty()
                    || self.ctx.table().nonzero_idempotents().iter().any(|&f| {
                        spectrum.d_set(f).expect("nonzero idempotent").members == image
                    });
                if !ok {
                    image_failure = Some((g.clone(), e));
                    break 'grades;
                }
            }
        }

        Ok(BasisTranslateReport {
            member_count: sets.len(),
            independence,
            intersection_failure,
            image_failure,
        })
    }

    /// Cross-checks the translate-of-a-D-set law on every in-ball grade g
    /// and idempotent e: the part of τ_g(D_e) inside ι(Ê) is exactly
    /// D_{s_g·e·s_g*}, and τ_g(D_e) ⊆ ι(Ê) exactly when e ≤ s_g*·s_g.
    pub fn check_gaction(&self) -> Result<Option<GActionWitness>, EnvelopeError> {
        let section = self.ctx.section()?;
        let s1 = &self.ctx.adjoined().table;
        let spectrum = self.ctx.spectrum();
        let zero = s1.zero();
        for g in self.ctx.beta_grades()? {
            let Some(&w) = self.word_index.get(&g) else { continue };
            let s_g = section.section_of(&g).expect("grade from the section");
            let dom = s1.product(s1.star_of(s_g), s_g);
            for e in self.ctx.table().nonzero_idempotents() {
                let d_e = spectrum.d_set(e).expect("nonzero idempotent");

                // characters pulled back from τ_g(D_e) ∩ ι(Ê)
                let mut pulled = BitSet::new(spectrum.len());
                let mut all_embedded = true;
                for phi in d_e.members.iter() {
                    let class = self.class_of_pair[w][phi];
                    let embedded = self.in_iota_image(class);
                    all_embedded &= embedded;
                    if embedded {
                        let (_, psi) = self.classes[class]
                            .members
                            .iter()
                            .copied()
                            .find(|&(wi, _)| wi == self.identity_index)
                            .expect("embedded class contains an identity pair");
                        pulled.insert(psi);
                    }
                }

                let f = s1.product(s1.product(s_g, e), s1.star_of(s_g));
                let expected = if f == zero {
                    BitSet::new(spectrum.len())
                } else {
                    spectrum.d_set(f).expect("conjugate of an idempotent").members.clone()
                };
                if pulled != expected {
                    return Ok(Some(GActionWitness {
                        g,
                        e,
                        reason: "translate meets the character space away from the \
                                 conjugated D-set"
                            .to_string(),
                    }));
                }
                if all_embedded != s1.leq(e, dom) {
                    return Ok(Some(GActionWitness {
                        g,
                        e,
                        reason: "containment in the character space disagrees with the \
                                 domain comparison"
                            .to_string(),
                    }));
                }
            }
        }
        Ok(None)
    }
}
