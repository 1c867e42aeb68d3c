//! Left inverse hulls of finitely generated submonoids of ℤ.
//!
//! A submonoid `P ⊆ ℤ` generated by positive integers acts on itself by the
//! left-translation injections `λ_p(q) = p + q`.  The inverse semigroup those
//! injections generate — the left inverse hull — consists of partial maps
//! `p ↦ g + p`, each determined by a group offset `g` and an explicit domain
//! set.  With gcd-1 generators every domain that can arise is a finite set of
//! sporadic points followed by a full tail `[N, ∞)`, so the arithmetic here
//! is exact: no window, no truncation.

use std::collections::BTreeSet;
use std::fmt;

pub mod pipeline;

pub use pipeline::{
    compression, hull_generate, hull_ktheory, shape_catalogue, toeplitz_check, word_display,
    Hull, HullError, HullOptions, ToeplitzReport, ToeplitzStatus,
};

/// A set of integers of the form `sporadic ∪ [threshold, ∞)`.
///
/// Canonical: sporadic points are sorted, all below the threshold, and the
/// threshold is minimal (`threshold − 1` is never sporadic).  Closed under
/// the two operations the hull needs — translation and intersection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpsetDomain {
    sporadic: Vec<i64>,
    threshold: i64,
}

impl UpsetDomain {
    pub fn new(sporadic: impl IntoIterator<Item = i64>, threshold: i64) -> UpsetDomain {
        let mut sporadic: BTreeSet<i64> = sporadic.into_iter().collect();
        let mut threshold = threshold;
        sporadic.retain(|&x| x < threshold);
        while sporadic.remove(&(threshold - 1)) {
            threshold -= 1;
        }
        UpsetDomain { sporadic: sporadic.into_iter().collect(), threshold }
    }

    /// The tail `[threshold, ∞)` with no sporadic points.
    pub fn tail(threshold: i64) -> UpsetDomain {
        UpsetDomain { sporadic: Vec::new(), threshold }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.threshold || self.sporadic.binary_search(&x).is_ok()
    }

    pub fn minimum(&self) -> i64 {
        self.sporadic.first().copied().unwrap_or(self.threshold)
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn sporadic(&self) -> &[i64] {
        &self.sporadic
    }

    pub fn translate(&self, g: i64) -> UpsetDomain {
        UpsetDomain {
            sporadic: self.sporadic.iter().map(|x| x + g).collect(),
            threshold: self.threshold + g,
        }
    }

    pub fn intersect(&self, other: &UpsetDomain) -> UpsetDomain {
        let threshold = self.threshold.max(other.threshold);
        UpsetDomain::new(
            self.members_below(threshold).into_iter().filter(|&x| other.contains(x)),
            threshold,
        )
    }

    pub fn is_subset(&self, other: &UpsetDomain) -> bool {
        self.sporadic.iter().all(|&x| other.contains(x))
            && (self.threshold..other.threshold).all(|x| other.contains(x))
    }

    /// The members strictly below `bound`, ascending.
    pub fn members_below(&self, bound: i64) -> Vec<i64> {
        let mut out: Vec<i64> =
            self.sporadic.iter().copied().filter(|&x| x < bound).collect();
        out.extend(self.threshold..bound);
        out
    }

    /// Translated so the minimum sits at 0 — the shape of the set, the key
    /// under which translates are identified.
    pub fn normalized(&self) -> UpsetDomain {
        self.translate(-self.minimum())
    }
}

impl fmt::Display for UpsetDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.sporadic.is_empty() {
            let pts: Vec<String> = self.sporadic.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}} ∪ ", pts.join(", "))?;
        }
        write!(f, "[{}, ∞)", self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("at least one positive generator is required")]
    NoGenerators,
}

/// A submonoid of ℤ given by positive generators, with an exact membership
/// set.  Generators with a common divisor are divided through by the gcd
/// (an isomorphic monoid); the factor is kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmonoidZ {
    generators: Vec<u64>,
    scaled: Vec<u64>,
    scale: u64,
    domain: UpsetDomain,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl SubmonoidZ {
    pub fn new(generators: &[u64]) -> Result<SubmonoidZ, MonoidError> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(MonoidError::NoGenerators);
        }
        let scale = gens.iter().copied().fold(0, gcd);
        let scaled: Vec<u64> = gens.iter().map(|g| g / scale).collect();

        // reachability scan; the run-detection bound grows until a full run
        // of `min` consecutive members certifies the tail
        let min = scaled[0] as usize;
        let max = *scaled.last().unwrap() as usize;
        let mut bound = min * max + max + 1;
        let domain = loop {
            let mut member = vec![false; bound + 1];
            member[0] = true;
            for x in 0..=bound {
                if member[x] {
                    for &g in &scaled {
                        if x + (g as usize) <= bound {
                            member[x + g as usize] = true;
                        }
                    }
                }
            }
            if let Some(run_start) =
                (0..=bound.saturating_sub(min - 1)).find(|&x| (x..x + min).all(|y| member[y]))
            {
                let threshold = (0..=run_start).rev().take_while(|&x| member[x]).last().unwrap();
                let sporadic = (0..threshold).filter(|&x| member[x]).map(|x| x as i64);
                break UpsetDomain::new(sporadic, threshold as i64);
            }
            bound *= 2;
            assert!(bound < (1 << 24), "no tail found; generators cannot have gcd 1");
        };

        Ok(SubmonoidZ { generators: gens, scaled, scale, domain })
    }

    /// Membership in the scaled (gcd-1) coordinates.
    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && self.domain.contains(x)
    }

    /// The monoid as a set, in scaled coordinates.
    pub fn domain(&self) -> &UpsetDomain {
        &self.domain
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Generators divided by the gcd; the monoid actually worked in.
    pub fn scaled_generators(&self) -> &[u64] {
        &self.scaled
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Nonnegative integers outside the monoid (all below the threshold).
    pub fn gaps(&self) -> Vec<i64> {
        (0..self.domain.threshold()).filter(|&x| !self.domain.contains(x)).collect()
    }

    pub fn describe(&self) -> String {
        let list = |gens: &[u64]| {
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        };
        if self.scale == 1 {
            format!("⟨{}⟩", list(&self.generators))
        } else {
            format!(
                "⟨{}⟩ (scaled by {} to ⟨{}⟩)",
                list(&self.generators),
                self.scale,
                list(&self.scaled)
            )
        }
    }
}

/// A nonzero element of the left inverse hull: the partial injection
/// `p ↦ offset + p` defined on `domain`.
///
/// Products of nonzero elements are never zero here — domains are upsets, so
/// every intersection still contains a tail.  The hull's formal zero is kept
/// out of the element type and accounted for at the reporting layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullElement {
    offset: i64,
    domain: UpsetDomain,
}

impl HullElement {
    /// Left translation by a monoid element: `q ↦ p + q` on all of the monoid.
    pub fn shift(p: i64, monoid: &SubmonoidZ) -> HullElement {
        debug_assert!(monoid.contains(p));
        HullElement { offset: p, domain: monoid.domain().clone() }
    }

    pub fn identity(monoid: &SubmonoidZ) -> HullElement {
        HullElement::shift(0, monoid)
    }

    pub fn new(offset: i64, domain: UpsetDomain) -> HullElement {
        HullElement { offset, domain }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn domain(&self) -> &UpsetDomain {
        &self.domain
    }

    pub fn range(&self) -> UpsetDomain {
        self.domain.translate(self.offset)
    }

    pub fn apply(&self, p: i64) -> Option<i64> {
        self.domain.contains(p).then(|| self.offset + p)
    }

    /// `self ∘ other` — apply `other` first.
    pub fn compose(&self, other: &HullElement) -> HullElement {
        HullElement {
            offset: self.offset + other.offset,
            domain: other.domain.intersect(&self.domain.translate(-other.offset)),
        }
    }

    pub fn star(&self) -> HullElement {
        HullElement { offset: -self.offset, domain: self.domain.translate(self.offset) }
    }

    pub fn is_idempotent(&self) -> bool {
        self.offset == 0
    }
}

impl fmt::Display for HullElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+} on {})", self.offset, self.domain)
    }
}
