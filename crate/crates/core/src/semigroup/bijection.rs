//! Partial bijections of a finite ground set `{0, …, ground-1}`.
//!
//! These are the concrete generators fed to the closure engine: composing
//! and starring partial bijections builds a symmetric-inverse-monoid model
//! of whatever semigroup the generators present.

use std::fmt;

/// A partially defined injection on `{0, …, ground-1}`.
///
/// `map[x] = Some(y)` means the bijection sends `x` to `y`; injectivity is
/// enforced at construction.  The empty bijection plays the role of zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    ground: usize,
    map: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BijectionError {
    #[error("target {target} out of range for ground set of size {ground}")]
    TargetRange { target: usize, ground: usize },
    #[error("targets collide: {x} and {y} both map to {target}")]
    NotInjective { x: usize, y: usize, target: usize },
    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(usize, usize),
}

impl PartialBijection {
    /// The nowhere-defined bijection (the zero element).
    pub fn empty(ground: usize) -> Self {
        PartialBijection { ground, map: vec![None; ground] }
    }

    /// Identity on the whole ground set.
    pub fn identity(ground: usize) -> Self {
        PartialBijection { ground, map: (0..ground as u32).map(Some).collect() }
    }

    /// Identity restricted to `domain`.
    pub fn identity_on(ground: usize, domain: &[usize]) -> Self {
        let mut map = vec![None; ground];
        for &x in domain {
            map[x] = Some(x as u32);
        }
        PartialBijection { ground, map }
    }

    /// Builds from explicit `(source, target)` pairs, checking injectivity.
    pub fn from_pairs(ground: usize, pairs: &[(usize, usize)]) -> Result<Self, BijectionError> {
        let mut map = vec![None; ground];
        let mut seen_target: Vec<Option<usize>> = vec![None; ground];
        for &(x, y) in pairs {
            if x >= ground {
                return Err(BijectionError::TargetRange { target: x, ground });
            }
            if y >= ground {
                return Err(BijectionError::TargetRange { target: y, ground });
            }
            if let Some(prev) = seen_target[y] {
                if map[x] != Some(y as u32) {
                    return Err(BijectionError::NotInjective { x: prev, y: x, target: y });
                }
            }
            map[x] = Some(y as u32);
            seen_target[y] = Some(x);
        }
        Ok(PartialBijection { ground, map })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten().map(|y| y as usize)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground).filter(move |&x| self.map[x].is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(|m| m.is_none())
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &PartialBijection) -> Result<PartialBijection, BijectionError> {
        if self.ground != other.ground {
            return Err(BijectionError::GroundMismatch(self.ground, other.ground));
        }
        let mut map = vec![None; self.ground];
        for x in 0..self.ground {
            if let Some(mid) = other.map[x] {
                if let Some(y) = self.map[mid as usize] {
                    map[x] = Some(y);
                }
            }
        }
        Ok(PartialBijection { ground: self.ground, map })
    }

    /// The inverse partial bijection (the star operation).
    pub fn inverse(&self) -> PartialBijection {
        let mut map = vec![None; self.ground];
        for x in 0..self.ground {
            if let Some(y) = self.map[x] {
                map[y as usize] = Some(x as u32);
            }
        }
        PartialBijection { ground: self.ground, map }
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for x in 0..self.ground {
            if let Some(y) = self.map[x] {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{}↦{}", x, y)?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}
