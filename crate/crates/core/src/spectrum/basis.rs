//! Basis predicates over families of compact-open sets: independence,
//! generation of the full Boolean ring, and the regular-basis conjunction.

use std::collections::HashSet;

use super::CompactOpenSet;
use crate::bits::BitSet;

/// Budget for the Boolean-closure fixpoint; beyond this many generated sets
/// the check fails loudly instead of grinding on.
pub const GENERATION_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("families must not contain the empty set (member {0})")]
    EmptyMember(usize),
    #[error("member {member} lives in a universe of size {got}, expected {expected}")]
    UniverseMismatch { member: usize, got: usize, expected: usize },
    #[error("Boolean closure exceeded {cap} generated sets")]
    GenerationBudget { cap: usize },
}

/// A family of nonempty compact-open sets over one universe.
#[derive(Debug, Clone)]
pub struct BasisFamily {
    sets: Vec<CompactOpenSet>,
    universe: usize,
}

impl BasisFamily {
    pub fn new(sets: Vec<CompactOpenSet>) -> Result<Self, BasisError> {
        let universe = sets.first().map(|s| s.members.len()).unwrap_or(0);
        for (i, s) in sets.iter().enumerate() {
            if s.members.len() != universe {
                return Err(BasisError::UniverseMismatch {
                    member: i,
                    got: s.members.len(),
                    expected: universe,
                });
            }
            if s.is_empty() {
                return Err(BasisError::EmptyMember(i));
            }
        }
        Ok(BasisFamily { sets, universe })
    }

    pub fn empty(universe: usize) -> Self {
        BasisFamily { sets: Vec::new(), universe }
    }

    pub fn sets(&self) -> &[CompactOpenSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
}

/// A member that equals the union of other members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceWitness {
    pub member: usize,
    pub cover: Vec<usize>,
}

/// `None` iff no member is a union of other members.
///
/// It suffices to test, for each member, the union of all *other* members
/// contained in it: any covering subfamily is contained in that union, and
/// that union is contained in the member.
pub fn is_independent(family: &BasisFamily) -> Option<IndependenceWitness> {
    for (i, target) in family.sets.iter().enumerate() {
        let mut union = BitSet::new(family.universe);
        let mut cover = Vec::new();
        for (j, other) in family.sets.iter().enumerate() {
            if j != i && other.members.is_subset(&target.members) {
                union.union_with(&other.members);
                cover.push(j);
            }
        }
        if !cover.is_empty() && union == target.members {
            return Some(IndependenceWitness { member: i, cover });
        }
    }
    None
}

/// True iff closing the family under pairwise ∩, ∪, ∖ yields every subset
/// of the universe.  The closure is computed outright (memoized on set
/// contents) and aborts loudly past [`GENERATION_CAP`].
pub fn is_generating(family: &BasisFamily) -> Result<bool, BasisError> {
    let n = family.universe;
    if n == 0 {
        return Ok(true);
    }
    if n >= usize::BITS as usize {
        // 2^n alone would overflow the budget comparison; the cap applies long before.
        return Err(BasisError::GenerationBudget { cap: GENERATION_CAP });
    }
    let target = 1usize << n;

    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut list: Vec<BitSet> = Vec::new();
    for s in &family.sets {
        if seen.insert(s.members.clone()) {
            list.push(s.members.clone());
        }
    }
    // ∅ is reachable as V ∖ V whenever the family is nonempty.
    if !list.is_empty() && seen.insert(BitSet::new(n)) {
        list.push(BitSet::new(n));
    }

    let mut frontier_start = 0;
    loop {
        let end = list.len();
        if seen.len() >= target {
            return Ok(true);
        }
        if frontier_start == end {
            return Ok(seen.len() == target);
        }
        for a_idx in 0..end {
            // each new pair (a, b) has at least one coordinate in the frontier
            let b_lo = if a_idx >= frontier_start { 0 } else { frontier_start };
            for b_idx in b_lo..end {
                let a = &list[a_idx];
                let b = &list[b_idx];
                let mut candidates = Vec::with_capacity(3);
                let mut inter = a.clone();
                inter.intersect_with(b);
                candidates.push(inter);
                let mut uni = a.clone();
                uni.union_with(b);
                candidates.push(uni);
                let mut diff = a.clone();
                diff.difference_with(b);
                candidates.push(diff);
                for c in candidates {
                    if !seen.contains(&c) {
                        if seen.len() + 1 > GENERATION_CAP {
                            return Err(BasisError::GenerationBudget { cap: GENERATION_CAP });
                        }
                        seen.insert(c.clone());
                        list.push(c);
                    }
                }
            }
        }
        frontier_start = end;
    }
}

/// Verdict of the three-part regular-basis test.
#[derive(Debug, Clone)]
pub struct RegularBasisReport {
    pub independence_witness: Option<IndependenceWitness>,
    pub generating: bool,
    /// A pair whose intersection is neither empty nor a member.
    pub intersection_witness: Option<(usize, usize)>,
}

impl RegularBasisReport {
    pub fn is_regular(&self) -> bool {
        self.independence_witness.is_none()
            && self.generating
            && self.intersection_witness.is_none()
    }
}

/// Regular basis = independent ∧ generating ∧ (family ∪ {∅} closed under
/// pairwise intersection).
pub fn is_regular_basis(family: &BasisFamily) -> Result<RegularBasisReport, BasisError> {
    let member_sets: HashSet<&BitSet> = family.sets.iter().map(|s| &s.members).collect();
    let mut intersection_witness = None;
    'outer: for i in 0..family.sets.len() {
        for j in i + 1..family.sets.len() {
            let mut inter = family.sets[i].members.clone();
            inter.intersect_with(&family.sets[j].members);
            if inter.count() != 0 && !member_sets.contains(&inter) {
                intersection_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(RegularBasisReport {
        independence_witness: is_independent(family),
        generating: is_generating(family)?,
        intersection_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain_semilattice, meet_semilattice, one_edge_graph_table};
    use crate::spectrum::{SetDescription, Spectrum};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set_of(universe: usize, members: &[usize]) -> CompactOpenSet {
        CompactOpenSet {
            members: BitSet::from_indices(universe, members.iter().copied()),
            description: SetDescription::Explicit,
        }
    }

    #[test]
    fn d_basis_is_a_regular_basis_on_fixtures() {
        for t in [meet_semilattice(), chain_semilattice(3), one_edge_graph_table()] {
            let sp = Spectrum::new(&t, &[]);
            let family = sp.d_basis();
            let report = is_regular_basis(&family).unwrap();
            assert!(report.is_regular(), "{:?}", report);
        }
    }

    #[test]
    fn union_member_breaks_independence() {
        // {A, B, A∪B} with A, B disjoint nonempty
        let family = BasisFamily::new(vec![
            set_of(4, &[0]),
            set_of(4, &[1, 2]),
            set_of(4, &[0, 1, 2]),
        ])
        .unwrap();
        let w = is_independent(&family).unwrap();
        assert_eq!(w.member, 2);
        assert_eq!(w.cover, vec![0, 1]);
    }

    #[test]
    fn whole_space_alone_does_not_generate() {
        // two characters, one member = everything: closure is {∅, Ê}
        let family = BasisFamily::new(vec![set_of(2, &[0, 1])]).unwrap();
        assert_eq!(is_generating(&family), Ok(false));
    }

    #[test]
    fn singletons_generate() {
        let family =
            BasisFamily::new((0..5).map(|i| set_of(5, &[i])).collect()).unwrap();
        assert_eq!(is_generating(&family), Ok(true));
        assert!(is_independent(&family).is_none());
    }

    #[test]
    fn empty_family_edge_cases() {
        assert_eq!(is_generating(&BasisFamily::empty(0)), Ok(true));
        assert!(is_regular_basis(&BasisFamily::empty(0)).unwrap().is_regular());
        assert_eq!(is_generating(&BasisFamily::empty(3)), Ok(false));
    }

    #[test]
    fn empty_members_are_rejected() {
        let err = BasisFamily::new(vec![set_of(3, &[])]);
        assert!(matches!(err, Err(BasisError::EmptyMember(0))));
    }

    /// Brute-force independence: try every subfamily of the others.
    fn independent_brute(family: &BasisFamily) -> bool {
        let k = family.len();
        for i in 0..k {
            let others: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            for mask in 1u32..(1 << others.len()) {
                let mut union = BitSet::new(family.universe());
                for (pos, &j) in others.iter().enumerate() {
                    if mask & (1 << pos) != 0 {
                        union.union_with(&family.sets()[j].members);
                    }
                }
                if union == family.sets()[i].members {
                    return false;
                }
            }
        }
        true
    }

    /// Point-separation oracle: a family generates the full power set iff
    /// every point is covered and distinct points are separated.
    fn generating_oracle(family: &BasisFamily) -> bool {
        let n = family.universe();
        for x in 0..n {
            if !family.sets().iter().any(|s| s.members.contains(x)) {
                return false;
            }
            for y in (x + 1)..n {
                if !family
                    .sets()
                    .iter()
                    .any(|s| s.members.contains(x) != s.members.contains(y))
                {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn random_families_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba51);
        for _ in 0..200 {
            let universe = rng.gen_range(1..=5);
            let count = rng.gen_range(1..=5);
            let mut sets = Vec::new();
            for _ in 0..count {
                let mut members = Vec::new();
                while members.is_empty() {
                    members = (0..universe).filter(|_| rng.gen_bool(0.5)).collect();
                }
                sets.push(set_of(universe, &members));
            }
            let family = BasisFamily::new(sets).unwrap();
            assert_eq!(is_independent(&family).is_none(), independent_brute(&family));
            assert_eq!(is_generating(&family).unwrap(), generating_oracle(&family));
        }
    }
}
