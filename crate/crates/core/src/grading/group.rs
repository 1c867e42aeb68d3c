//! The three grading-group kinds and their element arithmetic.
//!
//! Groups are values: a [`Group`] describes the kind (free on a finite
//! alphabet, `ℤⁿ`, or finite-by-table) and owns the operations; a
//! [`GroupElem`] is an element in canonical form.  Canonical forms make
//! equality structural: free words are fully reduced, vectors have fixed
//! length, finite elements are table indices.

use std::collections::HashMap;

/// An element of a grading group, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    /// Reduced word: (letter index, inverted?) with no adjacent `x·x⁻¹`.
    Free(Vec<(u32, bool)>),
    /// Integer vector of the group's fixed dimension.
    Vector(Vec<i64>),
    /// Index into the finite group's table.
    Finite(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("letter index {letter} outside alphabet of size {size}")]
    AlphabetMismatch { letter: usize, size: usize },
    #[error("vector has length {got}, group dimension is {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("element index {index} out of range for finite group of order {order}")]
    IndexRange { index: usize, order: usize },
    #[error("element kind does not match group kind")]
    KindMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupTableError {
    #[error("group table must be square and nonempty")]
    Shape,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("entry out of range at row {row}, column {col}")]
    EntryRange { row: usize, col: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group presented by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    matrix: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

impl FiniteGroupTable {
    /// Validates the full group axioms (associativity, two-sided identity,
    /// inverses) before accepting the table.
    pub fn from_matrix(names: Vec<String>, matrix: Vec<u32>) -> Result<Self, GroupTableError> {
        let n = names.len();
        if n == 0 || matrix.len() != n * n {
            return Err(GroupTableError::Shape);
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(GroupTableError::DuplicateName(name.clone()));
            }
        }
        for (pos, &v) in matrix.iter().enumerate() {
            if v as usize >= n {
                return Err(GroupTableError::EntryRange { row: pos / n, col: pos % n });
            }
        }
        let mul = |a: usize, b: usize| matrix[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or(GroupTableError::NoIdentity)? as u32;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity as usize && mul(b, a) == identity as usize)
                .ok_or(GroupTableError::NoInverse(a))?;
            inverse[a] = inv as u32;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupTableError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { names, matrix, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A grading group: the closed set of kinds the toolkit works with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    /// Free group on a finite alphabet of named letters.
    Free { alphabet: Vec<String> },
    /// Free abelian group `ℤⁿ`.
    ZPow { n: usize },
    /// Finite group given by its multiplication table.
    Finite(FiniteGroupTable),
}

/// Cancels adjacent `x·x⁻¹` pairs; the result is the free-group normal form.
pub fn reduce_letters(letters: impl IntoIterator<Item = (u32, bool)>) -> Vec<(u32, bool)> {
    let mut stack: Vec<(u32, bool)> = Vec::new();
    for (letter, inv) in letters {
        if let Some(&(top, top_inv)) = stack.last() {
            if top == letter && top_inv != inv {
                stack.pop();
                continue;
            }
        }
        stack.push((letter, inv));
    }
    stack
}

impl Group {
    pub fn identity(&self) -> GroupElem {
        match self {
            Group::Free { .. } => GroupElem::Free(Vec::new()),
            Group::ZPow { n } => GroupElem::Vector(vec![0; *n]),
            Group::Finite(t) => GroupElem::Finite(t.identity),
        }
    }

    pub fn is_identity(&self, a: &GroupElem) -> bool {
        *a == self.identity()
    }

    /// Checks that `a` belongs to this group (kind, alphabet, dimension).
    pub fn check_elem(&self, a: &GroupElem) -> Result<(), GroupError> {
        match (self, a) {
            (Group::Free { alphabet }, GroupElem::Free(w)) => {
                for &(letter, _) in w {
                    if letter as usize >= alphabet.len() {
                        return Err(GroupError::AlphabetMismatch {
                            letter: letter as usize,
                            size: alphabet.len(),
                        });
                    }
                }
                Ok(())
            }
            (Group::ZPow { n }, GroupElem::Vector(v)) => {
                if v.len() != *n {
                    Err(GroupError::DimensionMismatch { got: v.len(), expected: *n })
                } else {
                    Ok(())
                }
            }
            (Group::Finite(t), GroupElem::Finite(i)) => {
                if *i as usize >= t.order() {
                    Err(GroupError::IndexRange { index: *i as usize, order: t.order() })
                } else {
                    Ok(())
                }
            }
            _ => Err(GroupError::KindMismatch),
        }
    }

    /// Builds a free-group element from an arbitrary letter sequence,
    /// reducing it to normal form.
    pub fn word_from_letters(
        &self,
        letters: impl IntoIterator<Item = (u32, bool)>,
    ) -> Result<GroupElem, GroupError> {
        match self {
            Group::Free { .. } => {
                let elem = GroupElem::Free(reduce_letters(letters));
                self.check_elem(&elem)?;
                Ok(elem)
            }
            _ => Err(GroupError::KindMismatch),
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        debug_assert!(self.check_elem(a).is_ok() && self.check_elem(b).is_ok());
        match (self, a, b) {
            (Group::Free { .. }, GroupElem::Free(u), GroupElem::Free(v)) => {
                GroupElem::Free(reduce_letters(u.iter().chain(v.iter()).copied()))
            }
            (Group::ZPow { .. }, GroupElem::Vector(u), GroupElem::Vector(v)) => {
                GroupElem::Vector(u.iter().zip(v).map(|(x, y)| x + y).collect())
            }
            (Group::Finite(t), GroupElem::Finite(i), GroupElem::Finite(j)) => {
                GroupElem::Finite(t.matrix[*i as usize * t.order() + *j as usize])
            }
            _ => panic!("element kind does not match group kind"),
        }
    }

    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        debug_assert!(self.check_elem(a).is_ok());
        match (self, a) {
            (Group::Free { .. }, GroupElem::Free(w)) => {
                GroupElem::Free(w.iter().rev().map(|&(l, i)| (l, !i)).collect())
            }
            (Group::ZPow { .. }, GroupElem::Vector(v)) => {
                GroupElem::Vector(v.iter().map(|x| -x).collect())
            }
            (Group::Finite(t), GroupElem::Finite(i)) => {
                GroupElem::Finite(t.inverse[*i as usize])
            }
            _ => panic!("element kind does not match group kind"),
        }
    }

    /// Word length used by ball enumeration: letters for free words, the L¹
    /// norm for vectors, 0/1 for finite elements (identity or not).
    pub fn word_length(&self, a: &GroupElem) -> usize {
        match a {
            GroupElem::Free(w) => w.len(),
            GroupElem::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            GroupElem::Finite(_) => {
                if self.is_identity(a) {
                    0
                } else {
                    1
                }
            }
        }
    }

    /// All elements of word length ≤ `radius`, in a fixed order (length,
    /// then lexicographic).  Finite groups return every element.
    pub fn ball(&self, radius: usize) -> Vec<GroupElem> {
        match self {
            Group::Free { alphabet } => {
                let k = alphabet.len() as u32;
                let mut out: Vec<GroupElem> = vec![self.identity()];
                let mut frontier: Vec<Vec<(u32, bool)>> = vec![Vec::new()];
                for _ in 0..radius {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for letter in 0..k {
                            for inv in [false, true] {
                                if let Some(&(last, last_inv)) = w.last() {
                                    if last == letter && last_inv != inv {
                                        continue;
                                    }
                                }
                                let mut w2 = w.clone();
                                w2.push((letter, inv));
                                next.push(w2);
                            }
                        }
                    }
                    out.extend(next.iter().cloned().map(GroupElem::Free));
                    frontier = next;
                }
                out
            }
            Group::ZPow { n } => {
                let mut out = Vec::new();
                let mut current = vec![0i64; *n];
                fn rec(
                    out: &mut Vec<GroupElem>,
                    current: &mut Vec<i64>,
                    pos: usize,
                    budget: i64,
                ) {
                    if pos == current.len() {
                        out.push(GroupElem::Vector(current.clone()));
                        return;
                    }
                    for v in -budget..=budget {
                        current[pos] = v;
                        rec(out, current, pos + 1, budget - v.abs());
                        current[pos] = 0;
                    }
                }
                if *n == 0 {
                    return vec![GroupElem::Vector(Vec::new())];
                }
                rec(&mut out, &mut current, 0, radius as i64);
                out.sort_by_key(|e| match e {
                    GroupElem::Vector(v) => {
                        (v.iter().map(|x| x.unsigned_abs()).sum::<u64>(), v.clone())
                    }
                    _ => unreachable!(),
                });
                out
            }
            Group::Finite(t) => (0..t.order() as u32).map(GroupElem::Finite).collect(),
        }
    }

    /// Renders an element using the group's names: `a b^-1 a^2`, `1` for the
    /// identity, `[1, -2]` for vectors, the element name for finite groups.
    pub fn format_elem(&self, a: &GroupElem) -> String {
        match (self, a) {
            (Group::Free { alphabet }, GroupElem::Free(w)) => {
                if w.is_empty() {
                    return "1".to_string();
                }
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < w.len() {
                    let (letter, inv) = w[i];
                    let mut run = 1;
                    while i + run < w.len() && w[i + run] == (letter, inv) {
                        run += 1;
                    }
                    let exp = if inv { -(run as i64) } else { run as i64 };
                    let name = &alphabet[letter as usize];
                    if exp == 1 {
                        parts.push(name.clone());
                    } else {
                        parts.push(format!("{}^{}", name, exp));
                    }
                    i += run;
                }
                parts.join(" ")
            }
            (Group::ZPow { .. }, GroupElem::Vector(v)) => {
                let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}]", inner.join(", "))
            }
            (Group::Finite(t), GroupElem::Finite(i)) => t.name(*i as usize).to_string(),
            _ => panic!("element kind does not match group kind"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordParseError {
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("malformed exponent in token {0:?}")]
    BadExponent(String),
    #[error("word syntax applies to free groups only")]
    NotFree,
}

impl Group {
    /// Parses the word syntax `a b^-1 c^2`; `1` or the empty string is the
    /// identity.  Free groups only.
    pub fn parse_word(&self, text: &str) -> Result<GroupElem, WordParseError> {
        let Group::Free { alphabet } = self else {
            return Err(WordParseError::NotFree);
        };
        let mut letters: Vec<(u32, bool)> = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp_text)) => {
                    let exp: i64 = exp_text
                        .parse()
                        .map_err(|_| WordParseError::BadExponent(token.to_string()))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            let letter = alphabet
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| WordParseError::UnknownLetter(name.to_string()))?
                as u32;
            let inv = exp < 0;
            for _ in 0..exp.unsigned_abs() {
                letters.push((letter, inv));
            }
        }
        Ok(GroupElem::Free(reduce_letters(letters)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_ab() -> Group {
        Group::Free { alphabet: vec!["a".into(), "b".into()] }
    }

    #[test]
    fn reduction_examples() {
        let g = free_ab();
        assert_eq!(g.parse_word("a a^-1").unwrap(), g.identity());
        let abba = g.parse_word("a b b^-1 a").unwrap();
        assert_eq!(abba, g.parse_word("a^2").unwrap());
        assert_eq!(g.format_elem(&abba), "a^2");
        // h(μ)h(ν)⁻¹ for μ = f·g, ν = f·h over {f,g,h}: no cancellation.
        let g3 = Group::Free { alphabet: vec!["f".into(), "g".into(), "h".into()] };
        let hmu = g3.parse_word("f g").unwrap();
        let hnu = g3.parse_word("f h").unwrap();
        let cocycle = g3.mul(&hmu, &g3.inv(&hnu));
        assert_eq!(g3.format_elem(&cocycle), "f g h^-1 f^-1");
    }

    #[test]
    fn reduce_is_idempotent() {
        let raw = vec![(0, false), (1, false), (1, true), (0, true), (0, false)];
        let once = reduce_letters(raw);
        let twice = reduce_letters(once.clone());
        assert_eq!(once, twice);
        assert_eq!(once, vec![(0, false)]);
    }

    #[test]
    fn free_ball_sizes() {
        let g = free_ab();
        // |B(r)| = 1 + 4·(3^r − 1)/2 for rank 2
        assert_eq!(g.ball(0).len(), 1);
        assert_eq!(g.ball(1).len(), 5);
        assert_eq!(g.ball(2).len(), 17);
        assert_eq!(g.ball(3).len(), 53);
        // all entries reduced and within radius
        for e in g.ball(3) {
            let GroupElem::Free(w) = &e else { unreachable!() };
            assert_eq!(*w, reduce_letters(w.clone()));
            assert!(w.len() <= 3);
        }
    }

    #[test]
    fn zpow_ball_and_arithmetic() {
        let g = Group::ZPow { n: 2 };
        // |{v ∈ ℤ²: |v|₁ ≤ 2}| = 1 + 4 + 8 = 13
        assert_eq!(g.ball(2).len(), 13);
        let a = GroupElem::Vector(vec![1, -2]);
        let b = GroupElem::Vector(vec![3, 1]);
        assert_eq!(g.mul(&a, &b), GroupElem::Vector(vec![4, -1]));
        assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        assert_eq!(g.format_elem(&a), "[1, -2]");
    }

    #[test]
    fn finite_group_table_validates() {
        // ℤ/3 by table
        let names = vec!["e".to_string(), "g".to_string(), "g2".to_string()];
        let matrix = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        let t = FiniteGroupTable::from_matrix(names, matrix).unwrap();
        assert_eq!(t.order(), 3);
        let g = Group::Finite(t);
        let x = GroupElem::Finite(1);
        assert_eq!(g.mul(&x, &x), GroupElem::Finite(2));
        assert_eq!(g.inv(&x), GroupElem::Finite(2));
        assert!(g.is_identity(&g.mul(&x, &g.inv(&x))));

        // broken: constant table has no identity
        let bad = FiniteGroupTable::from_matrix(
            vec!["x".to_string(), "y".to_string()],
            vec![0, 0, 0, 0],
        );
        assert_eq!(bad.unwrap_err(), GroupTableError::NoIdentity);
    }
}
