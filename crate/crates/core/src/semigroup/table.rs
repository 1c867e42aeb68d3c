//! Finite inverse semigroups with zero, presented by multiplication table.
//!
//! A table stores the full `n × n` product matrix when `n ≤ DENSE_LIMIT` and
//! otherwise answers products on demand through a [`ProductRule`] backend
//! (e.g. symbolic path arithmetic for graph truncations).  Tables are
//! immutable; derived data (natural order, idempotents, identity) is computed
//! lazily and cached.
//!
//! Some constructions (depth-truncated families) contain a reserved absorbing
//! stand-in element for products that leave the truncation window.  Such
//! elements are never special-cased here; instead every scan takes an
//! `excluded` list and skips both the listed elements and any check whose
//! intermediate product lands on one.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::bits::{BitMatrix, BitSet};
use crate::par;

/// Largest element count for which the full product matrix is materialized.
pub const DENSE_LIMIT: usize = 4096;

/// Index of an element within its table.
pub type Elem = usize;

/// On-demand product backend for tables too large to store densely.
pub trait ProductRule: Send + Sync {
    fn product(&self, a: Elem, b: Elem) -> Elem;
}

#[derive(Clone)]
pub(crate) enum Products {
    Dense { n: usize, matrix: Arc<Vec<u32>> },
    Rule(Arc<dyn ProductRule>),
}

impl Products {
    #[inline]
    fn product(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Products::Dense { n, matrix } => matrix[a * n + b] as Elem,
            Products::Rule(r) => r.product(a, b),
        }
    }
}

/// Structural errors raised when assembling a table (content errors such as
/// broken associativity are diagnosed by [`validate`](super::validate) instead).
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("a table needs at least the zero element")]
    NoElements,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("product matrix has {got} entries, expected {expected}")]
    MatrixSize { got: usize, expected: usize },
    #[error("star table has {got} entries, expected {expected}")]
    StarSize { got: usize, expected: usize },
    #[error("element index {index} out of range (n = {n})")]
    IndexRange { index: usize, n: usize },
}

/// Verdict of the 0-F-inverse check: every nonzero element must lie beneath
/// exactly one maximal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroFVerdict {
    /// Holds; `cover[s]` is the unique maximal element above each nonzero `s`.
    ZeroFInverse { cover: Vec<Option<Elem>> },
    /// `s` lies beneath the distinct maximal elements `m1` and `m2`.
    TwoCovers { s: Elem, m1: Elem, m2: Elem },
    /// `s` lies beneath no maximal element (impossible in a valid finite
    /// table; reachable only through corrupted order data).
    NoCover { s: Elem },
}

impl ZeroFVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ZeroFVerdict::ZeroFInverse { .. })
    }
}

/// The natural partial order `s ≤ t  ⟺  s = s·s*·t`, cached as a bit matrix.
///
/// The equivalent characterization `s = t·s*·s` is evaluated alongside and
/// the first disagreement recorded; likewise the first antisymmetry failure.
/// Both are `None` on every axiom-satisfying table, but user-supplied tables
/// are diagnosed, not trusted.
#[derive(Clone)]
pub struct NaturalOrder {
    leq: BitMatrix,
    pub characterization_mismatch: Option<(Elem, Elem)>,
    pub antisymmetry_violation: Option<(Elem, Elem)>,
}

impl NaturalOrder {
    #[inline]
    pub fn leq(&self, s: Elem, t: Elem) -> bool {
        self.leq.get(s, t)
    }

    /// All `t` with `s ≤ t`, as a bit row.
    pub fn up_set(&self, s: Elem) -> &BitSet {
        self.leq.row(s)
    }
}

/// A finite inverse semigroup with zero.
#[derive(Clone)]
pub struct InverseSemigroupTable {
    names: Vec<String>,
    by_name: HashMap<String, Elem>,
    products: Products,
    star: Vec<u32>,
    zero: Elem,
    identity: OnceLock<Option<Elem>>,
    order: OnceLock<NaturalOrder>,
    idempotents: OnceLock<Vec<Elem>>,
}

impl std::fmt::Debug for InverseSemigroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InverseSemigroupTable")
            .field("n", &self.n())
            .field("zero", &self.zero)
            .field("dense", &self.is_dense())
            .finish()
    }
}

fn check_names(names: &[String]) -> Result<HashMap<String, Elem>, ShapeError> {
    if names.is_empty() {
        return Err(ShapeError::NoElements);
    }
    let mut by_name = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if by_name.insert(name.clone(), i).is_some() {
            return Err(ShapeError::DuplicateName(name.clone()));
        }
    }
    Ok(by_name)
}

fn check_star(star: &[u32], n: usize) -> Result<(), ShapeError> {
    if star.len() != n {
        return Err(ShapeError::StarSize { got: star.len(), expected: n });
    }
    if let Some(&bad) = star.iter().find(|&&s| s as usize >= n) {
        return Err(ShapeError::IndexRange { index: bad as usize, n });
    }
    Ok(())
}

impl InverseSemigroupTable {
    /// Builds a dense table.  `matrix` is row-major: `matrix[a*n + b] = a·b`.
    pub fn from_dense(
        names: Vec<String>,
        matrix: Vec<u32>,
        star: Vec<u32>,
        zero: Elem,
    ) -> Result<Self, ShapeError> {
        let by_name = check_names(&names)?;
        let n = names.len();
        if matrix.len() != n * n {
            return Err(ShapeError::MatrixSize { got: matrix.len(), expected: n * n });
        }
        if let Some(&bad) = matrix.iter().find(|&&p| p as usize >= n) {
            return Err(ShapeError::IndexRange { index: bad as usize, n });
        }
        check_star(&star, n)?;
        if zero >= n {
            return Err(ShapeError::IndexRange { index: zero, n });
        }
        Ok(InverseSemigroupTable {
            names,
            by_name,
            products: Products::Dense { n, matrix: Arc::new(matrix) },
            star,
            zero,
            identity: OnceLock::new(),
            order: OnceLock::new(),
            idempotents: OnceLock::new(),
        })
    }

    /// Builds a table whose products are answered by `rule`.
    pub fn from_rule(
        names: Vec<String>,
        rule: Arc<dyn ProductRule>,
        star: Vec<u32>,
        zero: Elem,
    ) -> Result<Self, ShapeError> {
        let by_name = check_names(&names)?;
        let n = names.len();
        check_star(&star, n)?;
        if zero >= n {
            return Err(ShapeError::IndexRange { index: zero, n });
        }
        Ok(InverseSemigroupTable {
            names,
            by_name,
            products: Products::Rule(rule),
            star,
            zero,
            identity: OnceLock::new(),
            order: OnceLock::new(),
            idempotents: OnceLock::new(),
        })
    }

    /// Records a known identity (or known absence) so the lazy scan is skipped.
    pub fn with_identity_hint(self, identity: Option<Elem>) -> Self {
        let _ = self.identity.set(identity);
        self
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.products, Products::Dense { .. })
    }

    #[inline]
    pub fn product(&self, a: Elem, b: Elem) -> Elem {
        self.products.product(a, b)
    }

    #[inline]
    pub fn star_of(&self, s: Elem) -> Elem {
        self.star[s] as Elem
    }

    pub fn name(&self, s: Elem) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.by_name.get(name).copied()
    }

    pub(crate) fn products_handle(&self) -> Products {
        self.products.clone()
    }

    pub fn star_table(&self) -> &[u32] {
        &self.star
    }

    /// Two-sided identity, if one exists (an element `u` with `u·s = s·u = s`
    /// for every `s`).  Computed once on first use.
    pub fn identity(&self) -> Option<Elem> {
        *self.identity.get_or_init(|| {
            self.idempotents()
                .iter()
                .copied()
                .find(|&e| (0..self.n()).all(|s| self.product(e, s) == s && self.product(s, e) == s))
        })
    }

    /// All idempotents, including zero, in index order.
    pub fn idempotents(&self) -> &[Elem] {
        self.idempotents
            .get_or_init(|| (0..self.n()).filter(|&e| self.product(e, e) == e).collect())
    }

    /// Nonzero idempotents in index order, minus any excluded elements.
    pub fn nonzero_idempotents_excluding(&self, excluded: &[Elem]) -> Vec<Elem> {
        self.idempotents()
            .iter()
            .copied()
            .filter(|&e| e != self.zero && !excluded.contains(&e))
            .collect()
    }

    pub fn nonzero_idempotents(&self) -> Vec<Elem> {
        self.nonzero_idempotents_excluding(&[])
    }

    /// Natural-order test for one pair, without touching the cache:
    /// `s ≤ t ⟺ s = s·s*·t`.
    pub fn leq(&self, s: Elem, t: Elem) -> bool {
        let ss = self.product(s, self.star_of(s));
        self.product(ss, t) == s
    }

    /// The cached natural order.
    pub fn natural_order(&self) -> &NaturalOrder {
        self.order.get_or_init(|| {
            let n = self.n();
            let ss_star: Vec<Elem> = (0..n).map(|s| self.product(s, self.star_of(s))).collect();
            let star_ss: Vec<Elem> = (0..n).map(|s| self.product(self.star_of(s), s)).collect();
            let rows: Vec<(BitSet, Option<(Elem, Elem)>)> = par::map_range(0..n, |s| {
                let mut row = BitSet::new(n);
                let mut mismatch = None;
                for t in 0..n {
                    let left = self.product(ss_star[s], t) == s;
                    let right = self.product(t, star_ss[s]) == s;
                    if left != right && mismatch.is_none() {
                        mismatch = Some((s, t));
                    }
                    if left {
                        row.insert(t);
                    }
                }
                (row, mismatch)
            });
            let mut leq = BitMatrix::new(n);
            let mut characterization_mismatch = None;
            for (s, (row, mismatch)) in rows.into_iter().enumerate() {
                leq.set_row(s, row);
                if characterization_mismatch.is_none() {
                    characterization_mismatch = mismatch;
                }
            }
            let mut antisymmetry_violation = None;
            'outer: for s in 0..n {
                for t in (s + 1)..n {
                    if leq.get(s, t) && leq.get(t, s) {
                        antisymmetry_violation = Some((s, t));
                        break 'outer;
                    }
                }
            }
            NaturalOrder { leq, characterization_mismatch, antisymmetry_violation }
        })
    }

    /// Maximal elements: nonzero, non-excluded `s` with no strictly larger
    /// nonzero, non-excluded element.
    pub fn maximal_elements_excluding(&self, excluded: &[Elem]) -> Vec<Elem> {
        let order = self.natural_order();
        (0..self.n())
            .filter(|&s| s != self.zero && !excluded.contains(&s))
            .filter(|&s| {
                order
                    .up_set(s)
                    .iter()
                    .all(|t| t == s || t == self.zero || excluded.contains(&t))
            })
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<Elem> {
        self.maximal_elements_excluding(&[])
    }

    /// Checks that every nonzero element lies beneath exactly one maximal
    /// element.
    pub fn is_zero_f_inverse_excluding(&self, excluded: &[Elem]) -> ZeroFVerdict {
        let maximal = self.maximal_elements_excluding(excluded);
        let order = self.natural_order();
        let mut cover = vec![None; self.n()];
        for s in 0..self.n() {
            if s == self.zero || excluded.contains(&s) {
                continue;
            }
            let mut above = maximal.iter().copied().filter(|&m| order.leq(s, m));
            match (above.next(), above.next()) {
                (Some(m), None) => cover[s] = Some(m),
                (Some(m1), Some(m2)) => return ZeroFVerdict::TwoCovers { s, m1, m2 },
                (None, _) => return ZeroFVerdict::NoCover { s },
            }
        }
        ZeroFVerdict::ZeroFInverse { cover }
    }

    pub fn is_zero_f_inverse(&self) -> ZeroFVerdict {
        self.is_zero_f_inverse_excluding(&[])
    }

    /// Adjoins a two-sided identity unless one is already present.
    pub fn adjoin_identity(&self) -> Adjoined {
        if let Some(one) = self.identity() {
            return Adjoined { table: self.clone(), one, was_monoid: true };
        }
        let n = self.n();
        let mut name = "1".to_string();
        while self.by_name.contains_key(&name) {
            name.push('\'');
        }
        let mut names = self.names.clone();
        names.push(name);
        let mut star: Vec<u32> = self.star.clone();
        star.push(n as u32);
        let products = match &self.products {
            Products::Dense { matrix, .. } if n + 1 <= DENSE_LIMIT => {
                let m = n + 1;
                let mut ext = vec![0u32; m * m];
                for a in 0..n {
                    for b in 0..n {
                        ext[a * m + b] = matrix[a * n + b];
                    }
                }
                for s in 0..=n {
                    ext[s * m + n] = s as u32;
                    ext[n * m + s] = s as u32;
                }
                Products::Dense { n: m, matrix: Arc::new(ext) }
            }
            other => Products::Rule(Arc::new(AdjoinRule { inner: other.clone(), one: n })),
        };
        let by_name = check_names(&names).expect("fresh identity name cannot collide");
        let table = InverseSemigroupTable {
            names,
            by_name,
            products,
            star,
            zero: self.zero,
            identity: OnceLock::new(),
            order: OnceLock::new(),
            idempotents: OnceLock::new(),
        }
        .with_identity_hint(Some(n));
        Adjoined { table, one: n, was_monoid: false }
    }
}

/// Result of [`InverseSemigroupTable::adjoin_identity`].
#[derive(Debug, Clone)]
pub struct Adjoined {
    pub table: InverseSemigroupTable,
    /// Index of the identity in `table`.
    pub one: Elem,
    /// True when the input already had an identity (then `table` is a copy of
    /// the input and `one` points at the existing identity).
    pub was_monoid: bool,
}

struct AdjoinRule {
    inner: Products,
    one: Elem,
}

impl ProductRule for AdjoinRule {
    fn product(&self, a: Elem, b: Elem) -> Elem {
        if a == self.one {
            b
        } else if b == self.one {
            a
        } else {
            self.inner.product(a, b)
        }
    }
}
