//! Toolkit for reducing the K-theory of reduced inverse-semigroup C*-algebras
//! to semigroup combinatorics.
//!
//! The library verifies, on concrete finite (or finitely truncated) inverse
//! semigroups with zero, the hypotheses under which `K_*(C*_r(S))` decomposes
//! as a direct sum over idempotent classes of the K-theory of stabilizer
//! subgroup C*-algebras, and assembles that decomposition as a formal
//! invariant.  Every analytic step that cannot be decided at finite scale is
//! either verified exhaustively on a truncation (and flagged as conditional)
//! or recorded as satisfied-by-discreteness; nothing is silently assumed.
//!
//! Module map:
//!
//! * [`semigroup`] — multiplication tables, partial bijections, natural
//!   order, axiom validation, closure enumeration.
//! * [`grading`] — groups (free / free abelian / finite-by-table), reduced
//!   words, gradings (idempotent-pure morphisms), maximal sections.
//! * [`spectrum`] — characters of the idempotent semilattice, compact-open
//!   subsets `D_e`, basis independence / generation tests.
//! * [`envelope`] — germs of the universal groupoid, the enveloping
//!   translation action on a ball, cocycle faithfulness.
//! * [`ktheory`] — idempotent equivalence classes, stabilizer groups,
//!   recognizers, K-value tables, report assembly.
//! * [`graph`] — graph inverse semigroups with depth truncation.
//! * [`hull`] — inverse hulls of submonoids of the integers.
//! * [`tiling`] — one-dimensional tiling semigroups (doubly pointed
//!   patch classes).

pub mod bits;
pub mod envelope;
pub mod fixtures;
pub mod grading;
pub mod graph;
pub mod hull;
pub mod ktheory;
pub(crate) mod par;
pub mod semigroup;
pub mod spectrum;
pub mod tiling;

/// Report schema identifier emitted in every JSON report.
pub const REPORT_SCHEMA: &str = "iskt-report/1";
