//! Finite inverse semigroups with zero: tables, axioms, order, closure.

pub mod bijection;
pub mod closure;
pub mod parse;
pub mod table;
pub mod validate;

pub use bijection::{BijectionError, PartialBijection};
pub use closure::{close, Closure, ClosureError, DEFAULT_CLOSURE_CAP};
pub use parse::{parse_table, render_table, ParseError};
pub use table::{
    Adjoined, Elem, InverseSemigroupTable, NaturalOrder, ProductRule, ShapeError, ZeroFVerdict,
    DENSE_LIMIT,
};
pub use validate::{validate, validate_excluding, ValidationReport, Violation};
