//! JSON format for gradings (`grading v1`).
//!
//! ```json
//! {
//!   "group": {"kind": "free", "alphabet": ["a", "b"]},
//!   "assignment": {"s": "a b^-1", "e": "1"}
//! }
//! ```
//!
//! Group kinds: `{"kind": "free", "alphabet": [...]}`,
//! `{"kind": "z^n", "n": 2}` (assignment values are integer arrays), or
//! `{"kind": "finite", "names": [...], "matrix": [[...], ...]}` (assignment
//! values are element names).  Every nonzero element of the table must be
//! assigned; the zero must not be.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::group::{FiniteGroupTable, Group, GroupElem, GroupTableError, WordParseError};
use super::morphism::{Grading, GradingError};
use crate::semigroup::table::InverseSemigroupTable;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum GroupSpec {
    #[serde(rename = "free")]
    Free { alphabet: Vec<String> },
    #[serde(rename = "z^n")]
    ZPow { n: usize },
    #[serde(rename = "finite")]
    Finite { names: Vec<String>, matrix: Vec<Vec<u32>> },
}

#[derive(Debug, Serialize, Deserialize)]
struct GradingFile {
    group: GroupSpec,
    assignment: BTreeMap<String, Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum GradingFormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group table is invalid: {0}")]
    GroupTable(#[from] GroupTableError),
    #[error("assignment names unknown element {0:?}")]
    UnknownElement(String),
    #[error("element {0:?} must not be assigned (it is the zero)")]
    ZeroAssigned(String),
    #[error("element {0:?}: {1}")]
    Word(String, WordParseError),
    #[error("element {0:?}: expected an integer array of length {1}")]
    BadVector(String, usize),
    #[error("element {0:?}: {1:?} is not a group element name")]
    UnknownGroupElement(String, String),
    #[error("element {0:?}: expected a string value")]
    NotAString(String),
    #[error("{0}")]
    Grading(#[from] GradingError),
}

/// Parses `grading v1` JSON against the table it grades.
pub fn parse_grading(
    text: &str,
    table: &InverseSemigroupTable,
) -> Result<Grading, GradingFormatError> {
    let file: GradingFile = serde_json::from_str(text)?;
    let group = match file.group {
        GroupSpec::Free { alphabet } => Group::Free { alphabet },
        GroupSpec::ZPow { n } => Group::ZPow { n },
        GroupSpec::Finite { names, matrix } => {
            let flat: Vec<u32> = matrix.into_iter().flatten().collect();
            Group::Finite(FiniteGroupTable::from_matrix(names, flat)?)
        }
    };

    let mut assignment: Vec<Option<GroupElem>> = vec![None; table.n()];
    for (name, value) in &file.assignment {
        let s = table
            .index_of(name)
            .ok_or_else(|| GradingFormatError::UnknownElement(name.clone()))?;
        if s == table.zero() {
            return Err(GradingFormatError::ZeroAssigned(name.clone()));
        }
        let elem = match (&group, value) {
            (Group::ZPow { n }, Value::Array(items)) => {
                let mut v = Vec::with_capacity(items.len());
                for item in items {
                    match item.as_i64() {
                        Some(x) => v.push(x),
                        None => return Err(GradingFormatError::BadVector(name.clone(), *n)),
                    }
                }
                if v.len() != *n {
                    return Err(GradingFormatError::BadVector(name.clone(), *n));
                }
                GroupElem::Vector(v)
            }
            (Group::ZPow { n }, _) => {
                return Err(GradingFormatError::BadVector(name.clone(), *n))
            }
            (Group::Free { .. }, Value::String(word)) => group
                .parse_word(word)
                .map_err(|e| GradingFormatError::Word(name.clone(), e))?,
            (Group::Finite(t), Value::String(label)) => {
                let i = t.index_of(label).ok_or_else(|| {
                    GradingFormatError::UnknownGroupElement(name.clone(), label.clone())
                })?;
                GroupElem::Finite(i as u32)
            }
            _ => return Err(GradingFormatError::NotAString(name.clone())),
        };
        assignment[s] = Some(elem);
    }

    Ok(Grading::new(group, table, assignment, &[])?)
}

/// Renders a grading back to `grading v1` JSON (deterministic key order).
pub fn render_grading(
    grading: &Grading,
    table: &InverseSemigroupTable,
) -> Result<String, serde_json::Error> {
    let group_spec = match grading.group() {
        Group::Free { alphabet } => GroupSpec::Free { alphabet: alphabet.clone() },
        Group::ZPow { n } => GroupSpec::ZPow { n: *n },
        Group::Finite(t) => GroupSpec::Finite {
            names: (0..t.order()).map(|i| t.name(i).to_string()).collect(),
            matrix: (0..t.order())
                .map(|i| {
                    (0..t.order())
                        .map(|j| match Group::Finite(t.clone())
                            .mul(&GroupElem::Finite(i as u32), &GroupElem::Finite(j as u32))
                        {
                            GroupElem::Finite(k) => k,
                            _ => unreachable!(),
                        })
                        .collect()
                })
                .collect(),
        },
    };
    let mut assignment = BTreeMap::new();
    for s in 0..table.n() {
        if let Some(elem) = grading.of(s) {
            let value = match elem {
                GroupElem::Vector(v) => Value::Array(v.iter().map(|&x| Value::from(x)).collect()),
                _ => Value::String(grading.group().format_elem(elem)),
            };
            assignment.insert(table.name(s).to_string(), value);
        }
    }
    serde_json::to_string_pretty(&GradingFile { group: group_spec, assignment })
}
