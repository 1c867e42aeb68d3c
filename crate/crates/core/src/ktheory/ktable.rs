//! K-value bookkeeping: formal K-group values, direct sums, and the
//! user-extensible lookup table for nontrivial groups.
//!
//! Only the trivial group's values (ℤ, 0) are built in — they are the only
//! ones the toolkit can justify by itself.  Everything else must arrive
//! through a `KTable` file whose entries carry a mandatory `source`
//! annotation; descriptors with no entry stay symbolic rather than being
//! guessed.

use serde::{Deserialize, Serialize};

/// A K-group value: a free abelian group of known rank, or a formal term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KValue {
    ZPower(u64),
    Symbolic(String),
}

impl KValue {
    /// Accepts `0`, `Z`, `Z^k`; anything else stays symbolic.
    pub fn parse(text: &str) -> KValue {
        let t = text.trim();
        if t == "0" {
            return KValue::ZPower(0);
        }
        if t == "Z" {
            return KValue::ZPower(1);
        }
        if let Some(k) = t.strip_prefix("Z^") {
            if let Ok(k) = k.parse::<u64>() {
                return KValue::ZPower(k);
            }
        }
        KValue::Symbolic(t.to_string())
    }

    pub fn render(&self) -> String {
        match self {
            KValue::ZPower(0) => "0".to_string(),
            KValue::ZPower(1) => "Z".to_string(),
            KValue::ZPower(k) => format!("Z^{}", k),
            KValue::Symbolic(s) => s.clone(),
        }
    }
}

/// A formal direct sum of K-values: a collected ℤ-rank plus symbolic terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KSum {
    pub z_rank: u64,
    pub symbolic: Vec<String>,
}

impl KSum {
    pub fn add(&mut self, value: &KValue) {
        match value {
            KValue::ZPower(k) => self.z_rank += k,
            KValue::Symbolic(s) => self.symbolic.push(s.clone()),
        }
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.z_rank > 0 {
            parts.push(KValue::ZPower(self.z_rank).render());
        }
        parts.extend(self.symbolic.iter().cloned());
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// One row of a K-value table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTableEntry {
    /// Canonical group descriptor, e.g. `Z^2`, `F_3`, `finite(order=6,classes=3)`.
    pub descriptor: String,
    #[serde(rename = "K0")]
    pub k0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    /// Where the values come from; entries without a source are rejected.
    pub source: String,
}

/// User-supplied K-values, keyed by canonical descriptor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KTable {
    entries: Vec<KTableEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum KTableError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {0} ({1:?}) has an empty source annotation")]
    MissingSource(usize, String),
    #[error("duplicate descriptor {0:?}")]
    DuplicateDescriptor(String),
}

impl KTable {
    pub fn empty() -> KTable {
        KTable::default()
    }

    /// Parses a JSON array of `{descriptor, K0, K1, source}` rows.
    pub fn from_json(text: &str) -> Result<KTable, KTableError> {
        let entries: Vec<KTableEntry> = serde_json::from_str(text)?;
        for (i, e) in entries.iter().enumerate() {
            if e.source.trim().is_empty() {
                return Err(KTableError::MissingSource(i, e.descriptor.clone()));
            }
            if entries[..i].iter().any(|prev| prev.descriptor == e.descriptor) {
                return Err(KTableError::DuplicateDescriptor(e.descriptor.clone()));
            }
        }
        Ok(KTable { entries })
    }

    pub fn lookup(&self, descriptor: &str) -> Option<&KTableEntry> {
        self.entries.iter().find(|e| e.descriptor == descriptor)
    }

    pub fn entries(&self) -> &[KTableEntry] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kvalue_parse_and_render() {
        assert_eq!(KValue::parse("0"), KValue::ZPower(0));
        assert_eq!(KValue::parse("Z"), KValue::ZPower(1));
        assert_eq!(KValue::parse("Z^5"), KValue::ZPower(5));
        assert_eq!(KValue::parse("Z ⊕ Z/2"), KValue::Symbolic("Z ⊕ Z/2".to_string()));
        assert_eq!(KValue::ZPower(3).render(), "Z^3");
    }

    #[test]
    fn ksum_collects_ranks_and_symbols() {
        let mut sum = KSum::default();
        sum.add(&KValue::ZPower(1));
        sum.add(&KValue::ZPower(2));
        assert_eq!(sum.render(), "Z^3");
        sum.add(&KValue::Symbolic("K_0(C*_r(F_2))".to_string()));
        assert_eq!(sum.render(), "Z^3 ⊕ K_0(C*_r(F_2))");
        assert_eq!(KSum::default().render(), "0");
    }

    #[test]
    fn ktable_parses_and_requires_sources() {
        let good = r#"[
            {"descriptor": "Z^1", "K0": "Z", "K1": "Z", "source": "Pimsner-Voiculescu for C(T)"}
        ]"#;
        let table = KTable::from_json(good).unwrap();
        assert_eq!(table.lookup("Z^1").unwrap().k1, "Z");
        assert!(table.lookup("F_2").is_none());

        let missing = r#"[{"descriptor": "Z^1", "K0": "Z", "K1": "Z", "source": "  "}]"#;
        assert!(matches!(KTable::from_json(missing), Err(KTableError::MissingSource(0, _))));

        let dup = r#"[
            {"descriptor": "Z^1", "K0": "Z", "K1": "Z", "source": "a"},
            {"descriptor": "Z^1", "K0": "Z", "K1": "Z", "source": "b"}
        ]"#;
        assert!(matches!(KTable::from_json(dup), Err(KTableError::DuplicateDescriptor(_))));
    }
}
