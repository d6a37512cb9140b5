//! Consequence operations stored as explicit tables: one row per subset.

use serde_json::{json, Map, Value};

use crate::error::SchemaError;
use crate::lang::{AtomLanguage, AtomSet};

/// A total map from subsets of the language to subsets, `rows[mask(A)] = C(A)`.
/// No axiom is assumed at construction; axioms are checked, never enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceTable {
    language: AtomLanguage,
    rows: Vec<AtomSet>,
}

impl ConsequenceTable {
    pub fn new(language: AtomLanguage, rows: Vec<AtomSet>) -> Result<Self, SchemaError> {
        if rows.len() != language.subset_count() {
            return Err(SchemaError::WrongRowCount {
                got: rows.len(),
                expected: language.subset_count(),
            });
        }
        let full = language.full_set();
        for (i, row) in rows.iter().enumerate() {
            if !row.subset_of(full) {
                return Err(SchemaError::RowOutOfLanguage {
                    key: language.key(AtomSet(i as u32)),
                });
            }
        }
        Ok(ConsequenceTable { language, rows })
    }

    pub fn from_fn(language: AtomLanguage, mut op: impl FnMut(AtomSet) -> AtomSet) -> Self {
        let rows = language.subsets().map(&mut op).collect();
        ConsequenceTable { language, rows }
    }

    /// C(A) = A.
    pub fn identity(language: AtomLanguage) -> Self {
        Self::from_fn(language, |a| a)
    }

    /// C(A) = L for every A.
    pub fn constant_full(language: AtomLanguage) -> Self {
        let full = language.full_set();
        Self::from_fn(language, |_| full)
    }

    pub fn language(&self) -> &AtomLanguage {
        &self.language
    }

    #[inline]
    pub fn row(&self, a: AtomSet) -> AtomSet {
        self.rows[a.0 as usize]
    }

    pub fn rows(&self) -> &[AtomSet] {
        &self.rows
    }

    /// Returns a copy with one row replaced. Useful for hand-breaking an
    /// axiom in tests and demos.
    pub fn with_row(&self, a: AtomSet, value: AtomSet) -> Self {
        let mut rows = self.rows.clone();
        rows[a.0 as usize] = value;
        ConsequenceTable {
            language: self.language.clone(),
            rows,
        }
    }

    /// JSON form: `{"atoms":[...],"table":{"":[...],"a":[...],...}}` with one
    /// key per subset; keys are comma-joined sorted atom names.
    pub fn to_json(&self) -> Value {
        let mut table = Map::new();
        for a in self.language.subsets() {
            let members: Vec<Value> = self
                .language
                .render(self.row(a))
                .into_iter()
                .map(Value::String)
                .collect();
            table.insert(self.language.key(a), Value::Array(members));
        }
        json!({
            "atoms": self.language.atoms(),
            "table": Value::Object(table),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("table serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self, SchemaError> {
        let obj = value
            .as_object()
            .ok_or_else(|| SchemaError::Json("top level must be an object".into()))?;
        let atoms = obj
            .get("atoms")
            .ok_or_else(|| SchemaError::field("atoms", "missing"))?;
        let atoms: Vec<String> = serde_json::from_value(atoms.clone())
            .map_err(|e| SchemaError::field("atoms", e.to_string()))?;
        let language = AtomLanguage::new(atoms)?;
        let table = obj
            .get("table")
            .and_then(Value::as_object)
            .ok_or_else(|| SchemaError::field("table", "missing or not an object"))?;

        let mut rows = vec![AtomSet::EMPTY; language.subset_count()];
        let mut seen = vec![false; language.subset_count()];
        for (key, val) in table {
            let set = language.parse_key(key)?;
            if seen[set.0 as usize] {
                return Err(SchemaError::BadTableKey(
                    key.clone(),
                    "duplicate key for the same subset".into(),
                ));
            }
            seen[set.0 as usize] = true;
            let names: Vec<String> = serde_json::from_value(val.clone())
                .map_err(|e| SchemaError::BadTableKey(key.clone(), e.to_string()))?;
            let row = language
                .set_of_names(&names)
                .map_err(|e| SchemaError::BadTableKey(key.clone(), e.to_string()))?;
            rows[set.0 as usize] = row;
        }
        for a in language.subsets() {
            if !seen[a.0 as usize] {
                return Err(SchemaError::MissingSubsetKey(language.key(a)));
            }
        }
        ConsequenceTable::new(language, rows)
    }

    pub fn from_json_str(s: &str) -> Result<Self, SchemaError> {
        let value: Value = serde_json::from_str(s).map_err(|e| SchemaError::Json(e.to_string()))?;
        Self::from_json(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> AtomLanguage {
        AtomLanguage::new(["a", "b"]).unwrap()
    }

    #[test]
    fn identity_rows() {
        let t = ConsequenceTable::identity(ab());
        for a in t.language().subsets() {
            assert_eq!(t.row(a), a);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = ConsequenceTable::identity(ab());
        let s = t.to_json_string();
        let back = ConsequenceTable::from_json_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn missing_empty_key_is_rejected() {
        let text = r#"{"atoms":["a","b"],
            "table":{"a":["a"],"b":["b"],"a,b":["a","b"]}}"#;
        assert_eq!(
            ConsequenceTable::from_json_str(text),
            Err(SchemaError::MissingSubsetKey(String::new()))
        );
    }

    #[test]
    fn unknown_atom_in_row_is_rejected() {
        let text = r#"{"atoms":["a"],"table":{"":["z"],"a":["a"]}}"#;
        let err = ConsequenceTable::from_json_str(text).unwrap_err();
        assert!(matches!(err, SchemaError::BadTableKey(k, _) if k.is_empty()));
    }

    #[test]
    fn keys_accept_any_member_order() {
        let text = r#"{"atoms":["a","b"],
            "table":{"":[],"a":["a"],"b":["b"],"b,a":["a","b"]}}"#;
        let t = ConsequenceTable::from_json_str(text).unwrap();
        assert_eq!(t.row(t.language().full_set()), t.language().full_set());
    }
}
