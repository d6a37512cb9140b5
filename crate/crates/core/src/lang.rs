//! Finite atom languages and their subsets.

use serde::{Deserialize, Serialize};

use crate::error::SchemaError;
use crate::mask::bitset_type;

/// Hard cap on language size; a consequence table stores one row per subset.
pub const MAX_ATOMS: usize = 16;

bitset_type! {
    /// A subset of a language's atoms, encoded over atom indices.
    AtomSet
}

/// An ordered set of distinct atom names. The input order is the canonical
/// order for every rendered set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct AtomLanguage {
    atoms: Vec<String>,
}

impl AtomLanguage {
    pub fn new<I, S>(atoms: I) -> Result<Self, SchemaError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(SchemaError::EmptyLanguage);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(SchemaError::TooManyAtoms(atoms.len(), MAX_ATOMS));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(SchemaError::DuplicateAtom(a.clone()));
            }
        }
        Ok(AtomLanguage { atoms })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    /// Languages are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// The set containing every atom.
    pub fn full_set(&self) -> AtomSet {
        AtomSet(((1u64 << self.len()) - 1) as u32)
    }

    pub fn subset_count(&self) -> usize {
        1 << self.len()
    }

    /// Every subset of the language, in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = AtomSet> {
        (0..self.subset_count() as u32).map(AtomSet)
    }

    /// Member names in language order.
    pub fn render(&self, set: AtomSet) -> Vec<String> {
        set.iter().map(|i| self.atoms[i].clone()).collect()
    }

    /// Canonical JSON key: member names sorted lexicographically, comma-joined.
    /// The empty set keys as "".
    pub fn key(&self, set: AtomSet) -> String {
        let mut names: Vec<&str> = set.iter().map(|i| self.atoms[i].as_str()).collect();
        names.sort_unstable();
        names.join(",")
    }

    pub fn set_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet, SchemaError> {
        let mut set = AtomSet::EMPTY;
        for n in names {
            let idx = self
                .index_of(n.as_ref())
                .ok_or_else(|| SchemaError::UnknownAtom(n.as_ref().to_string()))?;
            set = set.insert(idx);
        }
        Ok(set)
    }

    /// Parses a comma-joined key produced by [`AtomLanguage::key`]. Member
    /// order inside the key is not significant.
    pub fn parse_key(&self, key: &str) -> Result<AtomSet, SchemaError> {
        if key.is_empty() {
            return Ok(AtomSet::EMPTY);
        }
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        let set = self.set_of_names(&parts)?;
        if set.len() != parts.len() {
            return Err(SchemaError::BadTableKey(
                key.to_string(),
                "repeated atom in key".to_string(),
            ));
        }
        Ok(set)
    }
}

impl TryFrom<Vec<String>> for AtomLanguage {
    type Error = SchemaError;

    fn try_from(atoms: Vec<String>) -> Result<Self, SchemaError> {
        AtomLanguage::new(atoms)
    }
}

impl From<AtomLanguage> for Vec<String> {
    fn from(lang: AtomLanguage) -> Vec<String> {
        lang.atoms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert_eq!(
            AtomLanguage::new(Vec::<String>::new()),
            Err(SchemaError::EmptyLanguage)
        );
        assert_eq!(
            AtomLanguage::new(["a", "b", "a"]),
            Err(SchemaError::DuplicateAtom("a".into()))
        );
        let too_many: Vec<String> = (0..17).map(|i| format!("p{i}")).collect();
        assert!(matches!(
            AtomLanguage::new(too_many),
            Err(SchemaError::TooManyAtoms(17, MAX_ATOMS))
        ));
    }

    #[test]
    fn keys_sort_names_lexicographically() {
        let lang = AtomLanguage::new(["b", "a"]).unwrap();
        let both = lang.full_set();
        assert_eq!(lang.key(both), "a,b");
        assert_eq!(lang.render(both), vec!["b", "a"]);
        assert_eq!(lang.parse_key("a,b"), Ok(both));
        assert_eq!(lang.parse_key(""), Ok(AtomSet::EMPTY));
        assert!(lang.parse_key("a,a").is_err());
        assert!(lang.parse_key("z").is_err());
    }

    #[test]
    fn full_set_at_cap() {
        let lang = AtomLanguage::new((0..16).map(|i| format!("p{i}"))).unwrap();
        assert_eq!(lang.full_set().len(), 16);
        assert_eq!(lang.subset_count(), 65536);
    }
}
