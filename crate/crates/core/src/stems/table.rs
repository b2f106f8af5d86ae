use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::group::{AbelianGroup, Factor};
use crate::error::{Error, Result};

/// Where a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Shipped with the crate: the stems the computations are built on.
    Reference,
    /// Loaded from a user-supplied data file.
    ExternalLiterature,
    /// Computed here from other values.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGenerator {
    pub name: String,
    pub dimension: i64,
    pub order: u64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// One line of a stems data file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemsEntry {
    pub dimension: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Factor>>,
    /// prime → the p-primary part, for stems only known locally.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub p_primary: BTreeMap<u64, Vec<Factor>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<NamedGenerator>,
    #[serde(default = "default_provenance")]
    pub provenance: Provenance,
}

fn default_provenance() -> Provenance {
    Provenance::ExternalLiterature
}

/// What the table knows about π_n^s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stem {
    Known { group: AbelianGroup, provenance: Provenance },
    PPrimary { parts: BTreeMap<u64, AbelianGroup>, provenance: Provenance },
    Unknown,
}

#[derive(Clone, Debug, Default)]
pub struct StemsTable {
    groups: BTreeMap<i64, (AbelianGroup, Provenance)>,
    p_primary: BTreeMap<(i64, u64), (AbelianGroup, Provenance)>,
    generators: BTreeMap<String, NamedGenerator>,
}

impl StemsTable {
    /// The built-in values: π_0 = Z, π_1 = Z/2, π_2 = Z/2, π_3 = Z/24,
    /// π_10 = Z/6, and trivial 3-primary parts in dimensions 21, 22, 33, 34.
    pub fn reference() -> Self {
        let mut t = StemsTable::default();
        let r = Provenance::Reference;
        for (n, g) in [
            (0, AbelianGroup::z()),
            (1, AbelianGroup::cyclic(2)),
            (2, AbelianGroup::cyclic(2)),
            (3, AbelianGroup::cyclic(24)),
            (10, AbelianGroup::cyclic(6)),
        ] {
            t.groups.insert(n, (g, r));
        }
        for n in [21, 22, 33, 34] {
            t.p_primary.insert((n, 3), (AbelianGroup::trivial(), r));
        }
        for (name, dimension, order, note) in [
            ("eta", 1, 2, "Hopf map, generates π_1"),
            ("nu", 3, 24, "second Hopf map, generates π_3"),
            ("alpha_1", 3, 3, "3-primary part of nu"),
            ("beta_1", 10, 3, "Toda bracket <alpha_1, alpha_1, alpha_1>; generates the 3-primary part of π_10"),
        ] {
            t.generators.insert(
                name.to_string(),
                NamedGenerator { name: name.to_string(), dimension, order, note: note.to_string() },
            );
        }
        t
    }

    /// Reference values plus the entries of a JSON file. A file entry may
    /// add new stems but may not contradict a stored value.
    pub fn with_file(path: impl AsRef<Path>) -> Result<Self> {
        let mut t = Self::reference();
        t.load_json(&std::fs::read_to_string(path)?)?;
        Ok(t)
    }

    pub fn load_json(&mut self, text: &str) -> Result<()> {
        let entries: Vec<StemsEntry> = serde_json::from_str(text)?;
        for e in entries {
            self.insert(e)?;
        }
        Ok(())
    }

    pub fn insert(&mut self, e: StemsEntry) -> Result<()> {
        let n = e.dimension;
        if n < 0 {
            return Err(Error::InvalidStems(format!("negative dimension {n} is always trivial")));
        }
        if let Some(f) = e.factors {
            let g = AbelianGroup::from_factors(f);
            if n > 0 && !g.is_finite() {
                return Err(Error::InvalidStems(format!("π_{n} is finite for n > 0, got {g}")));
            }
            if let Some((old, _)) = self.groups.get(&n) {
                if *old != g {
                    return Err(Error::InvalidStems(format!("π_{n}: stored {old}, file says {g}")));
                }
            } else {
                self.groups.insert(n, (g, e.provenance));
            }
        }
        for (q, f) in e.p_primary {
            let g = AbelianGroup::from_factors(f);
            if g.p_primary(q) != g {
                return Err(Error::InvalidStems(format!("π_{n}: {g} is not {q}-primary")));
            }
            if let Some(known) = self.p_primary_part(n, q) {
                if known != g {
                    return Err(Error::InvalidStems(format!("π_{n}: stored {q}-primary part {known}, file says {g}")));
                }
            } else {
                self.p_primary.insert((n, q), (g, e.provenance));
            }
        }
        for g in e.generators {
            self.generators.insert(g.name.clone(), g);
        }
        Ok(())
    }

    pub fn stems(&self, n: i64) -> Stem {
        if n < 0 {
            return Stem::Known { group: AbelianGroup::trivial(), provenance: Provenance::Reference };
        }
        if let Some((g, prov)) = self.groups.get(&n) {
            return Stem::Known { group: g.clone(), provenance: *prov };
        }
        let parts: BTreeMap<u64, AbelianGroup> =
            self.p_primary.range((n, 0)..=(n, u64::MAX)).map(|(&(_, q), (g, _))| (q, g.clone())).collect();
        if parts.is_empty() {
            return Stem::Unknown;
        }
        let provenance = self.p_primary.range((n, 0)..=(n, u64::MAX)).map(|(_, (_, p))| *p).max().unwrap();
        Stem::PPrimary { parts, provenance }
    }

    /// The full group, when known.
    pub fn group(&self, n: i64) -> Option<AbelianGroup> {
        match self.stems(n) {
            Stem::Known { group, .. } => Some(group),
            _ => None,
        }
    }

    /// The q-primary part of π_n, from the full group or from a local fact.
    pub fn p_primary_part(&self, n: i64, q: u64) -> Option<AbelianGroup> {
        match self.stems(n) {
            Stem::Known { group, .. } => Some(group.p_primary(q)),
            Stem::PPrimary { mut parts, .. } => parts.remove(&q),
            Stem::Unknown => None,
        }
    }

    pub fn generator(&self, name: &str) -> Option<&NamedGenerator> {
        self.generators.get(name)
    }

    pub fn generators(&self) -> impl Iterator<Item = &NamedGenerator> {
        self.generators.values()
    }

    /// Dimensions with a fully known group.
    pub fn known_dimensions(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }

    /// Dimensions with any stored information, full or local.
    pub fn populated_dimensions(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.groups.keys().copied().chain(self.p_primary.keys().map(|&(n, _)| n)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let t = StemsTable::reference();
        assert_eq!(t.group(0), Some(AbelianGroup::z()));
        assert_eq!(t.group(1), Some(AbelianGroup::cyclic(2)));
        assert_eq!(t.group(2), Some(AbelianGroup::cyclic(2)));
        assert_eq!(t.group(3), Some(AbelianGroup::cyclic(24)));
        assert_eq!(t.group(10), Some(AbelianGroup::cyclic(6)));
        assert_eq!(t.generator("beta_1").unwrap().order, 3);
        assert_eq!(t.generator("eta").unwrap().dimension, 1);
        for n in [21, 22, 33, 34] {
            assert_eq!(t.p_primary_part(n, 3), Some(AbelianGroup::trivial()));
            assert_eq!(t.group(n), None);
            assert_eq!(t.p_primary_part(n, 2), None);
        }
        assert_eq!(t.group(-4), Some(AbelianGroup::trivial()));
        assert_eq!(t.stems(4), Stem::Unknown);
        assert_eq!(t.stems(1000), Stem::Unknown);
    }

    #[test]
    fn loading_files() {
        let mut t = StemsTable::reference();
        t.load_json(
            r#"[{"dimension": 7, "factors": [240]},
                        {"dimension": 22, "p_primary": {"2": [2, 2]}},
                        {"dimension": 3, "factors": [8, 3], "provenance": "external-literature"}]"#,
        )
        .unwrap();
        assert_eq!(
            t.stems(7),
            Stem::Known { group: AbelianGroup::cyclic(240), provenance: Provenance::ExternalLiterature }
        );
        assert_eq!(t.p_primary_part(22, 2).unwrap().to_string(), "Z/2 ⊕ Z/2");
        assert!(matches!(t.stems(3), Stem::Known { provenance: Provenance::Reference, .. }));
        assert!(t.clone().load_json(r#"[{"dimension": 3, "factors": [12]}]"#).is_err());
        assert!(t.clone().load_json(r#"[{"dimension": 21, "p_primary": {"3": [3]}}]"#).is_err());
        assert!(t.clone().load_json(r#"[{"dimension": 5, "p_primary": {"3": [2]}}]"#).is_err());
        assert!(t.clone().load_json(r#"[{"dimension": 5, "factors": ["Z"]}]"#).is_err());
    }
}
