//! JSON file format for modules.
//!
//! ```json
//! {"prime": 2, "dims": {"0": 1, "1": 1},
//!  "actions": [{"generator": "Sq^1", "source_degree": 0, "matrix": [[1]]}],
//!  "labels": {"0": ["a"], "1": ["b"]}}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FiniteModule;
use crate::adem::{parse_expression, Generator};
use crate::error::{Error, Result};
use crate::prime::Prime;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub prime: Prime,
    pub dims: BTreeMap<i64, usize>,
    #[serde(default)]
    pub actions: Vec<ActionEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i64, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub generator: String,
    pub source_degree: i64,
    pub matrix: Vec<Vec<i64>>,
}

fn parse_generator(text: &str, p: Prime) -> Result<Generator> {
    let e = parse_expression(text, p)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((m, 1)), None) if m.len() == 1 => Ok(m.word()[0]),
        _ => Err(Error::InvalidModule(format!("'{text}' is not a single generator"))),
    }
}

impl ModuleFile {
    pub fn from_module(m: &FiniteModule) -> Self {
        let p = m.prime();
        ModuleFile {
            prime: p,
            dims: m.dims().clone(),
            actions: m
                .actions()
                .map(|(g, d, a)| ActionEntry {
                    generator: g.to_string(),
                    source_degree: d,
                    matrix: a.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
                })
                .collect(),
            labels: m.dims().keys().map(|&d| (d, m.labels(d).to_vec())).collect(),
        }
    }

    pub fn to_module(&self) -> Result<FiniteModule> {
        let p = self.prime;
        let mut m = FiniteModule::with_dims(p, self.dims.iter().map(|(&d, &n)| (d, n)));
        for a in &self.actions {
            let g = parse_generator(&a.generator, p)?;
            m.set_action_rows(g, a.source_degree, &a.matrix)?;
        }
        for (&d, l) in &self.labels {
            m.set_labels(d, l.clone())?;
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<FiniteModule> {
        serde_json::from_str::<ModuleFile>(text)?.to_module()
    }

    pub fn read(path: impl AsRef<Path>) -> Result<FiniteModule> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(m: &FiniteModule) -> String {
        serde_json::to_string_pretty(&Self::from_module(m)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{hypothetical_cb_module, moore_module, tensor};

    #[test]
    fn round_trip() {
        let m = moore_module(Prime::TWO);
        for m in [tensor(&m, &m).unwrap(), hypothetical_cb_module(), moore_module(Prime::FIVE)] {
            assert_eq!(ModuleFile::from_json(&ModuleFile::to_json(&m)).unwrap(), m);
        }
    }

    #[test]
    fn reads_documented_example() {
        let text = r#"{"prime": 2, "dims": {"0": 1, "1": 1},
            "actions": [{"generator": "Sq^1", "source_degree": 0, "matrix": [[1]]}]}"#;
        assert_eq!(ModuleFile::from_json(text).unwrap(), moore_module(Prime::TWO));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_shape = r#"{"prime": 2, "dims": {"0": 1, "1": 1},
            "actions": [{"generator": "Sq^1", "source_degree": 0, "matrix": [[1, 0]]}]}"#;
        assert!(ModuleFile::from_json(bad_shape).is_err());
        let bad_gen = r#"{"prime": 3, "dims": {"0": 1}, "actions": [{"generator": "Sq^1", "source_degree": 0, "matrix": [[1]]}]}"#;
        assert!(ModuleFile::from_json(bad_gen).is_err());
        assert!(ModuleFile::from_json(r#"{"prime": 4, "dims": {}}"#).is_err());
    }
}
