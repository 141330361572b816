use std::collections::BTreeMap;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};
use stonesset::sset::Poset;
use stonesset::structure::FiniteStructure;

use crate::CliError;

/// Wire form of a finite structure. Elements are named everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub universe: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationDocument>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    #[serde(default)]
    pub parameters: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

impl StructureDocument {
    pub fn to_structure(&self) -> Result<FiniteStructure, CliError> {
        let mut m = FiniteStructure::new(self.universe.iter().cloned())?;
        for (name, rel) in &self.relations {
            m.add_relation(name, rel.arity, rel.tuples.iter().cloned())?;
        }
        for (name, element) in &self.constants {
            m.add_constant(name, element)?;
        }
        m.set_parameters(&self.parameters)?;
        Ok(m)
    }

    /// The canonical document: tuples in lexicographic universe order and
    /// parameters in universe order.
    pub fn from_structure(m: &FiniteStructure) -> Self {
        StructureDocument {
            universe: m.universe().to_vec(),
            relations: m
                .relations()
                .iter()
                .map(|(name, rel)| {
                    let tuples = rel.tuples.iter().map(|t| m.names(t)).collect();
                    (
                        name.clone(),
                        RelationDocument {
                            arity: rel.arity,
                            tuples,
                        },
                    )
                })
                .collect(),
            constants: m
                .constants()
                .iter()
                .map(|(name, &e)| (name.clone(), m.name(e).to_string()))
                .collect(),
            parameters: m
                .parameters()
                .iter()
                .map(|&e| m.name(e).to_string())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetDocument {
    pub fn to_poset(&self) -> Result<Poset, CliError> {
        Ok(Poset::new(&self.elements, &self.covers)?)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize");
    out.push('\n');
    out
}

pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse and validate a structure document, returning it in canonical form.
pub fn load_structure(path: &Path) -> Result<(FiniteStructure, String), CliError> {
    let doc: StructureDocument = read_document(path)?;
    let m = doc.to_structure()?;
    let canonical = to_canonical_json(&StructureDocument::from_structure(&m));
    Ok((m, canonical))
}
