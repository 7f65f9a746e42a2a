use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError, PDCode};
use crate::alexander::{alexander_polynomial, knot_determinant};

/// Environment variable naming a JSON file that replaces the bundled catalog.
pub const CATALOG_ENV: &str = "KNOTBECK_CATALOG";

const BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub pd: PDCode,
    /// Expected `|Δ(−1)|`.
    pub determinant: u64,
    #[serde(default)]
    pub source: String,
}

/// Named knot diagrams. Entries are checked against their recorded
/// determinant and against `Δ(1) = ±1` before they are handed out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(text).map_err(|e| DiagramError::Catalog(e.to_string()))
    }

    /// The catalog named by `KNOTBECK_CATALOG`, or the bundled one.
    pub fn load() -> Result<Self, DiagramError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| DiagramError::Catalog(format!("{}: {e}", path.to_string_lossy())))?;
                Self::from_json(&text)
            }
            None => Ok(Self::builtin()),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> &BTreeMap<String, CatalogEntry> {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry, DiagramError> {
        self.entries.get(name).ok_or_else(|| DiagramError::UnknownKnot {
            name: name.to_string(),
            available: self.entries.keys().cloned().collect(),
        })
    }

    /// Resolves and validates the named diagram.
    pub fn get(&self, name: &str) -> Result<Diagram, DiagramError> {
        let entry = self.entry(name)?;
        let d = entry
            .pd
            .resolve()
            .map_err(|e| DiagramError::Catalog(format!("{name}: {e}")))?;
        alexander_polynomial(&d).map_err(|e| DiagramError::Catalog(format!("{name}: {e}")))?;
        let det = knot_determinant(&d).map_err(|e| DiagramError::Catalog(format!("{name}: {e}")))?;
        if det != entry.determinant {
            return Err(DiagramError::Catalog(format!(
                "{name}: determinant is {det}, catalog records {}",
                entry.determinant
            )));
        }
        Ok(d)
    }
}

/// Looks `name` up in the active catalog.
pub fn catalog_get(name: &str) -> Result<Diagram, DiagramError> {
    Catalog::load()?.get(name)
}
