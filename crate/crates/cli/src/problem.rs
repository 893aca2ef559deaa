//! Problem files and the builtin library.

use std::path::Path;

use pbwforge::pbw::{RelationEntry, RelationSet};
use pbwforge::polyvector::{BivectorEntry, Polyvector, StructureConstants, StructureEntry};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

const BUILTINS: &[(&str, &str)] = &[
    ("abelian2", include_str!("../data/abelian2.json")),
    ("abelian3", include_str!("../data/abelian3.json")),
    ("heis3", include_str!("../data/heis3.json")),
    ("nonjacobi3", include_str!("../data/nonjacobi3.json")),
    ("nonpoisson3", include_str!("../data/nonpoisson3.json")),
    ("quad2", include_str!("../data/quad2.json")),
    ("sl2", include_str!("../data/sl2.json")),
    ("sl2lift", include_str!("../data/sl2lift.json")),
    ("zero3", include_str!("../data/zero3.json")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lie,
    Poisson,
    Relations,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lie => "lie",
            Kind::Poisson => "poisson",
            Kind::Relations => "relations",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar_order: Option<usize>,
}

/// The on-disk schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub kind: Kind,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<StructureEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bivector: Option<Vec<BivectorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<RelationEntry>>,
    #[serde(default)]
    pub defaults: Defaults,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Lie(StructureConstants),
    Poisson(Polyvector),
    /// Relations are checked against `K` only once the order is known.
    Relations(Vec<RelationEntry>),
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub generators: Vec<String>,
    pub payload: Payload,
    pub defaults: Defaults,
    /// `builtin:NAME` or the path as given.
    pub source: String,
    pub sha256: String,
}

impl Problem {
    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Lie(_) => Kind::Lie,
            Payload::Poisson(_) => Kind::Poisson,
            Payload::Relations(_) => Kind::Relations,
        }
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self, order: usize) -> Result<RelationSet, CliError> {
        match &self.payload {
            Payload::Relations(entries) => Ok(RelationSet::from_entries(self.n(), order, entries.clone())?),
            _ => Err(CliError::Usage(format!("{} is not a relations file", self.name))),
        }
    }
}

fn check_pairs<'a>(n: usize, pairs: impl Iterator<Item = &'a (usize, usize)>, what: &str) -> Result<(), CliError> {
    for &(i, j) in pairs {
        if !(i < j && j < n) {
            return Err(CliError::Usage(format!(
                "{what} pair ({i},{j}) must satisfy i < j < {n}"
            )));
        }
    }
    Ok(())
}

pub fn parse(text: &str, source: String) -> Result<Problem, CliError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
    let n = file.generators.len();
    if n == 0 {
        return Err(CliError::Usage(format!("{source}: no generators")));
    }
    let stray = |field: &str| CliError::Usage(format!("{source}: kind {} does not take `{field}`", file.kind.as_str()));
    let missing = |field: &str| CliError::Usage(format!("{source}: kind {} needs `{field}`", file.kind.as_str()));
    let payload = match file.kind {
        Kind::Lie => {
            if file.bivector.is_some() {
                return Err(stray("bivector"));
            }
            if file.relations.is_some() {
                return Err(stray("relations"));
            }
            let entries = file.structure_constants.clone().ok_or_else(|| missing("structure_constants"))?;
            check_pairs(n, entries.iter().map(|e| &e.pair), "structure constant")?;
            Payload::Lie(StructureConstants::from_entries(n, entries)?)
        }
        Kind::Poisson => {
            if file.structure_constants.is_some() {
                return Err(stray("structure_constants"));
            }
            if file.relations.is_some() {
                return Err(stray("relations"));
            }
            let entries = file.bivector.clone().ok_or_else(|| missing("bivector"))?;
            check_pairs(n, entries.iter().map(|e| &e.pair), "bivector")?;
            Payload::Poisson(Polyvector::bivector_from_entries(n, entries)?)
        }
        Kind::Relations => {
            if file.structure_constants.is_some() {
                return Err(stray("structure_constants"));
            }
            if file.bivector.is_some() {
                return Err(stray("bivector"));
            }
            let entries = file.relations.clone().ok_or_else(|| missing("relations"))?;
            check_pairs(n, entries.iter().map(|e| &e.pair), "relation")?;
            Payload::Relations(entries)
        }
    };
    Ok(Problem {
        name: file.name,
        generators: file.generators,
        payload,
        defaults: file.defaults,
        source,
        sha256: format!("{:x}", Sha256::digest(text.as_bytes())),
    })
}

pub fn load_builtin(name: &str) -> Result<Problem, CliError> {
    let (_, text) = BUILTINS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown builtin `{name}`; available: {}",
            builtin_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    parse(text, format!("builtin:{name}"))
}

pub fn load_file(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, path.display().to_string())
}
