//! Bundled example automata, replacements and relations with their manifests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, LassoWord};
use crate::error::Error;
use crate::oracle::RunClassification;
use crate::refinement::{RefinementRelation, Replacement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Automaton,
    Replacement,
    Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub name: String,
    pub kind: FileKind,
}

/// Behavior that justifies one reconstructed edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeNote {
    pub edge: String,
    pub run: String,
}

/// Expected classification of a word by one of the fixture's automata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordExpectation {
    pub automaton: String,
    pub word: LassoWord,
    pub classification: RunClassification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureManifest {
    pub id: String,
    pub description: String,
    /// Details chosen to reproduce the described runs rather than read off a drawing.
    pub inferred: bool,
    pub files: Vec<FixtureFile>,
    pub edges: Vec<EdgeNote>,
    #[serde(default)]
    pub words: Vec<WordExpectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ltl: Option<String>,
}

/// A parsed fixture; values are keyed by file stem (`model`, `claim`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub manifest: FixtureManifest,
    pub automata: BTreeMap<String, Automaton>,
    pub replacements: BTreeMap<String, Replacement>,
    pub relations: BTreeMap<String, RefinementRelation>,
}

impl Fixture {
    pub fn automaton(&self, name: &str) -> &Automaton {
        &self.automata[name]
    }

    pub fn replacement(&self, name: &str) -> &Replacement {
        &self.replacements[name]
    }

    pub fn relation(&self, name: &str) -> &RefinementRelation {
        &self.relations[name]
    }
}

macro_rules! bundle {
    ($($id:literal => [$($file:literal),*]),* $(,)?) => {
        const BUNDLE: &[(&str, &[(&str, &str)])] = &[
            $(($id, &[
                ("manifest.json", include_str!(concat!("../fixtures/", $id, "/manifest.json"))),
                $(($file, include_str!(concat!("../fixtures/", $id, "/", $file)))),*
            ])),*
        ];
    };
}

bundle! {
    "m_send" => ["model.json", "claim.json"],
    "m_send_acc" => ["model.json", "claim.json"],
    "r_send1" => ["replacement.json"],
    "r_violating" => ["replacement.json"],
    "r_cooperating" => ["replacement.json"],
    "n_send_impl" => ["model.json", "concrete.json", "relation.json"],
    "timer" => ["model.json", "claim.json"],
    "bypass" => ["model.json", "claim.json"],
}

pub fn fixture_ids() -> Vec<&'static str> {
    BUNDLE.iter().map(|(id, _)| *id).collect()
}

/// Raw text of one bundled fixture file.
pub fn fixture_file(id: &str, name: &str) -> Result<&'static str, Error> {
    let (_, files) = BUNDLE
        .iter()
        .find(|(i, _)| *i == id)
        .ok_or_else(|| Error::UnknownFixture(id.into()))?;
    files
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownFixture(format!("{id}/{name}")))
}

pub fn load_fixture(id: &str) -> Result<Fixture, Error> {
    let manifest: FixtureManifest = serde_json::from_str(fixture_file(id, "manifest.json")?)?;
    let mut fixture = Fixture {
        manifest: manifest.clone(),
        automata: BTreeMap::new(),
        replacements: BTreeMap::new(),
        relations: BTreeMap::new(),
    };
    for f in &manifest.files {
        let text = fixture_file(id, &f.name)?;
        let key = f.name.trim_end_matches(".json").to_string();
        match f.kind {
            FileKind::Automaton => {
                fixture.automata.insert(key, serde_json::from_str(text)?);
            }
            FileKind::Replacement => {
                fixture
                    .replacements
                    .insert(key, serde_json::from_str(text)?);
            }
            FileKind::Relation => {
                fixture.relations.insert(key, serde_json::from_str(text)?);
            }
        }
    }
    Ok(fixture)
}
