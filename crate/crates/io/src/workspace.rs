//! A flat-file store of validated values keyed by the hash of their
//! canonical text.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{IoError, Result};
use crate::json::{parse_document, Document};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub kind: String,
    pub text: String,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: BTreeMap<String, Entry>,
}

pub fn content_id(canonical: &str) -> String {
    hex::encode(&Sha256::digest(canonical.as_bytes())[..8])
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores a value; inserting the same value twice yields the same id.
    pub fn insert(&mut self, doc: &Document) -> String {
        let text = doc.to_canonical();
        let id = content_id(&text);
        self.entries.entry(id.clone()).or_insert(Entry { kind: doc.kind().to_string(), text });
        id
    }

    /// Parses and validates before storing.
    pub fn insert_text(&mut self, text: &str) -> Result<String> {
        Ok(self.insert(&parse_document(text)?))
    }

    pub fn get(&self, id: &str) -> Result<Document> {
        let e = self
            .entries
            .get(id)
            .ok_or_else(|| IoError::Schema { path: "$".into(), message: format!("no value with id {id}") })?;
        parse_document(&e.text)
    }

    pub fn ids(&self) -> impl Iterator<Item = (&String, &Entry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes `<id>.<kind>.json` per value.
    pub fn save(&self, dir: &Path) -> Result<()> {
        let io = |e| IoError::File { path: dir.display().to_string(), source: e };
        fs::create_dir_all(dir).map_err(io)?;
        for (id, e) in &self.entries {
            let path = dir.join(format!("{id}.{}.json", e.kind));
            fs::write(&path, format!("{}\n", e.text))
                .map_err(|source| IoError::File { path: path.display().to_string(), source })?;
        }
        Ok(())
    }

    /// Reads every `*.json` file in `dir`, revalidating each.
    pub fn load(dir: &Path) -> Result<Self> {
        let io = |e| IoError::File { path: dir.display().to_string(), source: e };
        let mut paths: Vec<_> = fs::read_dir(dir).map_err(io)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
        paths.sort();
        let mut ws = Workspace::new();
        for p in paths {
            let text = fs::read_to_string(&p).map_err(|source| IoError::File { path: p.display().to_string(), source })?;
            ws.insert_text(&text).map_err(|e| match e {
                IoError::Schema { path, message } => IoError::Schema { path: format!("{}: {path}", p.display()), message },
                other => other,
            })?;
        }
        Ok(ws)
    }
}
