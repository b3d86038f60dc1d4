use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use uacyc::complex::{Chain, SemisimplicialSet};
use uacyc::io::{read_json, ChainFile, ComplexFile};
use uacyc::poset::{FinitePoset, PosetFile};

/// Input validation failure; the process exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<uacyc::Error> for InputError {
    fn from(e: uacyc::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Checked<T> = std::result::Result<T, InputError>;

/// Reads inputs while hashing them, so the report can name exactly what it checked.
pub struct Inputs {
    hasher: RefCell<Sha256>,
}

impl Inputs {
    pub fn new(command: &str, settings: &BTreeMap<&str, String>) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for (k, v) in settings {
            h.update(format!("\0{k}={v}").as_bytes());
        }
        Inputs { hasher: RefCell::new(h) }
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.borrow().clone().finalize())
    }

    pub fn read(&self, path: &Path) -> Checked<String> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        let mut h = self.hasher.borrow_mut();
        h.update(b"\0file\0");
        h.update(text.as_bytes());
        Ok(text)
    }

    pub fn json<T: for<'de> Deserialize<'de>>(&self, path: &Path) -> Checked<T> {
        let text = self.read(path)?;
        read_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn complex(&self, path: &Path) -> Checked<SemisimplicialSet> {
        let file: ComplexFile = self.json(path)?;
        file.to_complex().map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn chain(&self, path: &Path) -> Checked<Chain> {
        let file: ChainFile = self.json(path)?;
        file.to_chain().map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn poset(&self, path: &Path) -> Checked<FinitePoset> {
        let file: PosetFile = self.json(path)?;
        FinitePoset::from_file(&file).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}
