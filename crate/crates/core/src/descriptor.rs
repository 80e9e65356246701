// SPDX-License-Identifier: Apache-2.0

//! On-disk code descriptors.
//!
//! A descriptor is a JSON record next to a basis file. The basis file is the
//! concatenation of the basis words in the `n=<n> q=<hex>` matrix format, in
//! basis order. Maps are ordered, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::{GraphCode, Linearity};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::words::MatrixWord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptor {
    pub family: String,
    pub params: BTreeMap<String, String>,
    /// Number of basis words.
    pub dimension: usize,
    /// log_2 of the number of codewords.
    pub binary_dimension: usize,
    /// Dimension before rank reduction, when the family has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nominal_dimension: Option<usize>,
    pub n: usize,
    /// Field modulus in lowercase hex.
    pub q: String,
    pub field: String,
    pub linearity: String,
    pub directed: bool,
    pub rate: String,
    pub claimed_distance: Option<usize>,
    pub basis_file: String,
    #[serde(default)]
    pub layers: Vec<Value>,
    #[serde(default)]
    pub transcript: Vec<String>,
    #[serde(default)]
    pub config: BTreeMap<String, Value>,
}

fn linearity_name(l: Linearity) -> &'static str {
    match l {
        Linearity::Alphabet => "alphabet",
        Linearity::Binary => "binary",
    }
}

impl Descriptor {
    /// Descriptor fields derived from `code`; the caller fills in layers,
    /// transcript and config.
    pub fn describe(family: &str, params: BTreeMap<String, String>, code: &GraphCode, basis_file: &str) -> Self {
        Descriptor {
            family: family.to_string(),
            params,
            dimension: code.len(),
            binary_dimension: code.binary_dimension(),
            nominal_dimension: None,
            n: code.n(),
            q: format!("{:x}", code.ctx().modulus()),
            field: code.ctx().to_string(),
            linearity: linearity_name(code.linearity()).to_string(),
            directed: code.directed(),
            rate: code.rate().to_string(),
            claimed_distance: code.claimed_distance(),
            basis_file: basis_file.to_string(),
            layers: Vec::new(),
            transcript: Vec::new(),
            config: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("descriptor serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("descriptor: {e}")))
    }
}

pub fn basis_text(code: &GraphCode) -> String {
    code.basis().iter().map(MatrixWord::to_text).collect()
}

pub fn parse_basis(text: &str) -> Result<Vec<MatrixWord>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty()).peekable();
    let mut words = Vec::new();
    while lines.peek().is_some() {
        words.push(MatrixWord::parse_lines(&mut lines)?);
    }
    Ok(words)
}

/// Writes `<stem>.json` and `<stem>.basis` into `dir`.
pub fn save(dir: &Path, stem: &str, desc: &Descriptor, code: &GraphCode) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{stem}.json"));
    std::fs::write(dir.join(&desc.basis_file), basis_text(code))?;
    std::fs::write(&path, desc.to_json())?;
    Ok(path)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::InvalidParameter(format!("{} not found", path.display())),
        _ => Error::from(e),
    })
}

/// Loads a descriptor and rebuilds its code; the basis file is resolved
/// relative to the descriptor.
pub fn load(path: &Path) -> Result<(Descriptor, GraphCode)> {
    let desc = Descriptor::from_json(&read(path)?)?;
    let basis_path = path.parent().unwrap_or(Path::new(".")).join(&desc.basis_file);
    let words = parse_basis(&read(&basis_path)?)?;
    let modulus = u32::from_str_radix(&desc.q, 16).map_err(|_| Error::Parse(format!("bad modulus {:?}", desc.q)))?;
    let ctx = FieldContext::from_modulus(modulus)?;
    let linearity = match desc.linearity.as_str() {
        "alphabet" => Linearity::Alphabet,
        "binary" => Linearity::Binary,
        other => return Err(Error::Parse(format!("unknown linearity {other:?}"))),
    };
    if words.len() != desc.dimension {
        return Err(Error::Parse(format!(
            "{} basis words, descriptor says {}",
            words.len(),
            desc.dimension
        )));
    }
    let mut code = GraphCode::new(ctx, desc.n, words, linearity, desc.directed)?;
    if let Some(d) = desc.claimed_distance {
        code = code.with_claimed_distance(d);
    }
    Ok((desc, code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::hamming::LinearCode;
    use crate::linalg::Matrix;
    use crate::stczd::stczd_basis;

    #[test]
    fn round_trip() {
        let rows = [[1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement(x)).collect())
            .collect();
        let even = LinearCode::new(FieldContext::binary(), Matrix::from_rows(rows).unwrap()).unwrap();
        let code = stczd_basis(&even).unwrap();
        let dir = std::env::temp_dir().join(format!("graphcodes-desc-{}", std::process::id()));
        let desc = Descriptor::describe("stczd", BTreeMap::new(), &code, "even.basis");
        let path = save(&dir, "even", &desc, &code).unwrap();
        let (back, code2) = load(&path).unwrap();
        assert_eq!(back, desc);
        assert_eq!(code2.basis(), code.basis());
        assert_eq!(code2.claimed_distance(), Some(2));
        assert_eq!(back.to_json(), desc.to_json());
        std::fs::remove_dir_all(&dir).unwrap();
        assert!(matches!(load(&path), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn basis_parser_reads_concatenated_blocks() {
        assert!(parse_basis("").unwrap().is_empty());
        let text = "n=2 q=3\n0 1\n1 0\nn=2 q=3\n0 0\n0 0\n";
        assert_eq!(parse_basis(text).unwrap().len(), 2);
        assert!(parse_basis("n=2 q=3\n0 1\n").is_err());
    }
}
