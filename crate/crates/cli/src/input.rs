//! Weight-system documents: a JSON object with a top-level `weights` array.
//!
//! ```json
//! { "name": "local P2", "weights": [[1], [1], [1], [-3]] }
//! ```
//!
//! Each entry is one weight `β_j`; `k` is inferred from the vector length.
//! Bare integers are accepted as rank-1 weights and integers may be given as
//! strings when they do not fit in 64 bits.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use qsdisc_core::IntVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Number(i64),
    Text(String),
}

impl IntLiteral {
    fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            IntLiteral::Number(n) => Ok(BigInt::from(*n)),
            IntLiteral::Text(s) => BigInt::from_str(s.trim())
                .map_err(|_| CliError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightEntry {
    Scalar(IntLiteral),
    Vector(Vec<IntLiteral>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub weights: Vec<WeightEntry>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn weight_vectors(&self) -> Result<Vec<IntVector>, CliError> {
        self.weights
            .iter()
            .map(|entry| match entry {
                WeightEntry::Scalar(x) => Ok(vec![x.to_bigint()?]),
                WeightEntry::Vector(v) => v.iter().map(IntLiteral::to_bigint).collect(),
            })
            .collect()
    }
}
