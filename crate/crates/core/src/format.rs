//! Versioned JSON documents for classes and example sequences.
//!
//! Class file:
//!
//! ```json
//! { "kind": "multiclass", "version": 1, "K": 2, "domain_size": 3,
//!   "rows": [[1, 2, 2], [2, 1, 1]] }
//! { "kind": "real", "version": 1, "grid": 0.25, "domain_size": 2,
//!   "rows": [[-0.5, 1.0], [0.25, 0.0]] }
//! ```
//!
//! `grid` is optional; when present every value is snapped to `-1 + j * grid`.
//! Sequence file: `{ "version": 1, "examples": [[x, y], ...] }`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::error::{Error, Result};
use crate::sample::{LabeledExample, Sample};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassDocument {
    Multiclass {
        version: u32,
        #[serde(rename = "K")]
        num_labels: u32,
        domain_size: usize,
        rows: Vec<Vec<u32>>,
    },
    Real {
        version: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<f64>,
        domain_size: usize,
        rows: Vec<Vec<f64>>,
    },
}

/// A class of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyClass {
    Multiclass(HypothesisClass),
    Real(RealFunctionClass),
}

impl AnyClass {
    pub fn len(&self) -> usize {
        match self {
            AnyClass::Multiclass(c) => c.len(),
            AnyClass::Real(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn domain_size(&self) -> usize {
        match self {
            AnyClass::Multiclass(c) => c.domain_size(),
            AnyClass::Real(c) => c.domain_size(),
        }
    }

    pub fn to_document(&self) -> ClassDocument {
        match self {
            AnyClass::Multiclass(c) => ClassDocument::Multiclass {
                version: FORMAT_VERSION,
                num_labels: c.num_labels(),
                domain_size: c.domain_size(),
                rows: c
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|l| l.get()).collect())
                    .collect(),
            },
            AnyClass::Real(c) => ClassDocument::Real {
                version: FORMAT_VERSION,
                grid: c.grid(),
                domain_size: c.domain_size(),
                rows: c.rows().to_vec(),
            },
        }
    }

    pub fn from_document(doc: ClassDocument) -> Result<Self> {
        match doc {
            ClassDocument::Multiclass {
                version,
                num_labels,
                domain_size,
                rows,
            } => {
                check_version(version)?;
                let mut table = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.contains(&0) {
                        return Err(Error::InvalidClass("label 0 is not allowed".into()));
                    }
                    table.push(row.into_iter().map(Label::new).collect());
                }
                Ok(AnyClass::Multiclass(HypothesisClass::new(
                    num_labels,
                    domain_size,
                    table,
                )?))
            }
            ClassDocument::Real {
                version,
                grid,
                domain_size,
                rows,
            } => {
                check_version(version)?;
                let class = match grid {
                    Some(step) => RealFunctionClass::on_grid(domain_size, rows, step)?,
                    None => RealFunctionClass::new(domain_size, rows)?,
                };
                Ok(AnyClass::Real(class))
            }
        }
    }
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported version {version}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

pub fn parse_class(text: &str) -> Result<AnyClass> {
    AnyClass::from_document(serde_json::from_str(text)?)
}

pub fn class_to_string(class: &AnyClass) -> Result<String> {
    Ok(serde_json::to_string_pretty(&class.to_document())?)
}

pub fn read_class(path: impl AsRef<Path>) -> Result<AnyClass> {
    parse_class(&std::fs::read_to_string(path)?)
}

pub fn write_class(path: impl AsRef<Path>, class: &AnyClass) -> Result<()> {
    let mut text = class_to_string(class)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub version: u32,
    pub examples: Vec<(usize, u32)>,
}

pub fn parse_sequence(text: &str) -> Result<Sample<Label>> {
    let doc: SequenceDocument = serde_json::from_str(text)?;
    check_version(doc.version)?;
    doc.examples
        .into_iter()
        .map(|(x, y)| {
            if y == 0 {
                Err(Error::Format("label 0 is not allowed".into()))
            } else {
                Ok(LabeledExample::new(x, Label::new(y)))
            }
        })
        .collect()
}

pub fn sequence_to_string(sample: &[LabeledExample]) -> Result<String> {
    let doc = SequenceDocument {
        version: FORMAT_VERSION,
        examples: sample.iter().map(|e| (e.x, e.y.get())).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn read_sequence(path: impl AsRef<Path>) -> Result<Sample<Label>> {
    parse_sequence(&std::fs::read_to_string(path)?)
}

/// Reads any serde document, e.g. a certificate or a threshold family.
pub fn read_json<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiclass_round_trip() {
        let text = r#"{"kind":"multiclass","version":1,"K":3,"domain_size":2,"rows":[[1,3],[2,2],[1,3]]}"#;
        let class = parse_class(text).unwrap();
        assert_eq!(class.len(), 2);
        let again = parse_class(&class_to_string(&class).unwrap()).unwrap();
        assert_eq!(class, again);
    }

    #[test]
    fn real_grid_round_trip() {
        let text = r#"{"kind":"real","version":1,"grid":0.1,"domain_size":2,"rows":[[-0.3,0.7]]}"#;
        let class = parse_class(text).unwrap();
        let AnyClass::Real(f) = &class else { panic!("expected a real class") };
        assert_eq!(f.grid(), Some(0.1));
        assert_eq!(parse_class(&class_to_string(&class).unwrap()).unwrap(), class);
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(parse_class(r#"{"kind":"multiclass","version":2,"K":2,"domain_size":1,"rows":[[1]]}"#).is_err());
        assert!(parse_class(r#"{"kind":"multiclass","version":1,"K":2,"domain_size":1,"rows":[[0]]}"#).is_err());
        assert!(parse_class(r#"{"kind":"real","version":1,"domain_size":1,"rows":[[2.0]]}"#).is_err());
        assert!(parse_class(r#"{"kind":"other"}"#).is_err());
    }

    #[test]
    fn sequences_round_trip() {
        let s = parse_sequence(r#"{"version":1,"examples":[[0,1],[2,3]]}"#).unwrap();
        assert_eq!(s[1], LabeledExample::new(2, Label::new(3)));
        assert_eq!(parse_sequence(&sequence_to_string(&s).unwrap()).unwrap(), s);
    }
}
