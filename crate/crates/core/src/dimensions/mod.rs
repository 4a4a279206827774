//! Combinatorial dimensions of finite classes, each with a certificate.

mod brute;
mod fat;
mod ldim;
mod logstar;
mod pdim;

use serde::{Deserialize, Serialize};

use crate::tree::{MistakeTree, WitnessTree};

pub use brute::ldim_brute_force;
pub use fat::{fat_gamma, witness_grid};
pub use ldim::{
    ldim_tau, ldim_value, LabelMasks, LdimSolver, LdimSource, LdimTable, RowSet, DENSE_MAX_ROWS,
    EMPTY_LDIM, MAX_ROWS,
};
pub use logstar::{log_star, twr, Tower};
pub use pdim::{pdim, sign_class, SignClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionKind {
    Littlestone,
    FatShattering,
    Pollard,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Tolerance(u32),
    Gamma(f64),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form", content = "tree")]
pub enum Certificate {
    Labels(MistakeTree),
    Witnesses(WitnessTree),
}

impl Certificate {
    pub fn height(&self) -> u32 {
        match self {
            Certificate::Labels(t) => t.height(),
            Certificate::Witnesses(t) => t.height(),
        }
    }
}

/// A dimension value with the tree that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub kind: DimensionKind,
    pub value: u32,
    pub parameter: Parameter,
    pub certificate: Certificate,
}
