//! Explicit finite hypothesis classes.
//!
//! A multi-class hypothesis class is stored as a table with one row per
//! hypothesis and one column per domain point. Rows are deduplicated at
//! construction, keeping the first occurrence, so every dimension and learner
//! sees a set of distinct hypotheses.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A class index in `1..=K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(u32);

impl Label {
    /// Panics if `value` is zero; labels are 1-based.
    pub const fn new(value: u32) -> Self {
        assert!(value >= 1, "labels are 1-based");
        Label(value)
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Zero-based position of the label, handy for indexing per-label tables.
    pub const fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub const fn from_index(index: usize) -> Self {
        Label(index as u32 + 1)
    }

    /// Absolute difference between two labels.
    pub const fn distance(self, other: Label) -> u32 {
        self.0.abs_diff(other.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Multi-class hypothesis class `H ⊂ [K]^X` over a finite domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisClass {
    num_labels: u32,
    domain_size: usize,
    rows: Vec<Vec<Label>>,
}

impl HypothesisClass {
    /// Builds a class, collapsing duplicate rows.
    pub fn new(num_labels: u32, domain_size: usize, rows: Vec<Vec<Label>>) -> Result<Self> {
        Self::with_row_map(num_labels, domain_size, rows).map(|(class, _)| class)
    }

    /// Like [`HypothesisClass::new`], also returning for every input row the
    /// index of the row it was collapsed into.
    pub fn with_row_map(
        num_labels: u32,
        domain_size: usize,
        rows: Vec<Vec<Label>>,
    ) -> Result<(Self, Vec<usize>)> {
        if num_labels == 0 {
            return Err(Error::InvalidClass("K must be at least 1".into()));
        }
        if domain_size == 0 {
            return Err(Error::InvalidClass("domain must contain a point".into()));
        }
        let mut seen: HashMap<Vec<Label>, usize> = HashMap::with_capacity(rows.len());
        let mut kept = Vec::with_capacity(rows.len());
        let mut map = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != domain_size {
                return Err(Error::InvalidClass(format!(
                    "row {i} has {} entries, expected {domain_size}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|l| l.get() > num_labels) {
                return Err(Error::InvalidClass(format!(
                    "row {i} uses label {bad} but K = {num_labels}"
                )));
            }
            let next = kept.len();
            let slot = *seen.entry(row.clone()).or_insert(next);
            if slot == next {
                kept.push(row);
            }
            map.push(slot);
        }
        Ok((
            HypothesisClass {
                num_labels,
                domain_size,
                rows: kept,
            },
            map,
        ))
    }

    /// Convenience constructor from raw 1-based integers.
    pub fn from_u32_rows(num_labels: u32, rows: &[&[u32]]) -> Result<Self> {
        let domain_size = rows.first().map(|r| r.len()).unwrap_or(1);
        let mut converted = Vec::with_capacity(rows.len());
        for row in rows {
            if row.contains(&0) {
                return Err(Error::InvalidClass("label 0 is not allowed".into()));
            }
            converted.push(row.iter().map(|&v| Label::new(v)).collect());
        }
        Self::new(num_labels, domain_size, converted)
    }

    pub fn num_labels(&self) -> u32 {
        self.num_labels
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Label>] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &[Label] {
        &self.rows[index]
    }

    pub fn get(&self, row: usize, x: usize) -> Label {
        self.rows[row][x]
    }

    /// All labels `1..=K`.
    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (1..=self.num_labels).map(Label)
    }

    pub fn position(&self, row: &[Label]) -> Option<usize> {
        self.rows.iter().position(|r| r.as_slice() == row)
    }

    /// The subclass `{h : h(x) = label}`.
    pub fn restrict(&self, x: usize, label: Label) -> HypothesisClass {
        HypothesisClass {
            num_labels: self.num_labels,
            domain_size: self.domain_size,
            rows: self
                .rows
                .iter()
                .filter(|r| r[x] == label)
                .cloned()
                .collect(),
        }
    }

    /// The subclass made of the given row indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> HypothesisClass {
        HypothesisClass {
            num_labels: self.num_labels,
            domain_size: self.domain_size,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

/// Real-valued function class `F ⊂ [-1, 1]^X` over a finite domain.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFunctionClass {
    domain_size: usize,
    rows: Vec<Vec<f64>>,
    grid: Option<f64>,
}

impl RealFunctionClass {
    pub fn new(domain_size: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::InvalidClass("domain must contain a point".into()));
        }
        let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
        let mut kept = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != domain_size {
                return Err(Error::InvalidClass(format!(
                    "row {i} has {} entries, expected {domain_size}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|v| !(-1.0..=1.0).contains(*v)) {
                return Err(Error::OutOfRange(v));
            }
            // -0.0 and 0.0 are the same function value.
            let key: Vec<u64> = row.iter().map(|v| (v + 0.0).to_bits()).collect();
            if seen.insert(key, ()).is_none() {
                kept.push(row);
            }
        }
        Ok(RealFunctionClass {
            domain_size,
            rows: kept,
            grid: None,
        })
    }

    /// Builds a class whose values sit on the decimal grid `-1 + j * step`.
    /// Values are snapped to the nearest grid point; values further than
    /// `1e-9` from the grid are rejected.
    pub fn on_grid(domain_size: usize, rows: Vec<Vec<f64>>, step: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 2.0) {
            return Err(Error::InvalidClass(format!("grid step {step} must lie in (0, 2]")));
        }
        // Steps of the form 1/q are evaluated as (j - q) / q, which is the
        // correctly rounded decimal for every grid point.
        let inverse = (1.0 / step).round();
        let reciprocal = ((1.0 / step) - inverse).abs() < 1e-9;
        let mut snapped = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                let j = ((v + 1.0) / step).round();
                let g = if reciprocal {
                    (j - inverse) / inverse
                } else {
                    j * step - 1.0
                };
                if (g - v).abs() > 1e-9 {
                    return Err(Error::InvalidClass(format!(
                        "value {v} is not on the grid with step {step}"
                    )));
                }
                out.push(g.clamp(-1.0, 1.0));
            }
            snapped.push(out);
        }
        let mut class = Self::new(domain_size, snapped)?;
        class.grid = Some(step);
        Ok(class)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &[f64] {
        &self.rows[index]
    }

    pub fn get(&self, row: usize, x: usize) -> f64 {
        self.rows[row][x]
    }

    pub fn grid(&self) -> Option<f64> {
        self.grid
    }

    /// Distinct values taken at domain point `x`, ascending.
    pub fn column_values(&self, x: usize) -> Vec<f64> {
        let mut v: Vec<f64> = self.rows.iter().map(|r| r[x]).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    pub fn position(&self, row: &[f64]) -> Option<usize> {
        self.rows.iter().position(|r| r.as_slice() == row)
    }
}
