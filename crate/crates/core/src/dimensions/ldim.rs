//! Exact tolerant Littlestone dimension over row subsets.
//!
//! A version space is a `u64` bitmask over the rows of the class, so every
//! label restriction is a submask. Values are memoized per mask. The empty
//! set has the internal value `-1`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::class::{HypothesisClass, Label};
use crate::error::{Error, Result};
use crate::tree::{check_mistake_tree, LabelSplit, MistakeTree, Tree};

use super::{Certificate, DimensionKind, DimensionReport, Parameter};

/// Bitmask over the rows of a class.
pub type RowSet = u64;

/// Largest class the memoized recursion accepts.
pub const MAX_ROWS: usize = 64;

/// Largest class a [`LdimTable`] is built for (one byte per subset).
pub const DENSE_MAX_ROWS: usize = 20;

/// Value of the empty version space.
pub const EMPTY_LDIM: i32 = -1;

/// Per-`(x, label)` row masks of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMasks {
    num_labels: u32,
    domain_size: usize,
    rows: usize,
    masks: Vec<RowSet>,
}

impl LabelMasks {
    pub fn new(class: &HypothesisClass) -> Result<Self> {
        if class.len() > MAX_ROWS {
            return Err(Error::TooManyRows {
                rows: class.len(),
                cap: MAX_ROWS,
            });
        }
        let k = class.num_labels() as usize;
        let mut masks = vec![0u64; class.domain_size() * k];
        for (r, row) in class.rows().iter().enumerate() {
            for (x, label) in row.iter().enumerate() {
                masks[x * k + label.index()] |= 1u64 << r;
            }
        }
        Ok(LabelMasks {
            num_labels: class.num_labels(),
            domain_size: class.domain_size(),
            rows: class.len(),
            masks,
        })
    }

    pub fn num_labels(&self) -> u32 {
        self.num_labels
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Rows `h` with `h(x) = label`.
    #[inline]
    pub fn mask(&self, x: usize, label: Label) -> RowSet {
        self.masks[x * self.num_labels as usize + label.index()]
    }

    pub fn full(&self) -> RowSet {
        if self.rows == 64 {
            u64::MAX
        } else {
            (1u64 << self.rows) - 1
        }
    }
}

/// Upper bound from counting: a shattered tree of height `d` has `2^d`
/// distinct leaves, each realized by a distinct row.
#[inline]
fn counting_bound(set: RowSet) -> i32 {
    (31 - set.count_ones().leading_zeros()) as i32
}

/// Evaluates the recurrence at `set` given a lookup for strict submasks.
/// Returns the value and the first maximizing `(x, a, b)` in lexicographic
/// order, if any.
fn evaluate(
    masks: &LabelMasks,
    tolerance: u32,
    set: RowSet,
    stop_at: i32,
    lookup: &mut impl FnMut(RowSet) -> i32,
) -> (i32, Option<LabelSplit>) {
    if set == 0 {
        return (EMPTY_LDIM, None);
    }
    let bound = counting_bound(set).min(stop_at);
    let mut best = 0;
    let mut arg = None;
    if bound == 0 {
        return (0, None);
    }
    let k = masks.num_labels;
    for x in 0..masks.domain_size {
        for a in 1..=k {
            let sa = set & masks.mask(x, Label::new(a));
            if sa == 0 || sa == set {
                continue;
            }
            let mut la: Option<i32> = None;
            for b in (a + tolerance + 1)..=k {
                let sb = set & masks.mask(x, Label::new(b));
                if sb == 0 {
                    continue;
                }
                let va = *la.get_or_insert_with(|| lookup(sa));
                if va < best {
                    break;
                }
                let v = 1 + va.min(lookup(sb));
                if v > best {
                    best = v;
                    arg = Some(LabelSplit {
                        x,
                        left: Label::new(a),
                        right: Label::new(b),
                    });
                    if best >= bound {
                        return (best, arg);
                    }
                }
            }
        }
    }
    (best, arg)
}

/// Memoized `Ldim_τ` over subsets of one class.
#[derive(Debug, Clone)]
pub struct LdimSolver {
    masks: Arc<LabelMasks>,
    tolerance: u32,
    memo: HashMap<RowSet, i8>,
}

impl LdimSolver {
    pub fn new(class: &HypothesisClass, tolerance: u32) -> Result<Self> {
        Ok(Self::from_masks(Arc::new(LabelMasks::new(class)?), tolerance))
    }

    pub fn from_masks(masks: Arc<LabelMasks>, tolerance: u32) -> Self {
        LdimSolver {
            masks,
            tolerance,
            memo: HashMap::new(),
        }
    }

    pub fn masks(&self) -> &Arc<LabelMasks> {
        &self.masks
    }

    pub fn tolerance(&self) -> u32 {
        self.tolerance
    }

    /// `Ldim_τ` of the rows in `set`, `-1` for the empty set.
    pub fn ldim(&mut self, set: RowSet) -> i32 {
        if set == 0 {
            return EMPTY_LDIM;
        }
        if set & (set - 1) == 0 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&set) {
            return i32::from(v);
        }
        let masks = Arc::clone(&self.masks);
        let tolerance = self.tolerance;
        let (v, _) = evaluate(&masks, tolerance, set, i32::MAX, &mut |s| self.ldim(s));
        self.memo.insert(set, v as i8);
        v
    }

    /// A shattered tree of height `ldim(set)`.
    pub fn certificate(&mut self, set: RowSet) -> MistakeTree {
        let h = self.ldim(set);
        if h <= 0 {
            return Tree::Leaf;
        }
        let masks = Arc::clone(&self.masks);
        let tolerance = self.tolerance;
        let (_, split) = evaluate(&masks, tolerance, set, h, &mut |s| self.ldim(s));
        let split = split.expect("a positive dimension has a maximizing split");
        let left = set & masks.mask(split.x, split.left);
        let right = set & masks.mask(split.x, split.right);
        Tree::node(split, self.certificate(left), self.certificate(right))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// `Ldim_τ` of every subset of a small class, shared read-only between runs.
#[derive(Debug, Clone)]
pub struct LdimTable {
    masks: Arc<LabelMasks>,
    tolerance: u32,
    values: Vec<i8>,
}

impl LdimTable {
    pub fn new(class: &HypothesisClass, tolerance: u32) -> Result<Self> {
        if class.len() > DENSE_MAX_ROWS {
            return Err(Error::TooManyRows {
                rows: class.len(),
                cap: DENSE_MAX_ROWS,
            });
        }
        let masks = Arc::new(LabelMasks::new(class)?);
        let size = 1usize << class.len();
        let mut values = vec![EMPTY_LDIM as i8; size];
        // Label restrictions are strict submasks, hence numerically smaller.
        for set in 1..size {
            let set = set as RowSet;
            let (v, _) = evaluate(&masks, tolerance, set, i32::MAX, &mut |s| {
                i32::from(values[s as usize])
            });
            values[set as usize] = v as i8;
        }
        Ok(LdimTable {
            masks,
            tolerance,
            values,
        })
    }

    pub fn masks(&self) -> &Arc<LabelMasks> {
        &self.masks
    }

    pub fn tolerance(&self) -> u32 {
        self.tolerance
    }

    #[inline]
    pub fn ldim(&self, set: RowSet) -> i32 {
        i32::from(self.values[set as usize])
    }
}

/// Either a precomputed table or a lazily filled memo.
#[derive(Debug, Clone)]
pub enum LdimSource {
    Table(Arc<LdimTable>),
    Solver(LdimSolver),
}

impl LdimSource {
    /// Dense table when the class is small, memoized solver otherwise.
    pub fn for_class(class: &HypothesisClass, tolerance: u32) -> Result<Self> {
        if class.len() <= 12 {
            Ok(LdimSource::Table(Arc::new(LdimTable::new(class, tolerance)?)))
        } else {
            Ok(LdimSource::Solver(LdimSolver::new(class, tolerance)?))
        }
    }

    pub fn ldim(&mut self, set: RowSet) -> i32 {
        match self {
            LdimSource::Table(t) => t.ldim(set),
            LdimSource::Solver(s) => s.ldim(set),
        }
    }

    pub fn masks(&self) -> &Arc<LabelMasks> {
        match self {
            LdimSource::Table(t) => t.masks(),
            LdimSource::Solver(s) => s.masks(),
        }
    }

    pub fn tolerance(&self) -> u32 {
        match self {
            LdimSource::Table(t) => t.tolerance(),
            LdimSource::Solver(s) => s.tolerance(),
        }
    }
}

/// Exact `Ldim_τ(H)` with a checked certificate.
pub fn ldim_tau(class: &HypothesisClass, tolerance: u32) -> Result<DimensionReport> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut solver = LdimSolver::new(class, tolerance)?;
    let full = solver.masks().full();
    let value = solver.ldim(full);
    let tree = solver.certificate(full);
    check_mistake_tree(class, &tree, tolerance)
        .map_err(|v| Error::Certificate(v.to_string()))?;
    debug_assert_eq!(tree.height() as i32, value);
    Ok(DimensionReport {
        kind: DimensionKind::Littlestone,
        value: value as u32,
        parameter: Parameter::Tolerance(tolerance),
        certificate: Certificate::Labels(tree),
    })
}

/// `Ldim_τ(H)` without building a certificate.
pub fn ldim_value(class: &HypothesisClass, tolerance: u32) -> Result<u32> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut solver = LdimSolver::new(class, tolerance)?;
    let full = solver.masks().full();
    Ok(solver.ldim(full) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_binary_class, threshold_class};

    fn constants(labels: &[u32], k: u32) -> HypothesisClass {
        let rows: Vec<Vec<u32>> = labels.iter().map(|&l| vec![l]).collect();
        let refs: Vec<&[u32]> = rows.iter().map(|r| r.as_slice()).collect();
        HypothesisClass::from_u32_rows(k, &refs).unwrap()
    }

    #[test]
    fn singleton_is_zero() {
        let h = constants(&[2], 3);
        for tau in 0..3 {
            assert_eq!(ldim_tau(&h, tau).unwrap().value, 0);
        }
    }

    #[test]
    fn four_constants_with_tolerance() {
        let h = constants(&[1, 2, 3, 4], 4);
        assert_eq!(ldim_tau(&h, 2).unwrap().value, 1);
        assert_eq!(ldim_tau(&h, 3).unwrap().value, 0);
        assert_eq!(ldim_tau(&h, 0).unwrap().value, 1);
    }

    #[test]
    fn complete_and_threshold_classes() {
        assert_eq!(ldim_tau(&complete_binary_class(3).unwrap(), 0).unwrap().value, 3);
        assert_eq!(ldim_tau(&threshold_class(4).unwrap(), 0).unwrap().value, 2);
        assert_eq!(ldim_tau(&threshold_class(7).unwrap(), 0).unwrap().value, 3);
    }

    #[test]
    fn empty_class_rejected_and_sentinel_internal() {
        let empty = HypothesisClass::new(2, 1, vec![]).unwrap();
        assert!(matches!(ldim_tau(&empty, 0), Err(Error::EmptyClass)));
        let mut s = LdimSolver::new(&constants(&[1, 2], 2), 0).unwrap();
        assert_eq!(s.ldim(0), EMPTY_LDIM);
    }

    #[test]
    fn dense_table_matches_solver() {
        let h = complete_binary_class(3).unwrap();
        for tau in 0..2 {
            let table = LdimTable::new(&h, tau).unwrap();
            let mut solver = LdimSolver::new(&h, tau).unwrap();
            for set in 0..256u64 {
                assert_eq!(table.ldim(set), solver.ldim(set), "set {set:b}");
            }
        }
    }

    #[test]
    fn certificate_prefers_first_split() {
        let h = complete_binary_class(2).unwrap();
        let report = ldim_tau(&h, 0).unwrap();
        let Certificate::Labels(tree) = report.certificate else {
            panic!("expected a labelled tree")
        };
        let root = tree.split().unwrap();
        assert_eq!((root.x, root.left, root.right), (0, Label::new(1), Label::new(2)));
    }

    #[test]
    fn oversized_classes_are_rejected() {
        let h = complete_binary_class(7).unwrap();
        assert!(matches!(ldim_tau(&h, 0), Err(Error::TooManyRows { .. })));
    }
}
