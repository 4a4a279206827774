//! Sequential fat-shattering dimension at scale `γ`.
//!
//! For a fixed point `x` the split of a row subset induced by a witness `s`
//! only changes when `s ± γ/2` crosses a column value, so the witnesses
//! `{f(x) ± γ/2}` cover every achievable split.

use std::collections::HashMap;

use crate::class::RealFunctionClass;
use crate::error::{invalid, Error, Result};
use crate::tree::{check_fat_tree, margin_holds, Tree, WitnessSplit, WitnessTree};

use super::ldim::{RowSet, MAX_ROWS};
use super::{Certificate, DimensionKind, DimensionReport, Parameter};

/// A witness together with the rows it sends up (`+1`) and down (`-1`).
#[derive(Debug, Clone, Copy)]
struct Cut {
    witness: f64,
    plus: RowSet,
    minus: RowSet,
}

/// Witness candidates at `x`, ascending, with duplicate splits removed.
pub fn witness_grid(class: &RealFunctionClass, x: usize, gamma: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = class
        .column_values(x)
        .into_iter()
        .flat_map(|v| [v - gamma / 2.0, v + gamma / 2.0])
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

struct FatSolver {
    cuts: Vec<(usize, Vec<Cut>)>,
    memo: HashMap<RowSet, i8>,
}

impl FatSolver {
    fn new(class: &RealFunctionClass, gamma: f64) -> Self {
        let mut cuts = Vec::with_capacity(class.domain_size());
        for x in 0..class.domain_size() {
            let mut column: Vec<Cut> = Vec::new();
            for s in witness_grid(class, x, gamma) {
                let (mut plus, mut minus) = (0u64, 0u64);
                for r in 0..class.len() {
                    let v = class.get(r, x);
                    if margin_holds(1, v, s, gamma) {
                        plus |= 1 << r;
                    }
                    if margin_holds(-1, v, s, gamma) {
                        minus |= 1 << r;
                    }
                }
                if plus == 0 || minus == 0 {
                    continue;
                }
                if !column.iter().any(|c| c.plus == plus && c.minus == minus) {
                    column.push(Cut {
                        witness: s,
                        plus,
                        minus,
                    });
                }
            }
            cuts.push((x, column));
        }
        FatSolver {
            cuts,
            memo: HashMap::new(),
        }
    }

    fn best(&mut self, set: RowSet, stop_at: i32) -> (i32, Option<(usize, Cut)>) {
        let bound = ((31 - set.count_ones().leading_zeros()) as i32).min(stop_at);
        let mut best = 0;
        let mut arg = None;
        if bound == 0 {
            return (0, None);
        }
        for i in 0..self.cuts.len() {
            for j in 0..self.cuts[i].1.len() {
                let (x, cut) = (self.cuts[i].0, self.cuts[i].1[j]);
                let (p, m) = (set & cut.plus, set & cut.minus);
                if p == 0 || m == 0 {
                    continue;
                }
                let vm = self.value(m);
                if vm < best {
                    continue;
                }
                let v = 1 + vm.min(self.value(p));
                if v > best {
                    best = v;
                    arg = Some((x, cut));
                    if best >= bound {
                        return (best, arg);
                    }
                }
            }
        }
        (best, arg)
    }

    fn value(&mut self, set: RowSet) -> i32 {
        if set == 0 {
            return -1;
        }
        if set & (set - 1) == 0 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&set) {
            return i32::from(v);
        }
        let (v, _) = self.best(set, i32::MAX);
        self.memo.insert(set, v as i8);
        v
    }

    fn certificate(&mut self, set: RowSet) -> WitnessTree {
        let h = self.value(set);
        if h <= 0 {
            return Tree::Leaf;
        }
        let (_, arg) = self.best(set, h);
        let (x, cut) = arg.expect("a positive dimension has a maximizing witness");
        Tree::node(
            WitnessSplit {
                x,
                witness: cut.witness,
            },
            self.certificate(set & cut.minus),
            self.certificate(set & cut.plus),
        )
    }
}

/// Exact `fat_γ(F)` with a checked witness tree.
pub fn fat_gamma(class: &RealFunctionClass, gamma: f64) -> Result<DimensionReport> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(invalid("gamma", format!("{gamma} must be positive")));
    }
    if class.len() > MAX_ROWS {
        return Err(Error::TooManyRows {
            rows: class.len(),
            cap: MAX_ROWS,
        });
    }
    let (value, tree) = if class.is_empty() {
        (0, Tree::Leaf)
    } else {
        let mut solver = FatSolver::new(class, gamma);
        let full = if class.len() == 64 {
            u64::MAX
        } else {
            (1u64 << class.len()) - 1
        };
        (solver.value(full) as u32, solver.certificate(full))
    };
    if !class.is_empty() {
        check_fat_tree(class, &tree, gamma).map_err(|v| Error::Certificate(v.to_string()))?;
    }
    Ok(DimensionReport {
        kind: DimensionKind::FatShattering,
        value,
        parameter: Parameter::Gamma(gamma),
        certificate: Certificate::Witnesses(tree),
    })
}
