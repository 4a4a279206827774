//! Sequential Pollard pseudo-dimension as `Ldim` of the sign class.
//!
//! `B_f(x, s) = sign(f(x) - s)` with `sign(0) = +1`, encoded as label 2 for
//! `+1` and label 1 for `-1`, over the product of the domain with a finite
//! witness grid per column.

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::error::{Error, Result};
use crate::tree::{check_sign_tree, Tree, WitnessSplit, WitnessTree};

use super::ldim::LdimSolver;
use super::{Certificate, DimensionKind, DimensionReport, Parameter};

/// The binary class `F⁺` and the `(x, s)` pair behind each of its columns.
#[derive(Debug, Clone)]
pub struct SignClass {
    pub class: HypothesisClass,
    pub columns: Vec<(usize, f64)>,
}

/// Column values plus one midpoint between each consecutive pair.
fn sign_witnesses(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * values.len());
    for (i, &v) in values.iter().enumerate() {
        out.push(v);
        if let Some(&next) = values.get(i + 1) {
            out.push(0.5 * (v + next));
        }
    }
    out
}

pub fn sign_class(class: &RealFunctionClass) -> Result<SignClass> {
    let mut columns = Vec::new();
    for x in 0..class.domain_size() {
        for s in sign_witnesses(&class.column_values(x)) {
            columns.push((x, s));
        }
    }
    let rows = class
        .rows()
        .iter()
        .map(|f| {
            columns
                .iter()
                .map(|&(x, s)| Label::new(if f[x] >= s { 2 } else { 1 }))
                .collect()
        })
        .collect();
    let binary = HypothesisClass::new(2, columns.len(), rows)?;
    Ok(SignClass {
        class: binary,
        columns,
    })
}

pub fn pdim(class: &RealFunctionClass) -> Result<DimensionReport> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let signs = sign_class(class)?;
    let mut solver = LdimSolver::new(&signs.class, 0)?;
    let full = solver.masks().full();
    let value = solver.ldim(full) as u32;
    let labelled = solver.certificate(full);
    // Binary labels come out as (1, 2): left is f(x) < s, right is f(x) ≥ s.
    let tree: WitnessTree = labelled.map(&|split| {
        debug_assert_eq!((split.left.get(), split.right.get()), (1, 2));
        let (x, witness) = signs.columns[split.x];
        WitnessSplit { x, witness }
    });
    check_sign_tree(class, &tree).map_err(|v| Error::Certificate(v.to_string()))?;
    debug_assert_eq!(tree.height(), value);
    Ok(DimensionReport {
        kind: DimensionKind::Pollard,
        value,
        parameter: Parameter::None,
        certificate: Certificate::Witnesses(if value == 0 { Tree::Leaf } else { tree }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::point_class;

    #[test]
    fn constant_class_is_zero() {
        let f = RealFunctionClass::new(3, vec![vec![0.2, -0.4, 1.0]]).unwrap();
        assert_eq!(pdim(&f).unwrap().value, 0);
    }

    #[test]
    fn point_functions_have_one() {
        assert_eq!(pdim(&point_class(3).unwrap()).unwrap().value, 1);
    }

    #[test]
    fn two_constants_have_one() {
        let f = RealFunctionClass::new(2, vec![vec![-1.0; 2], vec![1.0; 2]]).unwrap();
        assert_eq!(pdim(&f).unwrap().value, 1);
    }

    #[test]
    fn sign_zero_is_positive() {
        let f = RealFunctionClass::new(1, vec![vec![0.0], vec![0.5]]).unwrap();
        let s = sign_class(&f).unwrap();
        let at_zero = s.columns.iter().position(|&(_, w)| w == 0.0).unwrap();
        assert_eq!(s.class.rows()[0][at_zero], Label::new(2));
    }
}
