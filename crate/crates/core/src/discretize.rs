//! Discretization `[F]_γ` of a real-valued class into a multi-class one.
//!
//! `[-1, 1]` is split into `⌈2/γ⌉` intervals of length `γ`. Interval `j`
//! covers `[-1 + (j-1)γ, -1 + jγ)`; the last interval is closed at `+1` and
//! may be shorter than `γ`.

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::error::{invalid, Result};

/// Relative slack used to absorb floating-point error when a quotient
/// should be an exact integer (e.g. `2 / 0.4` or `(0.4 + 1) / 0.2`).
const SNAP: f64 = 1e-9;

fn snap(t: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() <= SNAP * r.abs().max(1.0) {
        r
    } else {
        t
    }
}

/// The interval partition of `[-1, 1]` at scale `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalGrid {
    width: f64,
    count: u32,
}

impl IntervalGrid {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(invalid("gamma", format!("{gamma} must be positive")));
        }
        let count = snap(2.0 / gamma).ceil().max(1.0);
        if count > u32::MAX as f64 {
            return Err(invalid("gamma", format!("{gamma} yields too many intervals")));
        }
        Ok(IntervalGrid {
            width: gamma,
            count: count as u32,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Number of intervals, i.e. the label count `K` of the discretized class.
    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn label_of(&self, value: f64) -> Label {
        let t = snap((value + 1.0) / self.width).floor();
        let j = (t.max(0.0) as u64 + 1).min(self.count as u64);
        Label::new(j as u32)
    }

    pub fn lower(&self, label: Label) -> f64 {
        -1.0 + (label.get() - 1) as f64 * self.width
    }

    pub fn upper(&self, label: Label) -> f64 {
        if label.get() >= self.count {
            1.0
        } else {
            -1.0 + label.get() as f64 * self.width
        }
    }

    /// Midpoint of the interval, using the truncated extent for the last one.
    pub fn midpoint(&self, label: Label) -> f64 {
        0.5 * (self.lower(label) + self.upper(label))
    }
}

/// `[F]_γ` together with, for every row of `F`, the row of `[F]_γ` it maps to.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub class: HypothesisClass,
    pub row_map: Vec<usize>,
    pub grid: IntervalGrid,
}

impl Discretization {
    /// First row of the source class mapped to discretized row `row`.
    pub fn source_row(&self, row: usize) -> Option<usize> {
        self.row_map.iter().position(|&r| r == row)
    }

    /// Replaces every label by its interval midpoint.
    pub fn reconstruct(&self, labels: &[Label]) -> Vec<f64> {
        labels.iter().map(|&l| self.grid.midpoint(l)).collect()
    }
}

pub fn discretize(class: &RealFunctionClass, gamma: f64) -> Result<Discretization> {
    let grid = IntervalGrid::new(gamma)?;
    let rows = class
        .rows()
        .iter()
        .map(|r| r.iter().map(|&v| grid.label_of(v)).collect())
        .collect();
    let (class, row_map) = HypothesisClass::with_row_map(grid.count(), class.domain_size(), rows)?;
    Ok(Discretization {
        class,
        row_map,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn endpoints_land_in_outer_intervals() {
        let f = RealFunctionClass::new(2, vec![vec![-1.0, -1.0], vec![1.0, 1.0]]).unwrap();
        let d = discretize(&f, 1.0).unwrap();
        assert_eq!(d.class.num_labels(), 2);
        assert_eq!(d.class.row(0), &[Label::new(1), Label::new(1)]);
        assert_eq!(d.class.row(1), &[Label::new(2), Label::new(2)]);
    }

    #[test]
    fn zero_at_half_scale_is_label_three() {
        let f = RealFunctionClass::new(1, vec![vec![0.0]]).unwrap();
        let d = discretize(&f, 0.5).unwrap();
        assert_eq!(d.class.num_labels(), 4);
        assert_eq!(d.class.get(0, 0), Label::new(3));
    }

    #[test]
    fn full_width_collapses_to_one_constant() {
        let f = RealFunctionClass::new(2, vec![vec![-1.0, 0.3], vec![0.9, 1.0]]).unwrap();
        let d = discretize(&f, 2.0).unwrap();
        assert_eq!(d.class.num_labels(), 1);
        assert_eq!(d.class.len(), 1);
        assert_eq!(d.row_map, vec![0, 0]);
    }

    #[test]
    fn nonpositive_scale_is_rejected() {
        let f = RealFunctionClass::new(1, vec![vec![0.0]]).unwrap();
        assert!(discretize(&f, 0.0).is_err());
        assert!(discretize(&f, -0.1).is_err());
    }

    #[test]
    fn interval_counts_snap_to_integers() {
        assert_eq!(IntervalGrid::new(0.4).unwrap().count(), 5);
        assert_eq!(IntervalGrid::new(0.02).unwrap().count(), 100);
        assert_eq!(IntervalGrid::new(0.3).unwrap().count(), 7);
        assert_eq!(IntervalGrid::new(2.0 / 60.0).unwrap().count(), 60);
    }

    #[test]
    fn boundary_values_open_the_next_interval() {
        let g = IntervalGrid::new(0.2).unwrap();
        // -0.6 + 1 = 0.4 is two full widths: the value opens interval 3.
        assert_eq!(g.label_of(-0.6), Label::new(3));
        assert_eq!(g.label_of(1.0), Label::new(10));
        assert_eq!(g.label_of(0.8), Label::new(10));
    }

    #[test]
    fn truncated_last_interval_midpoint() {
        let g = IntervalGrid::new(0.3).unwrap();
        // Last interval is [0.8, 1].
        assert!((g.midpoint(Label::new(7)) - 0.9).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn midpoints_stay_within_half_a_width(v in -1.0f64..=1.0, gamma in 0.01f64..=2.0) {
            let g = IntervalGrid::new(gamma).unwrap();
            let m = g.midpoint(g.label_of(v));
            prop_assert!((m - v).abs() <= gamma / 2.0 + 1e-9);
        }

        #[test]
        fn discretizing_midpoints_is_idempotent(
            rows in proptest::collection::vec(proptest::collection::vec(-1.0f64..=1.0, 3), 1..6),
            gamma in 0.05f64..=2.0,
        ) {
            let f = RealFunctionClass::new(3, rows).unwrap();
            let d = discretize(&f, gamma).unwrap();
            let rebuilt: Vec<Vec<f64>> = d.class.rows().iter().map(|r| d.reconstruct(r)).collect();
            let again = discretize(&RealFunctionClass::new(3, rebuilt).unwrap(), gamma).unwrap();
            prop_assert_eq!(again.class.rows(), d.class.rows());
        }
    }
}
