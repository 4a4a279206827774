//! Sufficient conditions for private learnability of a real-valued class.
//!
//! For an explicit finite table conditions 1, 2 and 4 always hold and the
//! cover at any scale is finite, so condition 3 is judged by the cover size:
//! it holds at scale `r` when `N(r)` does not exceed the number of distinct
//! values in the range. A class whose members are pairwise far apart, such
//! as point functions, fails.

use serde::{Deserialize, Serialize};

use crate::class::RealFunctionClass;
use crate::dimensions::{pdim, DimensionReport};
use crate::error::{invalid, Result};

/// Above this size the cover is greedy only.
pub const EXACT_COVER_MAX: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub scale: f64,
    pub size: usize,
    /// Row indices of the centres.
    pub centres: Vec<usize>,
    pub exact: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub finite_class: bool,
    pub range: Vec<f64>,
    pub finite_range: bool,
    pub covers: Vec<CoverReport>,
    pub pdim: DimensionReport,
    pub finite_pdim: bool,
    pub privately_learnable: bool,
}

pub fn sup_distance(f: &[f64], g: &[f64]) -> f64 {
    f.iter().zip(g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn balls(class: &RealFunctionClass, scale: f64) -> Vec<u64> {
    let rows = class.rows();
    rows.iter()
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(_, f)| sup_distance(c, f) <= scale + 1e-12)
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect()
}

fn greedy_cover(balls: &[u64], full: u64) -> Vec<usize> {
    let mut left = full;
    let mut centres = Vec::new();
    while left != 0 {
        let best = (0..balls.len())
            .max_by_key(|&i| ((balls[i] & left).count_ones(), std::cmp::Reverse(i)))
            .expect("balls are nonempty");
        centres.push(best);
        left &= !balls[best];
    }
    centres
}

/// Smallest cover with exactly `size` centres, in lexicographic order.
fn cover_of_size(balls: &[u64], full: u64, size: usize, start: usize, acc: u64, chosen: &mut Vec<usize>) -> bool {
    if acc == full {
        return true;
    }
    if chosen.len() == size {
        return false;
    }
    for i in start..balls.len() {
        chosen.push(i);
        if cover_of_size(balls, full, size, i + 1, acc | balls[i], chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimum internal cover: centres are members of the class and every member
/// is within sup-distance `scale` of one.
pub fn sup_cover(class: &RealFunctionClass, scale: f64) -> Result<(Vec<usize>, bool)> {
    if scale.is_nan() || scale < 0.0 {
        return Err(invalid("scale", format!("{scale} must be nonnegative")));
    }
    if class.len() > 64 {
        return Err(crate::error::Error::TooManyRows {
            rows: class.len(),
            cap: 64,
        });
    }
    if class.is_empty() {
        return Ok((Vec::new(), true));
    }
    let balls = balls(class, scale);
    let full = if class.len() == 64 { u64::MAX } else { (1u64 << class.len()) - 1 };
    let greedy = greedy_cover(&balls, full);
    if class.len() > EXACT_COVER_MAX {
        return Ok((greedy, false));
    }
    for size in 1..greedy.len() {
        let mut chosen = Vec::new();
        if cover_of_size(&balls, full, size, 0, 0, &mut chosen) {
            return Ok((chosen, true));
        }
    }
    Ok((greedy, true))
}

pub fn check_conditions(class: &RealFunctionClass, scales: &[f64]) -> Result<ConditionReport> {
    let mut range: Vec<f64> = class.rows().iter().flatten().copied().collect();
    range.sort_by(f64::total_cmp);
    range.dedup();
    let mut covers = Vec::with_capacity(scales.len());
    for &scale in scales {
        let (centres, exact) = sup_cover(class, scale)?;
        covers.push(CoverReport {
            scale,
            size: centres.len(),
            holds: centres.len() <= range.len(),
            centres,
            exact,
        });
    }
    let pdim = pdim(class)?;
    // A table has finitely many rows, values and sign patterns.
    let (finite_class, finite_range, finite_pdim) = (true, true, true);
    let cover_holds = covers.iter().all(|c| c.holds);
    Ok(ConditionReport {
        finite_class,
        range,
        finite_range,
        covers,
        pdim,
        finite_pdim,
        privately_learnable: finite_class || finite_range || cover_holds || finite_pdim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{point_class, random_grid_class, real_constants};
    use crate::rng::seeded;

    #[test]
    fn point_functions() {
        let r = check_conditions(&point_class(3).unwrap(), &[0.5]).unwrap();
        assert_eq!(r.pdim.value, 1);
        assert_eq!(r.covers[0].size, 3);
        assert!(!r.covers[0].holds);
    }

    #[test]
    fn two_constants_satisfy_everything() {
        let r = check_conditions(&real_constants(&[-0.5, 0.5], 2).unwrap(), &[0.1, 0.5, 1.0]).unwrap();
        assert!(r.finite_class && r.finite_range && r.finite_pdim);
        assert!(r.covers.iter().all(|c| c.holds));
        assert_eq!(r.covers[2].size, 1);
        assert!(r.privately_learnable);
    }

    #[test]
    fn range_count_is_the_distinct_entry_count() {
        let f = random_grid_class(8, 4, 4, &mut seeded(2)).unwrap();
        let r = check_conditions(&f, &[]).unwrap();
        let mut all: Vec<i64> = f.rows().iter().flatten().map(|v| (v * 4.0).round() as i64).collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(r.range.len(), all.len());
    }

    #[test]
    fn chain_needs_two_centres() {
        let f = RealFunctionClass::new(1, vec![vec![0.0], vec![0.1], vec![0.2], vec![0.3], vec![0.4]]).unwrap();
        let (c, exact) = sup_cover(&f, 0.1).unwrap();
        assert!(exact);
        assert_eq!(c.len(), 2);
        assert_eq!(sup_cover(&f, 0.2).unwrap().0, vec![2]);
    }
}
