//! Deterministic class generators and analytic certificates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::error::{invalid, Result};
use crate::format::AnyClass;
use crate::rng::seeded;
use crate::tree::{LabelSplit, MistakeTree, Tree};

pub const MAX_COMPLETE_POINTS: usize = 16;
pub const MAX_THRESHOLD_POINTS: usize = 4096;
pub const MAX_RANDOM_ROWS: usize = 64;
pub const MAX_RANDOM_DOMAIN: usize = 64;

/// All `2^n` binary rows over `n` points. Row `r` is the `n`-bit binary
/// expansion of `r`, most significant bit at point 0, with bits `0, 1` read
/// as labels `1, 2`.
pub fn complete_binary_class(n: usize) -> Result<HypothesisClass> {
    if n == 0 || n > MAX_COMPLETE_POINTS {
        return Err(invalid(
            "n",
            format!("complete classes need 1 ≤ n ≤ {MAX_COMPLETE_POINTS}, got {n}"),
        ));
    }
    let rows = (0..1usize << n)
        .map(|r| {
            (0..n)
                .map(|x| Label::new(1 + ((r >> (n - 1 - x)) & 1) as u32))
                .collect()
        })
        .collect();
    HypothesisClass::new(2, n, rows)
}

/// Depth-`n` tree for the complete class: every node at depth `i` queries
/// point `i` with edges `(1, 2)`.
pub fn complete_certificate(n: usize) -> MistakeTree {
    fn build(depth: usize, n: usize) -> MistakeTree {
        if depth == n {
            return Tree::Leaf;
        }
        let split = LabelSplit {
            x: depth,
            left: Label::new(1),
            right: Label::new(2),
        };
        Tree::node(split, build(depth + 1, n), build(depth + 1, n))
    }
    build(0, n)
}

/// Thresholds over `n` ordered points: rows `i = 0..=n`, `h_i(x) = 2` iff
/// `x ≥ i`.
pub fn threshold_class(n: usize) -> Result<HypothesisClass> {
    if n == 0 || n > MAX_THRESHOLD_POINTS {
        return Err(invalid(
            "n",
            format!("threshold classes need 1 ≤ n ≤ {MAX_THRESHOLD_POINTS}, got {n}"),
        ));
    }
    let rows = (0..=n)
        .map(|i| {
            (0..n)
                .map(|x| Label::new(if x >= i { 2 } else { 1 }))
                .collect()
        })
        .collect();
    HypothesisClass::new(2, n, rows)
}

/// Binary-search tree of height `⌊log₂(n+1)⌋` for [`threshold_class`].
pub fn threshold_certificate(n: usize) -> MistakeTree {
    // Node over threshold rows lo..=hi; point x sends rows ≤ x to label 2.
    fn build(lo: usize, hi: usize, depth: u32) -> MistakeTree {
        if depth == 0 {
            return Tree::Leaf;
        }
        let m = hi - lo + 1;
        let x = lo + m / 2 - 1;
        let split = LabelSplit {
            x,
            left: Label::new(1),
            right: Label::new(2),
        };
        Tree::node(split, build(x + 1, hi, depth - 1), build(lo, x, depth - 1))
    }
    let height = (n + 1).ilog2();
    build(0, n, height)
}

/// One constant row per label, over `domain` points.
pub fn constants_class(labels: &[u32], num_labels: u32, domain: usize) -> Result<HypothesisClass> {
    if labels.contains(&0) {
        return Err(invalid("labels", "label 0 is not allowed"));
    }
    let rows = labels
        .iter()
        .map(|&l| vec![Label::new(l); domain])
        .collect();
    HypothesisClass::new(num_labels, domain, rows)
}

/// Point functions `f_i(x) = 1` if `x = i` else `0`.
pub fn point_class(n: usize) -> Result<RealFunctionClass> {
    let rows = (0..n)
        .map(|i| (0..n).map(|x| if x == i { 1.0 } else { 0.0 }).collect())
        .collect();
    RealFunctionClass::on_grid(n, rows, 1.0)
}

/// Real constants over `domain` points.
pub fn real_constants(values: &[f64], domain: usize) -> Result<RealFunctionClass> {
    RealFunctionClass::new(domain, values.iter().map(|&v| vec![v; domain]).collect())
}

/// Uniformly random table; duplicates collapse, so the class may come out
/// smaller than `rows`.
pub fn random_class<R: Rng + ?Sized>(
    rows: usize,
    domain: usize,
    num_labels: u32,
    rng: &mut R,
) -> Result<HypothesisClass> {
    check_random_size(rows, domain)?;
    if num_labels == 0 {
        return Err(invalid("labels", "K must be at least 1"));
    }
    let table = (0..rows)
        .map(|_| {
            (0..domain)
                .map(|_| Label::new(rng.gen_range(1..=num_labels)))
                .collect()
        })
        .collect();
    HypothesisClass::new(num_labels, domain, table)
}

/// Uniformly random values on the grid `(j - q) / q`, `j = 0..=2q`.
pub fn random_grid_class<R: Rng + ?Sized>(
    rows: usize,
    domain: usize,
    q: u32,
    rng: &mut R,
) -> Result<RealFunctionClass> {
    check_random_size(rows, domain)?;
    if q == 0 {
        return Err(invalid("q", "grid resolution must be positive"));
    }
    let qf = f64::from(q);
    let table = (0..rows)
        .map(|_| {
            (0..domain)
                .map(|_| (f64::from(rng.gen_range(0..=2 * q)) - qf) / qf)
                .collect()
        })
        .collect();
    RealFunctionClass::on_grid(domain, table, 1.0 / qf)
}

fn check_random_size(rows: usize, domain: usize) -> Result<()> {
    if rows == 0 || rows > MAX_RANDOM_ROWS {
        return Err(invalid(
            "rows",
            format!("random classes need 1 ≤ rows ≤ {MAX_RANDOM_ROWS}, got {rows}"),
        ));
    }
    if domain == 0 || domain > MAX_RANDOM_DOMAIN {
        return Err(invalid(
            "domain",
            format!("random classes need 1 ≤ domain ≤ {MAX_RANDOM_DOMAIN}, got {domain}"),
        ));
    }
    Ok(())
}

/// `count` random classes with `|H| ≤ max_rows`, `|X| ≤ max_domain` and
/// `2 ≤ K ≤ max_labels`, drawn from one seed.
pub fn random_corpus(
    count: usize,
    max_rows: usize,
    max_domain: usize,
    max_labels: u32,
    seed: u64,
) -> Result<Vec<HypothesisClass>> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|_| {
            let rows = rng.gen_range(1..=max_rows);
            let domain = rng.gen_range(1..=max_domain);
            let k = rng.gen_range(2..=max_labels.max(2));
            random_class(rows, domain, k, &mut rng)
        })
        .collect()
}

/// Serializable description of a generated class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum ClassSpec {
    Complete { n: usize },
    Threshold { n: usize },
    Constants { labels: Vec<u32>, num_labels: u32, domain: usize },
    Random { rows: usize, domain: usize, num_labels: u32, seed: u64 },
    RealConstants { values: Vec<f64>, domain: usize },
    Point { n: usize },
    RandomReal { rows: usize, domain: usize, q: u32, seed: u64 },
}

impl ClassSpec {
    pub fn build(&self) -> Result<AnyClass> {
        Ok(match self {
            ClassSpec::Complete { n } => AnyClass::Multiclass(complete_binary_class(*n)?),
            ClassSpec::Threshold { n } => AnyClass::Multiclass(threshold_class(*n)?),
            ClassSpec::Constants {
                labels,
                num_labels,
                domain,
            } => AnyClass::Multiclass(constants_class(labels, *num_labels, *domain)?),
            ClassSpec::Random {
                rows,
                domain,
                num_labels,
                seed,
            } => AnyClass::Multiclass(random_class(*rows, *domain, *num_labels, &mut seeded(*seed))?),
            ClassSpec::RealConstants { values, domain } => {
                AnyClass::Real(real_constants(values, *domain)?)
            }
            ClassSpec::Point { n } => AnyClass::Real(point_class(*n)?),
            ClassSpec::RandomReal {
                rows,
                domain,
                q,
                seed,
            } => AnyClass::Real(random_grid_class(*rows, *domain, *q, &mut seeded(*seed))?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::check_mistake_tree;

    #[test]
    fn sizes() {
        assert_eq!(complete_binary_class(3).unwrap().len(), 8);
        assert_eq!(threshold_class(5).unwrap().len(), 6);
        assert!(complete_binary_class(17).is_err());
        assert_eq!(point_class(3).unwrap().len(), 3);
    }

    #[test]
    fn complete_rows_follow_binary_expansion() {
        let c = complete_binary_class(3).unwrap();
        assert_eq!(c.row(0), &[Label::new(1); 3]);
        let five: Vec<u32> = c.row(5).iter().map(|l| l.get()).collect();
        assert_eq!(five, vec![2, 1, 2]);
    }

    #[test]
    fn analytic_certificates_are_shattered() {
        for n in 1..=6 {
            let c = complete_binary_class(n).unwrap();
            let t = complete_certificate(n);
            assert_eq!(t.height() as usize, n);
            assert!(check_mistake_tree(&c, &t, 0).is_ok());
        }
        for n in 1..=20 {
            let c = threshold_class(n).unwrap();
            let t = threshold_certificate(n);
            assert_eq!(t.height(), (n as u32 + 1).ilog2());
            assert_eq!(t.max_depth(), t.height());
            assert!(check_mistake_tree(&c, &t, 0).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        let spec = ClassSpec::RandomReal {
            rows: 5,
            domain: 3,
            q: 5,
            seed: 7,
        };
        assert_eq!(spec.build().unwrap(), spec.build().unwrap());
        let a = random_corpus(10, 6, 4, 4, 3).unwrap();
        let b = random_corpus(10, 6, 4, 4, 3).unwrap();
        assert_eq!(a, b);
    }
}
