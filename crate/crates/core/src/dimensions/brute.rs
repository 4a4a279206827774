//! Independent oracle for `Ldim_τ`: explicit tree search from the definition.
//!
//! No memo and no row bitmasks. A candidate tree is grown node by node; a
//! node is attempted only while its path prefix is realized by some row.
//! Every tree found is re-checked with the definitional checker.

use crate::class::{HypothesisClass, Label};
use crate::tree::{check_mistake_tree, LabelSplit, MistakeTree, Tree};

/// `min(Ldim_τ(H), depth_cap)` by exhaustive search. Doubly exponential in
/// the cap; keep `depth_cap ≤ 4`.
pub fn ldim_brute_force(class: &HypothesisClass, tolerance: u32, depth_cap: u32) -> u32 {
    let rows: Vec<&[Label]> = class.rows().iter().map(|r| r.as_slice()).collect();
    if rows.is_empty() {
        return 0;
    }
    let mut best = 0;
    for depth in 1..=depth_cap {
        match find_tree(&rows, class, tolerance, depth) {
            Some(tree) => {
                assert!(
                    check_mistake_tree(class, &tree, tolerance).is_ok(),
                    "oracle produced an unshattered tree"
                );
                best = depth;
            }
            None => break,
        }
    }
    best
}

/// Some tree of depth exactly `depth` all of whose paths are realized by
/// `consistent`, if one exists.
fn find_tree(
    consistent: &[&[Label]],
    class: &HypothesisClass,
    tolerance: u32,
    depth: u32,
) -> Option<MistakeTree> {
    if consistent.is_empty() {
        return None;
    }
    if depth == 0 {
        return Some(Tree::Leaf);
    }
    for x in 0..class.domain_size() {
        for a in class.labels() {
            for b in class.labels() {
                if a.distance(b) <= tolerance || a > b {
                    continue;
                }
                let left: Vec<&[Label]> =
                    consistent.iter().copied().filter(|r| r[x] == a).collect();
                let Some(lt) = find_tree(&left, class, tolerance, depth - 1) else {
                    continue;
                };
                let right: Vec<&[Label]> =
                    consistent.iter().copied().filter(|r| r[x] == b).collect();
                if let Some(rt) = find_tree(&right, class, tolerance, depth - 1) {
                    return Some(Tree::node(LabelSplit { x, left: a, right: b }, lt, rt));
                }
            }
        }
    }
    None
}
