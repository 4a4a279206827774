//! Largest monochromatic subtree of a colored tree.
//!
//! A subtree here keeps a node and, below each of its two edges, one
//! descendant somewhere in that branch; intermediate nodes are skipped. For
//! a node `v` and color `c`,
//!
//! `M(v, c) = [color(v) = c] · (1 + min(B(left), B(right)))`
//!
//! where `B(branch)` is the largest `M(·, c)` over the nodes of the branch
//! (zero for a leaf).

use crate::class::Label;
use crate::tree::{LabelSplit, MistakeTree, Tree};

/// A tree flattened in preorder.
#[derive(Debug, Clone)]
pub struct Arena {
    pub splits: Vec<LabelSplit>,
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Arena {
    pub fn new(tree: &MistakeTree) -> Self {
        let mut arena = Arena {
            splits: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
        };
        arena.push(tree);
        arena
    }

    fn push(&mut self, tree: &MistakeTree) -> Option<usize> {
        let Tree::Node { split, left, right } = tree else {
            return None;
        };
        let id = self.splits.len();
        self.splits.push(*split);
        self.left.push(None);
        self.right.push(None);
        let l = self.push(left);
        let r = self.push(right);
        self.left[id] = l;
        self.right[id] = r;
        Some(id)
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }
}

/// Per-node values of the recurrence for one color.
#[derive(Debug, Clone)]
pub struct ColorTable {
    pub color: Label,
    /// `M(v, c)`.
    pub value: Vec<u32>,
    /// Largest `M` in the subtree at `v`, including `v`.
    pub best: Vec<u32>,
    /// First node in preorder attaining `best`.
    pub best_at: Vec<usize>,
}

impl ColorTable {
    pub fn new(arena: &Arena, coloring: &[Label], color: Label) -> Self {
        let n = arena.len();
        let mut t = ColorTable {
            color,
            value: vec![0; n],
            best: vec![0; n],
            best_at: (0..n).collect(),
        };
        // Children follow their parent in preorder.
        for v in (0..n).rev() {
            let bl = arena.left[v].map_or(0, |u| t.best[u]);
            let br = arena.right[v].map_or(0, |u| t.best[u]);
            t.value[v] = if coloring[v] == color { 1 + bl.min(br) } else { 0 };
            let mut best = (t.value[v], v);
            for child in [arena.left[v], arena.right[v]].into_iter().flatten() {
                if t.best[child] > best.0 {
                    best = (t.best[child], t.best_at[child]);
                }
            }
            t.best[v] = best.0;
            t.best_at[v] = best.1;
        }
        t
    }

    /// Largest value in a branch and the node attaining it, `(0, None)` for
    /// a leaf.
    pub fn branch(&self, child: Option<usize>) -> (u32, Option<usize>) {
        match child {
            Some(u) => (self.best[u], Some(self.best_at[u])),
            None => (0, None),
        }
    }

    /// Monochromatic subtree of height `height` rooted at `v`; requires
    /// `value[v] ≥ height`.
    pub fn rebuild(&self, arena: &Arena, v: usize, height: u32) -> MistakeTree {
        if height == 0 {
            return Tree::Leaf;
        }
        let sub = |child: Option<usize>| match self.branch(child) {
            (_, Some(u)) if height > 1 => self.rebuild(arena, u, height - 1),
            _ => Tree::Leaf,
        };
        Tree::node(arena.splits[v], sub(arena.left[v]), sub(arena.right[v]))
    }
}

#[derive(Debug, Clone)]
pub struct MonoSubtree {
    pub color: Label,
    /// Preorder index of the subtree's root in the input tree, `None` when
    /// the input is a leaf.
    pub root: Option<usize>,
    pub tree: MistakeTree,
}

impl MonoSubtree {
    pub fn height(&self) -> u32 {
        self.tree.height()
    }
}

/// Tallest monochromatic subtree; ties between colors go to the smallest.
/// `coloring` is indexed by preorder position and uses colors `1..=K`.
pub fn max_mono_subtree(tree: &MistakeTree, coloring: &[Label]) -> MonoSubtree {
    let arena = Arena::new(tree);
    let (table, root) = tallest(&arena, coloring);
    match root {
        Some(v) => MonoSubtree {
            color: table.color,
            root: Some(v),
            tree: table.rebuild(&arena, v, table.value[v]),
        },
        None => MonoSubtree {
            color: table.color,
            root: None,
            tree: Tree::Leaf,
        },
    }
}

pub(crate) fn tallest(arena: &Arena, coloring: &[Label]) -> (ColorTable, Option<usize>) {
    assert_eq!(coloring.len(), arena.len(), "coloring must cover every internal node");
    let max_color = coloring.iter().map(|c| c.get()).max().unwrap_or(1);
    let mut chosen: Option<ColorTable> = None;
    for c in 1..=max_color {
        let table = ColorTable::new(arena, coloring, Label::new(c));
        let h = table.best.first().copied().unwrap_or(0);
        if chosen.as_ref().is_none_or(|t| h > t.best.first().copied().unwrap_or(0)) {
            chosen = Some(table);
        }
    }
    let table = chosen.expect("at least one color");
    let root = if arena.is_empty() {
        None
    } else {
        Some(table.best_at[0])
    };
    (table, root)
}

/// Colors each internal node by `h(x)`, in preorder.
pub fn color_by(tree: &MistakeTree, h: &[Label]) -> Vec<Label> {
    tree.preorder().into_iter().map(|s| h[s.x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_certificate;

    #[test]
    fn monochromatic_tree_keeps_its_height() {
        let t = complete_certificate(4);
        let coloring = vec![Label::new(2); t.internal_nodes()];
        let m = max_mono_subtree(&t, &coloring);
        assert_eq!(m.color, Label::new(2));
        assert_eq!(m.height(), 4);
        assert_eq!(m.tree, t);
    }

    #[test]
    fn color_ties_go_to_the_smallest() {
        let t = complete_certificate(2);
        // Preorder: root, left child, right child.
        let coloring = vec![Label::new(1), Label::new(2), Label::new(2)];
        let m = max_mono_subtree(&t, &coloring);
        assert_eq!(m.color, Label::new(1));
        assert_eq!(m.height(), 1);
        assert_eq!(m.root, Some(0));
    }

    #[test]
    fn skipped_levels_are_aggregated() {
        // Color 2 everywhere except the two depth-1 nodes: color 2 still has
        // a subtree of height 2 through the root and the depth-2 nodes.
        let t = complete_certificate(3);
        let mut coloring = vec![Label::new(2); 7];
        coloring[1] = Label::new(1);
        coloring[4] = Label::new(1);
        let m = max_mono_subtree(&t, &coloring);
        assert_eq!((m.color, m.height()), (Label::new(2), 2));
        let root = m.tree.split().unwrap();
        let (l, _) = m.tree.children().unwrap();
        assert_eq!(root.x, 0);
        assert_eq!(l.split().unwrap().x, 2);
    }
}
