use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label};
use crate::error::{Error, Result};
use crate::tree::{check_mistake_tree, MistakeTree};

use super::mono::{color_by, tallest, Arena};

/// Output of one coloring step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChooseStep {
    /// Color of the chosen monochromatic subtree.
    pub k: Label,
    /// Label of the edge leaving its root toward the retained child.
    pub k_prime: Label,
    /// The coloring hypothesis: the first row of the input class.
    pub h0: Vec<Label>,
    /// Root instance of the monochromatic subtree.
    pub x0: usize,
    /// `{h : h(x0) = k'}`.
    #[serde(skip)]
    pub class: Option<HypothesisClass>,
    /// Monochromatic subtree below the retained child.
    pub tree: MistakeTree,
    pub input_height: u32,
    pub mono_height: u32,
    pub output_height: u32,
}

impl ChooseStep {
    pub fn subclass(&self) -> &HypothesisClass {
        self.class.as_ref().expect("step carries its subclass")
    }
}

/// One coloring step on a tree shattered by `class` at `tolerance`.
///
/// The retained child's edge label `k'` must satisfy `|k - k'| > τ/2`; when
/// both edges qualify the taller branch wins, ties to the left.
pub fn color_and_choose(
    class: &HypothesisClass,
    tree: &MistakeTree,
    tolerance: u32,
) -> Result<ChooseStep> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    check_mistake_tree(class, tree, tolerance).map_err(|v| Error::Certificate(v.to_string()))?;
    let input_height = tree.height();
    if input_height == 0 {
        return Err(Error::Certificate(
            "a tree of height at least 1 is required".into(),
        ));
    }
    let h0 = class.row(0).to_vec();
    let arena = Arena::new(tree);
    let coloring = color_by(tree, &h0);
    let (table, root) = tallest(&arena, &coloring);
    let v0 = root.expect("nonempty tree has a root");
    let k = table.color;
    let split = arena.splits[v0];
    let mut choice: Option<(Label, u32, Option<usize>)> = None;
    for (label, child) in [(split.left, arena.left[v0]), (split.right, arena.right[v0])] {
        if 2 * k.distance(label) <= tolerance {
            continue;
        }
        let (h, at) = table.branch(child);
        if choice.is_none_or(|(_, best, _)| h > best) {
            choice = Some((label, h, at));
        }
    }
    let (k_prime, output_height, at) = choice.ok_or_else(|| {
        Error::Certificate(format!(
            "no edge at point {} is more than {tolerance}/2 from color {k}",
            split.x
        ))
    })?;
    let sub = match at {
        Some(u) => table.rebuild(&arena, u, output_height),
        None => MistakeTree::Leaf,
    };
    let subclass = class.restrict(split.x, k_prime);
    debug_assert!(check_mistake_tree(&subclass, &sub, tolerance).is_ok());
    Ok(ChooseStep {
        k,
        k_prime,
        h0,
        x0: split.x,
        class: Some(subclass),
        tree: sub,
        input_height,
        mono_height: table.value[v0],
        output_height,
    })
}
