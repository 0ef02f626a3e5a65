//! Rank vectors ("programs") for sorted lists, search trees and heaps, plus
//! validators for trees stored in breadth-first order.
//!
//! Trees are complete: every level is full except possibly the last, which
//! is filled from the left. The children of slot `i` are the slots
//! `b*i + 1 ..= b*i + b` that are smaller than `n`.

use crate::error::{Error, Result};
use crate::model::{OrderProgram, ProgramKind};

/// Breadth-first layout of a complete `b`-ary tree with `size` slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeShape {
    pub size: usize,
    pub branching: usize,
}

impl TreeShape {
    pub fn new(size: usize, branching: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidSize(0));
        }
        if branching < 2 {
            return Err(Error::InvalidConfig(format!(
                "branching factor must be at least 2, got {branching}"
            )));
        }
        Ok(Self { size, branching })
    }

    pub fn binary(size: usize) -> Result<Self> {
        Self::new(size, 2)
    }

    /// Existing children of `slot`, left to right.
    pub fn children(&self, slot: usize) -> impl Iterator<Item = usize> {
        let first = self.branching * slot + 1;
        (first..first + self.branching).take_while({
            let n = self.size;
            move |&c| c < n
        })
    }

    /// Number of slots in the subtree rooted at `slot`.
    pub fn subtree_size(&self, slot: usize) -> usize {
        if slot >= self.size {
            return 0;
        }
        1 + self
            .children(slot)
            .map(|c| self.subtree_size(c))
            .sum::<usize>()
    }
}

pub fn ascending_program(n: usize) -> Result<OrderProgram> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    OrderProgram::new((1..=n).collect(), ProgramKind::Ascending, 2)
}

pub fn descending_program(n: usize) -> Result<OrderProgram> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    OrderProgram::new((1..=n).rev().collect(), ProgramKind::Descending, 2)
}

/// Binary search tree order: slot `i` gets the in-order rank of that slot.
pub fn bst_program(n: usize, branching: usize) -> Result<OrderProgram> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    if branching != 2 {
        return Err(Error::UnsupportedBranching {
            kind: "bst",
            branching,
        });
    }
    let shape = TreeShape::binary(n)?;
    let mut ranks = vec![0; n];
    let mut next = 1;
    in_order(&shape, 0, &mut |slot| {
        ranks[slot] = next;
        next += 1;
    });
    OrderProgram::new(ranks, ProgramKind::Bst, 2)
}

fn in_order(shape: &TreeShape, slot: usize, visit: &mut impl FnMut(usize)) {
    if slot >= shape.size {
        return;
    }
    in_order(shape, 2 * slot + 1, visit);
    visit(slot);
    in_order(shape, 2 * slot + 2, visit);
}

/// Max-heap order. Every subtree owns a contiguous block of ranks, its root
/// takes the largest one, and sibling subtrees take ascending blocks from
/// left to right.
pub fn heap_program(n: usize, branching: usize) -> Result<OrderProgram> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    let shape = TreeShape::new(n, branching)?;
    let mut ranks = vec![0; n];
    assign_heap_block(&shape, 0, 1, &mut ranks);
    OrderProgram::new(ranks, ProgramKind::Heap, branching)
}

fn assign_heap_block(shape: &TreeShape, slot: usize, lowest: usize, ranks: &mut [usize]) {
    let size = shape.subtree_size(slot);
    ranks[slot] = lowest + size - 1;
    let mut next = lowest;
    for child in shape.children(slot) {
        assign_heap_block(shape, child, next, ranks);
        next += shape.subtree_size(child);
    }
}

/// Full search-tree property: everything in a left subtree is strictly
/// smaller than the node and everything in a right subtree strictly larger.
/// Only binary shapes can be search trees; any other branching yields false.
pub fn validate_bst(values: &[f64], shape: &TreeShape) -> bool {
    if values.len() != shape.size || shape.branching != 2 {
        return false;
    }
    bst_within(values, 0, None, None)
}

fn bst_within(values: &[f64], slot: usize, low: Option<f64>, high: Option<f64>) -> bool {
    let Some(&v) = values.get(slot) else {
        return true;
    };
    if low.is_some_and(|l| v <= l) || high.is_some_and(|h| v >= h) {
        return false;
    }
    bst_within(values, 2 * slot + 1, low, Some(v)) && bst_within(values, 2 * slot + 2, Some(v), high)
}

/// Max-heap property: no child exceeds its parent.
pub fn validate_heap(values: &[f64], shape: &TreeShape) -> bool {
    values.len() == shape.size
        && (0..shape.size).all(|i| shape.children(i).all(|c| values[i] >= values[c]))
}

/// Arranges `inputs` the way `program` prescribes: the input of rank `k`
/// (1 = smallest) goes to the slot holding rank `k`. Ties keep input order.
pub fn arrange_by_program(inputs: &[f64], program: &OrderProgram) -> Result<Vec<f64>> {
    if inputs.len() != program.len() {
        return Err(Error::DimensionMismatch {
            expected: program.len(),
            found: inputs.len(),
        });
    }
    let mut sorted = inputs.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(program.ranks().iter().map(|&r| sorted[r - 1]).collect())
}
