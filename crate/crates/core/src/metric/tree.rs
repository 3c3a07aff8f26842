//! The prefix tree implicit in a sorted [`VoxelSet`].
//!
//! Cells with a common address prefix are contiguous, so a node is a
//! `(level, range)` pair and its children are the maximal sub-ranges that
//! agree on the next digit.

use std::cmp::Ordering;

use crate::voxel::{Packing, VoxelSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Node {
    pub level: u32,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Copy)]
pub(crate) struct Hierarchy<'a> {
    cells: &'a [u64],
    pack: Packing,
    depth: u32,
}

impl<'a> Hierarchy<'a> {
    pub fn new(v: &'a VoxelSet) -> Self {
        Self {
            cells: v.codes(),
            pack: v.packing(),
            depth: v.depth(),
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn root(&self) -> Node {
        Node {
            level: 0,
            lo: 0,
            hi: self.cells.len(),
        }
    }

    pub fn is_leaf(&self, node: Node) -> bool {
        node.level == self.depth
    }

    /// Appends the children of a non-leaf node to `out`.
    pub fn children(&self, node: Node, out: &mut Vec<Node>) {
        debug_assert!(node.level < self.depth);
        let level = node.level + 1;
        let digit = |c: u64| self.pack.digit_code(c, self.depth, level);
        let mut start = node.lo;
        while start < node.hi {
            let d = digit(self.cells[start]);
            let len = self.cells[start..node.hi].partition_point(|&c| digit(c) <= d);
            out.push(Node {
                level,
                lo: start,
                hi: start + len,
            });
            start += len;
        }
    }

    /// Integer lower corner of the node's cell in units of `n^−level`.
    pub fn corner(&self, node: Node) -> [u64; 3] {
        let prefix = self.cells[node.lo] >> (self.pack.bits * (self.depth - node.level));
        self.pack.grid(prefix, node.level)
    }

    /// Lower corner and side of the node's cell in unit-cube coordinates.
    pub fn unit_box(&self, node: Node) -> ([f64; 3], f64) {
        let side = (self.pack.base as f64).powi(-(node.level as i32));
        (self.corner(node).map(|c| c as f64 * side), side)
    }

    /// Centre of the first cell below the node; a point of the set.
    pub fn representative(&self, node: Node) -> [f64; 3] {
        let leaf = Node {
            level: self.depth,
            lo: node.lo,
            hi: node.lo + 1,
        };
        let (lo, side) = self.unit_box(leaf);
        lo.map(|c| c + 0.5 * side)
    }
}

/// `f64` key with a total order, for binary heaps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Key(pub f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}
