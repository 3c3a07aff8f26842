//! Exact minimum distance between unions of closed grid cells.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;

use super::tree::{Hierarchy, Node};
use crate::error::{Error, Result};
use crate::voxel::VoxelSet;

/// A Euclidean distance `√squared · n^−depth`, held exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactDistance {
    squared: u64,
    base: u32,
    depth: u32,
}

impl ExactDistance {
    /// Squared distance in units of depth-`depth` cells.
    pub fn squared_cells(&self) -> u64 {
        self.squared
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Distance in units of depth-`depth` cell sides.
    pub fn in_cells(&self) -> f64 {
        (self.squared as f64).sqrt()
    }

    pub fn value(&self) -> f64 {
        self.in_cells() * (self.base as f64).powi(-(self.depth as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.squared == 0
    }

    /// The same cell-count distance measured on a grid `levels` finer, as for
    /// a set shrunk by `n^−levels`.
    pub(crate) fn shrunk(self, levels: u32) -> Self {
        Self {
            depth: self.depth + levels,
            ..self
        }
    }

    /// Exact test of `self ≥ n^−e`.
    pub fn at_least_inverse_power(&self, e: u32) -> bool {
        let n = BigUint::from(self.base);
        BigUint::from(self.squared) * n.pow(2 * e) >= n.pow(2 * self.depth)
    }
}

/// Exact minimum Euclidean distance between the closed cell unions `a` and `b`.
///
/// Best-first branch and bound over pairs of prefix-tree nodes with the
/// integer box gap as lower bound; the first-cell distance of each pushed
/// pair supplies the running upper bound. Sets of different depth are
/// compared on the finer grid.
pub fn min_distance(a: &VoxelSet, b: &VoxelSet) -> Result<ExactDistance> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.base() != b.base() {
        return Err(Error::BaseMismatch(a.base(), b.base()));
    }
    let base = a.base();
    let depth = a.depth().max(b.depth());
    let ta = Hierarchy::new(a);
    let tb = Hierarchy::new(b);
    let n = base as u64;

    // box of a node in units of depth-`depth` cells
    let cell_box = |t: &Hierarchy, node: Node| -> ([u64; 3], u64) {
        let side = n.pow(depth - node.level);
        (t.corner(node).map(|c| c * side), side)
    };
    let gap_sq = |(pa, sa): ([u64; 3], u64), (pb, sb): ([u64; 3], u64)| -> u64 {
        (0..3)
            .map(|i| {
                let g = if pa[i] >= pb[i] + sb {
                    pa[i] - pb[i] - sb
                } else if pb[i] >= pa[i] + sa {
                    pb[i] - pa[i] - sa
                } else {
                    0
                };
                g * g
            })
            .sum()
    };
    let first_cell = |t: &Hierarchy, node: Node| {
        cell_box(
            t,
            Node {
                level: t.depth(),
                lo: node.lo,
                hi: node.lo + 1,
            },
        )
    };

    let (ra, rb) = (ta.root(), tb.root());
    let mut best = gap_sq(first_cell(&ta, ra), first_cell(&tb, rb));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((
        gap_sq(cell_box(&ta, ra), cell_box(&tb, rb)),
        ra.level,
        ra.lo,
        ra.hi,
        rb.level,
        rb.lo,
        rb.hi,
    )));
    let mut kids = Vec::new();

    while let Some(Reverse((lb, la, alo, ahi, lb_, blo, bhi))) = heap.pop() {
        if lb >= best {
            break;
        }
        let na = Node {
            level: la,
            lo: alo,
            hi: ahi,
        };
        let nb = Node {
            level: lb_,
            lo: blo,
            hi: bhi,
        };
        let (leaf_a, leaf_b) = (ta.is_leaf(na), tb.is_leaf(nb));
        if leaf_a && leaf_b {
            best = best.min(lb);
            continue;
        }
        // split the coarser node
        let split_a = !leaf_a && (leaf_b || depth - na.level >= depth - nb.level);
        kids.clear();
        if split_a {
            ta.children(na, &mut kids);
        } else {
            tb.children(nb, &mut kids);
        }
        for &k in &kids {
            let (pa, pb) = if split_a { (k, nb) } else { (na, k) };
            let lower = gap_sq(cell_box(&ta, pa), cell_box(&tb, pb));
            if lower >= best {
                continue;
            }
            best = best.min(gap_sq(first_cell(&ta, pa), first_cell(&tb, pb)));
            if lower < best {
                heap.push(Reverse((
                    lower, pa.level, pa.lo, pa.hi, pb.level, pb.lo, pb.hi,
                )));
            }
        }
    }

    Ok(ExactDistance {
        squared: best,
        base,
        depth,
    })
}
