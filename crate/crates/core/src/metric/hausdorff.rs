//! Certified Hausdorff brackets between unions of closed grid cells.
//!
//! The directed distance `sup_{p∈A} dist(p, B)` is bracketed by best-first
//! refinement of `A`: first along its prefix tree, then by octree
//! subdivision of individual cells. For a box `Q`:
//!
//! * any point of `A ∩ Q` gives a lower bound on the sup;
//! * `dist(·, b)` is convex for a single cube `b`, so its sup over `Q` sits at
//!   a corner and `min_b max_{corners} dist(c, b)` bounds `sup_Q dist(·, B)`;
//! * `dist(p, B) + max_{q∈Q} |q − p|` is a second upper bound for any `p ∈ Q`.
//!
//! Boxes whose upper bound cannot beat the best lower bound are dropped;
//! refinement stops once the largest outstanding upper bound is within the
//! tolerance of the best lower bound.

use std::collections::BinaryHeap;

use super::tree::{Hierarchy, Key, Node};
use crate::error::{Error, Result};
use crate::voxel::VoxelSet;

pub const DEFAULT_REFINEMENT_BUDGET: usize = 20_000_000;

/// Relative outward widening applied to floating-point brackets.
pub(super) const OUTWARD: f64 = 1e-12;

/// `min over cells b of B` of `max over query points p` of `|p − b|²`.
///
/// With one point this is the squared point-to-set distance.
struct NearestCells<'a> {
    tree: Hierarchy<'a>,
    heap: BinaryHeap<std::cmp::Reverse<(Key, u32, usize, usize)>>,
    kids: Vec<Node>,
}

impl<'a> NearestCells<'a> {
    fn new(tree: Hierarchy<'a>) -> Self {
        Self {
            tree,
            heap: BinaryHeap::new(),
            kids: Vec::new(),
        }
    }

    fn min_max_sq(&mut self, pts: &[[f64; 3]]) -> f64 {
        use std::cmp::Reverse;
        let key = |tree: &Hierarchy, node: Node| {
            let (lo, side) = tree.unit_box(node);
            pts.iter()
                .map(|p| box_dist_sq(p, lo, side))
                .fold(0.0, f64::max)
        };
        self.heap.clear();
        let root = self.tree.root();
        self.heap.push(Reverse((
            Key(key(&self.tree, root)),
            root.level,
            root.lo,
            root.hi,
        )));
        while let Some(Reverse((Key(k), level, lo, hi))) = self.heap.pop() {
            let node = Node { level, lo, hi };
            if self.tree.is_leaf(node) {
                return k;
            }
            self.kids.clear();
            self.tree.children(node, &mut self.kids);
            for &c in &self.kids {
                self.heap
                    .push(Reverse((Key(key(&self.tree, c)), c.level, c.lo, c.hi)));
            }
        }
        unreachable!("nonempty tree always reaches a leaf")
    }

    fn point_dist(&mut self, p: [f64; 3]) -> f64 {
        self.min_max_sq(&[p]).sqrt()
    }
}

fn box_dist_sq(p: &[f64; 3], lo: [f64; 3], side: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        let g = if p[i] < lo[i] {
            lo[i] - p[i]
        } else if p[i] > lo[i] + side {
            p[i] - lo[i] - side
        } else {
            0.0
        };
        s += g * g;
    }
    s
}

fn corners(lo: [f64; 3], side: f64) -> [[f64; 3]; 8] {
    let mut out = [[0.0; 3]; 8];
    for (i, c) in out.iter_mut().enumerate() {
        for axis in 0..3 {
            c[axis] = lo[axis] + if i >> axis & 1 == 1 { side } else { 0.0 };
        }
    }
    out
}

fn far_corner_dist(p: [f64; 3], lo: [f64; 3], side: f64) -> f64 {
    (0..3)
        .map(|i| {
            let d = (p[i] - lo[i]).abs().max((lo[i] + side - p[i]).abs());
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// A region of `A` awaiting refinement.
#[derive(Clone, Copy, Debug)]
struct Region {
    lo: [f64; 3],
    side: f64,
    /// Prefix-tree node while the region is coarser than `A`'s cells;
    /// `None` once the region lies entirely inside `A`.
    node: Option<Node>,
}

/// Bracket `[lo, hi]` for `max(floor, sup_{p∈A} dist(p, B))`, width ≤ `tol`.
pub(super) fn directed(
    a: &VoxelSet,
    b: &VoxelSet,
    tol: f64,
    floor: f64,
    budget: usize,
) -> Result<(f64, f64, usize)> {
    let ta = Hierarchy::new(a);
    let mut near = NearestCells::new(Hierarchy::new(b));
    let mut best = floor;
    let mut heap: BinaryHeap<(Key, usize)> = BinaryHeap::new();
    let mut regions: Vec<Region> = Vec::new();
    let mut refinements = 0usize;
    let mut kids = Vec::new();

    // evaluates a region: raises `best` from a point of A, returns the upper bound
    let assess = |region: &Region, best: &mut f64, near: &mut NearestCells| -> f64 {
        let (point, inside) = match region.node {
            Some(node) if !ta.is_leaf(node) => (ta.representative(node), false),
            _ => (region.lo.map(|c| c + 0.5 * region.side), true),
        };
        let d = near.point_dist(point);
        *best = best.max(d);
        let reach = if inside {
            0.5 * 3f64.sqrt() * region.side
        } else {
            far_corner_dist(point, region.lo, region.side)
        };
        let convex = near.min_max_sq(&corners(region.lo, region.side)).sqrt();
        convex.min(d + reach)
    };

    let root = ta.root();
    let (lo, side) = ta.unit_box(root);
    let region = Region {
        lo,
        side,
        node: Some(root),
    };
    let upper = assess(&region, &mut best, &mut near);
    regions.push(region);
    heap.push((Key(upper), 0));

    let hi = loop {
        let Some((Key(upper), idx)) = heap.pop() else {
            break best;
        };
        if upper - best <= tol {
            break upper.max(best);
        }
        refinements += 1;
        if refinements > budget {
            return Err(Error::ToleranceNotReached { tol, budget });
        }
        let region = regions[idx];
        let mut children: Vec<Region> = Vec::with_capacity(8);
        match region.node {
            Some(node) if !ta.is_leaf(node) => {
                kids.clear();
                ta.children(node, &mut kids);
                for &k in &kids {
                    let (lo, side) = ta.unit_box(k);
                    children.push(Region {
                        lo,
                        side,
                        node: Some(k),
                    });
                }
            }
            _ => {
                let half = 0.5 * region.side;
                for c in corners(region.lo, half) {
                    children.push(Region {
                        lo: c,
                        side: half,
                        node: None,
                    });
                }
            }
        }
        for child in children {
            let upper = assess(&child, &mut best, &mut near);
            if upper > best {
                regions.push(child);
                heap.push((Key(upper), regions.len() - 1));
            }
        }
    };
    Ok((best, hi, refinements))
}

/// Bracket of the Hausdorff distance: `(lo, hi, refinements)` with
/// `hi − lo ≤ tol` before outward widening.
pub(crate) fn hausdorff_bracket(
    a: &VoxelSet,
    b: &VoxelSet,
    tol: f64,
    budget: usize,
) -> Result<(f64, f64, usize)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.base() != b.base() {
        return Err(Error::BaseMismatch(a.base(), b.base()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Tolerance(tol));
    }
    let (lo1, hi1, r1) = directed(a, b, tol, 0.0, budget)?;
    let (lo2, hi2, r2) = directed(b, a, tol, lo1, budget.saturating_sub(r1))?;
    let lo = lo1.max(lo2);
    let hi = hi1.max(hi2);
    Ok((lo * (1.0 - OUTWARD), hi * (1.0 + OUTWARD), r1 + r2))
}
