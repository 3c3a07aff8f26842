//! Connectivity of voxel sets under face adjacency, on the cube and on the
//! unit torus `[0,1)³` (the finite-resolution model of `F + ℤ³`).

mod dendrite;
mod faces;
mod unionfind;

pub use dendrite::{dendrite_conditions, DendriteReport};
pub use faces::{affine_dimension, face_trace, opposite_faces_congruent, Axis, FaceTrace, Side};
pub use unionfind::{DisplacedUnionFind, LatticeBasis, Link};

use crate::error::{Error, Result};
use crate::voxel::VoxelSet;

/// Which grid neighbours count as adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// Cells sharing a 2-dimensional face inside the cube.
    Plain,
    /// Face adjacency with coordinates taken modulo `n^k` on every axis.
    Torus,
}

impl Adjacency {
    pub fn name(self) -> &'static str {
        match self {
            Adjacency::Plain => "plain",
            Adjacency::Torus => "torus",
        }
    }
}

/// Component ids of the cells of one [`VoxelSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    /// `labels[i]` is the component of the `i`-th cell in address order.
    labels: Vec<u32>,
    sizes: Vec<usize>,
    mode: Adjacency,
    /// Per component, a basis of the lattice of cycle displacements.
    cycles: Vec<LatticeBasis>,
    fingerprint: Fingerprint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fingerprint {
    base: u32,
    depth: u32,
    len: usize,
    digest: u64,
}

impl Fingerprint {
    fn of(v: &VoxelSet) -> Self {
        let digest = v.codes().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &c| {
            (h ^ c).wrapping_mul(0x0000_0100_0000_01b3)
        });
        Self {
            base: v.base(),
            depth: v.depth(),
            len: v.len(),
            digest,
        }
    }
}

impl ComponentLabeling {
    /// Component ids, parallel to [`VoxelSet::codes`]. Ids are dense and
    /// numbered in order of first appearance.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn mode(&self) -> Adjacency {
        self.mode
    }
}

/// Per-axis wrapping of one torus component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WrapFlags {
    pub axes: [bool; 3],
    /// Rank of the lattice of translations carrying the lifted component
    /// onto itself.
    pub rank: usize,
}

impl WrapFlags {
    pub fn all_axes(&self) -> bool {
        self.axes.iter().all(|&a| a)
    }

    pub fn any_axis(&self) -> bool {
        self.axes.iter().any(|&a| a)
    }
}

/// Labels the connected components of `v` under face adjacency.
pub fn components(v: &VoxelSet, mode: Adjacency) -> ComponentLabeling {
    let n = v.len();
    let extent = v.extent();
    let grids: Vec<[u64; 3]> = v.grid_cells().collect();

    // cells ordered by linear grid index so neighbours are found by search
    let mut order: Vec<(u64, u32)> = grids
        .iter()
        .enumerate()
        .map(|(i, g)| ((g[0] * extent + g[1]) * extent + g[2], i as u32))
        .collect();
    order.sort_unstable();
    let keys: Vec<u64> = order.iter().map(|p| p.0).collect();

    let mut uf = DisplacedUnionFind::new(n);
    let mut cycles: Vec<LatticeBasis> = vec![LatticeBasis::default(); n];
    let mut link = |uf: &mut DisplacedUnionFind, a: usize, b: usize, step: [i32; 3]| match uf
        .union(a, b, step)
    {
        Link::Merged { root, absorbed } => {
            let moved = std::mem::take(&mut cycles[absorbed]);
            cycles[root].absorb(moved);
        }
        Link::Cycle { root, displacement } => {
            cycles[root].insert(displacement.map(i64::from));
        }
    };

    let strides = [extent * extent, extent, 1];
    for axis in 0..3 {
        let stride = strides[axis];
        let mut j = 0usize;
        for i in 0..n {
            let g = grids[order[i].1 as usize];
            if g[axis] + 1 < extent {
                let target = keys[i] + stride;
                j = j.max(i);
                while j < n && keys[j] < target {
                    j += 1;
                }
                if j < n && keys[j] == target {
                    link(&mut uf, i, j, [0; 3]);
                }
            } else if mode == Adjacency::Torus {
                let target = keys[i] - (extent - 1) * stride;
                if let Ok(k) = keys.binary_search(&target) {
                    let mut step = [0; 3];
                    step[axis] = 1;
                    link(&mut uf, i, k, step);
                }
            }
        }
    }

    // position in `order` of every cell in address order
    let mut slot = vec![0u32; n];
    for (pos, &(_, orig)) in order.iter().enumerate() {
        slot[orig as usize] = pos as u32;
    }
    let mut id_of_root: Vec<u32> = vec![u32::MAX; n];
    let mut labels = Vec::with_capacity(n);
    let mut sizes = Vec::new();
    let mut comp_cycles = Vec::new();
    for &pos in slot.iter() {
        let (root, _) = uf.find(pos as usize);
        if id_of_root[root] == u32::MAX {
            id_of_root[root] = sizes.len() as u32;
            sizes.push(0);
            comp_cycles.push(std::mem::take(&mut cycles[root]));
        }
        let id = id_of_root[root];
        sizes[id as usize] += 1;
        labels.push(id);
    }

    ComponentLabeling {
        labels,
        sizes,
        mode,
        cycles: comp_cycles,
        fingerprint: Fingerprint::of(v),
    }
}

/// Components of the grid cells of the same depth that are not in `v`.
pub fn complement_components(
    v: &VoxelSet,
    mode: Adjacency,
    cell_budget: u64,
) -> Result<ComponentLabeling> {
    Ok(components(&v.complement(cell_budget)?, mode))
}

/// Per-component wrap flags of a torus labeling of `v`.
///
/// A component wraps along an axis when a cycle through it has nonzero net
/// displacement along that axis; its lift to ℝ³ is then unbounded and
/// invariant under the corresponding lattice translations.
pub fn wraps_torus(labeling: &ComponentLabeling, v: &VoxelSet) -> Result<Vec<WrapFlags>> {
    if labeling.mode != Adjacency::Torus {
        return Err(Error::NotTorus);
    }
    if labeling.fingerprint != Fingerprint::of(v) {
        return Err(Error::LabelingMismatch);
    }
    Ok(labeling
        .cycles
        .iter()
        .map(|basis| WrapFlags {
            axes: [0, 1, 2].map(|a| basis.spans_axis(a)),
            rank: basis.rank(),
        })
        .collect())
}
