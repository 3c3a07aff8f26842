//! Distances between iterates with a common prefix, solved once per
//! neighbourhood pattern of the prefix cells.
//!
//! `F_{ua} = ⋃_c S_c(F_a)` over the cells `c` of `F_u`. When every point of
//! `S_c(F_a)` lies within one cell side of `S_c(F_b)` and vice versa, copies
//! in cells that are not face, edge or corner neighbours of `c` are too far
//! to matter, so both distances depend only on which of the 26 neighbours
//! of `c` belong to `F_u`. Each pattern is solved in a block of `n³` cells
//! with `c` at position `(1,1,1)`, one level above the tails.

use std::collections::{BTreeSet, HashSet};

use super::exact::min_distance;
use super::hausdorff::{directed, hausdorff_bracket, OUTWARD};
use super::DistanceReport;
use crate::digitset::Digit;
use crate::error::{Error, Result};
use crate::voxel::{BinaryWord, FractalCube, VoxelSet};

fn offsets() -> impl Iterator<Item = [i64; 3]> {
    (-1..=1i64)
        .flat_map(|x| (-1..=1i64).flat_map(move |y| (-1..=1i64).map(move |z| [x, y, z])))
        .filter(|o| *o != [0, 0, 0])
}

/// Bit `i` set when the `i`-th neighbour offset of the cell is in `cells`.
fn patterns(prefix: &VoxelSet) -> BTreeSet<u32> {
    let cells: HashSet<[u64; 3]> = prefix.grid_cells().collect();
    let offs: Vec<[i64; 3]> = offsets().collect();
    cells
        .iter()
        .map(|g| {
            offs.iter().enumerate().fold(0u32, |mask, (i, o)| {
                let q = [0, 1, 2].map(|k| g[k] as i64 + o[k]);
                let present = q.iter().all(|&c| c >= 0) && cells.contains(&q.map(|c| c as u64));
                mask | (present as u32) << i
            })
        })
        .collect()
}

fn positions(mask: u32) -> Vec<Digit> {
    std::iter::once([0, 0, 0])
        .chain(
            offsets()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, o)| o),
        )
        .map(|o| Digit::new((1 + o[0]) as u32, (1 + o[1]) as u32, (1 + o[2]) as u32))
        .collect()
}

/// The distance report of `F_{prefix·ta}` and `F_{prefix·tb}`, or `None`
/// when the neighbourhood reduction does not apply.
pub(crate) fn prefix_report(
    cube: &FractalCube,
    prefix: &BinaryWord,
    ta: &BinaryWord,
    tb: &BinaryWord,
    tol: f64,
    budget: usize,
) -> Result<Option<DistanceReport>> {
    let base = cube.base();
    if base < 3 || prefix.is_empty() || ta.is_empty() {
        return Ok(None);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Tolerance(tol));
    }
    let (fa, fb) = (cube.iterate(ta)?, cube.iterate(tb)?);
    let centre = [Digit::new(1, 1, 1)];
    let (a_self, b_self) = match (
        VoxelSet::placed(&fa, &centre),
        VoxelSet::placed(&fb, &centre),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::DepthLimit { .. }), _) | (_, Err(Error::DepthLimit { .. })) => return Ok(None),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    // block units: the unit cube is one cell of depth |prefix| − 1
    let n = base as f64;
    let scale = n.powi(1 - prefix.len() as i32);
    let local_tol = tol / scale;
    let (_, self_hi, mut used) = hausdorff_bracket(&a_self, &b_self, local_tol, budget)?;
    if self_hi >= 1.0 / n {
        return Ok(None);
    }

    let fu = cube.iterate(prefix)?;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    let mut d_min = None;
    for mask in patterns(&fu) {
        let places = positions(mask);
        let a_all = VoxelSet::placed(&fa, &places)?;
        let b_all = VoxelSet::placed(&fb, &places)?;
        for (from, to) in [(&a_self, &b_all), (&b_self, &a_all)] {
            let (l, h, r) = directed(from, to, local_tol, lo, budget.saturating_sub(used))?;
            used += r;
            lo = lo.max(l);
            hi = hi.max(h);
        }
        let d = min_distance(&a_self, &b_all)?;
        if d_min.is_none_or(|m: super::ExactDistance| d.squared_cells() < m.squared_cells()) {
            d_min = Some(d);
        }
    }
    let d_min_exact = d_min
        .expect("prefix iterate is nonempty")
        .shrunk(prefix.len() as u32 - 1);
    let d_min = d_min_exact.value();
    Ok(Some(DistanceReport {
        d_min,
        d_min_exact,
        d_hausdorff_lo: (lo * scale * (1.0 - OUTWARD)).max(d_min * (1.0 - OUTWARD)),
        d_hausdorff_hi: (hi * scale * (1.0 + OUTWARD)).max(d_min),
        refinements: used,
    }))
}
