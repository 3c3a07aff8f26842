use crate::voxel::VoxelSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two remaining axes, ascending.
    fn others(self) -> [usize; 2] {
        match self {
            Axis::X => [1, 2],
            Axis::Y => [0, 2],
            Axis::Z => [0, 1],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Low,
    High,
}

/// Squares of the depth-`k` grid on one face of the unit cube that are
/// covered by cells of a voxel set. Squares are indexed by the two other
/// axes in ascending axis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    pub axis: Axis,
    pub side: Side,
    pub depth: u32,
    pub squares: Vec<[u64; 2]>,
}

pub fn face_trace(v: &VoxelSet, axis: Axis, side: Side) -> FaceTrace {
    let layer = match side {
        Side::Low => 0,
        Side::High => v.extent() - 1,
    };
    let [a, b] = axis.others();
    let mut squares: Vec<[u64; 2]> = v
        .grid_cells()
        .filter(|g| g[axis.index()] == layer)
        .map(|g| [g[a], g[b]])
        .collect();
    squares.sort_unstable();
    squares.dedup();
    FaceTrace {
        axis,
        side,
        depth: v.depth(),
        squares,
    }
}

/// Whether, on every axis, the high-face trace is the low-face trace
/// translated by one unit.
pub fn opposite_faces_congruent(v: &VoxelSet) -> bool {
    Axis::ALL.iter().all(|&axis| {
        face_trace(v, axis, Side::Low).squares == face_trace(v, axis, Side::High).squares
    })
}

/// Dimension of the affine span of the cell centres (0 to 3); a set with
/// dimension 3 is not contained in any plane.
pub fn affine_dimension(v: &VoxelSet) -> usize {
    let mut pts = v.grid_cells().map(|g| g.map(|c| c as i128));
    let Some(p0) = pts.next() else { return 0 };
    let mut basis: Vec<[i128; 3]> = Vec::new();
    for p in pts {
        let d = [p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]];
        let independent = match basis.as_slice() {
            [] => d != [0; 3],
            [u] => cross(*u, d) != [0; 3],
            [u, w] => dot(cross(*u, *w), d) != 0,
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis.len()
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voxel::FractalCube;

    fn iter(w: &str) -> VoxelSet {
        FractalCube::cross_frame()
            .iterate(&w.parse().unwrap())
            .unwrap()
    }

    #[test]
    fn cross_meets_each_face_in_the_centre() {
        let t = face_trace(&iter("0"), Axis::X, Side::Low);
        assert_eq!(t.squares, vec![[2, 2]]);
    }

    #[test]
    fn frame_meets_face_in_a_ring() {
        let t = face_trace(&iter("1"), Axis::X, Side::Low);
        assert_eq!(t.squares.len(), 25 - 9);
        assert!(t
            .squares
            .iter()
            .all(|s| s.iter().any(|&c| c == 0 || c == 4)));
    }

    #[test]
    fn empty_trace() {
        let v = VoxelSet::empty(5, 2).unwrap();
        assert!(face_trace(&v, Axis::Y, Side::High).squares.is_empty());
    }

    #[test]
    fn congruence() {
        assert!(opposite_faces_congruent(&iter("0")));
        assert!(opposite_faces_congruent(&iter("10")));
        let corner = VoxelSet::from_grid_cells(5, 1, [[0, 0, 0]]).unwrap();
        assert!(!opposite_faces_congruent(&corner));
    }

    #[test]
    fn affine_span() {
        assert_eq!(affine_dimension(&iter("0")), 3);
        let row = VoxelSet::from_grid_cells(5, 1, (0..5).map(|x| [x, 1, 1])).unwrap();
        assert_eq!(affine_dimension(&row), 1);
        let plane = VoxelSet::from_grid_cells(5, 1, [[0, 0, 2], [1, 0, 2], [3, 4, 2]]).unwrap();
        assert_eq!(affine_dimension(&plane), 2);
        assert_eq!(affine_dimension(&VoxelSet::empty(5, 1).unwrap()), 0);
    }
}
