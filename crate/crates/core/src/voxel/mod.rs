//! Exact finite iterates `T_{α₁} ∘ … ∘ T_{αk}([0,1]³)` as sets of grid cells.
//!
//! A depth-`k` cell is addressed by its base-`n` expansion: `k` digit triples,
//! most significant first. Each triple is stored as its mixed-radix code in a
//! fixed number of bits, so an address packs into one `u64` and the numeric
//! order of packed addresses is the lexicographic order of the expansions.
//! Cells sharing a prefix are therefore contiguous in a sorted [`VoxelSet`].

mod io;
mod word;

use num_bigint::BigUint;
use rayon::prelude::*;

pub use io::{decode_binary, encode_binary, write_csv, write_obj};
pub use word::{BinaryWord, EventualWord, WordSpec};

use crate::digitset::{self, CubeSymmetry, Digit, DigitSet, MAX_BASE};
use crate::error::{Error, Result};

/// Default limit on the number of cells a single operation may materialise.
pub const DEFAULT_CELL_BUDGET: u64 = 200_000_000;

/// Bit layout of packed addresses for one base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Packing {
    pub base: u32,
    pub bits: u32,
}

impl Packing {
    pub fn new(base: u32) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&base) {
            return Err(Error::InvalidBase {
                base,
                max: MAX_BASE,
            });
        }
        let max_code = (base as u64).pow(3) - 1;
        Ok(Self {
            base,
            bits: 64 - max_code.leading_zeros(),
        })
    }

    pub fn max_depth(self) -> u32 {
        64 / self.bits
    }

    pub fn check_depth(self, depth: u32) -> Result<()> {
        if depth > self.max_depth() {
            return Err(Error::DepthLimit {
                depth,
                max: self.max_depth(),
                base: self.base,
            });
        }
        Ok(())
    }

    pub fn mask(self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// Digit code at `level` (1-based) of a depth-`depth` address.
    #[inline]
    pub fn digit_code(self, code: u64, depth: u32, level: u32) -> u64 {
        (code >> (self.bits * (depth - level))) & self.mask()
    }

    /// Integer grid coordinates in `[0, n^depth)³`.
    #[inline]
    pub fn grid(self, code: u64, depth: u32) -> [u64; 3] {
        let n = self.base as u64;
        let mut g = [0u64; 3];
        for level in 1..=depth {
            let dc = self.digit_code(code, depth, level);
            g[0] = g[0] * n + dc / (n * n);
            g[1] = g[1] * n + (dc / n) % n;
            g[2] = g[2] * n + dc % n;
        }
        g
    }

    #[inline]
    pub fn encode_grid(self, mut g: [u64; 3], depth: u32) -> u64 {
        let n = self.base as u64;
        let mut code = 0u64;
        for level in (1..=depth).rev() {
            let dc = ((g[0] % n) * n + g[1] % n) * n + g[2] % n;
            code |= dc << (self.bits * (depth - level));
            for v in &mut g {
                *v /= n;
            }
        }
        code
    }
}

/// Address of a closed grid cell `[corner, corner + n^−k]³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellAddress {
    base: u32,
    depth: u32,
    code: u64,
}

impl CellAddress {
    pub fn from_digits(base: u32, digits: &[Digit]) -> Result<Self> {
        let pack = Packing::new(base)?;
        let depth = digits.len() as u32;
        pack.check_depth(depth)?;
        let mut code = 0u64;
        for d in digits {
            if d.x >= base || d.y >= base || d.z >= base {
                return Err(Error::DigitOutOfRange {
                    x: d.x,
                    y: d.y,
                    z: d.z,
                    base,
                });
            }
            code = (code << pack.bits) | d.code(base);
        }
        Ok(Self { base, depth, code })
    }

    pub fn from_grid(base: u32, depth: u32, g: [u64; 3]) -> Result<Self> {
        let pack = Packing::new(base)?;
        pack.check_depth(depth)?;
        let extent = (base as u64).pow(depth);
        if g.iter().any(|&v| v >= extent) {
            return Err(Error::DigitOutOfRange {
                x: g[0] as u32,
                y: g[1] as u32,
                z: g[2] as u32,
                base,
            });
        }
        Ok(Self {
            base,
            depth,
            code: pack.encode_grid(g, depth),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The packed address.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn digits(&self) -> Vec<Digit> {
        let pack = Packing::new(self.base).expect("validated base");
        (1..=self.depth)
            .map(|l| Digit::from_code(pack.digit_code(self.code, self.depth, l), self.base))
            .collect()
    }

    /// Integer coordinates of the lower corner in units of `n^−depth`.
    pub fn grid(&self) -> [u64; 3] {
        Packing::new(self.base)
            .expect("validated base")
            .grid(self.code, self.depth)
    }

    pub fn side(&self) -> f64 {
        (self.base as f64).powi(-(self.depth as i32))
    }

    pub fn lower_corner(&self) -> [f64; 3] {
        let s = self.side();
        self.grid().map(|g| g as f64 * s)
    }
}

/// A set of same-depth cells of the `n^k × n^k × n^k` grid on `[0,1]³`,
/// held as a sorted list of packed addresses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VoxelSet {
    base: u32,
    depth: u32,
    cells: Vec<u64>,
}

impl VoxelSet {
    /// The unit cube as the single depth-0 cell.
    pub fn unit(base: u32) -> Result<Self> {
        Packing::new(base)?;
        Ok(Self {
            base,
            depth: 0,
            cells: vec![0],
        })
    }

    pub fn empty(base: u32, depth: u32) -> Result<Self> {
        Packing::new(base)?.check_depth(depth)?;
        Ok(Self {
            base,
            depth,
            cells: Vec::new(),
        })
    }

    /// Cells `d + [0,1]³` scaled into the unit cube: the depth-1 iterate of `d`.
    pub fn from_digit_set(d: &DigitSet) -> Self {
        Self {
            base: d.base(),
            depth: 1,
            cells: d.codes(),
        }
    }

    pub fn from_cells(
        base: u32,
        depth: u32,
        cells: impl IntoIterator<Item = CellAddress>,
    ) -> Result<Self> {
        Packing::new(base)?.check_depth(depth)?;
        let mut codes = Vec::new();
        for c in cells {
            if c.base != base {
                return Err(Error::BaseMismatch(base, c.base));
            }
            if c.depth != depth {
                return Err(Error::DepthMismatch(depth, c.depth));
            }
            codes.push(c.code);
        }
        Ok(Self::from_sorted_codes(base, depth, codes))
    }

    pub fn from_grid_cells(
        base: u32,
        depth: u32,
        cells: impl IntoIterator<Item = [u64; 3]>,
    ) -> Result<Self> {
        let cells = cells
            .into_iter()
            .map(|g| CellAddress::from_grid(base, depth, g))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cells(base, depth, cells)
    }

    /// Copies of `tail` placed in the given first-level cells, one level deeper.
    pub(crate) fn placed(tail: &VoxelSet, positions: &[Digit]) -> Result<Self> {
        let pack = tail.packing();
        let depth = tail.depth + 1;
        pack.check_depth(depth)?;
        let shift = pack.bits * tail.depth;
        let mut codes = Vec::with_capacity(positions.len() * tail.len());
        for p in positions {
            let top = p.code(tail.base) << shift;
            codes.extend(tail.cells.iter().map(|&c| top | c));
        }
        Ok(Self::from_sorted_codes(tail.base, depth, codes))
    }

    fn from_sorted_codes(base: u32, depth: u32, mut codes: Vec<u64>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        Self {
            base,
            depth,
            cells: codes,
        }
    }

    /// The set of depth-`k` cells whose `j`-th digit lies in `levels[j]`.
    ///
    /// Cells come out sorted because each level's codes are enumerated in
    /// ascending order.
    pub fn product(base: u32, levels: &[&DigitSet], cell_budget: u64) -> Result<Self> {
        let pack = Packing::new(base)?;
        let depth = levels.len() as u32;
        pack.check_depth(depth)?;
        if let Some(bad) = levels.iter().find(|d| d.base() != base) {
            return Err(Error::BaseMismatch(base, bad.base()));
        }
        let required = levels
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128));
        if required > cell_budget as u128 {
            return Err(Error::CellBudget {
                required,
                budget: cell_budget,
            });
        }
        let Some((head, rest)) = levels.split_first() else {
            return Self::unit(base);
        };

        let mut tail = vec![0u64];
        for level in rest {
            let codes = level.codes();
            let mut next = Vec::with_capacity(tail.len() * codes.len());
            for &t in &tail {
                next.extend(codes.iter().map(|&c| (t << pack.bits) | c));
            }
            tail = next;
        }

        let shift = pack.bits * (depth - 1);
        let head = head.codes();
        let mut cells = vec![0u64; head.len() * tail.len()];
        cells
            .par_chunks_mut(tail.len())
            .zip(head.par_iter())
            .for_each(|(chunk, &h)| {
                for (slot, &t) in chunk.iter_mut().zip(&tail) {
                    *slot = (h << shift) | t;
                }
            });
        Ok(Self { base, depth, cells })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of cells per axis, `n^depth`.
    pub fn extent(&self) -> u64 {
        (self.base as u64).pow(self.depth)
    }

    /// Sorted packed addresses.
    pub fn codes(&self) -> &[u64] {
        &self.cells
    }

    pub(crate) fn packing(&self) -> Packing {
        Packing::new(self.base).expect("validated base")
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = CellAddress> + '_ {
        self.cells.iter().map(move |&code| CellAddress {
            base: self.base,
            depth: self.depth,
            code,
        })
    }

    /// Lower-corner grid coordinates of every cell, in address order.
    pub fn grid_cells(&self) -> impl ExactSizeIterator<Item = [u64; 3]> + '_ {
        let pack = self.packing();
        let depth = self.depth;
        self.cells.iter().map(move |&c| pack.grid(c, depth))
    }

    pub fn contains(&self, cell: &CellAddress) -> Result<bool> {
        if cell.base != self.base {
            return Err(Error::BaseMismatch(self.base, cell.base));
        }
        if cell.depth != self.depth {
            return Err(Error::DepthMismatch(self.depth, cell.depth));
        }
        Ok(self.cells.binary_search(&cell.code).is_ok())
    }

    pub fn is_subset(&self, other: &VoxelSet) -> bool {
        self.base == other.base
            && self.depth == other.depth
            && self
                .cells
                .iter()
                .all(|c| other.cells.binary_search(c).is_ok())
    }

    /// Depth-`k−1` cells containing at least one cell of the set.
    pub fn coarsen(&self) -> Result<Self> {
        if self.depth == 0 {
            return Err(Error::DepthMismatch(0, 1));
        }
        let bits = self.packing().bits;
        let mut codes: Vec<u64> = self.cells.iter().map(|c| c >> bits).collect();
        codes.dedup();
        Ok(Self {
            base: self.base,
            depth: self.depth - 1,
            cells: codes,
        })
    }

    /// All grid cells of the same depth that are not in the set.
    pub fn complement(&self, cell_budget: u64) -> Result<Self> {
        let pack = self.packing();
        let per_level = (self.base as u64).pow(3);
        let total = (per_level as u128).pow(self.depth);
        if total > cell_budget as u128 {
            return Err(Error::CellBudget {
                required: total,
                budget: cell_budget,
            });
        }
        let k = self.depth as usize;
        let mut out = Vec::with_capacity(total as usize - self.cells.len());
        let mut digits = vec![0u64; k];
        let mut present = self.cells.iter().peekable();
        for _ in 0..total {
            let code = digits.iter().fold(0u64, |acc, &d| (acc << pack.bits) | d);
            if present.peek() == Some(&&code) {
                present.next();
            } else {
                out.push(code);
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < per_level {
                    break;
                }
                *d = 0;
            }
        }
        Ok(Self {
            base: self.base,
            depth: self.depth,
            cells: out,
        })
    }

    pub fn union(&self, other: &VoxelSet) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        let mut codes = self.cells.clone();
        codes.extend_from_slice(&other.cells);
        Ok(Self::from_sorted_codes(self.base, self.depth, codes))
    }

    /// Image under a cube symmetry acting on the depth-`k` grid; the same as
    /// acting on every digit of every address.
    pub fn transformed(&self, sym: &CubeSymmetry) -> Self {
        let pack = self.packing();
        let extent = self.extent();
        let codes = self
            .cells
            .iter()
            .map(|&c| pack.encode_grid(sym.apply(pack.grid(c, self.depth), extent), self.depth))
            .collect();
        Self::from_sorted_codes(self.base, self.depth, codes)
    }
}

/// The pair of digit sets selected by the letters `0` and `1`, together with
/// the digit set of the full fractal cube `D = D₀ ∪ D₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractalCube {
    letters: [DigitSet; 2],
    union: DigitSet,
    disjoint: bool,
    cell_budget: u64,
}

impl FractalCube {
    pub fn new(zero: DigitSet, one: DigitSet) -> Result<Self> {
        let (union, disjoint) = digitset::union_disjoint(&zero, &one)?;
        Ok(Self {
            letters: [zero, one],
            union,
            disjoint,
            cell_budget: DEFAULT_CELL_BUDGET,
        })
    }

    /// Cross for letter `0`, Frame for letter `1`.
    pub fn cross_frame() -> Self {
        Self::new(digitset::make_cross(), digitset::make_frame())
            .expect("cross and frame share base 5")
    }

    pub fn with_cell_budget(mut self, budget: u64) -> Self {
        self.cell_budget = budget;
        self
    }

    pub fn cell_budget(&self) -> u64 {
        self.cell_budget
    }

    pub fn base(&self) -> u32 {
        self.union.base()
    }

    pub fn letter(&self, letter: u8) -> &DigitSet {
        &self.letters[letter as usize]
    }

    pub fn union_digits(&self) -> &DigitSet {
        &self.union
    }

    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    /// `F_w = T_{w₁} ∘ … ∘ T_{wk}([0,1]³)`.
    pub fn iterate(&self, word: &BinaryWord) -> Result<VoxelSet> {
        let levels: Vec<&DigitSet> = word.letters().iter().map(|&l| self.letter(l)).collect();
        VoxelSet::product(self.base(), &levels, self.cell_budget)
    }

    /// `Tᵏ([0,1]³)` for the union digit set.
    pub fn full_iterate(&self, depth: u32) -> Result<VoxelSet> {
        let levels = vec![&self.union; depth as usize];
        VoxelSet::product(self.base(), &levels, self.cell_budget)
    }

    /// `∏ #D_{wⱼ}`, the cell count of `F_w`, without generating it.
    pub fn product_count(&self, word: &BinaryWord) -> BigUint {
        word.letters()
            .iter()
            .fold(BigUint::from(1u32), |acc, &l| acc * self.letter(l).len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::{make_cross, make_frame};

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn cell(digits: &[(u32, u32, u32)]) -> CellAddress {
        let d: Vec<_> = digits
            .iter()
            .map(|&(x, y, z)| Digit::new(x, y, z))
            .collect();
        CellAddress::from_digits(5, &d).unwrap()
    }

    #[test]
    fn iterate_counts() {
        let cube = FractalCube::cross_frame();
        assert_eq!(cube.iterate(&w("0")).unwrap().len(), 13);
        assert_eq!(cube.iterate(&w("01")).unwrap().len(), 572);
        let unit = cube.iterate(&w("")).unwrap();
        assert_eq!((unit.len(), unit.depth()), (1, 0));
    }

    #[test]
    fn full_iterate_is_union_of_words() {
        let cube = FractalCube::cross_frame();
        assert_eq!(cube.full_iterate(1).unwrap().len(), 57);
        let full = cube.full_iterate(2).unwrap();
        assert_eq!(full.len(), 3249);
        let mut union = VoxelSet::empty(5, 2).unwrap();
        for word in BinaryWord::all_of_length(2) {
            union = union.union(&cube.iterate(&word).unwrap()).unwrap();
        }
        assert_eq!(union, full);
    }

    #[test]
    fn membership() {
        let cube = FractalCube::cross_frame();
        let cross = cube.iterate(&w("0")).unwrap();
        let frame = cube.iterate(&w("1")).unwrap();
        assert!(cross.contains(&cell(&[(2, 2, 2)])).unwrap());
        assert!(!cross.contains(&cell(&[(0, 0, 0)])).unwrap());
        assert!(frame.contains(&cell(&[(0, 0, 0)])).unwrap());
        assert!(matches!(
            cross.contains(&cell(&[(2, 2, 2), (2, 2, 2)])),
            Err(Error::DepthMismatch(1, 2))
        ));
    }

    #[test]
    fn cells_are_sorted_and_match_digit_rule() {
        let cube = FractalCube::cross_frame();
        let v = cube.iterate(&w("101")).unwrap();
        assert!(v.codes().windows(2).all(|p| p[0] < p[1]));
        let sets = [make_cross(), make_frame()];
        for c in v.iter() {
            let digits = c.digits();
            for (d, letter) in digits.iter().zip([1usize, 0, 1]) {
                assert!(sets[letter].contains(*d));
            }
        }
    }

    #[test]
    fn grid_round_trip() {
        let pack = Packing::new(5).unwrap();
        assert_eq!(pack.bits, 7);
        assert_eq!(pack.max_depth(), 9);
        let c = cell(&[(1, 2, 3), (4, 0, 2)]);
        assert_eq!(c.grid(), [5 + 4, 2 * 5, 3 * 5 + 2]);
        assert_eq!(CellAddress::from_grid(5, 2, c.grid()).unwrap(), c);
        assert_eq!(c.lower_corner()[0], 9.0 / 25.0);
    }

    #[test]
    fn budget_and_depth_guards() {
        let cube = FractalCube::cross_frame().with_cell_budget(1000);
        assert!(matches!(
            cube.iterate(&w("11")),
            Err(Error::CellBudget {
                required: 1936,
                budget: 1000
            })
        ));
        let cube = FractalCube::cross_frame();
        assert!(matches!(
            cube.iterate(&w("0000000000")),
            Err(Error::DepthLimit { .. })
        ));
    }

    #[test]
    fn complement_partitions_grid() {
        let cube = FractalCube::cross_frame();
        let cross = cube.iterate(&w("0")).unwrap();
        let comp = cross.complement(DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(comp.len(), 112);
        assert!(comp.iter().all(|c| !cross.contains(&c).unwrap()));
        let all = cross.union(&comp).unwrap();
        assert_eq!(all.len(), 125);
        assert!(all.complement(DEFAULT_CELL_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn coarsen_gives_parent_cells() {
        let cube = FractalCube::cross_frame();
        let child = cube.iterate(&w("011")).unwrap();
        let parent = cube.iterate(&w("01")).unwrap();
        assert_eq!(child.coarsen().unwrap(), parent);
    }

    #[test]
    fn symmetric_iterates() {
        let cube = FractalCube::cross_frame();
        let v = cube.iterate(&w("10")).unwrap();
        for sym in CubeSymmetry::all() {
            assert_eq!(v.transformed(&sym), v);
        }
        let corner = VoxelSet::from_grid_cells(5, 1, [[0, 0, 0]]).unwrap();
        let flip = CubeSymmetry {
            perm: [0, 1, 2],
            flip: [true, false, false],
        };
        assert_eq!(
            corner.transformed(&flip).grid_cells().next(),
            Some([4, 0, 0])
        );
    }

    #[test]
    fn product_count_matches_formula() {
        let cube = FractalCube::cross_frame();
        assert_eq!(
            cube.product_count(&w("0111")),
            BigUint::from(13u32 * 44 * 44 * 44)
        );
        assert_eq!(cube.product_count(&w("")), BigUint::from(1u32));
    }
}
