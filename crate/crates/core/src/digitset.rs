//! Digit sets in `{0,…,n−1}³` and the symmetries of the cube acting on them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest supported base; keeps one level of `n³` digit codes within a `u64`.
pub const MAX_BASE: u32 = 1024;

/// Base of the two builtin digit sets.
pub const PAPER_BASE: u32 = 5;

/// Lattice coordinates of one unit subcube `d + [0,1]³` of `[0,n]³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Digit {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }

    pub fn coords(self) -> [u32; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_coords(c: [u32; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    /// Mixed-radix code `(x·n + y)·n + z`; preserves lexicographic order.
    pub fn code(self, base: u32) -> u64 {
        let n = base as u64;
        (self.x as u64 * n + self.y as u64) * n + self.z as u64
    }

    pub fn from_code(code: u64, base: u32) -> Self {
        let n = base as u64;
        Self::new(
            (code / (n * n)) as u32,
            ((code / n) % n) as u32,
            (code % n) as u32,
        )
    }

    /// Number of coordinates equal to `0` or `n−1`.
    pub fn extreme_count(self, base: u32) -> usize {
        self.coords()
            .iter()
            .filter(|&&c| c == 0 || c == base - 1)
            .count()
    }

    fn in_range(self, base: u32) -> bool {
        self.x < base && self.y < base && self.z < base
    }
}

/// A base together with a canonically ordered, deduplicated set of digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSet {
    base: u32,
    digits: Vec<Digit>,
}

impl DigitSet {
    /// Builds a digit set, enforcing `2 ≤ #D < n³` and coordinate range.
    pub fn new(base: u32, digits: impl IntoIterator<Item = Digit>) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&base) {
            return Err(Error::InvalidBase {
                base,
                max: MAX_BASE,
            });
        }
        let set: BTreeSet<Digit> = digits.into_iter().collect();
        if let Some(d) = set.iter().find(|d| !d.in_range(base)) {
            return Err(Error::DigitOutOfRange {
                x: d.x,
                y: d.y,
                z: d.z,
                base,
            });
        }
        let limit = (base as usize).pow(3);
        if set.len() < 2 || set.len() >= limit {
            return Err(Error::DigitCount {
                count: set.len(),
                limit,
            });
        }
        Ok(Self {
            base,
            digits: set.into_iter().collect(),
        })
    }

    /// All triples with at least two coordinates equal to the middle index:
    /// three axis-parallel rods through the centre cell. `base` must be odd.
    pub fn cross(base: u32) -> Result<Self> {
        if base.is_multiple_of(2) {
            return Err(Error::InvalidBase {
                base,
                max: MAX_BASE,
            });
        }
        let mid = base / 2;
        Self::new(
            base,
            all_digits(base).filter(|d| d.coords().iter().filter(|&&c| c == mid).count() >= 2),
        )
    }

    /// All triples with at least two extreme coordinates: the edge
    /// wireframe of the cube. For `base = 3` this is the Menger sponge.
    pub fn frame(base: u32) -> Result<Self> {
        Self::new(
            base,
            all_digits(base).filter(|d| d.extreme_count(base) >= 2),
        )
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn contains(&self, d: Digit) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    /// Codes of all digits, ascending.
    pub fn codes(&self) -> Vec<u64> {
        self.digits.iter().map(|d| d.code(self.base)).collect()
    }

    /// Image of the set under a cube symmetry.
    pub fn transformed(&self, sym: &CubeSymmetry) -> Self {
        let digits: BTreeSet<Digit> = self
            .digits
            .iter()
            .map(|d| {
                let c = d.coords().map(u64::from);
                Digit::from_coords(sym.apply(c, self.base as u64).map(|v| v as u32))
            })
            .collect();
        Self {
            base: self.base,
            digits: digits.into_iter().collect(),
        }
    }

    /// Serialises to the text format: `base n`, then one sorted `x y z` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("base {}\n", self.base);
        for d in &self.digits {
            let _ = writeln!(out, "{} {} {}", d.x, d.y, d.z);
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `base n` header".into(),
        })?;
        let base = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["base", n] => n.parse::<u32>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad base: {e}"),
            })?,
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `base n`, found {header:?}"),
                })
            }
        };

        let mut digits = Vec::new();
        for (line, l) in lines {
            let parts: Vec<_> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected three coordinates, found {l:?}"),
                });
            }
            let mut c = [0u32; 3];
            for (slot, p) in c.iter_mut().zip(parts) {
                *slot = p.parse().map_err(|e| Error::Parse {
                    line,
                    msg: format!("bad coordinate {p:?}: {e}"),
                })?;
            }
            digits.push(Digit::from_coords(c));
        }
        Self::new(base, digits)
    }
}

/// The Cross digit set: 13 cells, base 5.
pub fn make_cross() -> DigitSet {
    DigitSet::cross(PAPER_BASE).expect("base 5 cross is valid")
}

/// The Frame digit set: 44 cells, base 5.
pub fn make_frame() -> DigitSet {
    DigitSet::frame(PAPER_BASE).expect("base 5 frame is valid")
}

/// Union of two digit sets over the same base, and whether they were disjoint.
pub fn union_disjoint(a: &DigitSet, b: &DigitSet) -> Result<(DigitSet, bool)> {
    if a.base != b.base {
        return Err(Error::BaseMismatch(a.base, b.base));
    }
    let disjoint = a.digits.iter().all(|d| !b.contains(*d));
    let union = DigitSet::new(a.base, a.digits.iter().chain(&b.digits).copied())?;
    Ok((union, disjoint))
}

fn all_digits(base: u32) -> impl Iterator<Item = Digit> {
    (0..base)
        .flat_map(move |x| (0..base).flat_map(move |y| (0..base).map(move |z| Digit::new(x, y, z))))
}

/// An element of the 48-element symmetry group of the cube: a coordinate
/// permutation followed by optional reflections `i ↦ extent−1−i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubeSymmetry {
    /// Output axis `i` takes input axis `perm[i]`.
    pub perm: [usize; 3],
    pub flip: [bool; 3],
}

impl CubeSymmetry {
    pub const IDENTITY: Self = Self {
        perm: [0, 1, 2],
        flip: [false; 3],
    };

    pub fn all() -> Vec<Self> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for mask in 0..8u8 {
                let flip = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
                out.push(Self { perm, flip });
            }
        }
        out
    }

    /// Acts on integer coordinates in `[0, extent)³`.
    pub fn apply(&self, c: [u64; 3], extent: u64) -> [u64; 3] {
        let mut out = [0; 3];
        for i in 0..3 {
            let v = c[self.perm[i]];
            out[i] = if self.flip[i] { extent - 1 - v } else { v };
        }
        out
    }
}
